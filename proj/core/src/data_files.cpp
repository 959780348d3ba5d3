#include "grand/data_files.hpp"

#include <cstdlib>
#include <stdexcept>

namespace grand {

std::filesystem::path data_path(std::string_view file_name) {
  namespace fs = std::filesystem;
  if (const char* env = std::getenv("GRAND_DATA_DIR"); env && *env) {
    fs::path p = fs::path(env) / file_name;
    if (fs::exists(p)) return p;
  }
  for (const char* dir : {GRAND_SOURCE_DATA_DIR, GRAND_INSTALL_DATA_DIR}) {
    fs::path p = fs::path(dir) / file_name;
    if (fs::exists(p)) return p;
  }
  throw std::runtime_error("data file '" + std::string(file_name) +
                           "' not found (set GRAND_DATA_DIR to the data directory)");
}

std::string version_string() { return "grand " GRAND_VERSION_STRING; }

}  // namespace grand
