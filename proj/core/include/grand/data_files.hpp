#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace grand {

/// Locates a shipped data file. Search order: $GRAND_DATA_DIR, the source
/// tree's core/data, the installed share/grand directory.
std::filesystem::path data_path(std::string_view file_name);

/// Library version string recorded in run metadata.
std::string version_string();

}  // namespace grand
