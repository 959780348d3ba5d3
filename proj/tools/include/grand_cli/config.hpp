#pragma once

// Experiment configuration files: flat `key = value` lines grouped into
//   [code <label>]     family = crc|bch|polar|file plus its parameters
//   [decoder <label>]  code = <code label>, name = GRANDAB|ORBGRAND|SGRAND|LGRAND|ML, parameters
//   [sweep]            ebn0_db, seed, min_frame_errors, max_frames, output, workers
// '#' starts a comment.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "grand/channel.hpp"
#include "grand/codes.hpp"
#include "grand/decoder_spec.hpp"

namespace grand::cli {

/// Invalid configuration; the message names the section and key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Section {
  std::string label;
  std::size_t line = 0;
  std::map<std::string, std::string> values;
  std::map<std::string, std::size_t> lines;
};

struct CodeEntry {
  std::string label;
  std::string spec;  // code_from_spec reference
};

struct DecoderEntry {
  std::string label;
  std::string code_label;
  Section raw;  // resolved against the code length by build_decoder
  std::string source;
};

struct ExperimentConfig {
  std::vector<CodeEntry> codes;
  std::vector<DecoderEntry> decoders;
  std::vector<double> ebn0_db;
  std::uint64_t seed = 1;
  StopRule stop;
  std::filesystem::path output = "results";
  unsigned workers = 1;
  std::filesystem::path base_dir;  // directory of the config file

  const CodeEntry& code(const std::string& label) const;
};

/// Parses and validates everything that does not need a built code.
/// Relative file-family paths resolve against base_dir.
ExperimentConfig parse_config(std::istream& is, const std::string& source = "<config>",
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Builds the decoder for a code of length n, validating parameters.
DecoderSpec build_decoder(const DecoderEntry& entry, const LinearCode& code);

}  // namespace grand::cli
