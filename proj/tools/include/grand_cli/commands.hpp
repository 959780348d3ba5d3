#pragma once

// Subcommand implementations behind the `grand` executable. Each returns a
// process exit code and writes only to the streams it is given.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "grand/verify.hpp"

namespace grand::cli {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitRuntime = 2 };

/// Runs `body`, mapping validation exceptions to 1 and everything else to 2.
int run_guarded(const std::function<int()>& body, std::ostream& err);

struct ConstructOptions {
  std::string family;  // crc | bch | polar
  std::size_t n = 0;
  std::string poly;
  std::optional<int> degree;
  int m = 0;
  int t = 0;
  std::size_t k = 0;
  std::string crc;
  std::optional<int> crc_degree;
  std::string out;  // empty: matrices go to `out` stream
};
int cmd_construct_code(const ConstructOptions& opts, std::ostream& out, std::ostream& err);

struct DecoderOptions {
  std::string name;
  std::optional<std::uint64_t> ab;
  std::optional<std::uint64_t> lw_max;
  std::optional<std::uint64_t> hw_max;
  std::optional<std::uint64_t> delta;
  std::optional<std::uint64_t> budget;
};

struct DecodeOneOptions {
  std::string code;  // code_from_spec reference
  std::string llr;   // path, or "-" for the input stream
  DecoderOptions decoder;
};
int cmd_decode_one(const DecodeOneOptions& opts, std::istream& in, std::ostream& out, std::ostream& err);

struct SweepOptions {
  std::string config;
  std::vector<std::string> decoders;  // labels; empty runs all
  std::optional<unsigned> workers;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> max_frames;
  std::optional<std::uint64_t> min_frame_errors;
  std::optional<std::vector<double>> ebn0_db;
  bool quiet = false;
};
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);

struct CountOptions {
  std::size_t n = 0;
  std::optional<std::size_t> ab;
  std::optional<std::uint64_t> lw_max;
  std::optional<int> hw_cap;
};
int cmd_count_patterns(const CountOptions& opts, std::ostream& out, std::ostream& err);

struct VerifyCommandOptions {
  std::vector<std::string> suites;  // empty runs all
  VerifyOptions settings;
};
int cmd_verify(const VerifyCommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace grand::cli
