#pragma once

// BPSK over AWGN and the Monte-Carlo harness measuring FER, BER and average
// query counts per Eb/N0 point.
//
// Frame f of a run draws all its randomness from make_frame_rng(seed, f), so
// results do not depend on how frames are spread over worker threads.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "grand/bits.hpp"
#include "grand/codes.hpp"
#include "grand/decoder_spec.hpp"

namespace grand {

/// σ² = 1 / (2·rate·10^(ebn0_db/10)).
double noise_variance(double ebn0_db, double rate);

struct ChannelConfig {
  double ebn0_db = 0.0;
  double rate = 1.0;
  std::uint64_t seed = 1;
  bool noiseless = false;  // LLRs of ±(large) with no noise drawn

  double sigma2() const { return noise_variance(ebn0_db, rate); }
  /// Throws InvalidParameter unless rate is in (0, 1] and Eb/N0 is finite.
  void validate() const;
};

using FrameRng = std::mt19937_64;

FrameRng make_frame_rng(std::uint64_t seed, std::uint64_t frame_index);

/// Box-Muller on two 53-bit uniforms; caches the second variate.
class GaussianSource {
 public:
  double operator()(FrameRng& rng);

 private:
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline constexpr const char* kRngDescription =
    "mt19937_64 per frame, seeded by seed_seq{seed lo32, seed hi32, frame lo32, frame hi32}";
inline constexpr const char* kGaussianDescription = "Box-Muller on 53-bit uniforms from the frame generator";

struct Frame {
  BitVector message;
  BitVector codeword;
  std::vector<double> llr;
};

/// Random message u, c = u·G, s_i = 1 - 2c_i, r_i = s_i + n_i, llr_i = 2r_i/σ².
Frame transmit_frame(const LinearCode& code, const ChannelConfig& cfg, FrameRng& rng);

struct StopRule {
  std::uint64_t min_frame_errors = 100;
  std::uint64_t max_frames = 10'000'000;

  /// Throws InvalidParameter unless both are at least 1.
  void validate() const;
};

struct SnrStats {
  double ebn0_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t total_queries = 0;
  std::uint64_t total_list_size = 0;
  std::size_t message_bits = 0;  // k, for BER

  double fer() const noexcept;
  double ber() const noexcept;
  double avg_queries() const noexcept;
  double avg_list_size() const noexcept;

  void merge(const SnrStats& other);
  friend bool operator==(const SnrStats&, const SnrStats&) = default;
};

struct FrameOutcome {
  bool frame_error = false;
  bool abandoned = false;
  std::uint64_t bit_errors = 0;
  std::uint64_t queries = 0;
  std::uint64_t list_size = 0;
};

/// Transmits and decodes frame `frame_index`. An abandoned decode is a frame
/// error; its bit errors compare the hard decision's message estimate.
FrameOutcome simulate_frame(const LinearCode& code, const DecoderSpec& decoder, const ChannelConfig& cfg,
                            std::uint64_t frame_index);

/// Frames 0, 1, 2, ... until min_frame_errors errors or max_frames frames.
/// Frames run in batches across `workers` threads; outcomes are folded in
/// frame order, so the result is independent of the worker count.
SnrStats run_point(const LinearCode& code, const DecoderSpec& decoder, const ChannelConfig& cfg,
                   const StopRule& stop, unsigned workers = 1);

std::vector<SnrStats> run_sweep(const LinearCode& code, const DecoderSpec& decoder,
                                const std::vector<double>& ebn0_db, std::uint64_t seed, const StopRule& stop,
                                unsigned workers = 1);

inline constexpr const char* kCsvHeader = "ebn0_db,fer,ber,avg_queries,avg_list_size,frames,frame_errors";

void write_csv(std::ostream& os, const std::vector<SnrStats>& rows);

struct CsvRow {
  double ebn0_db = 0.0;
  double fer = 0.0;
  double ber = 0.0;
  double avg_queries = 0.0;
  double avg_list_size = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
};

/// Parses harness CSV. Throws ParseError naming the line on malformed input
/// or an empty table.
std::vector<CsvRow> read_csv(std::istream& is);

struct RunMetadata {
  std::uint64_t seed = 0;
  std::string code;
  std::string decoder;
  StopRule stop;
  std::vector<double> ebn0_db;
  unsigned workers = 1;
};

/// key = value lines; no timestamps, so reruns produce identical files.
void write_metadata(std::ostream& os, const RunMetadata& meta);

}  // namespace grand
