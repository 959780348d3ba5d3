#include "grand/channel.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "grand/data_files.hpp"
#include "grand/errors.hpp"

namespace grand {

double noise_variance(double ebn0_db, double rate) {
  return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

void ChannelConfig::validate() const {
  if (!(rate > 0.0 && rate <= 1.0)) throw InvalidParameter("rate must lie in (0, 1]");
  if (!std::isfinite(ebn0_db)) throw InvalidParameter("Eb/N0 must be finite");
}

FrameRng make_frame_rng(std::uint64_t seed, std::uint64_t frame_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(frame_index), static_cast<std::uint32_t>(frame_index >> 32)};
  return FrameRng(seq);
}

namespace {

double uniform53(FrameRng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double GaussianSource::operator()(FrameRng& rng) {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform53(rng);  // (0, 1]
  const double u2 = uniform53(rng);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Frame transmit_frame(const LinearCode& code, const ChannelConfig& cfg, FrameRng& rng) {
  Frame f;
  f.message = BitVector(code.k());
  for (std::size_t i = 0; i < code.k(); i += 64) {
    const std::uint64_t word = rng();
    for (std::size_t b = 0; b < 64 && i + b < code.k(); ++b)
      if ((word >> b) & 1U) f.message.set(i + b);
  }
  f.codeword = code.encode(f.message);
  f.llr.resize(code.n());
  if (cfg.noiseless) {
    for (std::size_t i = 0; i < code.n(); ++i) f.llr[i] = f.codeword.get(i) ? -1e6 : 1e6;
    return f;
  }
  const double sigma2 = cfg.sigma2();
  const double sigma = std::sqrt(sigma2);
  GaussianSource gauss;
  for (std::size_t i = 0; i < code.n(); ++i) {
    const double s = f.codeword.get(i) ? -1.0 : 1.0;
    f.llr[i] = 2.0 * (s + sigma * gauss(rng)) / sigma2;
  }
  return f;
}

void StopRule::validate() const {
  if (min_frame_errors < 1) throw InvalidParameter("min_frame_errors must be at least 1");
  if (max_frames < 1) throw InvalidParameter("max_frames must be at least 1");
}

double SnrStats::fer() const noexcept {
  return frames ? static_cast<double>(frame_errors) / static_cast<double>(frames) : 0.0;
}

double SnrStats::ber() const noexcept {
  const double bits = static_cast<double>(frames) * static_cast<double>(message_bits);
  return bits > 0 ? static_cast<double>(bit_errors) / bits : 0.0;
}

double SnrStats::avg_queries() const noexcept {
  return frames ? static_cast<double>(total_queries) / static_cast<double>(frames) : 0.0;
}

double SnrStats::avg_list_size() const noexcept {
  return frames ? static_cast<double>(total_list_size) / static_cast<double>(frames) : 0.0;
}

void SnrStats::merge(const SnrStats& other) {
  frames += other.frames;
  frame_errors += other.frame_errors;
  bit_errors += other.bit_errors;
  total_queries += other.total_queries;
  total_list_size += other.total_list_size;
}

FrameOutcome simulate_frame(const LinearCode& code, const DecoderSpec& decoder, const ChannelConfig& cfg,
                            std::uint64_t frame_index) {
  FrameRng rng = make_frame_rng(cfg.seed, frame_index);
  const Frame f = transmit_frame(code, cfg, rng);
  const DecodeResult r = decode(decoder, f.llr, code);

  FrameOutcome out;
  out.queries = r.queries;
  out.list_size = r.list_size;
  out.abandoned = r.abandoned;
  BitVector estimate = r.message;
  if (r.abandoned) {
    BitVector hard(code.n());
    for (std::size_t i = 0; i < code.n(); ++i)
      if (f.llr[i] < 0) hard.set(i);
    estimate = multiply(hard, code.right_inverse());
  }
  estimate ^= f.message;
  out.bit_errors = estimate.popcount();
  out.frame_error = r.abandoned || out.bit_errors > 0;
  return out;
}

SnrStats run_point(const LinearCode& code, const DecoderSpec& decoder, const ChannelConfig& cfg,
                   const StopRule& stop, unsigned workers) {
  cfg.validate();
  stop.validate();
  validate(decoder, code);
  workers = std::max(1U, workers);

  SnrStats stats;
  stats.ebn0_db = cfg.ebn0_db;
  stats.message_bits = code.k();

  const std::uint64_t batch = 64ULL * workers;
  std::vector<FrameOutcome> outcomes;
  std::uint64_t next = 0;
  while (stats.frames < stop.max_frames && stats.frame_errors < stop.min_frame_errors) {
    const std::uint64_t count = std::min(batch, stop.max_frames - next);
    outcomes.assign(count, FrameOutcome{});
    auto work = [&](unsigned w) {
      for (std::uint64_t j = w; j < count; j += workers) outcomes[j] = simulate_frame(code, decoder, cfg, next + j);
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (const FrameOutcome& o : outcomes) {
      ++stats.frames;
      stats.frame_errors += o.frame_error ? 1 : 0;
      stats.bit_errors += o.bit_errors;
      stats.total_queries += o.queries;
      stats.total_list_size += o.list_size;
      if (stats.frame_errors >= stop.min_frame_errors) break;
    }
    next += count;
  }
  return stats;
}

std::vector<SnrStats> run_sweep(const LinearCode& code, const DecoderSpec& decoder,
                                const std::vector<double>& ebn0_db, std::uint64_t seed, const StopRule& stop,
                                unsigned workers) {
  if (ebn0_db.empty()) throw InvalidParameter("empty Eb/N0 list");
  std::vector<SnrStats> rows;
  rows.reserve(ebn0_db.size());
  for (double snr : ebn0_db) {
    ChannelConfig cfg;
    cfg.ebn0_db = snr;
    cfg.rate = code.rate();
    cfg.seed = seed;
    rows.push_back(run_point(code, decoder, cfg, stop, workers));
  }
  return rows;
}

namespace {

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<SnrStats>& rows) {
  os << kCsvHeader << '\n';
  for (const SnrStats& s : rows) {
    os << number(s.ebn0_db) << ',' << number(s.fer()) << ',' << number(s.ber()) << ',' << number(s.avg_queries())
       << ',' << number(s.avg_list_size()) << ',' << s.frames << ',' << s.frame_errors << '\n';
  }
}

std::vector<CsvRow> read_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(is, line)) throw ParseError("line 1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError("line 1: unexpected header '" + line + "'");

  std::vector<CsvRow> rows;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7)
      throw ParseError("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                       std::to_string(fields.size()));
    CsvRow row;
    try {
      std::size_t used = 0;
      auto real = [&](const std::string& s) {
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      auto count = [&](const std::string& s) {
        const auto v = std::stoull(s, &used);
        if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
        return static_cast<std::uint64_t>(v);
      };
      row.ebn0_db = real(fields[0]);
      row.fer = real(fields[1]);
      row.ber = real(fields[2]);
      row.avg_queries = real(fields[3]);
      row.avg_list_size = real(fields[4]);
      row.frames = count(fields[5]);
      row.frame_errors = count(fields[6]);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": malformed number");
    }
    if (row.frame_errors > row.frames)
      throw ParseError("line " + std::to_string(line_no) + ": frame_errors exceeds frames");
    rows.push_back(row);
  }
  if (rows.empty()) throw ParseError("no data rows");
  return rows;
}

void write_metadata(std::ostream& os, const RunMetadata& meta) {
  os << "version = " << version_string() << '\n';
  os << "seed = " << meta.seed << '\n';
  os << "code = " << meta.code << '\n';
  os << "decoder = " << meta.decoder << '\n';
  os << "ebn0_db =";
  for (double v : meta.ebn0_db) os << ' ' << number(v);
  os << '\n';
  os << "min_frame_errors = " << meta.stop.min_frame_errors << '\n';
  os << "max_frames = " << meta.stop.max_frames << '\n';
  os << "workers = " << meta.workers << '\n';
  os << "rng = " << kRngDescription << '\n';
  os << "gaussian = " << kGaussianDescription << '\n';
  os << "channel = BPSK (0 -> +1, 1 -> -1) over AWGN, llr = 2r/sigma^2\n";
}

}  // namespace grand
