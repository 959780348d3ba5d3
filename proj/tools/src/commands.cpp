#include "grand_cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "grand/channel.hpp"
#include "grand/codes.hpp"
#include "grand/decoder_spec.hpp"
#include "grand/errors.hpp"
#include "grand/patterns.hpp"
#include "grand_cli/config.hpp"

namespace grand::cli {

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {  // InvalidParameter, ShapeError, OracleLimitError
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const CorruptCodeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitRuntime;
  }
}

namespace {

std::string code_reference(const ConstructOptions& o) {
  if (o.family == "crc") {
    if (o.poly.empty()) throw InvalidParameter("crc needs --poly");
    std::string spec = "crc:" + std::to_string(o.n) + ":" + o.poly;
    if (o.degree) spec += ":" + std::to_string(*o.degree);
    return spec;
  }
  if (o.family == "bch") return "bch:" + std::to_string(o.m) + ":" + std::to_string(o.t);
  if (o.family == "polar") {
    std::string spec = "polar:" + std::to_string(o.n) + ":" + std::to_string(o.k);
    if (o.crc.empty() != !o.crc_degree) throw InvalidParameter("--crc and --crc-degree go together");
    if (!o.crc.empty()) spec += ":" + o.crc + ":" + std::to_string(*o.crc_degree);
    return spec;
  }
  throw InvalidParameter("unknown code family '" + o.family + "' (crc, bch, polar)");
}

std::vector<double> read_llr(std::istream& is) {
  std::vector<double> llr;
  std::string token;
  while (is >> token) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw ParseError("LLR input: '" + token + "' is not a number");
    llr.push_back(v);
  }
  return llr;
}

DecoderEntry entry_from(const DecoderOptions& d) {
  DecoderEntry e;
  e.label = "command line";
  e.source = "command line";
  e.raw.values["name"] = d.name;
  auto put = [&](const char* key, const std::optional<std::uint64_t>& v) {
    if (v) e.raw.values[key] = std::to_string(*v);
  };
  put("ab", d.ab);
  put("lw_max", d.lw_max);
  put("hw_max", d.hw_max);
  put("delta", d.delta);
  put("budget", d.budget);
  return e;
}

}  // namespace

int cmd_construct_code(const ConstructOptions& opts, std::ostream& out, std::ostream& err) {
  const LinearCode code = code_from_spec(code_reference(opts));
  if (opts.out.empty()) {
    write_code(out, code);
  } else {
    save_code(opts.out, code);
    out << "wrote " << opts.out << '\n';
  }
  err << code.name() << ": n = " << code.n() << ", k = " << code.k() << '\n';
  return kExitOk;
}

int cmd_decode_one(const DecodeOneOptions& opts, std::istream& in, std::ostream& out, std::ostream&) {
  const LinearCode code = code_from_spec(opts.code);
  std::vector<double> llr;
  if (opts.llr == "-") {
    llr = read_llr(in);
  } else {
    std::ifstream f(opts.llr);
    if (!f) throw ParseError("cannot open " + opts.llr);
    llr = read_llr(f);
  }
  if (llr.size() != code.n())
    throw InvalidParameter("read " + std::to_string(llr.size()) + " LLRs, code length is " + std::to_string(code.n()));
  const DecoderSpec spec = build_decoder(entry_from(opts.decoder), code);
  const DecodeResult r = decode(spec, llr, code);

  out << "code: " << code.name() << '\n';
  out << "decoder: " << describe(spec) << '\n';
  out << "abandoned: " << (r.abandoned ? "yes" : "no") << '\n';
  out << "queries: " << r.queries << '\n';
  if (!r.abandoned) {
    out << "list_size: " << r.list_size << '\n';
    out << "error_pattern:";
    for (std::size_t i : r.pattern.support) out << ' ' << i;
    out << '\n';
    out << "soft_weight: " << r.soft_weight << '\n';
    out << "codeword: " << r.codeword.to_string() << '\n';
    out << "message: " << r.message.to_string() << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = load_config(opts.config);
  if (opts.workers) cfg.workers = *opts.workers;
  if (opts.output) cfg.output = *opts.output;
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.max_frames) cfg.stop.max_frames = *opts.max_frames;
  if (opts.min_frame_errors) cfg.stop.min_frame_errors = *opts.min_frame_errors;
  if (opts.ebn0_db) cfg.ebn0_db = *opts.ebn0_db;
  if (cfg.workers < 1) throw InvalidParameter("--workers must be at least 1");
  cfg.stop.validate();
  if (cfg.ebn0_db.empty()) throw InvalidParameter("empty Eb/N0 list");

  std::vector<const DecoderEntry*> selected;
  for (const std::string& label : opts.decoders) {
    const DecoderEntry* found = nullptr;
    for (const DecoderEntry& d : cfg.decoders)
      if (d.label == label) found = &d;
    if (!found) throw ConfigError("config has no decoder labelled '" + label + "'");
    selected.push_back(found);
  }
  if (selected.empty())
    for (const DecoderEntry& d : cfg.decoders) selected.push_back(&d);

  // build and validate everything before the first frame runs
  std::map<std::string, LinearCode> codes;
  std::vector<DecoderSpec> specs;
  for (const DecoderEntry* d : selected) {
    if (!codes.count(d->code_label)) codes.emplace(d->code_label, code_from_spec(cfg.code(d->code_label).spec));
    specs.push_back(build_decoder(*d, codes.at(d->code_label)));
  }

  std::filesystem::create_directories(cfg.output);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const DecoderEntry& d = *selected[i];
    const LinearCode& code = codes.at(d.code_label);
    std::vector<SnrStats> rows;
    for (double snr : cfg.ebn0_db) {
      ChannelConfig ch;
      ch.ebn0_db = snr;
      ch.rate = code.rate();
      ch.seed = cfg.seed;
      rows.push_back(run_point(code, specs[i], ch, cfg.stop, cfg.workers));
      if (!opts.quiet) {
        const SnrStats& s = rows.back();
        err << d.label << ": " << snr << " dB  FER " << s.fer() << "  avg queries " << s.avg_queries() << "  ("
            << s.frame_errors << '/' << s.frames << ")\n";
      }
    }
    const auto csv_path = cfg.output / (d.label + ".csv");
    const auto meta_path = cfg.output / (d.label + ".meta.txt");
    {
      std::ofstream f(csv_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + csv_path.string());
      write_csv(f, rows);
      if (!f) throw std::runtime_error("write failed for " + csv_path.string());
    }
    {
      std::ofstream f(meta_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + meta_path.string());
      RunMetadata meta;
      meta.seed = cfg.seed;
      meta.code = code.name() + " [" + cfg.code(d.code_label).spec + "]";
      meta.decoder = describe(specs[i]);
      meta.stop = cfg.stop;
      meta.ebn0_db = cfg.ebn0_db;
      meta.workers = cfg.workers;
      write_metadata(f, meta);
    }
    out << csv_path.string() << '\n';
  }
  return kExitOk;
}

int cmd_count_patterns(const CountOptions& opts, std::ostream& out, std::ostream&) {
  if (opts.n < 1) throw InvalidParameter("--n must be at least 1");
  std::uint64_t total = 0;
  if (opts.ab) {
    if (opts.lw_max || opts.hw_cap) throw InvalidParameter("--ab excludes --lw-max and --hw-cap");
    if (*opts.ab > opts.n) throw InvalidParameter("--ab exceeds --n");
    GrandabStream stream(opts.n, *opts.ab);
    while (stream.next_support()) ++total;
  } else {
    // the count does not depend on the reliability order
    const std::vector<double> flat(opts.n, 1.0);
    const ReliabilityOrder ord = sort_reliability(flat);
    OrbgrandStream stream(ord, opts.lw_max.value_or(max_logistic_weight(opts.n)),
                          opts.hw_cap.value_or(static_cast<int>(opts.n)));
    while (stream.next_partition()) ++total;
  }
  out << "patterns: " << total << '\n';
  out << "non-zero patterns: " << total - 1 << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyCommandOptions& opts, std::ostream& out, std::ostream&) {
  std::vector<std::string> suites = opts.suites.empty() ? suite_names() : opts.suites;
  for (const std::string& s : suites) {
    bool known = false;
    for (const std::string& name : suite_names()) known = known || name == s;
    if (!known) throw InvalidParameter("unknown suite '" + s + "'");
  }
  bool all = true;
  for (const std::string& s : suites) {
    const SuiteReport rep = run_suite(s, opts.settings);
    out << (rep.passed ? "PASS " : "FAIL ") << rep.name << ": " << rep.summary << '\n';
    for (const std::string& c : rep.counterexamples) out << "  counterexample: " << c << '\n';
    all = all && rep.passed;
  }
  return all ? kExitOk : kExitRuntime;
}

}  // namespace grand::cli
