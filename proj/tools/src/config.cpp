#include "grand_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace grand::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Reader {
 public:
  Reader(std::string source, std::string kind, const Section& section)
      : source_(std::move(source)), kind_(std::move(kind)), section_(section) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    std::ostringstream os;
    os << source_;
    const auto it = section_.lines.find(key);
    os << ':' << (it != section_.lines.end() ? it->second : section_.line) << ": [" << kind_;
    if (!section_.label.empty()) os << ' ' << section_.label;
    os << "] key '" << key << "': " << what;
    throw ConfigError(os.str());
  }

  bool has(const std::string& key) const { return section_.values.count(key) > 0; }

  const std::string& text(const std::string& key) const {
    const auto it = section_.values.find(key);
    if (it == section_.values.end()) fail(key, "missing");
    return it->second;
  }

  std::uint64_t count(const std::string& key) const {
    const std::string& v = text(key);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
      fail(key, "must be a nonnegative integer, got '" + v + "'");
    return out;
  }

  std::uint64_t count_or(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? count(key) : fallback;
  }

  std::vector<double> reals(const std::string& key) const {
    std::string v = text(key);
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream is(v);
    std::vector<double> out;
    std::string token;
    while (is >> token) {
      double x = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
      if (ec != std::errc() || ptr != token.data() + token.size()) fail(key, "'" + token + "' is not a number");
      out.push_back(x);
    }
    if (out.empty()) fail(key, "empty list");
    return out;
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    const std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : section_.values)
      if (!ok.count(k)) fail(k, "unknown key");
  }

 private:
  std::string source_;
  std::string kind_;
  const Section& section_;
};

std::string code_spec(const Reader& r, const std::filesystem::path& base_dir) {
  const std::string& family = r.text("family");
  if (family == "crc") {
    r.allow_only({"family", "n", "poly", "degree"});
    std::string spec = "crc:" + std::to_string(r.count("n")) + ":" + r.text("poly");
    if (r.has("degree")) spec += ":" + std::to_string(r.count("degree"));
    return spec;
  }
  if (family == "bch") {
    r.allow_only({"family", "m", "t"});
    return "bch:" + std::to_string(r.count("m")) + ":" + std::to_string(r.count("t"));
  }
  if (family == "polar") {
    r.allow_only({"family", "n", "k", "crc", "crc_degree"});
    std::string spec = "polar:" + std::to_string(r.count("n")) + ":" + std::to_string(r.count("k"));
    if (r.has("crc") != r.has("crc_degree")) r.fail(r.has("crc") ? "crc_degree" : "crc", "crc and crc_degree go together");
    if (r.has("crc")) spec += ":" + r.text("crc") + ":" + std::to_string(r.count("crc_degree"));
    return spec;
  }
  if (family == "file") {
    r.allow_only({"family", "path"});
    std::filesystem::path p = r.text("path");
    if (p.is_relative()) p = base_dir / p;
    return "file:" + p.string();
  }
  r.fail("family", "unknown code family '" + family + "'");
}

void check_decoder_keys(const Reader& r) {
  const std::string& name = r.text("name");
  if (name == "GRANDAB") {
    r.allow_only({"code", "name", "ab"});
    r.count("ab");
  } else if (name == "ORBGRAND") {
    r.allow_only({"code", "name", "lw_max", "hw_max"});
    r.count_or("lw_max", 0);
    r.count_or("hw_max", 0);
  } else if (name == "SGRAND") {
    r.allow_only({"code", "name", "budget"});
    r.count_or("budget", 0);
  } else if (name == "LGRAND") {
    r.allow_only({"code", "name", "lw_max", "hw_max", "delta"});
    r.count("lw_max");
    r.count("hw_max");
    r.count("delta");
  } else if (name == "ML") {
    r.allow_only({"code", "name"});
  } else {
    r.fail("name", "unknown decoder '" + name + "' (GRANDAB, ORBGRAND, SGRAND, LGRAND, ML)");
  }
}

}  // namespace

const CodeEntry& ExperimentConfig::code(const std::string& label) const {
  for (const CodeEntry& c : codes)
    if (c.label == label) return c;
  throw ConfigError("no code section labelled '" + label + "'");
}

ExperimentConfig parse_config(std::istream& is, const std::string& source, const std::filesystem::path& base_dir) {
  struct Raw {
    std::string kind;
    Section section;
  };
  std::vector<Raw> sections;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      std::istringstream hs(line.substr(1, line.size() - 2));
      Raw raw;
      hs >> raw.kind >> raw.section.label;
      std::string extra;
      if (hs >> extra) throw ConfigError(where + "section header has extra words");
      raw.section.line = line_no;
      if (raw.kind == "code" || raw.kind == "decoder") {
        if (raw.section.label.empty()) throw ConfigError(where + "[" + raw.kind + "] needs a label");
      } else if (raw.kind == "sweep") {
        if (!raw.section.label.empty()) throw ConfigError(where + "[sweep] takes no label");
      } else {
        throw ConfigError(where + "unknown section kind '" + raw.kind + "'");
      }
      sections.push_back(std::move(raw));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    if (sections.empty()) throw ConfigError(where + "key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    Section& sec = sections.back().section;
    if (!sec.values.emplace(key, value).second) throw ConfigError(where + "duplicate key '" + key + "'");
    sec.lines[key] = line_no;
  }

  ExperimentConfig cfg;
  cfg.base_dir = base_dir;
  std::set<std::string> labels;
  bool have_sweep = false;
  for (const Raw& raw : sections) {
    const Reader r(source, raw.kind, raw.section);
    if (raw.kind == "sweep") {
      if (have_sweep) throw ConfigError(source + ":" + std::to_string(raw.section.line) + ": second [sweep] section");
      have_sweep = true;
      r.allow_only({"ebn0_db", "seed", "min_frame_errors", "max_frames", "output", "workers"});
      cfg.ebn0_db = r.reals("ebn0_db");
      cfg.seed = r.count_or("seed", cfg.seed);
      cfg.stop.min_frame_errors = r.count_or("min_frame_errors", cfg.stop.min_frame_errors);
      cfg.stop.max_frames = r.count_or("max_frames", cfg.stop.max_frames);
      if (cfg.stop.min_frame_errors < 1) r.fail("min_frame_errors", "must be at least 1");
      if (cfg.stop.max_frames < 1) r.fail("max_frames", "must be at least 1");
      if (r.has("output")) cfg.output = r.text("output");
      const std::uint64_t workers = r.count_or("workers", 1);
      if (workers < 1 || workers > 1024) r.fail("workers", "must be in [1, 1024]");
      cfg.workers = static_cast<unsigned>(workers);
      continue;
    }
    if (!labels.insert(raw.section.label).second)
      throw ConfigError(source + ":" + std::to_string(raw.section.line) + ": duplicate label '" + raw.section.label + "'");
    if (raw.kind == "code") {
      cfg.codes.push_back({raw.section.label, code_spec(r, cfg.base_dir)});
    } else {
      check_decoder_keys(r);
      cfg.decoders.push_back({raw.section.label, r.text("code"), raw.section, source});
    }
  }
  if (!have_sweep) throw ConfigError(source + ": missing [sweep] section");
  if (cfg.decoders.empty()) throw ConfigError(source + ": no [decoder] sections");
  for (const DecoderEntry& d : cfg.decoders) {
    const bool known = std::any_of(cfg.codes.begin(), cfg.codes.end(),
                                   [&](const CodeEntry& c) { return c.label == d.code_label; });
    if (!known) Reader(source, "decoder", d.raw).fail("code", "no code section labelled '" + d.code_label + "'");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in, path.string(), path.parent_path());
}

DecoderSpec build_decoder(const DecoderEntry& entry, const LinearCode& code) {
  const Reader r(entry.source, "decoder", entry.raw);
  const std::size_t n = code.n();
  const std::string& name = r.text("name");
  auto check_lw = [&](std::uint64_t lw) {
    if (lw > max_logistic_weight(n))
      r.fail("lw_max", std::to_string(lw) + " exceeds n(n+1)/2 = " + std::to_string(max_logistic_weight(n)));
    return lw;
  };
  auto check_hw = [&](std::uint64_t hw) {
    if (hw < 1 || hw > n) r.fail("hw_max", std::to_string(hw) + " outside [1, " + std::to_string(n) + "]");
    return static_cast<int>(hw);
  };
  DecoderSpec spec;
  if (name == "GRANDAB") {
    const std::uint64_t ab = r.count("ab");
    if (ab > n) r.fail("ab", std::to_string(ab) + " exceeds n = " + std::to_string(n));
    spec = GrandabParams{static_cast<std::size_t>(ab)};
  } else if (name == "ORBGRAND") {
    spec = OrbgrandParams{check_lw(r.count_or("lw_max", max_logistic_weight(n))), check_hw(r.count_or("hw_max", n))};
  } else if (name == "SGRAND") {
    const std::uint64_t budget = r.count_or("budget", kUnlimited);
    if (budget == 0) r.fail("budget", "must be at least 1");
    spec = SgrandParams{budget};
  } else if (name == "LGRAND") {
    spec = LgrandParams{check_lw(r.count("lw_max")), check_hw(r.count("hw_max")), r.count("delta")};
  } else if (name == "ML") {
    if (code.k() > 20) r.fail("name", "ML decoding needs k <= 20");
    spec = MlParams{};
  } else {
    r.fail("name", "unknown decoder '" + name + "'");
  }
  validate(spec, code);
  return spec;
}

}  // namespace grand::cli
