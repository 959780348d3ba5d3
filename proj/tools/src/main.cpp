#include <iostream>

#include <CLI11.hpp>

#include "grand/data_files.hpp"
#include "grand_cli/commands.hpp"

namespace {

void add_decoder_options(CLI::App* app, grand::cli::DecoderOptions& d) {
  app->add_option("--decoder", d.name, "GRANDAB, ORBGRAND, SGRAND, LGRAND or ML")->required();
  app->add_option("--ab", d.ab, "GRANDAB maximum Hamming weight");
  app->add_option("--lw-max", d.lw_max, "maximum logistic weight");
  app->add_option("--hw-max", d.hw_max, "maximum Hamming weight");
  app->add_option("--delta", d.delta, "LGRAND logistic-weight extension after the first hit");
  app->add_option("--budget", d.budget, "SGRAND query budget");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace grand::cli;

  CLI::App app{"GRAND decoders: code construction, decoding, Monte-Carlo sweeps and oracle checks"};
  app.set_version_flag("--version", grand::version_string());
  app.require_subcommand(1);

  ConstructOptions construct;
  auto* c = app.add_subcommand("construct-code", "build a code and write its G and H matrices");
  c->add_option("family", construct.family, "crc, bch or polar")->required();
  c->add_option("--n", construct.n, "code length (crc) or polar length N");
  c->add_option("--poly", construct.poly, "CRC polynomial in hex, leading term implicit");
  c->add_option("--degree", construct.degree, "CRC degree when not 4 x hex digits");
  c->add_option("--m", construct.m, "BCH field extension degree");
  c->add_option("--t", construct.t, "BCH correction capability");
  c->add_option("--k", construct.k, "polar message length");
  c->add_option("--crc", construct.crc, "polar outer CRC polynomial in hex");
  c->add_option("--crc-degree", construct.crc_degree, "polar outer CRC degree");
  c->add_option("--out", construct.out, "output file (default: standard output)");

  DecodeOneOptions decode_one;
  auto* d = app.add_subcommand("decode-one", "decode one LLR vector");
  d->add_option("--code", decode_one.code, "crc:<n>:<hex>[:<deg>] | bch:<m>:<t> | polar:<N>:<k>[:<hex>:<deg>] | file:<path>")
      ->required();
  d->add_option("--llr", decode_one.llr, "whitespace-separated LLRs, '-' for standard input")->required();
  add_decoder_options(d, decode_one.decoder);

  SweepOptions sweep;
  std::vector<double> ebn0;
  auto* s = app.add_subcommand("sweep", "run the Monte-Carlo harness over a config file");
  s->add_option("config", sweep.config, "experiment config")->required()->check(CLI::ExistingFile);
  s->add_option("--decoder", sweep.decoders, "run only these decoder labels");
  s->add_option("--workers", sweep.workers, "worker threads per point");
  s->add_option("--output", sweep.output, "output directory");
  s->add_option("--seed", sweep.seed, "master seed");
  s->add_option("--max-frames", sweep.max_frames, "frame cap per point");
  s->add_option("--min-frame-errors", sweep.min_frame_errors, "frame errors that end a point");
  auto* ebn0_opt = s->add_option("--ebn0", ebn0, "Eb/N0 points in dB");
  s->add_flag("--quiet", sweep.quiet, "no per-point progress");

  CountOptions count;
  auto* n = app.add_subcommand("count-patterns", "count GRANDAB or ORBGRAND test patterns");
  n->add_option("--n", count.n, "code length")->required();
  n->add_option("--ab", count.ab, "GRANDAB maximum Hamming weight");
  n->add_option("--lw-max", count.lw_max, "ORBGRAND maximum logistic weight");
  n->add_option("--hw-cap", count.hw_cap, "ORBGRAND maximum Hamming weight");

  VerifyCommandOptions verify;
  auto* v = app.add_subcommand("verify", "run the oracle-equivalence suites");
  v->add_option("--suite", verify.suites, "suite name (repeatable)");
  v->add_option("--n", verify.settings.n, "largest length for the pattern-order suites");
  v->add_option("--prefix", verify.settings.prefix, "SGRAND prefix length compared with the oracle");
  v->add_option("--frames", verify.settings.frames, "frames for ml-decode");
  v->add_option("--seed", verify.settings.seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*c) return run_guarded([&] { return cmd_construct_code(construct, std::cout, std::cerr); }, std::cerr);
  if (*d) return run_guarded([&] { return cmd_decode_one(decode_one, std::cin, std::cout, std::cerr); }, std::cerr);
  if (*s) {
    if (ebn0_opt->count() > 0) sweep.ebn0_db = ebn0;
    return run_guarded([&] { return cmd_sweep(sweep, std::cout, std::cerr); }, std::cerr);
  }
  if (*n) return run_guarded([&] { return cmd_count_patterns(count, std::cout, std::cerr); }, std::cerr);
  if (*v) return run_guarded([&] { return cmd_verify(verify, std::cout, std::cerr); }, std::cerr);
  return kExitValidation;
}
