#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schur2/render.hpp"
#include "schur2/rowcache.hpp"

namespace schur2 {

namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitUsage = 2;

struct MatrixArgs {
  std::string variant = "classical";
  Weight p = 0;
  std::optional<Weight> ell;
  Weight lowest = 0;
  std::optional<Weight> size;
  std::optional<Weight> a;
  std::optional<Weight> k;
  std::string style = "figure";
  Weight group = 0;
  std::string zero_glyph = ".";
  std::string one_glyph = "1";
  bool absolute = false;
  std::string out_file;
  std::string cache_dir;
};

inline void add_matrix_flags(CLI::App* cmd, MatrixArgs& args) {
  cmd->add_option("--variant", args.variant, "classical or quantum")
      ->check(CLI::IsMember({"classical", "quantum"}));
  cmd->add_option("--p", args.p, "characteristic (prime)")->required();
  cmd->add_option("--ell", args.ell, "quantum parameter (order of the root of unity)");
  cmd->add_option("--lowest", args.lowest, "residue of the lowest weight (default 0)");
  auto* size = cmd->add_option("--size", args.size, "number of simple modules");
  auto* a = cmd->add_option("--a", args.a, "block size factor a (with --k: size a*p^k)");
  auto* k = cmd->add_option("--k", args.k, "block size exponent k");
  size->excludes(a)->excludes(k);
  a->needs(k);
  k->needs(a);
  cmd->add_option("--style", args.style, "figure, csv or json")
      ->check(CLI::IsMember({"figure", "csv", "json"}));
  cmd->add_option("--group", args.group, "separator period (default p)");
  cmd->add_option("--zero-glyph", args.zero_glyph, "glyph for zero entries");
  cmd->add_option("--one-glyph", args.one_glyph, "glyph for unit entries");
  cmd->add_flag("--absolute", args.absolute, "label by absolute weights");
  cmd->add_option("--out", args.out_file, "write to a file instead of stdout");
  cmd->add_option("--cache", args.cache_dir, "row cache directory");
}

inline BlockSpec spec_from_args(const MatrixArgs& args, std::ostream& err,
                                bool& ok) {
  ok = true;
  std::vector<std::string> problems;
  Weight size = 1;
  if (args.size) {
    size = *args.size;
  } else if (args.a && args.k) {
    if (*args.a < 2 || *args.a > args.p)
      problems.push_back("--a must satisfy 2 <= a <= p");
    else
      size = checked_mul(*args.a, checked_pow(args.p, *args.k));
  } else {
    problems.push_back("one of --size or --a/--k is required");
  }
  BlockSpec spec;
  if (args.variant == "quantum") {
    if (!args.ell) {
      problems.push_back("--ell is required for the quantum variant");
      spec = BlockSpec::quantum(args.p, args.p + 1, args.lowest, size);
    } else {
      spec = BlockSpec::quantum(args.p, *args.ell, args.lowest, size);
    }
  } else {
    spec = BlockSpec::classical(args.p, args.lowest, size);
  }
  auto violations = spec.violations();
  problems.insert(problems.end(), violations.begin(), violations.end());
  if (!problems.empty()) {
    err << "invalid parameters:\n";
    for (const auto& s : problems) err << "  - " << s << "\n";
    ok = false;
  }
  return spec;
}

inline int write_output(const std::string& text, const std::string& out_file,
                        std::ostream& out, std::ostream& err) {
  if (out_file.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream f(out_file);
  if (!f) {
    err << "cannot open " << out_file << " for writing\n";
    return kExitUsage;
  }
  f << text;
  return kExitOk;
}

inline RenderOptions render_options(const MatrixArgs& args) {
  RenderOptions opt;
  opt.style = style_from_string(args.style);
  opt.group = args.group;
  opt.zero_glyph = args.zero_glyph;
  opt.one_glyph = args.one_glyph;
  opt.absolute = args.absolute;
  return opt;
}

inline int run_matrix_command(const std::string& kind, const MatrixArgs& args,
                              std::ostream& out, std::ostream& err) {
  bool ok = false;
  BlockSpec spec = spec_from_args(args, err, ok);
  if (!ok) return kExitUsage;
  BlockTable table(spec.p);
  if (!args.cache_dir.empty()) load_row_cache(args.cache_dir, table);
  RenderOptions opt = render_options(args);
  std::string text;
  if (kind == "decomp")
    text = render_matrix(decomp_matrix(table, spec), spec, kind, opt);
  else if (kind == "tilting")
    text = render_matrix(tilt_matrix(table, spec), spec, kind, opt);
  else if (kind == "cartan")
    text = render_matrix(cartan_matrix(table, spec.size), spec, kind, opt);
  else
    text = render_matrix(ringel_cartan_matrix(table, spec.size), spec, kind, opt);
  if (!args.cache_dir.empty()) save_row_cache(args.cache_dir, table);
  return write_output(text, args.out_file, out, err);
}

struct BlocksArgs {
  std::string variant = "classical";
  Weight p = 0;
  std::optional<Weight> ell;
  Weight r = 0;
  std::string format = "text";
  std::string out_file;
  std::string cache_dir;
};

inline int run_blocks_command(const BlocksArgs& args, std::ostream& out,
                              std::ostream& err) {
  SchurParams params = args.variant == "quantum"
                           ? SchurParams::quantum(args.p, args.ell.value_or(0))
                           : SchurParams::classical(args.p);
  if (args.variant == "quantum" && !args.ell) {
    err << "invalid parameters:\n  - --ell is required for the quantum variant\n";
    return kExitUsage;
  }
  auto violations = params.spec(0, 1).violations();
  if (!violations.empty()) {
    err << "invalid parameters:\n";
    for (const auto& s : violations) err << "  - " << s << "\n";
    return kExitUsage;
  }
  BlockTable table(params.p);
  if (!args.cache_dir.empty()) load_row_cache(args.cache_dir, table);
  auto comps = block_partition(args.r, params, table);
  std::string text;
  if (args.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : comps) j.push_back(component_to_json(c));
    text = j.dump(2) + "\n";
  } else {
    text = components_text(comps);
  }
  if (!args.cache_dir.empty()) save_row_cache(args.cache_dir, table);
  return write_output(text, args.out_file, out, err);
}

struct VerifyArgs {
  std::string suite = "all";
  std::vector<Weight> primes;
  std::vector<Weight> ells;
  bool classical_only = false;
  bool quantum_only = false;
  Weight max_size = 1000;
  std::optional<Weight> k_max;
  std::optional<Weight> size;
  unsigned jobs = 1;
  bool json = false;
  std::string out_file;
  std::string cache_dir;
};

inline int run_verify_command(const VerifyArgs& args, std::ostream& out,
                              std::ostream& err) {
  VerifyOptions opt;
  opt.suites = {args.suite};
  if (!args.primes.empty()) opt.primes = args.primes;
  if (!args.ells.empty()) opt.ells = args.ells;
  opt.include_classical = !args.quantum_only;
  opt.include_quantum = !args.classical_only;
  opt.max_size = args.max_size;
  opt.k_max = args.k_max;
  opt.exact_size = args.size;
  opt.jobs = args.jobs;
  opt.cache_dir = args.cache_dir;
  for (Weight p : opt.primes)
    if (!is_prime(p)) {
      err << "invalid parameters:\n  - p = " << p << " is not prime\n";
      return kExitUsage;
    }
  auto reports = run_verification(opt);
  std::size_t failures = 0;
  std::string text;
  if (args.json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) j.push_back(report_to_json(r));
    text = j.dump(2) + "\n";
    for (const auto& r : reports) failures += r.pass ? 0 : 1;
  } else {
    for (const auto& r : reports) {
      text += report_line(r) + "\n";
      failures += r.pass ? 0 : 1;
    }
    text += std::to_string(reports.size() - failures) + "/" +
            std::to_string(reports.size()) + " checks passed\n";
  }
  int code = write_output(text, args.out_file, out, err);
  if (code != kExitOk) return code;
  if (failures > 0) {
    for (const auto& r : reports)
      if (!r.pass) {
        err << "counterexample: " << report_line(r) << "\n";
        break;
      }
    return kExitCounterexample;
  }
  return kExitOk;
}

}  // namespace cli

/// Entry point shared by the binary and the tests. Returns 0 on success,
/// 1 on a verification counterexample or violated invariant, 2 on usage
/// or parameter errors.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"block matrices and identity checks for Schur algebras of rank 2"};
  app.name("schur2");
  app.require_subcommand(1);

  cli::MatrixArgs decomp_args, tilt_args, cartan_args, ringel_args;
  cli::add_matrix_flags(
      app.add_subcommand("decomp", "decomposition matrix of a block"), decomp_args);
  cli::add_matrix_flags(app.add_subcommand("tilting", "tilting matrix of a block"),
                        tilt_args);
  cli::add_matrix_flags(app.add_subcommand("cartan", "Cartan matrix of a block"),
                        cartan_args);
  cli::add_matrix_flags(
      app.add_subcommand("ringel-cartan", "Cartan matrix of the Ringel dual"),
      ringel_args);

  cli::BlocksArgs blocks_args;
  auto* blocks = app.add_subcommand("blocks", "linkage classes of S(2,r) / S_q(2,r)");
  blocks->add_option("--variant", blocks_args.variant, "classical or quantum")
      ->check(CLI::IsMember({"classical", "quantum"}));
  blocks->add_option("--p", blocks_args.p, "characteristic (prime)")->required();
  blocks->add_option("--ell", blocks_args.ell, "quantum parameter");
  blocks->add_option("--r", blocks_args.r, "degree r")->required();
  blocks->add_option("--format", blocks_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  blocks->add_option("--out", blocks_args.out_file, "write to a file");
  blocks->add_option("--cache", blocks_args.cache_dir, "row cache directory");

  cli::VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "machine-check the block identities");
  verify->add_option("--suite", verify_args.suite, "which identities to check")
      ->check(CLI::IsMember({"all", "prop4.1", "prop4.4", "cor4.3", "lemmas",
                             "lemma4.6", "ringel", "factorization"}));
  verify->add_option("--p", verify_args.primes, "primes to sweep (default 2 3 5 7)");
  verify->add_option("--ell", verify_args.ells,
                     "quantum parameters to sweep (default 2 3 4 5 7)");
  verify->add_flag("--classical-only", verify_args.classical_only,
                   "skip the quantum variants");
  verify->add_flag("--quantum-only", verify_args.quantum_only,
                   "skip the classical variant");
  verify->add_option("--max-size", verify_args.max_size,
                     "largest block size in the sweep (default 1000)");
  verify->add_option("--k-max", verify_args.k_max, "largest exponent k");
  verify->add_option("--size", verify_args.size, "restrict to one block size");
  verify->add_option("--jobs", verify_args.jobs, "parallel verification tasks");
  verify->add_flag("--json", verify_args.json, "emit the JSON report");
  verify->add_option("--out", verify_args.out_file, "write to a file");
  verify->add_option("--cache", verify_args.cache_dir, "row cache directory");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return cli::kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return cli::kExitUsage;
  }

  try {
    if (app.got_subcommand("decomp"))
      return cli::run_matrix_command("decomp", decomp_args, out, err);
    if (app.got_subcommand("tilting"))
      return cli::run_matrix_command("tilting", tilt_args, out, err);
    if (app.got_subcommand("cartan"))
      return cli::run_matrix_command("cartan", cartan_args, out, err);
    if (app.got_subcommand("ringel-cartan"))
      return cli::run_matrix_command("ringel-cartan", ringel_args, out, err);
    if (app.got_subcommand("blocks"))
      return cli::run_blocks_command(blocks_args, out, err);
    if (app.got_subcommand("verify"))
      return cli::run_verify_command(verify_args, out, err);
  } catch (const std::invalid_argument& e) {
    err << "invalid parameters:\n  - " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const overflow_error& e) {
    err << "invalid parameters:\n  - " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const invariant_error& e) {
    err << "invariant violation: " << e.what() << "\n";
    return cli::kExitCounterexample;
  }
  err << "no subcommand given\n";
  return cli::kExitUsage;
}

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(std::move(args), out, err);
}

}  // namespace schur2
