// Command-line front end: validate colorings, run the certificate pipeline,
// run the filling solver standalone, run the brute-force oracle, and emit
// machine-readable reports.

#include <iostream>

#include <CLI11.hpp>

#include "cubecolor/io.hpp"

using namespace cubecolor;

namespace {

enum ExitCode {
  kOk = 0,
  kViolation = 1,
  kInvariantFailure = 2,
  kParseError = 3,
  kSizeGuard = 4,
};

struct Options {
  int d = 0, n = 0, m = -1;
  std::string mode = "simplicial";         // check/certify: simplicial|cubical
  std::string search = "exhaustive";       // oracle: exhaustive|random
  std::string adjacency = "simplicial";
  std::uint64_t seed = 0;
  std::int64_t samples = 100;
  int max_palette = 0;
  std::string input, output, trace_path;
  bool split = false;
};

ConstraintMode parse_mode(const std::string& s) {
  if (s == "simplicial") return ConstraintMode::simplicial;
  if (s == "cubical") return ConstraintMode::cubical;
  throw parse_error("unknown mode \"" + s + "\" (expected simplicial or cubical)");
}

void emit(const json& j, const std::string& path) {
  std::string text = j.dump(2) + "\n";
  if (path.empty())
    std::cout << text;
  else
    write_text(path, text);
}

// --d/--n/--m must agree with the input file header when both are given.
void check_spec_override(const Options& opt, const GridSpec& spec) {
  if ((opt.d && opt.d != spec.d) || (opt.n && opt.n != spec.n) ||
      (opt.m >= 0 && opt.m != spec.m))
    throw parse_error("spec flags disagree with the input file header");
}

int run_check(const Options& opt) {
  Coloring coloring = read_coloring(opt.input);
  check_spec_override(opt, coloring.spec);
  ConstraintMode mode = parse_mode(opt.mode);
  ConstraintMode adjacency = parse_mode(opt.adjacency);
  auto violation = validate(coloring.spec, coloring, mode);

  json report = report_header(coloring.spec);
  report["mode"] = opt.mode;
  report["adjacency"] = opt.adjacency;
  report["valid"] = !violation.has_value();
  report["palette_size"] = coloring.palette().size();
  if (violation) {
    report["violation"] = to_json(*violation);
  } else {
    report["violation"] = nullptr;
    report["largest_component"] =
        largest_monochromatic_component(coloring.spec, coloring, adjacency);
  }
  emit(report, opt.output);
  return violation ? kViolation : kOk;
}

int run_certify(const Options& opt) {
  Coloring coloring = read_coloring(opt.input);
  check_spec_override(opt, coloring.spec);
  ConstraintMode adjacency = parse_mode(opt.adjacency);
  if (opt.split) coloring = split_components(coloring.spec, coloring, adjacency);

  BalanceState state = initial_state(coloring.spec, coloring);
  DescentTrace trace;
  state = descend_to_bottom(state, &trace);
  Certificate cert = extract_certificate(state);
  if (!verify_certificate(coloring.spec, coloring, state, cert))
    throw invariant_error("certificate failed independent verification");

  json report = to_json(cert, coloring.spec);
  report["mode"] = opt.mode;
  report["adjacency"] = opt.adjacency;
  report["split_components"] = opt.split;
  emit(report, opt.output);
  if (!opt.trace_path.empty()) {
    json tj = to_json(trace, coloring.spec);
    tj["split_components"] = opt.split;
    emit(tj, opt.trace_path);
  }
  return kOk;
}

int run_fill(const Options& opt) {
  CochainFile file = read_cochain(opt.input);
  check_spec_override(opt, file.region);
  Box region = Box::cube(file.region);
  FillResult result = fill(file.cochain, region, file.k);
  emit(to_json(result, file.region, file.k), opt.output);
  return kOk;
}

int run_oracle(const Options& opt) {
  GridSpec spec(opt.d, opt.n, opt.m);
  ConstraintMode adjacency = parse_mode(opt.adjacency);
  OracleReport report;
  if (opt.search == "exhaustive")
    report = oracle_exhaustive(spec, opt.max_palette, adjacency);
  else if (opt.search == "random")
    report = oracle_random(spec, opt.samples, opt.seed, adjacency);
  else
    throw parse_error("oracle mode must be exhaustive or random");
  emit(to_json(report), opt.output);
  std::cout << "d,n,m,mode,samples,value\n" << oracle_csv_row(report);
  return kOk;
}

int run_gen(const Options& opt) {
  GridSpec spec(opt.d, opt.n, opt.m);
  Coloring coloring = random_valid(spec, opt.seed);
  if (opt.output.empty()) {
    write_coloring(coloring, std::cout);
  } else {
    std::ostringstream buffer;
    write_coloring(coloring, buffer);
    write_text(opt.output, buffer.str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified lower bounds for lattice cube colorings"};
  app.require_subcommand(1);
  Options opt;

  auto add_spec_flags = [&](CLI::App* cmd, bool required = false) {
    auto* d = cmd->add_option("--d", opt.d, "grid dimension");
    auto* n = cmd->add_option("--n", opt.n, "side length in unit cells");
    auto* m = cmd->add_option("--m", opt.m, "constraint parameter");
    if (required) {
      d->required();
      n->required();
      m->required();
    }
  };

  CLI::App* check = app.add_subcommand("check", "validate a coloring file");
  add_spec_flags(check);
  check->add_option("--input", opt.input, "coloring file")->required();
  check->add_option("--output", opt.output, "report path (default stdout)");
  check->add_option("--mode", opt.mode, "simplicial|cubical");
  check->add_option("--adjacency", opt.adjacency, "simplicial|cubical");

  CLI::App* certify = app.add_subcommand("certify", "run the certificate pipeline");
  add_spec_flags(certify);
  certify->add_option("--input", opt.input, "coloring file")->required();
  certify->add_option("--output", opt.output, "certificate path (default stdout)");
  certify->add_option("--trace", opt.trace_path, "descent trace path");
  certify->add_option("--mode", opt.mode, "simplicial|cubical");
  certify->add_option("--adjacency", opt.adjacency, "adjacency for --split-components");
  certify->add_flag("--split-components", opt.split,
                    "recolor monochromatic components before certifying");

  CLI::App* fillcmd = app.add_subcommand("fill", "solve the cocycle filling problem");
  add_spec_flags(fillcmd);
  fillcmd->add_option("--input", opt.input, "cochain file")->required();
  fillcmd->add_option("--output", opt.output, "result path (default stdout)");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force ground truth study");
  add_spec_flags(oracle, /*required=*/true);
  oracle->add_option("--mode", opt.search, "exhaustive|random");
  oracle->add_option("--adjacency", opt.adjacency, "simplicial|cubical");
  oracle->add_option("--seed", opt.seed, "random mode seed");
  oracle->add_option("--samples", opt.samples, "random mode sample count");
  oracle->add_option("--max-palette", opt.max_palette, "palette cap (0 = unlimited)");
  oracle->add_option("--output", opt.output, "report path (default stdout)");

  CLI::App* gen = app.add_subcommand("gen", "emit a random valid coloring");
  add_spec_flags(gen, /*required=*/true);
  gen->add_option("--seed", opt.seed, "generator seed");
  gen->add_option("--output", opt.output, "coloring path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParseError;  // --help exits cleanly
  }

  try {
    if (check->parsed()) return run_check(opt);
    if (certify->parsed()) return run_certify(opt);
    if (fillcmd->parsed()) return run_fill(opt);
    if (oracle->parsed()) return run_oracle(opt);
    if (gen->parsed()) return run_gen(opt);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const size_guard_error& e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return kSizeGuard;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kViolation;
  } catch (const cocycle_error& e) {
    std::cerr << "cocycle error: " << e.what() << "\n";
    return kInvariantFailure;
  } catch (const invariant_error& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kInvariantFailure;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariantFailure;
  } catch (const std::overflow_error& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return kInvariantFailure;
  }
  return kOk;
}
