// sepscope: entanglement measures and computable lower bounds from the
// command line. Exit codes: 0 ok, 1 violation, 2 usage/parse, 3 numerical
// failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sepscope/bounds_mixed.hpp"
#include "sepscope/error.hpp"
#include "sepscope/json_io.hpp"
#include "sepscope/measures_pure.hpp"
#include "sepscope/partitions.hpp"
#include "sepscope/random.hpp"
#include "sepscope/roof_oracle.hpp"
#include "sepscope/states_zoo.hpp"
#include "sepscope/sweep.hpp"

namespace {

using namespace sepscope;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ChainViolation: return kExitViolation;
    case Errc::ConvergenceFailure:
    case Errc::NotPSD:
    case Errc::NotHermitian:
    case Errc::TraceNotOne:
    case Errc::NotNormalized:
    case Errc::CalibrationInconsistent: return kExitNumerical;
    default: return kExitUsage;
  }
}

std::optional<std::vector<SitePermutation>> parse_symmetry(const std::string& text, int n) {
  if (text == "none") return std::nullopt;
  if (text == "v4") {
    if (n != 4) throw Error(Errc::SymmetryViolation, "v4 symmetry needs a four-site state");
    return vierergruppe();
  }
  if (text.rfind("file:", 0) == 0) {
    const std::string path = text.substr(5);
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot read " + path);
    Json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw Error(Errc::ParseError, path + ": " + e.what());
    }
    std::vector<SitePermutation> gens;
    for (const auto& g : j) gens.push_back(permutation_from_json(g));
    return close_group(gens, n);
  }
  throw Error(Errc::ParseError, "unknown symmetry '" + text + "'");
}

struct TraceFile {
  std::unique_ptr<std::ofstream> file;
  std::ostream* out = nullptr;
};

TraceFile open_trace(const std::string& path) {
  TraceFile t;
  if (path.empty()) return t;
  if (path == "-") {
    t.out = &std::cerr;
  } else {
    t.file = std::make_unique<std::ofstream>(path);
    if (!*t.file) throw Error(Errc::IoError, "cannot write " + path);
    t.out = t.file.get();
  }
  *t.out << "gamma,delta,assignment,j,multiplicity,lambda1,lambda_sum\n";
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipartite entanglement measures R_m and their computable lower bounds"};
  app.require_subcommand(1);

  // rm-pure
  std::string pure_spec;
  int pure_m = 2;
  auto* rm_pure_cmd = app.add_subcommand("rm-pure", "R_m of a pure state, with per-partition detail");
  rm_pure_cmd->add_option("state", pure_spec, "state spec, e.g. ghz:4")->required();
  rm_pure_cmd->add_option("--m", pure_m, "number of blocks")->required();

  // rm-bound
  std::string bound_spec, bound_variant = "quadrature", bound_symmetry = "none", trace_path;
  int bound_m = 2;
  bool dense = false;
  auto* rm_bound_cmd = app.add_subcommand("rm-bound", "computable lower bound of R_m");
  rm_bound_cmd->add_option("state", bound_spec, "state spec, e.g. bbo:0.2,0.5")->required();
  rm_bound_cmd->add_option("--m", bound_m, "number of blocks")->required();
  rm_bound_cmd->add_option("--variant", bound_variant, "literal | quadrature | max");
  rm_bound_cmd->add_option("--symmetry", bound_symmetry, "none | v4 | file:<json>");
  rm_bound_cmd->add_option("--trace", trace_path, "per-witness CSV (\"-\" for stderr)");
  rm_bound_cmd->add_flag("--dense", dense, "use the dense spectrum path");

  // sweep
  int steps = 101;
  int p1_steps = 0, p2_steps = 0;
  std::vector<int> sweep_ms{2, 3, 4};
  std::string sweep_variant = "quadrature", out_path, sweep_symmetry = "v4";
  unsigned threads = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "R̃_2..R̃_4 over the (p1, p2) grid of the noise family");
  sweep_cmd->add_option("--steps", steps, "grid points per axis");
  sweep_cmd->add_option("--p1-steps", p1_steps, "grid points along p1 (overrides --steps)");
  sweep_cmd->add_option("--p2-steps", p2_steps, "grid points along p2 (overrides --steps)");
  sweep_cmd->add_option("--m", sweep_ms, "block counts to evaluate (2..4)")->delimiter(',');
  sweep_cmd->add_option("--variant", sweep_variant, "literal | quadrature | max");
  sweep_cmd->add_option("--symmetry", sweep_symmetry, "none | v4");
  sweep_cmd->add_option("--out", out_path, "CSV path (stdout if omitted)");
  sweep_cmd->add_option("--threads", threads, "worker threads (default SEPSCOPE_THREADS or all cores)");

  // partitions
  int part_n = 4, part_m = 2;
  std::string part_symmetry = "none";
  auto* part_cmd = app.add_subcommand("partitions", "list set partitions or their orbit table");
  part_cmd->add_option("n", part_n, "number of sites")->required();
  part_cmd->add_option("m", part_m, "number of blocks")->required();
  part_cmd->add_option("--symmetry", part_symmetry, "none | v4 | file:<json>");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "validation campaigns");
  validate_cmd->require_subcommand(1);
  std::uint64_t seed = 7;
  int qubits = 2, states = 50, trials = 500;
  std::string chain_variant = "quadrature";
  auto* chain_cmd = validate_cmd->add_subcommand("chain", "bound vs sampled convex roof on random mixed states");
  chain_cmd->add_option("--seed", seed, "campaign seed");
  chain_cmd->add_option("--qubits", qubits, "qubits per state");
  chain_cmd->add_option("--states", states, "number of random mixed states");
  chain_cmd->add_option("--trials", trials, "roof trials per state");
  chain_cmd->add_option("--variant", chain_variant, "literal | quadrature | max");
  int samples = 100;
  auto* calib_cmd = validate_cmd->add_subcommand("calibration", "concurrence-sum vs linear-entropy gate");
  calib_cmd->add_option("--seed", seed, "sampling seed");
  calib_cmd->add_option("--samples", samples, "random states per shape (>= 100)");

  // state
  std::string state_spec;
  bool exact = false;
  auto* state_cmd = app.add_subcommand("state", "print a built state as JSON");
  state_cmd->add_option("state", state_spec, "state spec")->required();
  state_cmd->add_flag("--exact", exact, "write numbers as round-trip decimal strings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*rm_pure_cmd) {
      const BuiltState s = parse_state_spec(pure_spec);
      const auto* psi = std::get_if<PureState>(&s);
      if (!psi) throw Error(Errc::MixedStateError, "'" + pure_spec + "' is not a pure state");
      std::cout << to_json(rm_pure_report(*psi, pure_m)).dump(2) << '\n';
    } else if (*rm_bound_cmd) {
      const DensityMatrix rho = as_density(parse_state_spec(bound_spec));
      BoundOptions opts;
      opts.variant = parse_bound_variant(bound_variant);
      opts.fast_path = !dense;
      TraceFile trace = open_trace(trace_path);
      if (trace.out) {
        const SystemShape shape = rho.shape();
        opts.trace = [&trace, shape](const SparseWitness& w, const WitnessSpectrum& spec, int mult) {
          std::string label;
          for (int v : shape.digits(w.label())) label += std::to_string(v);
          *trace.out << '"' << w.gamma().to_string() << "\",\"" << w.delta().to_string() << "\",\""
                     << w.assignment().to_string() << "\"," << label << ',' << mult << ','
                     << format_number(spec.leading()) << ',' << format_number(spec.total()) << '\n';
        };
      }
      const auto symmetry = parse_symmetry(bound_symmetry, rho.shape().n());
      std::cout << to_json(rm_bound(rho, bound_m, opts, symmetry)).dump(2) << '\n';
    } else if (*sweep_cmd) {
      SweepOptions opts;
      opts.p1_steps = p1_steps > 0 ? p1_steps : steps;
      opts.p2_steps = p2_steps > 0 ? p2_steps : steps;
      opts.ms = sweep_ms;
      for (int m : opts.ms) {
        if (m < 2 || m > 4) throw Error(Errc::InvalidRange, "--m values must lie in 2..4");
      }
      opts.bound.variant = parse_bound_variant(sweep_variant);
      if (sweep_symmetry != "none" && sweep_symmetry != "v4") {
        throw Error(Errc::ParseError, "sweep symmetry must be none or v4");
      }
      opts.use_symmetry = sweep_symmetry == "v4";
      opts.threads = threads;
      const SweepGrid grid = run_sweep(opts);
      if (out_path.empty()) {
        write_csv(grid, std::cout);
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error(Errc::IoError, "cannot write " + out_path);
        write_csv(grid, out);
        if (!out) throw Error(Errc::IoError, "write failed for " + out_path);
      }
    } else if (*part_cmd) {
      const auto parts = set_partitions(part_n, part_m);
      const auto symmetry = parse_symmetry(part_symmetry, part_n);
      Json out = {{"n", part_n}, {"m", part_m}, {"count", parts.size()},
                  {"stirling", stirling(part_n, part_m)}};
      if (symmetry) {
        const OrbitTable table = orbit_reduce(parts, *symmetry);
        out["orbit_count"] = table.entries.size();
        out["orbits"] = to_json(table);
      } else {
        Json list = Json::array();
        for (const auto& p : parts) list.push_back(to_json(p));
        out["partitions"] = std::move(list);
      }
      std::cout << out.dump(2) << '\n';
    } else if (*chain_cmd) {
      BoundOptions opts;
      opts.variant = parse_bound_variant(chain_variant);
      const SystemShape shape(qubits, 2);
      ChainSettings settings;
      settings.trials = trials;
      Json reports = Json::array();
      int violations = 0;
      double worst = INFINITY;
      for (int s = 0; s < states; ++s) {
        Rng rng(derive_seed(seed, std::uint64_t(s)));
        const DensityMatrix rho = random_density(shape, rng);
        settings.seed = derive_seed(seed ^ 0x5eedULL, std::uint64_t(s));
        for (const auto& gamma : nonempty_subsets(SiteSet::full(qubits))) {
          if (gamma == SiteSet::full(qubits)) continue;
          const ChainReport r = chain_margins(rho, gamma, opts, settings);
          for (const auto& d : r.per_delta) worst = std::min(worst, d.margin);
          worst = std::min(worst, r.sum_margin);
          if (!r.ok) {
            ++violations;
            Json j = to_json(r);
            j["state"] = s;
            reports.push_back(std::move(j));
          }
        }
      }
      Json out = {{"campaign", "chain"}, {"seed", seed},       {"qubits", qubits},
                  {"states", states},    {"trials", trials},   {"variant", to_string(opts.variant)},
                  {"violations", violations}, {"min_margin", worst}, {"pass", violations == 0},
                  {"violating_reports", std::move(reports)}};
      std::cout << out.dump(2) << '\n';
      return violations == 0 ? kExitOk : kExitViolation;
    } else if (*calib_cmd) {
      const auto result = select_pair_reading(
          samples, {SystemShape(2, 2), SystemShape(3, 2), SystemShape(2, 3)}, seed);
      Json out = {{"reading", result.config.reading == PairReading::Joint ? "joint" : "uniform"},
                  {"global", result.global},
                  {"calibration_factor", result.config.calibration_factor},
                  {"ratio_by_size", result.ratio_by_size},
                  {"max_relative_spread", result.max_relative_spread},
                  {"fitted_samples", result.fitted_samples}};
      std::cout << out.dump(2) << '\n';
    } else if (*state_cmd) {
      const BuiltState s = parse_state_spec(state_spec);
      const Json j = std::visit([&](const auto& v) { return to_json(v, exact); }, s);
      std::cout << j.dump(2) << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "sepscope: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "sepscope: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
