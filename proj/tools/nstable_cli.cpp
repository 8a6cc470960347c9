#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nstable/branching.hpp"
#include "nstable/families.hpp"
#include "nstable/report.hpp"
#include "nstable/rng.hpp"
#include "nstable/stable.hpp"
#include "nstable/stats.hpp"
#include "nstable/transform.hpp"

namespace {

using nstable::ExperimentConfig;
using nstable::SimReport;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

template <typename T>
const T& required(const std::optional<T>& field, const std::string& message) {
  if (!field) throw std::invalid_argument(message);
  return *field;
}

std::string csv_sibling(const std::string& out_path) {
  const auto dot = out_path.rfind('.');
  const std::string stem =
      dot == std::string::npos ? out_path : out_path.substr(0, dot);
  const std::string sibling = stem + ".csv";
  return sibling == out_path ? out_path + ".samples.csv" : sibling;
}

std::ofstream open_output(const std::string& path, const char* what) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument(std::string("cannot open ") + what +
                                " path: " + path);
  }
  return out;
}

void write_column_csv(const std::string& path,
                      const std::vector<double>& values,
                      const std::string& header) {
  std::ofstream out = open_output(path, "CSV");
  out << header << "\n";
  for (double v : values) out << fmt(v) << "\n";
}

SimReport make_row(std::string name, double value, double threshold, bool pass,
                   const ExperimentConfig& cfg) {
  SimReport row;
  row.statistic_name = std::move(name);
  row.value = value;
  row.threshold = threshold;
  row.pass = pass;
  row.n = cfg.n;
  row.seed = cfg.seed;
  return row;
}

// Mean-growth consistency row: the replica mean of the terminal population
// against its deterministic prediction, in standard-error units.
SimReport growth_row(const std::vector<double>& terminal, double expected,
                     const ExperimentConfig& cfg) {
  const nstable::Moment m = nstable::sample_moment(terminal);
  double z = 0.0;
  bool pass = true;
  if (m.std_error > 0.0) {
    z = std::abs(m.mean - expected) / m.std_error;
    pass = z <= 5.0;
  } else {
    pass = m.mean == expected;
    z = pass ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return make_row("terminal_mean_z", z, 5.0, pass, cfg);
}

std::vector<SimReport> run_verify_stability(const ExperimentConfig& cfg) {
  const auto& index_spec = required(
      cfg.index_spec, "verify-stability requires --N <offspring spec>");
  const auto& law_spec =
      required(cfg.law_spec, "verify-stability requires --X <law spec>");
  const double c = required(cfg.c, "verify-stability requires --c <scale>");
  const nstable::OffspringLaw index = nstable::offspring_by_name(index_spec);
  const nstable::ClosedFormLaw law = nstable::law_by_name(law_spec);
  const nstable::TwoSampleStat stat = nstable::random_sum_check(
      index, law.sample, c, cfg.n, cfg.seed, law.u_grid);
  std::vector<SimReport> rows;
  if (law.heavy_tailed) {
    // KS calibration degrades under infinite variance; compare empirical
    // characteristic functions instead.
    const double threshold = 4.0 / std::sqrt(static_cast<double>(cfg.n));
    rows.push_back(make_row("two_sample_ecf_gap", stat.ecf_gap, threshold,
                            stat.ecf_gap < threshold, cfg));
  } else {
    rows.push_back(make_row("two_sample_ks_pvalue", stat.ks_pvalue, 1e-3,
                            stat.ks_pvalue > 1e-3, cfg));
  }
  std::cout << "verify-stability: " << rows.front().statistic_name << " = "
            << fmt(rows.front().value) << " -> "
            << (rows.front().pass ? "PASS" : "FAIL") << "\n";
  return rows;
}

std::vector<SimReport> run_semigroup_scan(const ExperimentConfig& cfg) {
  const auto& transform_spec = required(
      cfg.transform_spec, "semigroup-scan requires --L <transform spec>");
  const auto& grid_text =
      required(cfg.c_grid, "semigroup-scan requires --c-grid <grid>");
  const nstable::LaplaceSpec transform =
      nstable::transform_by_name(transform_spec);
  const std::vector<double> grid = nstable::parse_c_grid(grid_text);
  const nstable::ScanResult scan = nstable::semigroup_scan(
      transform, grid, static_cast<std::size_t>(cfg.order),
      static_cast<unsigned>(cfg.threads));
  std::vector<SimReport> rows;
  std::string accepted = "[";
  for (std::size_t i = 0; i < scan.accepted.size(); ++i) {
    if (i > 0) accepted += ", ";
    accepted += fmt(scan.accepted[i]);
    rows.push_back(make_row("accepted[c=" + fmt(scan.accepted[i]) + "]",
                            scan.accepted[i], 0.0, true, cfg));
  }
  accepted += "]";
  const bool classified =
      scan.classification != nstable::SemigroupClass::Unclassified;
  rows.push_back(make_row("closure_consistent", scan.closure_ok ? 1.0 : 0.0,
                          1.0, scan.closure_ok, cfg));
  rows.push_back(make_row(
      "classification=" + nstable::to_string(scan.classification),
      static_cast<double>(static_cast<int>(scan.classification)), 0.0,
      classified, cfg));
  std::cout << "semigroup-scan: accepted " << accepted << "\n"
            << "semigroup-scan: classification "
            << nstable::to_string(scan.classification)
            << (scan.cyclic_base > 0.0
                    ? " (base " + fmt(scan.cyclic_base) + ")"
                    : "")
            << ", closure " << (scan.closure_ok ? "ok" : "violated") << "\n";
  return rows;
}

std::vector<SimReport> run_commute_check(const ExperimentConfig& cfg) {
  const auto& first =
      required(cfg.index_spec, "commute-check requires --N <family spec>");
  const auto& second =
      required(cfg.law_spec, "commute-check requires --X <family spec>");
  const nstable::PgfFamily a = nstable::family_by_name(first);
  const nstable::PgfFamily b = nstable::family_by_name(second);
  const double gap = nstable::commute_gap(a.eval, b.eval);
  std::vector<SimReport> rows;
  rows.push_back(make_row("commute_gap", gap, 1e-10, gap <= 1e-10, cfg));
  std::cout << "commute-check: sup |a(b(s)) - b(a(s))| = " << fmt(gap)
            << " -> " << (rows.back().pass ? "PASS" : "FAIL") << "\n";
  return rows;
}

std::vector<SimReport> run_simulate_bgw(const ExperimentConfig& cfg) {
  const auto& offspring_spec =
      required(cfg.index_spec, "simulate-bgw requires --N <offspring spec>");
  const std::uint64_t generations =
      required(cfg.k, "simulate-bgw requires --k <generations>");
  const nstable::OffspringLaw offspring =
      nstable::offspring_by_name(offspring_spec);
  const nstable::BgwResult result = nstable::simulate_bgw(
      offspring, static_cast<std::size_t>(generations),
      static_cast<std::size_t>(cfg.n), cfg.seed);
  std::vector<double> terminal(result.trajectories.size());
  for (std::size_t i = 0; i < terminal.size(); ++i) {
    terminal[i] = static_cast<double>(result.trajectories[i].back());
  }
  std::vector<SimReport> rows;
  if (std::isfinite(offspring.mean)) {
    const double expected =
        std::pow(offspring.mean, static_cast<double>(generations));
    rows.push_back(growth_row(terminal, expected, cfg));
  }
  const double caps = static_cast<double>(
      std::count(result.capped.begin(), result.capped.end(), 1));
  rows.push_back(
      make_row("capped_replicas", caps, static_cast<double>(cfg.n), true, cfg));
  if (cfg.out) {
    const std::string path = csv_sibling(*cfg.out);
    std::ofstream out = open_output(path, "CSV");
    for (std::size_t i = 0; i < result.trajectories.size(); ++i) {
      out << (i > 0 ? ",replica_" : "replica_") << i;
    }
    out << "\n";
    for (std::uint64_t g = 0; g <= generations; ++g) {
      for (std::size_t i = 0; i < result.trajectories.size(); ++i) {
        if (i > 0) out << ",";
        out << result.trajectories[i][static_cast<std::size_t>(g)];
      }
      out << "\n";
    }
  }
  std::cout << "simulate-bgw: " << cfg.n << " replicas over " << generations
            << " generations" << (result.any_capped ? " (cap hit)" : "")
            << "\n";
  return rows;
}

std::vector<SimReport> run_simulate_ctbp(const ExperimentConfig& cfg) {
  const auto& generator_spec =
      required(cfg.index_spec, "simulate-ctbp requires --N <generator spec>");
  const double t_end = required(cfg.t, "simulate-ctbp requires --t <time>");
  const nstable::GeneratingDistribution generator =
      nstable::generator_by_name(generator_spec);
  const nstable::CtbpResult result = nstable::simulate_ctbp(
      generator, t_end, static_cast<std::size_t>(cfg.n), cfg.seed);
  std::vector<double> populations(result.populations.size());
  for (std::size_t i = 0; i < populations.size(); ++i) {
    populations[i] = static_cast<double>(result.populations[i]);
  }
  std::vector<SimReport> rows;
  if (std::isfinite(generator.offspring_mean)) {
    const double expected = std::exp((generator.offspring_mean - 1.0) * t_end);
    rows.push_back(growth_row(populations, expected, cfg));
  }
  const double caps = static_cast<double>(
      std::count(result.capped.begin(), result.capped.end(), 1));
  rows.push_back(
      make_row("capped_replicas", caps, static_cast<double>(cfg.n), true, cfg));
  if (cfg.out) {
    write_column_csv(csv_sibling(*cfg.out), populations, "population");
  }
  std::cout << "simulate-ctbp: " << cfg.n << " replicas to t = " << fmt(t_end)
            << (result.any_capped ? " (cap hit)" : "") << "\n";
  return rows;
}

std::vector<SimReport> run_sample(const ExperimentConfig& cfg) {
  const auto& law_spec =
      required(cfg.law_spec, "sample requires --X <law spec>");
  const nstable::ClosedFormLaw law = nstable::law_by_name(law_spec);
  nstable::SplitRng rng = nstable::SplitRng(cfg.seed).stream(0);
  std::vector<double> values(static_cast<std::size_t>(cfg.n));
  for (double& v : values) v = law.sample(rng);
  const double gap = law.positive
                         ? nstable::laplace_gap(values, law.laplace, law.u_grid)
                         : nstable::ecf_gap(values, law.chf, law.u_grid);
  const double threshold = 4.0 / std::sqrt(static_cast<double>(cfg.n));
  std::vector<SimReport> rows;
  rows.push_back(
      make_row("transform_gap", gap, threshold, gap < threshold, cfg));
  if (cfg.out) write_column_csv(csv_sibling(*cfg.out), values, "value");
  std::cout << "sample: " << law.name << " transform gap = " << fmt(gap)
            << " (threshold " << fmt(threshold) << ") -> "
            << (rows.back().pass ? "PASS" : "FAIL") << "\n";
  return rows;
}

std::vector<SimReport> run_limit_check(const ExperimentConfig& cfg) {
  const bool has_transform = cfg.transform_spec.has_value();
  const bool has_generator = cfg.index_spec.has_value();
  if (has_transform == has_generator) {
    throw std::invalid_argument(
        "limit-check requires exactly one of --L <transform> (scale flow) or "
        "--N <generator> (continuous-time limit)");
  }
  std::vector<SimReport> rows;
  if (has_transform) {
    const auto& grid_text = required(
        cfg.c_grid, "limit-check with --L requires --c-grid <sequence>");
    const nstable::LaplaceSpec transform =
        nstable::transform_by_name(*cfg.transform_spec);
    const std::vector<double> scales = nstable::parse_c_grid(grid_text);
    const std::vector<double> gaps =
        nstable::scaling_limit_gaps(transform, scales);
    bool nonincreasing = true;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      rows.push_back(make_row("flow_gap[c=" + fmt(scales[i]) + "]", gaps[i],
                              1.0, true, cfg));
      if (i > 0 && gaps[i] > gaps[i - 1]) nonincreasing = false;
    }
    rows.push_back(make_row("gap_nonincreasing", nonincreasing ? 1.0 : 0.0,
                            1.0, nonincreasing, cfg));
    rows.push_back(
        make_row("final_gap", gaps.back(), 0.05, gaps.back() < 0.05, cfg));
    std::cout << "limit-check: flow gap " << fmt(gaps.front()) << " -> "
              << fmt(gaps.back()) << " along " << scales.size()
              << " scales\n";
  } else {
    const double t_end =
        required(cfg.t, "limit-check with --N requires --t <time>");
    const nstable::GeneratingDistribution generator =
        nstable::generator_by_name(*cfg.index_spec);
    const nstable::TwoSampleStat stat = nstable::ctbp_limit_check(
        generator, t_end, static_cast<std::size_t>(cfg.n), cfg.seed);
    if (generator.name == "yuleH" || generator.name == "neveuH") {
      rows.push_back(make_row("limit_ks_pvalue", stat.ks_pvalue, 1e-3,
                              stat.ks_pvalue > 1e-3, cfg));
    } else {
      rows.push_back(make_row("limit_transform_gap", stat.ecf_gap, 0.02,
                              stat.ecf_gap < 0.02, cfg));
    }
    std::cout << "limit-check: " << rows.back().statistic_name << " = "
              << fmt(rows.back().value) << " -> "
              << (rows.back().pass ? "PASS" : "FAIL") << "\n";
  }
  return rows;
}

void print_catalog() {
  const auto entry = [](const std::string& name, const std::string& params,
                        const std::string& description) {
    std::printf("  %-20s %-34s %s\n", name.c_str(), params.c_str(),
                description.c_str());
  };
  std::printf("PGF families (--N / --X in commute-check):\n");
  entry("geometric", "p in (0,1]", "mass p(1-p)^(n-1) on {1,2,...}; mean 1/p");
  entry("negbin-kM", "p in (0,1], k >= 1",
        "lattice 1 + k{0,1,...}; mean 1/p");
  entry("sibuya", "p in (0,1]", "1 - (1-s)^p; heavy-tailed, infinite mean");
  entry("chebyshev-hitting", "n >= 1",
        "two-sided exit time of a simple walk from (-n, n); mean n^2");
  entry("yule", "t >= 0", "pure-birth flow member geometric(e^-t)");
  entry("neveu", "t >= 0", "fractional-power flow member sibuya(e^-t)");
  entry("geomH-ctbp", "t >= 0",
        "flow member of the shifted-geometric branching semigroup");
  entry("theta", "p in (0,1], theta in (0,1], q in [0,1)",
        "two-parameter interpolation between yule and linear-fractional");
  std::printf("closed-form laws (--X):\n");
  entry("exp1", "", "unit exponential; transform 1/(1+u)");
  entry("gamma", "shape > 0 [, rate = shape]",
        "gamma law; transform (rate/(rate+u))^shape");
  entry("linnik", "alpha in (0,2] [, beta = 1]",
        "symmetric geometric-stable; ECF 1/(1+beta|u|^alpha)");
  entry("laplace", "[beta = 1]", "two-sided exponential; ECF 1/(1+beta^2 u^2)");
  entry("mittag-leffler", "alpha in (0,1] [, beta = 1]",
        "positive geometric-stable; transform 1/(1+beta u^alpha)");
  entry("kovalenko", "", "positive law with transform 1/(1+sqrt(u))");
  entry("gaussmix", "[sigma = 1]",
        "exponential-variance Gaussian mixture; ECF 1/(1+sigma^2 u^2/2)");
  std::printf("Laplace transforms (--L):\n");
  entry("exp1", "", "1/(1+u): scan accepts every c >= 1");
  entry("delta1", "", "e^-u point mass: scan accepts integer c");
  entry("cosh", "", "1/cosh(sqrt(2u)): scan accepts perfect squares");
  entry("gamma", "shape > 0 [, rate = shape]",
        "(rate/(rate+u))^shape: scan accepts every c when 1/shape is an "
        "integer, only c = 1 otherwise");
  entry("geomH-limit", "",
        "2/(1+sqrt(1+4u)): growth limit of the shifted-geometric flow");
  entry("mittag-leffler", "alpha in (0,1] [, beta = 1]",
        "1/(1+beta u^alpha): scan accepts every c >= 1");
  std::printf("offspring laws (--N in verify-stability / simulate-bgw):\n");
  entry("geometric", "p in (0,1]", "supercritical for p < 1; never extinct");
  entry("negbin-kM", "p in (0,1], k >= 1", "lattice broods; never extinct");
  entry("bernoulli", "p in [0,1]", "subcritical thinning; a.s. extinction");
  entry("binary", "p in [0,1]", "broods {0,2}; critical at p = 1/2");
  entry("constant", "m >= 0", "deterministic m-fold growth");
  entry("chebyshev-hitting", "n in {2,3}", "walk exit-time broods; mean n^2");
  entry("sibuya", "p in (0,1)", "heavy-tailed broods, infinite mean");
  std::printf("generating distributions (--N in simulate-ctbp / limit-check):\n");
  entry("yule", "", "binary splitting h(s) = s^2");
  entry("neveu", "", "h(s) = s + (1-s)ln(1-s); infinite brood mean");
  entry("shifted-geom", "", "h(s) = s^2/(2-s); brood mean 3");
  entry("theta", "theta in (-1,0)u(0,1], q in [0,1)",
        "interpolating family; explosive for theta < 0 (rejected)");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config file not found: " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config parse failure in " + path + ": " +
                                e.what());
  }
  // Saved reports embed the exact configuration that produced them, so a
  // report file is accepted here too: replaying one reruns its experiment.
  if (doc.is_object() && doc.contains("config") && doc["config"].is_object()) {
    return nstable::config_from_json(doc["config"]);
  }
  return nstable::config_from_json(doc);
}

std::vector<SimReport> dispatch(const ExperimentConfig& cfg) {
  if (cfg.command == "verify-stability") return run_verify_stability(cfg);
  if (cfg.command == "semigroup-scan") return run_semigroup_scan(cfg);
  if (cfg.command == "commute-check") return run_commute_check(cfg);
  if (cfg.command == "simulate-bgw") return run_simulate_bgw(cfg);
  if (cfg.command == "simulate-ctbp") return run_simulate_ctbp(cfg);
  if (cfg.command == "sample") return run_sample(cfg);
  if (cfg.command == "limit-check") return run_limit_check(cfg);
  throw std::invalid_argument(
      "unknown command '" + cfg.command +
      "'; valid: verify-stability, semigroup-scan, commute-check, "
      "simulate-bgw, simulate-ctbp, sample, limit-check");
}

int execute(ExperimentConfig cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<SimReport> rows = dispatch(cfg);
  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();
  for (SimReport& row : rows) row.runtime_ms = elapsed_ms;
  const nlohmann::json doc = nstable::experiment_report(cfg, rows);
  if (cfg.out) {
    std::ofstream out = open_output(*cfg.out, "report");
    out << doc.dump(2) << "\n";
  }
  std::cout << doc.dump(2) << "\n";
  return nstable::all_pass(rows) ? 0 : 1;
}

// Shared flag block; every subcommand takes the same spellings and each
// handler checks for the ones it needs.
struct FlagSet {
  std::string index_spec, law_spec, transform_spec, c_grid, out;
  double c = 0.0, t = 0.0;
  std::uint64_t k = 0, n = 10000, seed = 1, order = 64, threads = 0;
  CLI::Option *o_index = nullptr, *o_law = nullptr, *o_transform = nullptr,
              *o_c = nullptr, *o_grid = nullptr, *o_t = nullptr,
              *o_k = nullptr, *o_n = nullptr, *o_seed = nullptr,
              *o_order = nullptr, *o_threads = nullptr, *o_out = nullptr;

  void attach(CLI::App* cmd) {
    o_index = cmd->add_option(
        "--N", index_spec,
        "index / offspring / generating distribution spec (name:key=value,...)");
    o_law = cmd->add_option("--X", law_spec,
                            "closed-form law spec (or second family spec)");
    o_transform =
        cmd->add_option("--L", transform_spec, "Laplace transform spec");
    o_c = cmd->add_option("--c", c, "scale factor");
    o_grid = cmd->add_option("--c-grid", c_grid,
                             "scale grid: 'a..b[,step]' or 'v1,v2,...'");
    o_t = cmd->add_option("--t", t, "time horizon");
    o_k = cmd->add_option("--k", k, "generation horizon");
    o_n = cmd->add_option("--n", n, "sample size / replica count");
    o_seed = cmd->add_option("--seed", seed, "master seed");
    o_order = cmd->add_option("--order", order, "series truncation order");
    o_threads =
        cmd->add_option("--threads", threads, "worker cap (0 = sequential)");
    o_out = cmd->add_option(
        "--out", out, "report JSON path (sample dumps go to a sibling .csv)");
  }

  void overlay(ExperimentConfig& cfg) const {
    if (o_index->count()) cfg.index_spec = index_spec;
    if (o_law->count()) cfg.law_spec = law_spec;
    if (o_transform->count()) cfg.transform_spec = transform_spec;
    if (o_c->count()) cfg.c = c;
    if (o_grid->count()) cfg.c_grid = c_grid;
    if (o_t->count()) cfg.t = t;
    if (o_k->count()) cfg.k = k;
    if (o_n->count()) cfg.n = n;
    if (o_seed->count()) cfg.seed = seed;
    if (o_order->count()) cfg.order = order;
    if (o_threads->count()) cfg.threads = threads;
    if (o_out->count()) cfg.out = out;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nstable: random-stability toolkit (semigroup scans, stable-law "
      "sampling, branching simulation)"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify-stability",
       "two-sample check of X_1+...+X_N against c*X (--N, --X, --c)"},
      {"semigroup-scan",
       "scan which scales c keep a transform's scale map a PGF (--L, --c-grid)"},
      {"commute-check",
       "composition commutator gap of two PGF family members (--N, --X)"},
      {"simulate-bgw",
       "discrete-generation branching trajectories (--N, --k, --n)"},
      {"simulate-ctbp",
       "event-driven continuous-time branching (--N, --t, --n)"},
      {"sample", "draw a closed-form law and verify its transform (--X, --n)"},
      {"limit-check",
       "scale-flow gaps (--L, --c-grid) or normalized growth limit (--N, --t)"},
  };
  std::vector<FlagSet> flags(commands.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, commands[i].second);
    flags[i].attach(sub);
    subs.push_back(sub);
  }
  CLI::App* list_cmd = app.add_subcommand(
      "list", "print the catalog of families, laws, and transforms");
  CLI::App* run_cmd = app.add_subcommand(
      "run", "execute a JSON experiment config (explicit flags override)");
  FlagSet run_flags;
  run_flags.attach(run_cmd);
  std::string config_path;
  run_cmd->add_option("--config", config_path, "experiment config JSON path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (list_cmd->parsed()) {
      print_catalog();
      return 0;
    }
    ExperimentConfig cfg;
    if (run_cmd->parsed()) {
      cfg = load_config(config_path);
      run_flags.overlay(cfg);
    } else {
      for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i]->parsed()) {
          cfg.command = commands[i].first;
          flags[i].overlay(cfg);
          break;
        }
      }
    }
    return execute(std::move(cfg));
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
