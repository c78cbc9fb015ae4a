#include "qae/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qae/report.hpp"
#include "qae/rng.hpp"

namespace qae {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kVerifyResidual = 1e-6;
constexpr double kReportFloor = 1e-15;
constexpr std::uint64_t kInstanceSalt = 0x1257'a7e5'0000'0001ULL;
constexpr std::uint64_t kSearchSalt = 0x5ea7'c400'0000'0002ULL;
constexpr std::uint64_t kPlanSalt = 0x91a0'0000'0000'0003ULL;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  bool bits = false;
  std::size_t jobs = 1;
  std::string threshold = "10000000";
};

struct SearchOptions {
  std::size_t n1 = 20000;
  std::size_t n2 = 12;
  std::size_t nd = 200;
  std::uint64_t seed = 0;
};

void add_search_options(CLI::App* cmd, SearchOptions& o) {
  cmd->add_option("--n1", o.n1, "breadth-phase samples")->check(CLI::PositiveNumber);
  cmd->add_option("--n2", o.n2, "seeds kept for the descent")->check(CLI::PositiveNumber);
  cmd->add_option("--nd", o.nd, "descent iterations per seed")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "random seed");
}

SearchConfig make_config(const GlobalOptions& g, const SearchOptions& s) {
  SearchConfig c;
  c.n1 = s.n1;
  c.n2 = s.n2;
  c.n_depth = s.nd;
  c.seed = s.seed;
  c.parallelism = g.jobs;
  try {
    c.exhaustive_threshold = BigInt(g.threshold);
  } catch (const std::exception&) {
    throw UsageError("--threshold must be a positive integer");
  }
  if (c.exhaustive_threshold < 1) throw UsageError("--threshold must be a positive integer");
  try {
    c.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  return c;
}

EntropyUnit unit_of(const GlobalOptions& g) { return g.bits ? EntropyUnit::Bits : EntropyUnit::Nats; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_count(std::size_t d_a, std::size_t d_b, const GlobalOptions& g, std::ostream& out) {
  const SearchConfig config = make_config(g, SearchOptions{});
  const BigInt count = count_regular(BipartiteDims(d_a, d_b));
  out << count.str() << "\n";
  if (count <= config.exhaustive_threshold) {
    out << "exhaustive (<= threshold " << config.exhaustive_threshold.str() << ")\n";
  } else {
    out << "heuristic (> threshold " << config.exhaustive_threshold.str() << ")\n";
  }
  return 0;
}

int cmd_optimize(const std::string& path, const GlobalOptions& g, const SearchOptions& s,
                 std::ostream& out) {
  const SearchConfig config = make_config(g, s);
  const std::string text = read_file(path);
  const StateFile file = parse_state_file(text);
  const auto t0 = Clock::now();
  const std::vector<double> probs = file.probabilities();
  const OptimizationResult result = optimize(probs, file.dims, config);

  std::optional<CompressionReport> compression;
  if (file.matrix) {
    const EncoderPlan plan = build_encoder(eigendecompose(*file.matrix), result.best_tableau, file.dims);
    compression = verify_theorem1(*file.matrix, plan);
  }
  RunReport report = make_run_report("optimize", "sha256:" + sha256_hex(text), config, file.dims,
                                     result, compression, unit_of(g));
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  out << to_json(report).dump() << "\n";
  return compression && compression->support_violation ? 1 : 0;
}

int cmd_verify(const std::string& path, const std::string& plan_kind, std::uint64_t seed,
               const GlobalOptions& g, std::ostream& out) {
  const std::string text = read_file(path);
  const StateFile file = parse_state_file(text);
  if (!file.matrix) throw UsageError("verify needs a dense \"matrix\" state file");
  const DensityMatrix& sigma = *file.matrix;
  const BipartiteDims dims = file.dims;
  const EntropyUnit unit = unit_of(g);

  json line;
  line["command"] = "verify";
  line["input_digest"] = "sha256:" + sha256_hex(text);
  line["plan"] = plan_kind;
  line["seed"] = seed;
  line["unit"] = to_string(unit);

  CompressionReport report;
  if (plan_kind == "identity") {
    report = verify_theorem1(sigma, ComplexMatrix::Identity(sigma.matrix().rows(), sigma.matrix().cols()), dims);
  } else {
    const Spectrum spectrum = eigendecompose(sigma);
    std::optional<YoungTableau> tableau;
    if (plan_kind == "random") {
      tableau = random_regular(dims, derive_seed(seed, kPlanSalt, 0));
    } else {
      SearchOptions so;
      so.seed = seed;
      tableau = optimize(spectrum.distribution(), dims, make_config(g, so)).best_tableau;
    }
    line["tableau"] = tableau->cells();
    report = verify_theorem1(sigma, build_encoder(spectrum, *tableau, dims));
  }
  auto num = [](double x) { return std::isfinite(x) ? json(x) : json("inf"); };
  line["mi_middle"] = num(in_unit(report.mi_middle, unit));
  line["rel_entropy_out"] = num(in_unit(report.rel_entropy_out, unit));
  line["residual"] = num(in_unit(report.residual, unit));
  line["frobenius_distance"] = report.frobenius_distance;
  line["support_violation"] = report.support_violation;
  line["pass"] = report.residual < kVerifyResidual;
  out << line.dump() << "\n";
  return report.residual < kVerifyResidual ? 0 : 1;
}

int cmd_experiment(const std::string& kind, std::size_t states, std::size_t d_a, std::size_t d_b,
                   const GlobalOptions& g, const SearchOptions& s, std::ostream& out) {
  const SearchConfig base = make_config(g, s);
  const BipartiteDims dims(d_a, d_b);
  const InstanceKind instance = kind == "fig2a" ? InstanceKind::DiagonalMixed
                                                : InstanceKind::ProductSpectrum;
  const EntropyUnit unit = unit_of(g);
  const auto t0 = Clock::now();

  std::vector<double> finals;
  double sum_final = 0.0;
  double sum_start = 0.0;
  bool never_worse = true;
  for (std::size_t i = 0; i < states; ++i) {
    const DensityMatrix sigma = generate_instance(instance, dims, derive_seed(s.seed, kInstanceSalt, i));
    SearchConfig config = base;
    config.seed = derive_seed(s.seed, kSearchSalt, i);
    const OptimizationResult r = optimize(eigendecompose(sigma).distribution(), dims, config);
    never_worse = never_worse && r.best_mi <= r.start_mi;
    const double final_mi = std::max(in_unit(r.best_mi, unit), kReportFloor);
    const double start_mi = std::max(in_unit(r.start_mi, unit), kReportFloor);
    finals.push_back(final_mi);
    sum_final += final_mi;
    sum_start += start_mi;
    json line{{"experiment", kind}, {"instance", i},       {"method", to_string(r.method)},
              {"start_mi", start_mi}, {"final_mi", final_mi}, {"final_mi_raw", in_unit(r.best_mi, unit)},
              {"evaluations", r.evaluations}, {"unit", to_string(unit)}};
    out << line.dump() << "\n";
  }
  json agg{{"experiment", kind},
           {"instance_kind", to_string(instance)},
           {"distribution", "flat-simplex"},
           {"d_a", d_a},
           {"d_b", d_b},
           {"states", states},
           {"config", {{"n1", base.n1}, {"n2", base.n2}, {"nd", base.n_depth}, {"seed", s.seed},
                       {"threshold", base.exhaustive_threshold.str()}}},
           {"unit", to_string(unit)},
           {"floor", kReportFloor},
           {"mean_start_mi", states ? sum_start / static_cast<double>(states) : 0.0},
           {"mean_final_mi", states ? sum_final / static_cast<double>(states) : 0.0},
           {"final_mi", finals},
           {"never_worse_than_start", never_worse},
           {"runtime", {{"wall_seconds", std::chrono::duration<double>(Clock::now() - t0).count()},
                        {"jobs", base.parallelism}}}};
  out << agg.dump() << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum autoencoder compression via regular Young tableau search", "qae-compress"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_flag("--bits", g.bits, "report entropies in bits instead of nats");
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--threshold", g.threshold, "largest tableau count searched exhaustively");

  std::size_t count_a = 0;
  std::size_t count_b = 0;
  auto* count = app.add_subcommand("count", "count regular tableaux of a d_A x d_B grid");
  count->add_option("d_a", count_a)->required()->check(CLI::PositiveNumber);
  count->add_option("d_b", count_b)->required()->check(CLI::PositiveNumber);

  std::string opt_path;
  SearchOptions opt_search;
  auto* opt = app.add_subcommand("optimize", "search for the encoder with least lost information");
  opt->add_option("state-file", opt_path)->required();
  add_search_options(opt, opt_search);

  std::string verify_path;
  std::string verify_plan = "random";
  std::uint64_t verify_seed = 0;
  auto* verify = app.add_subcommand("verify", "check S(sigma||sigma_out) = S^U(A:B) for one encoder");
  verify->add_option("state-file", verify_path)->required();
  verify->add_option("--seed", verify_seed, "seed for the random plan");
  verify->add_option("--plan", verify_plan, "encoder: random, optimal or identity")
      ->check(CLI::IsMember({"random", "optimal", "identity"}));

  std::string exp_kind;
  std::size_t exp_states = 100;
  std::size_t exp_da = 8;
  std::size_t exp_db = 8;
  SearchOptions exp_search;
  auto* exp = app.add_subcommand("experiment", "random-state optimization benchmark");
  exp->add_option("kind", exp_kind)->required()->check(CLI::IsMember({"fig2a", "fig2b"}));
  exp->add_option("--states", exp_states, "number of random states")->check(CLI::NonNegativeNumber);
  exp->add_option("--da", exp_da, "subsystem A dimension")->check(CLI::PositiveNumber);
  exp->add_option("--db", exp_db, "subsystem B dimension")->check(CLI::PositiveNumber);
  add_search_options(exp, exp_search);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (count->parsed()) return cmd_count(count_a, count_b, g, out);
    if (opt->parsed()) return cmd_optimize(opt_path, g, opt_search, out);
    if (verify->parsed()) return cmd_verify(verify_path, verify_plan, verify_seed, g, out);
    if (exp->parsed()) return cmd_experiment(exp_kind, exp_states, exp_da, exp_db, g, exp_search, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace qae
