// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and must not be tuned per run.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qae/cli.hpp"
#include "qae/pipeline.hpp"
#include "qae/report.hpp"
#include "qae/search.hpp"

using namespace qae;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

SearchConfig paper_config(std::uint64_t seed) {
  SearchConfig c;
  c.n1 = 20000;
  c.n2 = 12;
  c.n_depth = 200;
  c.seed = seed;
  return c;
}

Outcome tableau_counting() {
  int shapes = 0;
  for (std::size_t r = 1; r <= 10; ++r) {
    for (std::size_t c = 1; r * c <= 10; ++c) {
      const auto filtered = oracle::regular_by_filter(r, c);
      if (count_regular(BipartiteDims(r, c)) != filtered.size()) {
        return {false, "mismatch at " + std::to_string(r) + "x" + std::to_string(c)};
      }
      if (enumerate_regular(BipartiteDims(r, c), false).size() != filtered.size()) {
        return {false, "stream mismatch at " + std::to_string(r) + "x" + std::to_string(c)};
      }
      ++shapes;
    }
  }
  const bool named = count_regular({2, 2}) == 2 && count_regular({2, 3}) == 5 &&
                     count_regular({3, 3}) == 42 && count_regular({2, 4}) == 14;
  const BigInt big = count_regular({2, 18});
  const bool table = big == 477638700;
  return {named && table, std::to_string(shapes) + " shapes vs brute force; (2,18) -> " + big.str()};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(0xACCE97);
  double worst = 0.0;
  for (auto [r, c] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto p = oracle::random_descending(r * c, rng);
      const double exact = exhaustive_search(p, BipartiteDims(r, c)).best_mi;
      worst = std::max(worst, std::abs(exact - oracle::brute_force_min_mi(p, r, c)));
    }
  }
  return {worst < 1e-12, "max |regular min - all-permutation min| = " + fmt(worst)};
}

Outcome canonicalization_monotone() {
  std::mt19937_64 rng(0xCA9011);
  double worst_rise = -INFINITY;
  int max_passes = 0;
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 6;
    const std::size_t c = 1 + rng() % 6;
    std::vector<double> p = oracle::random_descending(r * c, rng);
    std::shuffle(p.begin(), p.end(), rng);
    CanonicalForm f = canonicalize_decreasing(ProbabilityTableau(BipartiteDims(r, c), p));
    for (std::size_t k = 1; k < f.mi_history.size(); ++k) {
      worst_rise = std::max(worst_rise, f.mi_history[k] - f.mi_history[k - 1]);
    }
    max_passes = std::max(max_passes, f.passes);
    ok = ok && f.out.is_decreasing() && f.passes <= static_cast<int>(10 * r * c);
  }
  ok = ok && worst_rise <= 1e-12;
  return {ok, "largest per-pass MI change " + fmt(worst_rise) + ", most passes " + std::to_string(max_passes)};
}

Outcome lost_information_identity() {
  double worst = 0.0;
  double min_gap = INFINITY;
  std::uint64_t seed = 0;
  for (auto d : {BipartiteDims(2, 2), BipartiteDims(2, 3), BipartiteDims(3, 3)}) {
    for (int trial = 0; trial < 100; ++trial, ++seed) {
      const DensityMatrix sigma = generate_instance(InstanceKind::RandomDense, d, 7000 + seed);
      const EncoderPlan plan = build_encoder(eigendecompose(sigma), random_regular(d, 9000 + seed), d);
      const CompressionReport r = verify_theorem1(sigma, plan);
      worst = std::max(worst, r.residual);
      if (d.d_a == 2 && d.d_b == 2) {
        const DensityMatrix rho_a = generate_instance(InstanceKind::RandomDense, BipartiteDims(1, 2), 11000 + seed);
        min_gap = std::min(min_gap, suboptimal_auxiliary_gap(sigma, plan, rho_a));
      }
    }
  }
  return {worst < 1e-7 && min_gap >= -1e-9,
          "max residual " + fmt(worst) + " over 300 states; min auxiliary gap " + fmt(min_gap)};
}

Outcome perfect_compression() {
  const BipartiteDims d(4, 4);
  double worst_mi = 0.0;
  double worst_dist = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const DensityMatrix sigma = generate_instance(InstanceKind::ProductSpectrum, d, 500 + i);
    const Spectrum s = eigendecompose(sigma);
    const OptimizationResult r = exhaustive_search(s.distribution(), d);
    const CompressionOutput co = compress_reconstruct(sigma, build_encoder(s, r.best_tableau, d));
    worst_mi = std::max(worst_mi, r.best_mi);
    worst_dist = std::max(worst_dist, (co.reconstructed.matrix() - sigma.matrix()).norm());
  }
  return {worst_mi < 1e-10 && worst_dist < 1e-6,
          "max best_mi " + fmt(worst_mi) + ", max ||sigma_out - sigma||_F " + fmt(worst_dist)};
}

Outcome product_state_benchmark() {
  const BipartiteDims d(8, 8);
  double sum = 0.0;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const DensityMatrix sigma = generate_instance(InstanceKind::ProductSpectrum, d, derive_seed(2, 1, i));
    const OptimizationResult r = optimize(eigendecompose(sigma).distribution(), d, paper_config(derive_seed(2, 2, i)));
    if (r.method != SearchMethod::Heuristic) return {false, "8x8 was not routed to the heuristic"};
    const double v = std::max(r.best_mi, 1e-15);
    sum += v;
    worst = std::max(worst, v);
  }
  const double mean = sum / 100.0;
  return {mean <= 1e-2, "mean final MI " + fmt(mean) + " nats (max " + fmt(worst) + ") over 100 states"};
}

Outcome diagonal_state_properties() {
  const BipartiteDims d(8, 8);
  int worse = 0;
  double mean_start = 0.0;
  double mean_final = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const DensityMatrix sigma = generate_instance(InstanceKind::DiagonalMixed, d, derive_seed(3, 1, i));
    const OptimizationResult r = optimize(eigendecompose(sigma).distribution(), d, paper_config(derive_seed(3, 2, i)));
    worse += r.best_mi > r.start_mi;
    mean_start += r.start_mi / 100.0;
    mean_final += r.best_mi / 100.0;
  }
  std::mt19937_64 rng(0xF16A);
  double worst_gap = INFINITY;
  for (auto small : {BipartiteDims(3, 3), BipartiteDims(4, 4)}) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      const auto p = oracle::random_descending(small.total(), rng);
      SearchConfig h = paper_config(i);
      h.exhaustive_threshold = 1;
      const double heuristic = optimize(p, small, h).best_mi;
      const double exact = exhaustive_search(p, small).best_mi;
      worst_gap = std::min(worst_gap, heuristic - exact);
    }
  }
  return {worse == 0 && worst_gap >= -1e-12,
          std::to_string(worse) + " states worse than start (mean " + fmt(mean_start) + " -> " + fmt(mean_final) +
              "); min heuristic-exhaustive gap " + fmt(worst_gap)};
}

std::string run(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "qae-compress");
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str();
}

// Drops every "runtime" object, leaving only numerical content.
std::string numeric_content(const std::string& text) {
  std::istringstream in(text);
  std::string result;
  for (std::string line; std::getline(in, line);) {
    auto j = nlohmann::json::parse(line, nullptr, false);
    result += j.is_object() ? without_runtime(j).dump() : line;
    result += "\n";
  }
  return result;
}

Outcome determinism() {
  StateFile f;
  f.dims = BipartiteDims(5, 5);
  f.matrix = generate_instance(InstanceKind::RandomDense, f.dims, 4242);
  const auto path = (std::filesystem::temp_directory_path() / "qae_acceptance_state.json").string();
  std::ofstream(path) << serialize_state_file(f);

  const std::vector<std::vector<std::string>> commands{
      {"count", "4", "6"},
      {"optimize", path, "--n1", "2000", "--n2", "6", "--nd", "50", "--seed", "31"},
      {"verify", path, "--seed", "8"},
      {"experiment", "fig2b", "--states", "3", "--seed", "6", "--n1", "2000", "--n2", "6", "--nd", "40"},
      {"experiment", "fig2a", "--states", "3", "--seed", "6", "--n1", "2000", "--n2", "6", "--nd", "40"}};
  for (const auto& cmd : commands) {
    int c1 = 0, c2 = 0, c3 = 0;
    const std::string a = numeric_content(run(cmd, c1));
    const std::string b = numeric_content(run(cmd, c2));
    std::vector<std::string> parallel = cmd;
    parallel.insert(parallel.end(), {"--jobs", "4"});
    const std::string p = numeric_content(run(parallel, c3));
    if (c1 != 0 || c2 != 0 || c3 != 0 || a != b || a != p) {
      return {false, "command '" + cmd[0] + "' differs between runs"};
    }
  }
  return {true, std::to_string(commands.size()) + " commands identical across reruns and --jobs 1/4"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 tableau counting", tableau_counting},
      {"2 regular-tableau minimum equals full permutation minimum", oracle_equivalence},
      {"3 canonicalization monotone and terminating", canonicalization_monotone},
      {"4 lost-information identity and Klein gap", lost_information_identity},
      {"5 perfect compression of product spectra", perfect_compression},
      {"6 8x8 product states, mean final MI <= 1e-2 nats", product_state_benchmark},
      {"7 8x8 diagonal states never worse than start; heuristic >= exhaustive", diagonal_state_properties},
      {"8 determinism, sequential vs parallel", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " -- " << o.detail << " (" << fmt(secs) << " s)"
              << std::endl;
    failures += !o.pass;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
