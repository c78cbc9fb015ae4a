#include "qae/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "parallel.hpp"
#include "qae/rng.hpp"

namespace qae {

namespace {

constexpr std::uint64_t kBreadthSalt = 0xb7ea'd7f1'7570'0001ULL;

double entropy_of_sums(const std::vector<double>& sums) {
  double h = 0.0;
  for (double x : sums)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

}  // namespace

void SearchConfig::validate() const {
  if (n1 == 0 || n2 == 0 || n_depth == 0) throw ValidationError("n1, n2 and n_depth must be positive");
  if (n2 > n1) throw ValidationError("n2 must not exceed n1");
  if (exhaustive_threshold < 1) throw ValidationError("exhaustive threshold must be at least 1");
  if (parallelism == 0) throw ValidationError("parallelism must be positive");
}

std::string to_string(SearchMethod m) {
  return m == SearchMethod::Exhaustive ? "exhaustive" : "heuristic";
}

SearchMethod search_method_from_string(const std::string& s) {
  if (s == "exhaustive") return SearchMethod::Exhaustive;
  if (s == "heuristic") return SearchMethod::Heuristic;
  throw ValidationError("unknown search method: " + s);
}

TableauObjective::TableauObjective(std::vector<double> probs, BipartiteDims dims)
    : probs_(std::move(probs)), dims_(dims), joint_entropy_(shannon_entropy(probs_)) {
  if (probs_.size() != dims_.total()) throw ValidationError("probability count does not match dims");
}

double TableauObjective::operator()(const YoungTableau& t) const {
  std::vector<double> rows(dims_.d_a, 0.0);
  std::vector<double> cols(dims_.d_b, 0.0);
  const auto& cells = t.cells();
  for (std::size_t r = 0; r < dims_.d_a; ++r) {
    for (std::size_t c = 0; c < dims_.d_b; ++c) {
      const double p = probs_[static_cast<std::size_t>(cells[r * dims_.d_b + c] - 1)];
      rows[r] += p;
      cols[c] += p;
    }
  }
  return entropy_of_sums(rows) + entropy_of_sums(cols) - joint_entropy_;
}

std::vector<double> validated_distribution(std::vector<double> probs, const BipartiteDims& dims) {
  if (probs.size() != dims.total()) {
    throw ValidationError("expected " + std::to_string(dims.total()) + " probabilities, got " +
                          std::to_string(probs.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (!std::isfinite(probs[k]) || probs[k] < -1e-12) throw ValidationError("probabilities must be nonnegative");
    if (probs[k] < 0.0) probs[k] = 0.0;
    if (k > 0 && probs[k] > probs[k - 1]) throw ValidationError("probabilities must be non-increasing");
    sum += probs[k];
  }
  if (std::abs(sum - 1.0) > 1e-10) throw ValidationError("probabilities must sum to 1");
  return probs;
}

OptimizationResult exhaustive_search(const std::vector<double>& probs, const BipartiteDims& dims,
                                     const SearchConfig& config) {
  const BigInt count = count_regular(dims);
  if (count > config.exhaustive_threshold) {
    throw ThresholdExceeded("regular tableau count " + count.str() + " exceeds threshold " +
                            config.exhaustive_threshold.str() + "; use heuristic search");
  }
  const TableauObjective objective(validated_distribution(probs, dims), dims);

  RegularTableauStream stream(dims, /*exploit_symmetry=*/true);
  std::optional<YoungTableau> best;
  double best_mi = std::numeric_limits<double>::infinity();
  std::uint64_t evaluations = 0;
  std::vector<double> trajectory;
  while (auto t = stream.next()) {
    const double mi = objective(*t);
    ++evaluations;
    if (mi < best_mi) {
      best_mi = mi;
      best = std::move(*t);
      trajectory.push_back(mi);
    }
  }
  OptimizationResult out{*best, best_mi, SearchMethod::Exhaustive, evaluations,
                         std::move(trajectory), std::nullopt, best_mi};
  out.start_mi = objective(YoungTableau::row_major(dims));
  return out;
}

std::vector<ScoredTableau> breadth_first(const std::vector<double>& probs,
                                         const BipartiteDims& dims, const SearchConfig& config) {
  config.validate();
  const TableauObjective objective(validated_distribution(probs, dims), dims);

  std::vector<std::optional<ScoredTableau>> draws(config.n1);
  detail::parallel_for(config.n1, config.parallelism, [&](std::size_t i) {
    YoungTableau t = random_regular(dims, derive_seed(config.seed, kBreadthSalt, i));
    const double mi = objective(t);
    draws[i] = ScoredTableau{std::move(t), mi};
  });

  std::vector<std::size_t> order(config.n1);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return draws[a]->mi < draws[b]->mi; });

  std::vector<ScoredTableau> kept;
  std::set<std::vector<int>> seen;
  for (std::size_t i : order) {
    if (kept.size() == config.n2) break;
    if (seen.insert(draws[i]->tableau.cells()).second) kept.push_back(std::move(*draws[i]));
  }
  return kept;
}

namespace {

struct Descent {
  std::optional<YoungTableau> best;
  double best_mi = std::numeric_limits<double>::infinity();
  std::vector<double> best_after_step;  // entry 0 is the seed itself
  std::uint64_t evaluations = 0;
};

Descent descend(const TableauObjective& objective, const YoungTableau& seed, std::size_t steps) {
  Descent d;
  YoungTableau current = seed;
  d.best_mi = objective(seed);
  d.best = seed;
  d.evaluations = 1;
  d.best_after_step.push_back(d.best_mi);
  for (std::size_t step = 0; step < steps; ++step) {
    std::vector<YoungTableau> around = neighbors(current);
    if (around.empty()) break;
    std::size_t arg = 0;
    double arg_mi = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < around.size(); ++k) {
      const double mi = objective(around[k]);
      if (mi < arg_mi) {
        arg_mi = mi;
        arg = k;
      }
    }
    d.evaluations += around.size();
    current = std::move(around[arg]);
    if (arg_mi < d.best_mi) {
      d.best_mi = arg_mi;
      d.best = current;
    }
    d.best_after_step.push_back(d.best_mi);
  }
  return d;
}

OptimizationResult descend_all(const TableauObjective& objective,
                               const std::vector<YoungTableau>& seeds, const SearchConfig& config,
                               const std::optional<ScoredTableau>& incumbent) {
  if (seeds.empty()) throw ValidationError("depth-first search needs at least one seed");
  for (const auto& s : seeds) {
    if (!(s.dims() == objective.dims()) || !is_regular(s)) {
      throw ValidationError("depth-first seeds must be regular tableaux of matching shape");
    }
  }

  std::vector<Descent> runs(seeds.size());
  detail::parallel_for(seeds.size(), config.parallelism, [&](std::size_t i) {
    runs[i] = descend(objective, seeds[i], config.n_depth);
  });

  // Sequential merge in seed order keeps the result independent of threading.
  OptimizationResult out{incumbent ? incumbent->tableau : *runs.front().best,
                         incumbent ? incumbent->mi : std::numeric_limits<double>::infinity(),
                         SearchMethod::Heuristic, 0, {}, std::nullopt, 0.0};
  if (incumbent) out.trajectory.push_back(out.best_mi);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const Descent& d = runs[i];
    out.evaluations += d.evaluations;
    double running = out.best_mi;
    for (double v : d.best_after_step) {
      running = std::min(running, v);
      out.trajectory.push_back(running);
    }
    if (d.best_mi < out.best_mi) {
      out.best_mi = d.best_mi;
      out.best_tableau = *d.best;
      out.seed_index = i;
    }
  }
  return out;
}

}  // namespace

OptimizationResult depth_first(const std::vector<double>& probs, const BipartiteDims& dims,
                               const std::vector<YoungTableau>& seeds,
                               const SearchConfig& config) {
  config.validate();
  const TableauObjective objective(validated_distribution(probs, dims), dims);
  OptimizationResult out = descend_all(objective, seeds, config, std::nullopt);
  out.start_mi = objective(seeds.front());
  return out;
}

OptimizationResult optimize(const std::vector<double>& probs_in, const BipartiteDims& dims,
                            const SearchConfig& config) {
  config.validate();
  const std::vector<double> probs = validated_distribution(probs_in, dims);
  const TableauObjective objective(probs, dims);

  // Canonical start: sort the row-major arrangement into a decreasing matrix
  // and read the tableau back off the cell permutation.
  const YoungTableau row_major = YoungTableau::row_major(dims);
  const CanonicalForm canon = canonicalize_decreasing(arrange(probs, row_major));
  std::vector<int> cells(dims.total());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    cells[canon.cell_map[k]] = row_major.cells()[k];
  }
  YoungTableau start(dims, std::move(cells));
  if (!is_regular(start)) start = row_major;
  const double start_mi = objective(start);

  auto route = [&]() -> OptimizationResult {
    if (count_regular(dims) <= config.exhaustive_threshold) {
      return exhaustive_search(probs, dims, config);
    }
    std::vector<YoungTableau> seeds;
    for (auto& s : breadth_first(probs, dims, config)) seeds.push_back(std::move(s.tableau));
    OptimizationResult r = descend_all(objective, seeds, config, ScoredTableau{start, start_mi});
    r.evaluations += config.n1 + 1;
    return r;
  };
  OptimizationResult out = route();
  out.start_mi = start_mi;
  return out;
}

}  // namespace qae
