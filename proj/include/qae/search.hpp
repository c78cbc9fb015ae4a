// Minimization of the arranged mutual information over regular tableaux.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qae/tableau.hpp"

namespace qae {

struct SearchConfig {
  std::size_t n1 = 20000;      // breadth samples
  std::size_t n2 = 12;         // seeds kept for the descent
  std::size_t n_depth = 200;   // descent iterations per seed
  std::uint64_t seed = 0;
  BigInt exhaustive_threshold = BigInt(10'000'000);
  std::size_t parallelism = 1;

  void validate() const;
};

enum class SearchMethod { Exhaustive, Heuristic };

std::string to_string(SearchMethod m);
SearchMethod search_method_from_string(const std::string& s);

struct OptimizationResult {
  YoungTableau best_tableau;
  double best_mi = 0.0;
  SearchMethod method = SearchMethod::Exhaustive;
  std::uint64_t evaluations = 0;
  /// Best-seen mutual information after each step; non-increasing.
  std::vector<double> trajectory;
  /// Index (into the breadth-phase seeds) of the descent that found the
  /// winner; empty when the winner came from enumeration or the start point.
  std::optional<std::size_t> seed_index;
  /// Mutual information of the canonicalized starting arrangement.
  double start_mi = 0.0;
};

struct ScoredTableau {
  YoungTableau tableau;
  double mi = 0.0;
};

/// Mutual information of arrange(probs, t), evaluated without building the
/// intermediate grid.
class TableauObjective {
 public:
  TableauObjective(std::vector<double> probs, BipartiteDims dims);

  double operator()(const YoungTableau& t) const;
  const std::vector<double>& probs() const { return probs_; }
  const BipartiteDims& dims() const { return dims_; }

 private:
  std::vector<double> probs_;
  BipartiteDims dims_;
  double joint_entropy_;
};

/// Checks that probs is a non-increasing distribution of length d_A*d_B.
/// Entries in [-1e-12, 0) are clamped to zero.
std::vector<double> validated_distribution(std::vector<double> probs, const BipartiteDims& dims);

class ThresholdExceeded : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Evaluates every regular tableau (one per transpose pair on square grids).
/// Throws ThresholdExceeded when count_regular(dims) exceeds the threshold.
OptimizationResult exhaustive_search(const std::vector<double>& probs, const BipartiteDims& dims,
                                     const SearchConfig& config = {});

/// Samples n1 tableaux and keeps the n2 distinct ones with the smallest
/// mutual information, ascending (ties by draw order).
std::vector<ScoredTableau> breadth_first(const std::vector<double>& probs,
                                         const BipartiteDims& dims, const SearchConfig& config);

/// From each seed, repeatedly moves to the best neighbour (even when it is
/// worse than the current tableau) for n_depth steps; returns the best seen.
OptimizationResult depth_first(const std::vector<double>& probs, const BipartiteDims& dims,
                               const std::vector<YoungTableau>& seeds,
                               const SearchConfig& config);

/// Canonicalizes the row-major start, then routes to exhaustive or
/// breadth+depth search by count_regular(dims) against the threshold.
OptimizationResult optimize(const std::vector<double>& probs, const BipartiteDims& dims,
                            const SearchConfig& config);

}  // namespace qae
