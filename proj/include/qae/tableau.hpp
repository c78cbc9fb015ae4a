// Rectangular Young tableaux and the probability grids they index.
//
// A tableau over d_A x d_B stores the values 1..d_A*d_B row-major. With the
// eigenvalues sorted so that probs[0] >= probs[1] >= ..., value k at a cell
// places the k-th largest eigenvalue there. A regular tableau (rows and
// columns strictly increasing) therefore corresponds to a decreasing matrix.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qae/qstate.hpp"

namespace qae {

using BigInt = boost::multiprecision::cpp_int;

class YoungTableau {
 public:
  /// cells holds each of 1..d_A*d_B exactly once, row-major.
  YoungTableau(BipartiteDims dims, std::vector<int> cells);

  static YoungTableau row_major(BipartiteDims dims);

  const BipartiteDims& dims() const { return dims_; }
  const std::vector<int>& cells() const { return cells_; }
  int at(std::size_t row, std::size_t col) const { return cells_[row * dims_.d_b + col]; }
  std::size_t size() const { return cells_.size(); }

  YoungTableau transposed() const;
  /// Exchanges the cells holding values a and b.
  YoungTableau with_swapped_values(int a, int b) const;

  bool operator==(const YoungTableau& other) const {
    return dims_ == other.dims_ && cells_ == other.cells_;
  }
  bool operator<(const YoungTableau& other) const { return cells_ < other.cells_; }

 private:
  BipartiteDims dims_;
  std::vector<int> cells_;
};

/// Bijection on {0..n-1}; mapping[k] is the image of k.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> mapping);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return mapping_.size(); }
  std::size_t operator[](std::size_t k) const { return mapping_[k]; }
  const std::vector<std::size_t>& mapping() const { return mapping_; }
  bool is_identity() const;

  /// (this o first)(k) = this[first[k]].
  Permutation after(const Permutation& first) const;
  Permutation inverse() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> mapping_;
};

/// Nonnegative d_A x d_B grid summing to one, row-major.
class ProbabilityTableau {
 public:
  ProbabilityTableau(BipartiteDims dims, std::vector<double> p);

  const BipartiteDims& dims() const { return dims_; }
  const std::vector<double>& values() const { return p_; }
  double at(std::size_t row, std::size_t col) const { return p_[row * dims_.d_b + col]; }

  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
  bool is_decreasing() const;

 private:
  BipartiteDims dims_;
  std::vector<double> p_;
};

bool is_regular(const YoungTableau& t);

/// Streams regular tableaux depth-first. Values are placed in order 1..n and
/// each value tries the admissible cells in row-major order. With symmetry
/// exploitation on a square grid (d >= 2) value 2 is pinned to cell (0,1),
/// which yields one representative per transpose pair.
class RegularTableauStream {
 public:
  RegularTableauStream(BipartiteDims dims, bool exploit_symmetry);

  std::optional<YoungTableau> next();

 private:
  bool advance_from(std::size_t depth);
  bool admissible(std::size_t row) const;

  BipartiteDims dims_;
  bool symmetric_;
  std::vector<std::size_t> row_len_;
  std::vector<std::size_t> choice_;  // row chosen for value depth+1
  bool started_ = false;
  bool done_ = false;
};

std::vector<YoungTableau> enumerate_regular(BipartiteDims dims, bool exploit_symmetry);

/// Hook length formula with exact integer arithmetic.
BigInt count_regular(BipartiteDims dims);

/// Fills 1..n in order, choosing uniformly among the cells whose upper and
/// left neighbours are already filled. Not uniform over tableaux.
template <class Engine>
YoungTableau random_regular(BipartiteDims dims, Engine& rng);
YoungTableau random_regular(BipartiteDims dims, std::uint64_t seed);

/// i<->i+1 swaps for i in 2..n-1, then i<->i+2 swaps for i in 2..n-2,
/// keeping the regular results in that order.
std::vector<YoungTableau> neighbors(const YoungTableau& t);

/// Cell (j,n) receives probs[t(j,n) - 1].
ProbabilityTableau arrange(const std::vector<double>& probs, const YoungTableau& t);

/// H(row sums) + H(column sums) - H(entries), natural log.
double tableau_mutual_information(const ProbabilityTableau& pt);

struct CanonicalForm {
  /// Composed cell permutation: the entry at flat cell k ends at cell_map[k].
  Permutation cell_map;
  ProbabilityTableau out;
  int passes = 0;
  /// Mutual information after each pass, starting with the input.
  std::vector<double> mi_history;
};

/// Alternately sorts every column (row-index pass) and every row
/// (column-index pass) into non-increasing order until the grid is a
/// decreasing matrix. Sorting is stable. Throws after 10*d_A*d_B passes.
CanonicalForm canonicalize_decreasing(const ProbabilityTableau& pt);

// --- implementation of the template -----------------------------------------

template <class Engine>
YoungTableau random_regular(BipartiteDims dims, Engine& rng) {
  const std::size_t n = dims.total();
  std::vector<int> cells(n, 0);
  std::vector<std::size_t> row_len(dims.d_a, 0);
  std::vector<std::size_t> candidates;
  candidates.reserve(dims.d_a);
  for (std::size_t value = 1; value <= n; ++value) {
    candidates.clear();
    for (std::size_t r = 0; r < dims.d_a; ++r) {
      if (row_len[r] < dims.d_b && (r == 0 || row_len[r - 1] > row_len[r])) {
        candidates.push_back(r);
      }
    }
    std::size_t pick = 0;
    if (candidates.size() > 1) {
      std::uniform_int_distribution<std::size_t> dist(0, candidates.size() - 1);
      pick = dist(rng);
    }
    const std::size_t r = candidates[pick];
    cells[r * dims.d_b + row_len[r]] = static_cast<int>(value);
    ++row_len[r];
  }
  return YoungTableau(dims, std::move(cells));
}

}  // namespace qae
