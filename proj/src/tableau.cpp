#include "qae/tableau.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qae/rng.hpp"

namespace qae {

YoungTableau::YoungTableau(BipartiteDims dims, std::vector<int> cells)
    : dims_(dims), cells_(std::move(cells)) {
  const std::size_t n = dims_.total();
  if (cells_.size() != n) throw ValidationError("tableau size does not match d_A*d_B");
  std::vector<bool> seen(n + 1, false);
  for (int v : cells_) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v)]) {
      throw ValidationError("tableau must contain each of 1..d_A*d_B exactly once");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

YoungTableau YoungTableau::row_major(BipartiteDims dims) {
  std::vector<int> cells(dims.total());
  std::iota(cells.begin(), cells.end(), 1);
  return YoungTableau(dims, std::move(cells));
}

YoungTableau YoungTableau::transposed() const {
  std::vector<int> out(cells_.size());
  for (std::size_t r = 0; r < dims_.d_a; ++r)
    for (std::size_t c = 0; c < dims_.d_b; ++c) out[c * dims_.d_a + r] = at(r, c);
  return YoungTableau(BipartiteDims(dims_.d_b, dims_.d_a), std::move(out));
}

YoungTableau YoungTableau::with_swapped_values(int a, int b) const {
  std::vector<int> out = cells_;
  for (int& v : out) {
    if (v == a) {
      v = b;
    } else if (v == b) {
      v = a;
    }
  }
  return YoungTableau(dims_, std::move(out));
}

Permutation::Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t v : mapping_) {
    if (v >= mapping_.size() || seen[v]) throw ValidationError("mapping is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
  for (std::size_t k = 0; k < mapping_.size(); ++k)
    if (mapping_[k] != k) return false;
  return true;
}

Permutation Permutation::after(const Permutation& first) const {
  if (first.size() != size()) throw ValidationError("permutation size mismatch");
  std::vector<std::size_t> m(size());
  for (std::size_t k = 0; k < size(); ++k) m[k] = mapping_[first[k]];
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> m(size());
  for (std::size_t k = 0; k < size(); ++k) m[mapping_[k]] = k;
  return Permutation(std::move(m));
}

ProbabilityTableau::ProbabilityTableau(BipartiteDims dims, std::vector<double> p)
    : dims_(dims), p_(std::move(p)) {
  if (p_.size() != dims_.total()) throw ValidationError("grid size does not match d_A*d_B");
  double sum = 0.0;
  for (double x : p_) {
    if (!(x >= -1e-12)) throw ValidationError("grid entries must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw ValidationError("grid entries must sum to 1");
}

std::vector<double> ProbabilityTableau::row_sums() const {
  std::vector<double> s(dims_.d_a, 0.0);
  for (std::size_t r = 0; r < dims_.d_a; ++r)
    for (std::size_t c = 0; c < dims_.d_b; ++c) s[r] += at(r, c);
  return s;
}

std::vector<double> ProbabilityTableau::col_sums() const {
  std::vector<double> s(dims_.d_b, 0.0);
  for (std::size_t r = 0; r < dims_.d_a; ++r)
    for (std::size_t c = 0; c < dims_.d_b; ++c) s[c] += at(r, c);
  return s;
}

bool ProbabilityTableau::is_decreasing() const {
  for (std::size_t r = 0; r < dims_.d_a; ++r) {
    for (std::size_t c = 0; c < dims_.d_b; ++c) {
      if (c + 1 < dims_.d_b && at(r, c) < at(r, c + 1)) return false;
      if (r + 1 < dims_.d_a && at(r, c) < at(r + 1, c)) return false;
    }
  }
  return true;
}

bool is_regular(const YoungTableau& t) {
  const auto& d = t.dims();
  for (std::size_t r = 0; r < d.d_a; ++r) {
    for (std::size_t c = 0; c < d.d_b; ++c) {
      if (c + 1 < d.d_b && t.at(r, c) >= t.at(r, c + 1)) return false;
      if (r + 1 < d.d_a && t.at(r, c) >= t.at(r + 1, c)) return false;
    }
  }
  return true;
}

// --- enumeration -------------------------------------------------------------

RegularTableauStream::RegularTableauStream(BipartiteDims dims, bool exploit_symmetry)
    : dims_(dims),
      symmetric_(exploit_symmetry && dims.d_a == dims.d_b && dims.d_a >= 2),
      row_len_(dims.d_a, 0),
      choice_(dims.total(), 0) {}

bool RegularTableauStream::admissible(std::size_t row) const {
  return row_len_[row] < dims_.d_b && (row == 0 || row_len_[row - 1] > row_len_[row]);
}

// Places values depth+1..n greedily, each into the first admissible row.
bool RegularTableauStream::advance_from(std::size_t depth) {
  for (std::size_t d = depth; d < choice_.size(); ++d) {
    std::size_t r = 0;
    while (r < dims_.d_a && !admissible(r)) ++r;
    if (r == dims_.d_a) return false;
    choice_[d] = r;
    ++row_len_[r];
  }
  return true;
}

std::optional<YoungTableau> RegularTableauStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    advance_from(0);
  } else {
    // Backtrack to the deepest value that has an untried admissible row.
    std::size_t d = choice_.size();
    bool found = false;
    while (d > 0) {
      --d;
      const std::size_t prev = choice_[d];
      --row_len_[prev];
      const bool pinned = d == 0 || (symmetric_ && d == 1);
      if (pinned) continue;
      for (std::size_t r = prev + 1; r < dims_.d_a; ++r) {
        if (admissible(r)) {
          choice_[d] = r;
          ++row_len_[r];
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) {
      done_ = true;
      return std::nullopt;
    }
    advance_from(d + 1);
  }

  std::vector<int> cells(dims_.total());
  std::vector<std::size_t> len(dims_.d_a, 0);
  for (std::size_t d = 0; d < choice_.size(); ++d) {
    const std::size_t r = choice_[d];
    cells[r * dims_.d_b + len[r]] = static_cast<int>(d + 1);
    ++len[r];
  }
  return YoungTableau(dims_, std::move(cells));
}

std::vector<YoungTableau> enumerate_regular(BipartiteDims dims, bool exploit_symmetry) {
  std::vector<YoungTableau> out;
  RegularTableauStream stream(dims, exploit_symmetry);
  while (auto t = stream.next()) out.push_back(std::move(*t));
  return out;
}

BigInt count_regular(BipartiteDims dims) {
  const std::size_t n = dims.total();
  BigInt numerator = 1;
  for (std::size_t k = 2; k <= n; ++k) numerator *= k;
  BigInt hooks = 1;
  for (std::size_t r = 0; r < dims.d_a; ++r)
    for (std::size_t c = 0; c < dims.d_b; ++c) hooks *= (dims.d_a - r) + (dims.d_b - c) - 1;
  return numerator / hooks;
}

YoungTableau random_regular(BipartiteDims dims, std::uint64_t seed) {
  Rng rng(seed);
  return random_regular(dims, rng);
}

std::vector<YoungTableau> neighbors(const YoungTableau& t) {
  const int n = static_cast<int>(t.size());
  std::vector<YoungTableau> out;
  for (int i = 2; i <= n - 1; ++i) {
    YoungTableau c = t.with_swapped_values(i, i + 1);
    if (is_regular(c)) out.push_back(std::move(c));
  }
  for (int i = 2; i <= n - 2; ++i) {
    YoungTableau c = t.with_swapped_values(i, i + 2);
    if (is_regular(c)) out.push_back(std::move(c));
  }
  // Each swap exchanges a distinct value pair, so the results are distinct.
  return out;
}

ProbabilityTableau arrange(const std::vector<double>& probs, const YoungTableau& t) {
  if (probs.size() != t.size()) throw ValidationError("probability count does not match tableau");
  for (std::size_t k = 1; k < probs.size(); ++k) {
    if (probs[k] > probs[k - 1]) throw ValidationError("probabilities must be non-increasing");
  }
  std::vector<double> p(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    p[k] = probs[static_cast<std::size_t>(t.cells()[k] - 1)];
  }
  return ProbabilityTableau(t.dims(), std::move(p));
}

double tableau_mutual_information(const ProbabilityTableau& pt) {
  return shannon_entropy(pt.row_sums()) + shannon_entropy(pt.col_sums()) -
         shannon_entropy(pt.values());
}

namespace {

enum class Pass { Columns, Rows };

// Stable descending sort of every column (Columns) or every row (Rows).
// Returns where each flat cell's entry moved.
std::vector<std::size_t> sort_pass(const BipartiteDims& d, std::vector<double>& grid,
                                   Pass pass) {
  std::vector<std::size_t> moved(grid.size());
  const std::size_t lines = pass == Pass::Columns ? d.d_b : d.d_a;
  const std::size_t len = pass == Pass::Columns ? d.d_a : d.d_b;
  auto flat = [&](std::size_t line, std::size_t pos) {
    return pass == Pass::Columns ? pos * d.d_b + line : line * d.d_b + pos;
  };
  std::vector<std::size_t> order(len);
  std::vector<double> sorted(len);
  for (std::size_t line = 0; line < lines; ++line) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return grid[flat(line, x)] > grid[flat(line, y)];
    });
    for (std::size_t pos = 0; pos < len; ++pos) {
      sorted[pos] = grid[flat(line, order[pos])];
      moved[flat(line, order[pos])] = flat(line, pos);
    }
    for (std::size_t pos = 0; pos < len; ++pos) grid[flat(line, pos)] = sorted[pos];
  }
  return moved;
}

}  // namespace

CanonicalForm canonicalize_decreasing(const ProbabilityTableau& pt) {
  const BipartiteDims d = pt.dims();
  const std::size_t cap = 10 * d.total();
  std::vector<double> grid = pt.values();
  Permutation total = Permutation::identity(grid.size());
  std::vector<double> history{tableau_mutual_information(pt)};

  for (std::size_t pass = 0; pass < cap; ++pass) {
    const Pass kind = pass % 2 == 0 ? Pass::Columns : Pass::Rows;
    Permutation step(sort_pass(d, grid, kind));
    total = step.after(total);
    ProbabilityTableau current(d, grid);
    history.push_back(tableau_mutual_information(current));
    if (current.is_decreasing()) {
      return CanonicalForm{std::move(total), std::move(current), static_cast<int>(pass + 1),
                           std::move(history)};
    }
  }
  throw ValidationError("canonicalization did not reach a decreasing matrix within " +
                        std::to_string(cap) + " passes");
}

}  // namespace qae
