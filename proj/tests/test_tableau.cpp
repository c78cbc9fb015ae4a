#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "qae/tableau.hpp"

using namespace qae;

namespace {

YoungTableau grid(std::size_t rows, std::size_t cols, std::vector<int> cells) {
  return YoungTableau(BipartiteDims(rows, cols), std::move(cells));
}

std::set<std::vector<int>> cell_set(const std::vector<YoungTableau>& ts) {
  std::set<std::vector<int>> s;
  for (const auto& t : ts) s.insert(t.cells());
  return s;
}

}  // namespace

TEST_SUITE("tableau") {
  TEST_CASE("is_regular") {
    CHECK(is_regular(grid(2, 2, {1, 2, 3, 4})));
    CHECK(is_regular(grid(2, 2, {1, 3, 2, 4})));
    CHECK_FALSE(is_regular(grid(2, 2, {2, 1, 3, 4})));
    CHECK_FALSE(is_regular(grid(2, 2, {1, 4, 2, 3})));
    CHECK_THROWS_AS(grid(2, 2, {1, 1, 2, 3}), ValidationError);
    CHECK_THROWS_AS(grid(2, 2, {1, 2, 3}), ValidationError);
  }

  TEST_CASE("enumeration matches filtered permutations") {
    CHECK(enumerate_regular(BipartiteDims(1, 1), false).size() == 1);

    const auto two = enumerate_regular(BipartiteDims(2, 2), false);
    REQUIRE(two.size() == 2);
    CHECK(two[0].cells() == std::vector<int>{1, 2, 3, 4});
    CHECK(two[1].cells() == std::vector<int>{1, 3, 2, 4});

    for (auto [r, c] : {std::pair{2, 3}, {3, 2}, {2, 4}, {3, 3}, {1, 6}}) {
      const auto expected = oracle::regular_by_filter(r, c);
      const auto got = enumerate_regular(BipartiteDims(r, c), false);
      CHECK(got.size() == expected.size());
      CHECK(cell_set(got) == std::set<std::vector<int>>(expected.begin(), expected.end()));
    }
  }

  TEST_CASE("count_regular") {
    CHECK(count_regular(BipartiteDims(2, 2)) == 2);
    CHECK(count_regular(BipartiteDims(2, 3)) == 5);
    CHECK(count_regular(BipartiteDims(3, 3)) == 42);
    CHECK(count_regular(BipartiteDims(1, 7)) == 1);
    // 2 x n rectangles are counted by the Catalan numbers.
    CHECK(count_regular(BipartiteDims(2, 18)) == 477638700);
    CHECK(count_regular(BipartiteDims(2, 18)) == oracle::catalan(18));
    CHECK(count_regular(BipartiteDims(2, 25)) == oracle::catalan(25));
  }

  TEST_CASE("stream length equals count for every small shape") {
    int shapes = 0;
    for (std::size_t r = 1; r <= 12; ++r) {
      for (std::size_t c = 1; c <= 12; ++c) {
        const BigInt n = count_regular(BipartiteDims(r, c));
        if (n > 100000) continue;
        RegularTableauStream stream(BipartiteDims(r, c), false);
        std::size_t seen = 0;
        while (auto t = stream.next()) {
          ++seen;
          if (!is_regular(*t)) FAIL("non-regular tableau streamed");
        }
        CHECK(BigInt(seen) == n);
        ++shapes;
      }
    }
    CHECK(shapes > 20);
  }

  TEST_CASE("symmetric half covers the rest by transposition") {
    for (std::size_t d : {2u, 3u, 4u}) {
      const BipartiteDims dims(d, d);
      const auto half = enumerate_regular(dims, true);
      const auto all = enumerate_regular(dims, false);
      CHECK(BigInt(half.size()) * 2 == count_regular(dims));
      std::set<std::vector<int>> united = cell_set(half);
      for (const auto& t : half) {
        CHECK(t.at(0, 1) == 2);
        CHECK(united.insert(t.transposed().cells()).second);
      }
      CHECK(united == cell_set(all));
    }
    // Non-square and 1x1 grids ignore the flag.
    CHECK(enumerate_regular(BipartiteDims(2, 3), true).size() == 5);
    CHECK(enumerate_regular(BipartiteDims(1, 1), true).size() == 1);
  }

  TEST_CASE("random_regular") {
    CHECK(random_regular(BipartiteDims(1, 5), 9).cells() == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(random_regular(BipartiteDims(5, 1), 9).cells() == std::vector<int>{1, 2, 3, 4, 5});

    std::map<std::vector<int>, int> freq;
    for (std::uint64_t s = 0; s < 100000; ++s) ++freq[random_regular(BipartiteDims(2, 2), s).cells()];
    CHECK(freq.size() == 2);
    MESSAGE("2x2 frequencies: " << freq[{1, 2, 3, 4}] << " / " << freq[{1, 3, 2, 4}]);

    std::set<std::vector<int>> distinct;
    for (std::uint64_t s = 0; s < 200; ++s) {
      const YoungTableau t = random_regular(BipartiteDims(4, 4), s);
      CHECK(is_regular(t));
      distinct.insert(t.cells());
    }
    CHECK(distinct.size() > 100);
    CHECK(random_regular(BipartiteDims(4, 4), 77) == random_regular(BipartiteDims(4, 4), 77));
  }

  TEST_CASE("neighbors") {
    const auto n22 = neighbors(grid(2, 2, {1, 2, 3, 4}));
    REQUIRE(n22.size() == 1);
    CHECK(n22[0].cells() == std::vector<int>{1, 3, 2, 4});
    CHECK(neighbors(grid(1, 6, {1, 2, 3, 4, 5, 6})).empty());

    // Brute force: apply every listed swap and keep the regular outcomes.
    for (const auto& t : enumerate_regular(BipartiteDims(3, 4), false)) {
      const auto got = neighbors(t);
      std::vector<std::vector<int>> expected;
      const int n = static_cast<int>(t.size());
      for (int gap : {1, 2}) {
        for (int i = 2; i + gap <= n && (gap == 1 ? i <= n - 1 : i <= n - 2); ++i) {
          std::vector<int> c = t.cells();
          for (int& v : c) v = v == i ? i + gap : v == i + gap ? i : v;
          if (oracle::increasing_grid(c, 3, 4)) expected.push_back(c);
        }
      }
      REQUIRE(got.size() == expected.size());
      for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k].cells() == expected[k]);
      CHECK(cell_set(got).size() == got.size());
    }
  }

  TEST_CASE("arrange") {
    const std::vector<double> p{0.5, 0.3, 0.15, 0.05};
    CHECK(arrange(p, grid(2, 2, {1, 2, 3, 4})).values() == std::vector<double>{0.5, 0.3, 0.15, 0.05});
    CHECK(arrange(p, grid(2, 2, {1, 3, 2, 4})).values() == std::vector<double>{0.5, 0.15, 0.3, 0.05});
    const std::vector<double> uniform(4, 0.25);
    CHECK(arrange(uniform, grid(2, 2, {4, 3, 2, 1})).values() == uniform);
    CHECK_THROWS_AS(arrange({0.5, 0.5}, grid(2, 2, {1, 2, 3, 4})), ValidationError);
  }

  TEST_CASE("arrange is decreasing exactly for regular tableaux") {
    const std::vector<double> p{0.3, 0.25, 0.2, 0.12, 0.08, 0.05};
    std::vector<int> cells{1, 2, 3, 4, 5, 6};
    do {
      const YoungTableau t(BipartiteDims(2, 3), cells);
      CHECK(arrange(p, t).is_decreasing() == is_regular(t));
    } while (std::next_permutation(cells.begin(), cells.end()));
  }

  TEST_CASE("tableau mutual information") {
    const BipartiteDims d(2, 2);
    CHECK(std::abs(tableau_mutual_information(ProbabilityTableau(d, {0.25, 0.25, 0.25, 0.25}))) < 1e-15);
    CHECK(std::abs(tableau_mutual_information(ProbabilityTableau(d, {0.5, 0.5, 0, 0}))) < 1e-15);
    CHECK(tableau_mutual_information(ProbabilityTableau(d, {0.5, 0, 0, 0.5})) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(ProbabilityTableau(d, {0.5, 0.5, 0.5, 0}), ValidationError);
  }

  TEST_CASE("canonicalize_decreasing") {
    const BipartiteDims d(2, 2);
    SUBCASE("already decreasing") {
      const CanonicalForm f = canonicalize_decreasing(ProbabilityTableau(d, {0.5, 0.3, 0.15, 0.05}));
      CHECK(f.cell_map.is_identity());
      CHECK(f.passes == 1);
    }
    SUBCASE("column then row sort") {
      const CanonicalForm f = canonicalize_decreasing(ProbabilityTableau(d, {0.05, 0.3, 0.15, 0.5}));
      CHECK(f.out.values() == std::vector<double>{0.5, 0.15, 0.3, 0.05});
      CHECK(f.passes == 2);
    }
    SUBCASE("random grids") {
      std::mt19937_64 rng(42);
      for (int trial = 0; trial < 100; ++trial) {
        const std::size_t r = 1 + rng() % 6;
        const std::size_t c = 1 + rng() % 6;
        std::vector<double> p = oracle::random_descending(r * c, rng);
        std::shuffle(p.begin(), p.end(), rng);
        const ProbabilityTableau in(BipartiteDims(r, c), p);
        const CanonicalForm f = canonicalize_decreasing(in);
        CHECK(f.out.is_decreasing());
        CHECK(f.passes <= static_cast<int>(r * c));
        for (std::size_t k = 1; k < f.mi_history.size(); ++k) {
          CHECK(f.mi_history[k] <= f.mi_history[k - 1] + 1e-12);
        }
        for (std::size_t k = 0; k < p.size(); ++k) CHECK(f.out.values()[f.cell_map[k]] == p[k]);
      }
    }
  }

  TEST_CASE("regular minimum equals the full permutation minimum") {
    std::mt19937_64 rng(2024);
    for (auto [r, c] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
      const auto regular = enumerate_regular(BipartiteDims(r, c), false);
      for (int trial = 0; trial < 10; ++trial) {
        const std::vector<double> p = oracle::random_descending(r * c, rng);
        double best = INFINITY;
        for (const auto& t : regular) best = std::min(best, tableau_mutual_information(arrange(p, t)));
        CHECK(std::abs(best - oracle::brute_force_min_mi(p, r, c)) < 1e-12);
      }
    }
  }

  TEST_CASE("permutation algebra") {
    const Permutation p({2, 0, 1});
    CHECK(p.inverse().after(p).is_identity());
    CHECK(p.after(Permutation::identity(3)) == p);
    CHECK_THROWS_AS(Permutation({0, 0, 1}), ValidationError);
  }
}
