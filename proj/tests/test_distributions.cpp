#include <doctest.h>

#include <map>
#include <vector>

#include "psum/distributions.hpp"
#include "psum/errors.hpp"
#include "test_support.hpp"

using namespace psum;
using namespace psum::testing;

namespace {

// PMF evaluated straight from the displayed formula, independent of the
// generator's loop structure.
Rational inv_hypergeom_cell(long n1, long n2, long n3, long k, long x, long y) {
  long n = n1 + n2 + n3;
  Rational lead = frac(n3 - k + 1, n - (x + y + k - 1));
  Rational num(binomial(n1, x) * binomial(n2, y) * binomial(n3, k - 1));
  Rational den(binomial(n, x + y + k - 1));
  Rational out = lead * num / den;
  return out;
}

Rational grid_total(const Grid<Rational>& grid) {
  Rational total(0);
  for (const Rational& cell : grid.data()) total += cell;
  return total;
}

}  // namespace

TEST_CASE("validate accepts the printed hypergeometric matrix") {
  ProbabilityMatrix pm = pm_q({{"1/2", "1/4"}, {"1/4", "0"}});
  CHECK(pm.rows() == 2);
  CHECK(pm.cols() == 2);
  CHECK(pm(0, 0) == Rational(1, 2));
}

TEST_CASE("validate accepts the degenerate distribution") {
  ProbabilityMatrix pm = pm_q({{"1"}});
  CHECK(pm.rows() == 1);
  CHECK(pm(0, 0) == 1);
}

TEST_CASE("validate rejects negative entries before checking the sum") {
  CHECK(error_code_of([] { pm_q({{"1/2", "1/2"}, {"1/2", "-1/2"}}); }) == Errc::NegativeEntry);
}

TEST_CASE("validate rejects an unnormalized grid") {
  CHECK(error_code_of([] { pm_q({{"1/2", "1/3"}}); }) == Errc::NotNormalized);
}

TEST_CASE("validate rejects ragged input") {
  std::vector<std::vector<Rational>> rows{{Rational(1, 2)}, {Rational(1, 4), Rational(1, 4)}};
  CHECK(error_code_of([&] { ProbabilityMatrix::validate(rows); }) == Errc::RaggedInput);
}

TEST_CASE("float backend tolerates 1e-13 drift and exact rejects it") {
  std::vector<std::vector<Rational>> rows{
      {Rational(1, 2), Rational(1, 2) + Rational(1, Integer("10000000000000"))}};
  CHECK(error_code_of([&] { ProbabilityMatrix::validate(rows); }) == Errc::NotNormalized);
  ProbabilityMatrix pm = ProbabilityMatrix::validate(rows, Backend::Float);
  CHECK(pm.cols() == 2);
  std::vector<std::vector<Rational>> far{
      {Rational(1, 2), Rational(1, 2) + Rational(1, Integer("10000000000"))}};
  CHECK(error_code_of([&] { ProbabilityMatrix::validate(far, Backend::Float); }) ==
        Errc::NotNormalized);
}

TEST_CASE("inverse hypergeometric reproduces the printed matrix") {
  ProbabilityMatrix pm = inverse_hypergeometric({2, 2, 5, 2});
  CHECK(pm == parent_inv_hypergeom());
}

TEST_CASE("inverse hypergeometric entry (0,0) matches the formula by hand") {
  ProbabilityMatrix pm = inverse_hypergeometric({2, 2, 5, 2});
  Rational lead = frac(4, 8);
  Rational rest = Rational(binomial(2, 0) * binomial(2, 0) * binomial(5, 1)) / Rational(binomial(9, 1));
  Rational expected = lead * rest;
  CHECK(expected == Rational(5, 18));
  CHECK(pm(0, 0) == expected);
}

TEST_CASE("inverse hypergeometric sums to 1 and matches the formula cellwise") {
  TestRng rng(1001);
  for (int trial = 0; trial < 20; ++trial) {
    long n1 = rng.pick(1, 5), n2 = rng.pick(1, 5), n3 = rng.pick(1, 6);
    long k = rng.pick(1, n3);
    ProbabilityMatrix pm = inverse_hypergeometric({n1, n2, n3, k});
    REQUIRE(pm.rows() == static_cast<std::size_t>(n1 + 1));
    REQUIRE(pm.cols() == static_cast<std::size_t>(n2 + 1));
    CHECK(grid_total(pm.grid()) == 1);
    for (long x = 0; x <= n1; ++x)
      for (long y = 0; y <= n2; ++y)
        CHECK(pm(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) ==
              inv_hypergeom_cell(n1, n2, n3, k, x, y));
  }
}

TEST_CASE("inverse hypergeometric rejects k out of range") {
  CHECK(error_code_of([] { inverse_hypergeometric({2, 2, 5, 0}); }) == Errc::InvalidParams);
  CHECK(error_code_of([] { inverse_hypergeometric({2, 2, 5, 6}); }) == Errc::InvalidParams);
  CHECK(error_code_of([] { inverse_hypergeometric({0, 2, 5, 2}); }) == Errc::InvalidParams);
}

TEST_CASE("inverse hypergeometric marginals are distributions") {
  ProbabilityMatrix pm = inverse_hypergeometric({2, 2, 5, 2});
  Rational row_total(0), col_total(0);
  for (std::size_t x = 0; x < pm.rows(); ++x) {
    Rational row(0);
    for (std::size_t y = 0; y < pm.cols(); ++y) row += pm(x, y);
    CHECK(row >= 0);
    row_total += row;
  }
  for (std::size_t y = 0; y < pm.cols(); ++y) {
    Rational col(0);
    for (std::size_t x = 0; x < pm.rows(); ++x) col += pm(x, y);
    CHECK(col >= 0);
    col_total += col;
  }
  CHECK(row_total == 1);
  CHECK(col_total == 1);
}

TEST_CASE("hypergeometric reproduces the printed matrix") {
  ProbabilityMatrix pm = hypergeometric({1, 1, 2, 1});
  CHECK(pm == parent_hypergeom());
  CHECK(pm(1, 1) == 0);
}

TEST_CASE("hypergeometric matches draw enumeration for a 4-element population") {
  // Classes a (2 items), b (1), c (1); all C(4,2)=6 unordered draws.
  ProbabilityMatrix pm = hypergeometric({2, 1, 1, 2});
  std::vector<char> population{'a', 'a', 'b', 'c'};
  std::map<std::pair<int, int>, int> counts;
  int draws = 0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    for (std::size_t j = i + 1; j < population.size(); ++j) {
      int x = (population[i] == 'a') + (population[j] == 'a');
      int y = (population[i] == 'b') + (population[j] == 'b');
      ++counts[{x, y}];
      ++draws;
    }
  }
  REQUIRE(draws == 6);
  for (std::size_t x = 0; x < pm.rows(); ++x) {
    for (std::size_t y = 0; y < pm.cols(); ++y) {
      auto it = counts.find({static_cast<int>(x), static_cast<int>(y)});
      Rational expected = it == counts.end() ? Rational(0) : frac(it->second, 6);
      CHECK(pm(x, y) == expected);
    }
  }
  CHECK(grid_total(pm.grid()) == 1);
}

TEST_CASE("hypergeometric sums to 1 for random parameters") {
  TestRng rng(1002);
  for (int trial = 0; trial < 20; ++trial) {
    long n1 = rng.pick(1, 5), n2 = rng.pick(1, 5), n3 = rng.pick(1, 5);
    long sample = rng.pick(1, n1 + n2 + n3);
    ProbabilityMatrix pm = hypergeometric({n1, n2, n3, sample});
    CHECK(grid_total(pm.grid()) == 1);
  }
}

TEST_CASE("hypergeometric rejects an oversized sample") {
  CHECK(error_code_of([] { hypergeometric({1, 1, 2, 5}); }) == Errc::InvalidParams);
  CHECK(error_code_of([] { hypergeometric({1, 1, 2, 0}); }) == Errc::InvalidParams);
}

TEST_CASE("vectorize stacks columns in the printed order") {
  ProbabilityVector v = vectorize(parent_hypergeom());
  std::vector<Rational> expected{Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(0)};
  CHECK(v.entries == expected);
  ProbabilityVector unit = vectorize(pm_q({{"1"}}));
  CHECK(unit.entries == std::vector<Rational>{Rational(1)});
}

TEST_CASE("devectorize inverts vectorize") {
  ProbabilityMatrix pm = parent_hypergeom();
  CHECK(devectorize(vectorize(pm), 2, 2) == pm);
  CHECK(devectorize(ProbabilityVector{{Rational(1)}}, 1, 1) == pm_q({{"1"}}));
}

TEST_CASE("devectorize rejects a length mismatch") {
  ProbabilityVector v{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
  CHECK(error_code_of([&] { devectorize(v, 2, 2); }) == Errc::LengthMismatch);
}

TEST_CASE("vectorize and devectorize are inverse over random shapes") {
  TestRng rng(1003);
  for (int trial = 0; trial < 40; ++trial) {
    auto [m, n] = rng.shape(6);
    ProbabilityMatrix pm = rng.positive_parent(m, n);
    ProbabilityVector v = vectorize(pm);
    REQUIRE(v.size() == m * n);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < n; ++y) CHECK(v.entries[y * m + x] == pm(x, y));
    CHECK(devectorize(v, m, n) == pm);
  }
}
