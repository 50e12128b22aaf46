#pragma once

#include <cstddef>
#include <vector>

#include "psum/grid.hpp"
#include "psum/rational.hpp"

namespace psum {

// A validated finite-support distribution on {0..m-1} x {0..n-1}.
// Entries are exact rationals; univariate distributions are the n = 1
// case. Immutable after construction.
class ProbabilityMatrix {
 public:
  // Checks nonnegativity and normalization. The exact backend requires
  // the entries to sum to exactly 1; the float backend accepts
  // |sum - 1| <= 1e-12 (absolute).
  static ProbabilityMatrix validate(const Grid<Rational>& entries,
                                    Backend backend = Backend::Exact);
  static ProbabilityMatrix validate(const std::vector<std::vector<Rational>>& rows,
                                    Backend backend = Backend::Exact);

  std::size_t rows() const noexcept { return grid_.rows(); }
  std::size_t cols() const noexcept { return grid_.cols(); }
  const Rational& operator()(std::size_t x, std::size_t y) const { return grid_(x, y); }
  const Grid<Rational>& grid() const noexcept { return grid_; }

  Grid<double> as_doubles() const;

  bool operator==(const ProbabilityMatrix&) const = default;

 private:
  explicit ProbabilityMatrix(Grid<Rational> grid) : grid_(std::move(grid)) {}
  Grid<Rational> grid_;
};

// Column-major flattening of a probability matrix: the entry for (x, y)
// sits at index y*m + x.
struct ProbabilityVector {
  std::vector<Rational> entries;

  std::size_t size() const noexcept { return entries.size(); }
  std::vector<double> as_doubles() const;
  bool operator==(const ProbabilityVector&) const = default;
};

// Bivariate inverse hypergeometric family: population classes of sizes
// n1, n2, n3 and a target count k of third-class items, 1 <= k <= n3.
struct InvHypergeomParams {
  long n1 = 0;
  long n2 = 0;
  long n3 = 0;
  long k = 0;

  long total() const noexcept { return n1 + n2 + n3; }
};

// Bivariate hypergeometric family: sample_size draws without replacement
// from classes of sizes n1, n2, n3.
struct HypergeomParams {
  long n1 = 0;
  long n2 = 0;
  long n3 = 0;
  long sample_size = 0;
};

// C(n, k), with C(n, k) = 0 whenever k < 0 or k > n.
Integer binomial(long n, long k);

// P(X=x, Y=y) over the support {0..n1} x {0..n2}, exact rationals.
ProbabilityMatrix inverse_hypergeometric(const InvHypergeomParams& params);
ProbabilityMatrix hypergeometric(const HypergeomParams& params);

ProbabilityVector vectorize(const ProbabilityMatrix& pm);
ProbabilityMatrix devectorize(const ProbabilityVector& v, std::size_t rows, std::size_t cols,
                              Backend backend = Backend::Exact);

}  // namespace psum
