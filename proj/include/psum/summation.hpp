#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "psum/distributions.hpp"
#include "psum/errors.hpp"
#include "psum/grid.hpp"
#include "psum/rational.hpp"

namespace psum {

// Weight grid g(i, j) on the parent's support. Entries may be negative.
// An all-zero grid is rejected: every descendant of it is undefined.
class WeightFunction {
 public:
  explicit WeightFunction(Grid<Rational> weights);

  std::size_t rows() const noexcept { return weights_.rows(); }
  std::size_t cols() const noexcept { return weights_.cols(); }
  const Rational& operator()(std::size_t x, std::size_t y) const { return weights_(x, y); }
  const Grid<Rational>& grid() const noexcept { return weights_; }
  Grid<double> as_doubles() const;

  bool operator==(const WeightFunction&) const = default;

 private:
  Grid<Rational> weights_;
};

// Result of one partial summation. The descendant grid always has entry
// sum exactly 1 (normalizer * raw_sum = 1); signed_descendant records
// that some unnormalized tail sum was negative, in which case the
// descendant need not be a probability matrix. It is propagated anyway
// so that iteration can continue.
struct SummationOutcome {
  Grid<Rational> descendant;
  Rational normalizer;  // the constant c making the descendant sum to 1
  Rational raw_sum;     // total of the unnormalized tail-sum table
  bool signed_descendant = false;
};

// Weighted tail-sum table T(x, y) = sum_{i>=x} sum_{j>=y} g(i, j)*p(i, j),
// filled by the two-dimensional suffix recurrence.
template <typename S>
struct TailSums {
  Grid<S> table;
  S total;
  bool negative_entry;
};

template <typename S>
TailSums<S> weighted_tail_sums(const Grid<S>& parent, const Grid<S>& weights) {
  if (!parent.same_shape(weights)) {
    throw Error(Errc::ShapeMismatch,
                "parent is " + std::to_string(parent.rows()) + "x" + std::to_string(parent.cols()) +
                    " but weights are " + std::to_string(weights.rows()) + "x" +
                    std::to_string(weights.cols()));
  }
  const std::size_t m = parent.rows();
  const std::size_t n = parent.cols();
  Grid<S> table(m, n, S(0));
  for (std::size_t x = m; x-- > 0;) {
    for (std::size_t y = n; y-- > 0;) {
      S cell = weights(x, y) * parent(x, y);
      if (x + 1 < m) cell += table(x + 1, y);
      if (y + 1 < n) cell += table(x, y + 1);
      if (x + 1 < m && y + 1 < n) cell -= table(x + 1, y + 1);
      table(x, y) = std::move(cell);
    }
  }
  S total(0);
  bool negative = false;
  for (const S& cell : table.data()) {
    total += cell;
    if (cell < S(0)) negative = true;
  }
  return TailSums<S>{std::move(table), std::move(total), negative};
}

// One partial summation of a (possibly signed) parent grid.
// Throws DegenerateSum when the tail-sum total is zero.
SummationOutcome partial_sum_once(const Grid<Rational>& parent, const WeightFunction& g);
SummationOutcome partial_sum_once(const ProbabilityMatrix& parent, const WeightFunction& g);

// k successive summations with g unaltered; element j is generation j+1.
// A DegenerateSum mid-run reports the failing generation.
std::vector<SummationOutcome> iterate(const ProbabilityMatrix& parent, const WeightFunction& g,
                                      std::size_t generations);

// The univariate case: both arguments must have a single column.
SummationOutcome univariate_partial_sum(const ProbabilityMatrix& parent, const WeightFunction& g);

// Solves for the weight grid that leaves `target` fixed with normalizer 1,
// under the scale convention g(m-1, n-1) = 1. Requires a strictly
// positive target; back-substitutes from the bottom-right corner.
WeightFunction derive_fixed_point_weights(const ProbabilityMatrix& target);

}  // namespace psum
