#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "psum/distributions.hpp"
#include "psum/grid.hpp"
#include "psum/rational.hpp"
#include "psum/summation.hpp"

namespace psum {

// The nm-by-nm upper-triangular matrix acting on column-major vectorized
// distributions: one application followed by sum-normalization equals one
// partial summation. Row r = (x, y) and column c = (i, j) hold g(i, j)
// when i >= x and j >= y, zero otherwise, so each column repeats a single
// weight and the diagonal lists every weight exactly once. Equivalently
// it factors as the n-by-n block matrix of m-by-m upper-triangular ones
// blocks times diag(g) in column-major order.
class SummationOperator {
 public:
  std::size_t dim() const noexcept { return matrix_.rows(); }
  std::size_t source_rows() const noexcept { return source_rows_; }
  std::size_t source_cols() const noexcept { return source_cols_; }

  const Rational& entry(std::size_t row, std::size_t col) const { return matrix_(row, col); }
  const Rational& diagonal(std::size_t i) const { return matrix_(i, i); }
  const Grid<Rational>& matrix() const noexcept { return matrix_; }

  // Matrix-vector product (no normalization).
  std::vector<Rational> apply(const std::vector<Rational>& v) const;
  Grid<double> as_doubles() const;

 private:
  friend SummationOperator build_operator(const WeightFunction& g);
  SummationOperator(Grid<Rational> matrix, std::size_t m, std::size_t n)
      : matrix_(std::move(matrix)), source_rows_(m), source_cols_(n) {}

  Grid<Rational> matrix_;
  std::size_t source_rows_;
  std::size_t source_cols_;
};

// Exact spectral facts for an upper-triangular operator. Eigenvalues are
// the diagonal in order; the dominant eigenvalue must be unique in
// absolute value and the operator diagonalizable for the power method to
// apply, in which case the dominant eigenvector (normalized to entry sum
// 1 whenever that sum is nonzero) is reported.
struct SpectralReport {
  std::vector<Rational> eigenvalues;
  std::optional<Rational> dominant_value;
  std::size_t dominant_index = 0;  // position on the diagonal, meaningful when unique
  bool dominant_unique = false;
  bool diagonalizable = false;
  bool power_method_applicable = false;
  std::optional<std::vector<Rational>> dominant_eigenvector;
};

SummationOperator build_operator(const WeightFunction& g);

SpectralReport analyze(const SummationOperator& op);

// Trace of the sum-normalized power iteration, floating backend.
struct PowerIterationTrace {
  enum class Status { Converged, Exhausted };

  Status status = Status::Exhausted;
  std::vector<std::vector<double>> iterates;  // element 0 is the start vector
  std::size_t iterations = 0;                 // applications of the operator
  // Exact inner product of the start with the left dominant eigenvector
  // was zero (only checked when the power method applies): the iteration
  // cannot reach the dominant eigenvector from such a start.
  bool orthogonal_start = false;
};

// Iterates v -> op v / sum(op v) until consecutive iterates differ by
// less than tol (max-abs) or max_iter is exhausted. Throws ZeroImage when
// an image has entry sum zero.
PowerIterationTrace power_iterate(const SummationOperator& op, const ProbabilityVector& start,
                                  double tol, std::size_t max_iter);

// The exact limit distribution: the sum-1 dominant eigenvector,
// devectorized. NotApplicable when the power-method conditions fail;
// SignedLimit when the normalized eigenvector is not a distribution.
ProbabilityMatrix limit_distribution(const SummationOperator& op);

// Rank over the rationals by Gaussian elimination (exact).
std::size_t rational_rank(Grid<Rational> mat);

}  // namespace psum
