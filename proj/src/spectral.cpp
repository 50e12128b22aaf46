#include "psum/spectral.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>

#include "psum/errors.hpp"

namespace psum {

namespace {

Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Right eigenvector of an upper-triangular matrix for the simple
// eigenvalue at diagonal position d, by back-substitution. Components
// past d vanish; component d is 1.
std::vector<Rational> right_eigenvector(const Grid<Rational>& mat, std::size_t d) {
  const std::size_t dim = mat.rows();
  std::vector<Rational> v(dim, Rational(0));
  const Rational& lambda = mat(d, d);
  v[d] = 1;
  for (std::size_t r = d; r-- > 0;) {
    Rational acc(0);
    for (std::size_t c = r + 1; c <= d; ++c) acc += mat(r, c) * v[c];
    Rational denom = lambda - mat(r, r);
    v[r] = acc / denom;
  }
  return v;
}

// Left eigenvector for the same position: components before d vanish.
std::vector<Rational> left_eigenvector(const Grid<Rational>& mat, std::size_t d) {
  const std::size_t dim = mat.rows();
  std::vector<Rational> w(dim, Rational(0));
  const Rational& lambda = mat(d, d);
  w[d] = 1;
  for (std::size_t c = d + 1; c < dim; ++c) {
    Rational acc(0);
    for (std::size_t r = d; r < c; ++r) acc += w[r] * mat(r, c);
    Rational denom = lambda - mat(c, c);
    w[c] = acc / denom;
  }
  return w;
}

}  // namespace

std::vector<Rational> SummationOperator::apply(const std::vector<Rational>& v) const {
  if (v.size() != dim()) {
    throw Error(Errc::LengthMismatch, "vector of length " + std::to_string(v.size()) +
                                          " applied to operator of dimension " +
                                          std::to_string(dim()));
  }
  std::vector<Rational> out(dim(), Rational(0));
  for (std::size_t r = 0; r < dim(); ++r) {
    Rational acc(0);
    for (std::size_t c = r; c < dim(); ++c) acc += matrix_(r, c) * v[c];
    out[r] = std::move(acc);
  }
  return out;
}

Grid<double> SummationOperator::as_doubles() const {
  return map_grid<double>(matrix_, [](const Rational& q) { return to_double(q); });
}

SummationOperator build_operator(const WeightFunction& g) {
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  const std::size_t dim = m * n;
  Grid<Rational> mat(dim, dim, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t col = j * m + i;
      // Column (i, j) carries g(i, j) in every row (x, y) with x <= i, y <= j.
      for (std::size_t y = 0; y <= j; ++y) {
        for (std::size_t x = 0; x <= i; ++x) {
          mat(y * m + x, col) = g(i, j);
        }
      }
    }
  }
  return SummationOperator(std::move(mat), m, n);
}

std::size_t rational_rank(Grid<Rational> mat) {
  const std::size_t rows = mat.rows();
  const std::size_t cols = mat.cols();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && mat(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t c = col; c < cols; ++c) std::swap(mat(rank, c), mat(pivot, c));
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (mat(r, col) == 0) continue;
      Rational factor = mat(r, col) / mat(rank, col);
      for (std::size_t c = col; c < cols; ++c) {
        Rational cell = mat(r, c) - factor * mat(rank, c);
        mat(r, c) = std::move(cell);
      }
    }
    ++rank;
  }
  return rank;
}

SpectralReport analyze(const SummationOperator& op) {
  const std::size_t dim = op.dim();
  SpectralReport report;
  report.eigenvalues.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) report.eigenvalues.push_back(op.diagonal(i));

  // Dominance: the greatest |g(i, j)| must be attained exactly once.
  std::size_t best = 0;
  Rational best_abs = rational_abs(report.eigenvalues[0]);
  std::size_t ties = 1;
  for (std::size_t i = 1; i < dim; ++i) {
    Rational a = rational_abs(report.eigenvalues[i]);
    if (a > best_abs) {
      best = i;
      best_abs = std::move(a);
      ties = 1;
    } else if (a == best_abs) {
      ++ties;
    }
  }
  report.dominant_unique = (ties == 1);
  if (report.dominant_unique) {
    report.dominant_value = report.eigenvalues[best];
    report.dominant_index = best;
    // A zero dominant value would mean an all-zero weight grid, which
    // WeightFunction rejects.
    assert(*report.dominant_value != 0);
  }

  // Diagonalizability: distinct diagonal entries settle it; each repeated
  // eigenvalue needs nullity equal to its multiplicity.
  std::map<Rational, std::size_t> multiplicity;
  for (const Rational& lambda : report.eigenvalues) ++multiplicity[lambda];
  report.diagonalizable = true;
  for (const auto& [lambda, count] : multiplicity) {
    if (count == 1) continue;
    Grid<Rational> shifted = op.matrix();
    for (std::size_t i = 0; i < dim; ++i) {
      Rational cell = shifted(i, i) - lambda;
      shifted(i, i) = std::move(cell);
    }
    const std::size_t nullity = dim - rational_rank(std::move(shifted));
    if (nullity != count) {
      report.diagonalizable = false;
      break;
    }
  }

  report.power_method_applicable = report.dominant_unique && report.diagonalizable;
  if (report.power_method_applicable) {
    std::vector<Rational> v = right_eigenvector(op.matrix(), best);
    Rational sum(0);
    for (const Rational& x : v) sum += x;
    if (sum != 0) {
      for (Rational& x : v) {
        Rational scaled = x / sum;
        x = std::move(scaled);
      }
    }
    report.dominant_eigenvector = std::move(v);
  }
  return report;
}

PowerIterationTrace power_iterate(const SummationOperator& op, const ProbabilityVector& start,
                                  double tol, std::size_t max_iter) {
  if (!(tol > 0)) {
    throw Error(Errc::InvalidParams, "tolerance must be positive");
  }
  if (max_iter < 1) {
    throw Error(Errc::InvalidParams, "maximum iteration count must be at least 1");
  }
  if (start.size() != op.dim()) {
    throw Error(Errc::LengthMismatch, "start vector of length " + std::to_string(start.size()) +
                                          " does not match operator dimension " +
                                          std::to_string(op.dim()));
  }

  PowerIterationTrace trace;

  SpectralReport report = analyze(op);
  if (report.power_method_applicable) {
    std::vector<Rational> left = left_eigenvector(op.matrix(), report.dominant_index);
    Rational dot(0);
    for (std::size_t i = 0; i < left.size(); ++i) dot += left[i] * start.entries[i];
    trace.orthogonal_start = (dot == 0);
  }

  const Grid<double> mat = op.as_doubles();
  const std::size_t dim = op.dim();
  std::vector<double> current = start.as_doubles();
  trace.iterates.push_back(current);

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    std::vector<double> next(dim, 0.0);
    for (std::size_t r = 0; r < dim; ++r) {
      double acc = 0.0;
      for (std::size_t c = r; c < dim; ++c) acc += mat(r, c) * current[c];
      next[r] = acc;
    }
    double sum = 0.0;
    for (double x : next) sum += x;
    if (sum == 0.0) {
      throw Error(Errc::ZeroImage, "image under the operator has entry sum zero at iteration " +
                                       std::to_string(iter));
    }
    for (double& x : next) x /= sum;

    double diff = 0.0;
    for (std::size_t i = 0; i < dim; ++i) diff = std::max(diff, std::abs(next[i] - current[i]));
    trace.iterates.push_back(next);
    trace.iterations = iter;
    current = std::move(next);
    if (diff < tol) {
      trace.status = PowerIterationTrace::Status::Converged;
      return trace;
    }
  }
  trace.status = PowerIterationTrace::Status::Exhausted;
  return trace;
}

ProbabilityMatrix limit_distribution(const SummationOperator& op) {
  SpectralReport report = analyze(op);
  if (!report.power_method_applicable) {
    std::string reason = report.dominant_unique ? "operator is not diagonalizable"
                                                : "dominant eigenvalue is not unique";
    throw Error(Errc::NotApplicable, reason);
  }
  const std::vector<Rational>& v = *report.dominant_eigenvector;
  Rational sum(0);
  for (const Rational& x : v) sum += x;
  if (sum != 1) {
    // analyze() normalizes to entry sum 1 unless the sum was zero.
    throw Error(Errc::SignedLimit, "dominant eigenvector has entry sum zero");
  }
  for (const Rational& x : v) {
    if (x < 0) {
      throw Error(Errc::SignedLimit, "sum-1 dominant eigenvector has negative entries");
    }
  }
  return devectorize(ProbabilityVector{v}, op.source_rows(), op.source_cols(), Backend::Exact);
}

}  // namespace psum
