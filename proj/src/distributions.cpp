#include "psum/distributions.hpp"

#include <string>
#include <utility>

#include "psum/errors.hpp"

namespace psum {

namespace {

// Float-backend normalization tolerance, as an exact decimal.
const Rational& float_tolerance() {
  static const Rational tol(1, Integer("1000000000000"));
  return tol;
}

}  // namespace

ProbabilityMatrix ProbabilityMatrix::validate(const Grid<Rational>& entries, Backend backend) {
  Rational sum(0);
  for (std::size_t y = 0; y < entries.cols(); ++y) {
    for (std::size_t x = 0; x < entries.rows(); ++x) {
      const Rational& p = entries(x, y);
      if (p < 0) {
        throw Error(Errc::NegativeEntry, "entry (" + std::to_string(x) + ", " + std::to_string(y) +
                                             ") is " + to_fraction_string(p));
      }
      sum += p;
    }
  }
  if (backend == Backend::Exact) {
    if (sum != 1) {
      throw Error(Errc::NotNormalized, "entries sum to " + to_fraction_string(sum) + ", expected 1");
    }
  } else {
    Rational gap = sum - 1;
    if (gap < 0) gap = -gap;
    if (gap > float_tolerance()) {
      throw Error(Errc::NotNormalized, "entries sum to " + std::to_string(to_double(sum)) +
                                           ", outside 1e-12 of 1");
    }
  }
  return ProbabilityMatrix(entries);
}

ProbabilityMatrix ProbabilityMatrix::validate(const std::vector<std::vector<Rational>>& rows,
                                              Backend backend) {
  return validate(Grid<Rational>(rows), backend);
}

Grid<double> ProbabilityMatrix::as_doubles() const {
  return map_grid<double>(grid_, [](const Rational& q) { return to_double(q); });
}

std::vector<double> ProbabilityVector::as_doubles() const {
  std::vector<double> out(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) out[i] = to_double(entries[i]);
  return out;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Integer(0);
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

ProbabilityMatrix inverse_hypergeometric(const InvHypergeomParams& params) {
  if (params.n1 < 1 || params.n2 < 1 || params.n3 < 1) {
    throw Error(Errc::InvalidParams, "class sizes N1, N2, N3 must be positive");
  }
  if (params.k < 1 || params.k > params.n3) {
    throw Error(Errc::InvalidParams, "k must satisfy 1 <= k <= N3, got k=" + std::to_string(params.k));
  }
  const long n = params.total();
  Grid<Rational> grid(static_cast<std::size_t>(params.n1) + 1,
                      static_cast<std::size_t>(params.n2) + 1);
  for (long x = 0; x <= params.n1; ++x) {
    for (long y = 0; y <= params.n2; ++y) {
      const long drawn = x + y + params.k - 1;  // draws before the k-th third-class item
      Rational p(params.n3 - params.k + 1, n - drawn);
      p.canonicalize();
      Rational ratio(binomial(params.n1, x) * binomial(params.n2, y) * binomial(params.n3, params.k - 1),
                     binomial(n, drawn));
      ratio.canonicalize();
      Rational cell = p * ratio;
      grid(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = cell;
    }
  }
  return ProbabilityMatrix::validate(grid, Backend::Exact);
}

ProbabilityMatrix hypergeometric(const HypergeomParams& params) {
  if (params.n1 < 1 || params.n2 < 1 || params.n3 < 1) {
    throw Error(Errc::InvalidParams, "class sizes N1, N2, N3 must be positive");
  }
  const long population = params.n1 + params.n2 + params.n3;
  if (params.sample_size < 1 || params.sample_size > population) {
    throw Error(Errc::InvalidParams, "sample size must satisfy 1 <= s <= N1+N2+N3, got s=" +
                                         std::to_string(params.sample_size));
  }
  const Integer draws = binomial(population, params.sample_size);
  Grid<Rational> grid(static_cast<std::size_t>(params.n1) + 1,
                      static_cast<std::size_t>(params.n2) + 1);
  for (long x = 0; x <= params.n1; ++x) {
    for (long y = 0; y <= params.n2; ++y) {
      Rational cell(binomial(params.n1, x) * binomial(params.n2, y) *
                        binomial(params.n3, params.sample_size - x - y),
                    draws);
      cell.canonicalize();
      grid(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = cell;
    }
  }
  return ProbabilityMatrix::validate(grid, Backend::Exact);
}

ProbabilityVector vectorize(const ProbabilityMatrix& pm) {
  return ProbabilityVector{pm.grid().data()};
}

ProbabilityMatrix devectorize(const ProbabilityVector& v, std::size_t rows, std::size_t cols,
                              Backend backend) {
  if (rows == 0 || cols == 0 || v.size() != rows * cols) {
    throw Error(Errc::LengthMismatch, "vector of length " + std::to_string(v.size()) +
                                          " does not fill a " + std::to_string(rows) + "x" +
                                          std::to_string(cols) + " grid");
  }
  Grid<Rational> grid(rows, cols);
  grid.data() = v.entries;
  return ProbabilityMatrix::validate(grid, backend);
}

}  // namespace psum
