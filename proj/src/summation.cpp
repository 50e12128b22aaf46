#include "psum/summation.hpp"

#include <string>

namespace psum {

WeightFunction::WeightFunction(Grid<Rational> weights) : weights_(std::move(weights)) {
  for (const Rational& w : weights_.data()) {
    if (w != 0) return;
  }
  throw Error(Errc::AllZeroWeights, "weight grid is identically zero");
}

Grid<double> WeightFunction::as_doubles() const {
  return map_grid<double>(weights_, [](const Rational& q) { return to_double(q); });
}

SummationOutcome partial_sum_once(const Grid<Rational>& parent, const WeightFunction& g) {
  TailSums<Rational> tails = weighted_tail_sums(parent, g.grid());
  if (tails.total == 0) {
    throw Error(Errc::DegenerateSum, "tail sums total zero; no normalization exists");
  }
  Grid<Rational> descendant(parent.rows(), parent.cols());
  for (std::size_t i = 0; i < tails.table.size(); ++i) {
    Rational cell = tails.table.data()[i] / tails.total;
    descendant.data()[i] = std::move(cell);
  }
  Rational normalizer = 1 / tails.total;
  return SummationOutcome{std::move(descendant), std::move(normalizer), std::move(tails.total),
                          tails.negative_entry};
}

SummationOutcome partial_sum_once(const ProbabilityMatrix& parent, const WeightFunction& g) {
  return partial_sum_once(parent.grid(), g);
}

std::vector<SummationOutcome> iterate(const ProbabilityMatrix& parent, const WeightFunction& g,
                                      std::size_t generations) {
  std::vector<SummationOutcome> out;
  out.reserve(generations);
  const Grid<Rational>* current = &parent.grid();
  for (std::size_t gen = 1; gen <= generations; ++gen) {
    try {
      out.push_back(partial_sum_once(*current, g));
    } catch (const Error& e) {
      if (e.code() == Errc::DegenerateSum) {
        throw Error(Errc::DegenerateSum,
                    "tail sums total zero at generation " + std::to_string(gen),
                    static_cast<long>(gen));
      }
      throw;
    }
    current = &out.back().descendant;
  }
  return out;
}

SummationOutcome univariate_partial_sum(const ProbabilityMatrix& parent, const WeightFunction& g) {
  if (parent.cols() != 1 || g.cols() != 1) {
    throw Error(Errc::ShapeMismatch, "univariate summation needs single-column arguments, got " +
                                         std::to_string(parent.cols()) + " and " +
                                         std::to_string(g.cols()) + " columns");
  }
  return partial_sum_once(parent, g);
}

WeightFunction derive_fixed_point_weights(const ProbabilityMatrix& target) {
  const std::size_t m = target.rows();
  const std::size_t n = target.cols();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (target(x, y) == 0) {
        throw Error(Errc::ZeroProbabilityCell,
                    "target entry (" + std::to_string(x) + ", " + std::to_string(y) +
                        ") is zero; weights are undetermined");
      }
    }
  }
  // T(x, y) = target(x, y) pins each weight once every weight to its
  // upper-right is known; the corner carries the scale convention.
  Grid<Rational> g(m, n);
  for (std::size_t x = m; x-- > 0;) {
    for (std::size_t y = n; y-- > 0;) {
      if (x == m - 1 && y == n - 1) {
        g(x, y) = 1;
        continue;
      }
      Rational acc(0);
      for (std::size_t i = x; i < m; ++i) {
        for (std::size_t j = y; j < n; ++j) {
          if (i == x && j == y) continue;
          acc += g(i, j) * target(i, j);
        }
      }
      Rational cell = (target(x, y) - acc) / target(x, y);
      g(x, y) = std::move(cell);
    }
  }
  return WeightFunction(std::move(g));
}

}  // namespace psum
