// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every check is against frozen values or independent oracles;
// tolerances are the stated ones, never looser.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "psum/analysis.hpp"
#include "psum/distributions.hpp"
#include "psum/errors.hpp"
#include "psum/spectral.hpp"
#include "psum/summation.hpp"
#include "test_support.hpp"

using namespace psum;
using namespace psum::testing;

namespace {

struct Criterion {
  int number;
  const char* label;
  bool (*run)(std::string& detail);
};

bool require(bool condition, const std::string& what, std::string& detail) {
  if (!condition && detail.empty()) detail = what;
  return condition;
}

Grid<Rational> matrix_multiply(const Grid<Rational>& a, const Grid<Rational>& b) {
  Grid<Rational> out(a.rows(), b.cols(), Rational(0));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(r, k) == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        Rational term = a(r, k) * b(k, c);
        out(r, c) += term;
      }
    }
  }
  return out;
}

std::vector<Rational> sorted(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  return values;
}

bool criterion_fixed_point(std::string& detail) {
  SummationOutcome outcome =
      partial_sum_once(parent_inv_hypergeom(), weights_fixing_inv_hypergeom());
  bool ok = require(outcome.descendant == parent_inv_hypergeom().grid(),
                    "descendant differs from the parent", detail);
  ok &= require(outcome.normalizer == 1, "normalizer is not exactly 1", detail);
  return ok;
}

bool criterion_spectral_limit(std::string& detail) {
  SummationOperator op = build_operator(weights_fixing_inv_hypergeom());
  SpectralReport report = analyze(op);
  bool ok = require(report.dominant_value.has_value() && *report.dominant_value == 1,
                    "dominant eigenvalue is not exactly 1", detail);
  ok &= require(report.dominant_unique, "dominant eigenvalue not unique", detail);
  ok &= require(report.diagonalizable, "operator not diagonalizable", detail);
  ok &= require(limit_distribution(op) == parent_inv_hypergeom(),
                "limit differs from the printed matrix", detail);
  return ok;
}

bool criterion_power_iteration(std::string& detail) {
  auto started = std::chrono::steady_clock::now();
  SummationOperator op = build_operator(weights_fixing_inv_hypergeom());
  ProbabilityVector start{std::vector<Rational>(9, frac(1, 9))};
  PowerIterationTrace trace = power_iterate(op, start, 1e-12, 10000);
  bool ok = require(trace.status == PowerIterationTrace::Status::Converged,
                    "iteration did not converge", detail);
  std::vector<double> expected = vectorize(parent_inv_hypergeom()).as_doubles();
  for (std::size_t i = 0; ok && i < expected.size(); ++i) {
    ok &= require(std::fabs(trace.iterates.back()[i] - expected[i]) < 1e-10,
                  "entry " + std::to_string(i) + " is off by more than 1e-10", detail);
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  ok &= require(seconds < 1.0, "runtime exceeded 1 s", detail);
  return ok;
}

bool criterion_oscillation(std::string& detail) {
  SequenceClassification result = classify(parent_hypergeom(), weights_oscillating());
  bool ok = require(result.verdict == Verdict::Oscillating, "verdict is not Oscillating", detail);
  ok &= require(result.period == 2, "period is not 2", detail);
  ok &= require(result.cycle.size() == 2 &&
                    result.cycle[0] == first_descendant_hypergeom().grid() &&
                    result.cycle[1] == parent_hypergeom().grid(),
                "cycle differs from the printed orbit", detail);
  std::vector<Rational> expected{Rational(-1), Rational(1), Rational(1), Rational(0)};
  ok &= require(result.spectral.eigenvalues == expected, "eigenvalues differ", detail);
  ok &= require(!result.spectral.dominant_unique, "dominance tie not reported", detail);
  return ok;
}

bool criterion_operator_construction(std::string& detail) {
  SummationOperator small = build_operator(weights_oscillating());
  SummationOperator large = build_operator(weights_fixing_inv_hypergeom());
  bool ok = require(small.matrix() == operator_2x2_rows(), "4x4 operator differs", detail);
  ok &= require(large.matrix() == operator_3x3_rows(), "9x9 operator differs", detail);
  ok &= require(small.matrix() == block_product(weights_oscillating()),
                "4x4 operator differs from the block product", detail);
  ok &= require(large.matrix() == block_product(weights_fixing_inv_hypergeom()),
                "9x9 operator differs from the block product", detail);
  return ok;
}

bool criterion_inverse_derivation(std::string& detail) {
  WeightFunction derived = derive_fixed_point_weights(parent_inv_hypergeom());
  return require(derived.grid() == weights_fixing_inv_hypergeom().grid(),
                 "derived weights differ from the printed grid", detail);
}

bool criterion_property_suite(std::string& detail) {
  auto started = std::chrono::steady_clock::now();
  TestRng rng(7001);
  const int instances = 220;
  for (int trial = 0; trial < instances; ++trial) {
    std::string at = "instance " + std::to_string(trial) + ": ";
    auto [m, n] = rng.shape(4);
    ProbabilityMatrix parent = rng.positive_parent(m, n);
    WeightFunction g = rng.distinct_weights(m, n, false);
    SummationOperator op = build_operator(g);

    // (a) direct iteration equals normalized matrix powers, exactly.
    std::vector<SummationOutcome> gens = iterate(parent, g, 4);
    Grid<Rational> power = op.matrix();
    for (std::size_t k = 1; k <= 4; ++k) {
      if (k > 1) power = matrix_multiply(power, op.matrix());
      std::vector<Rational> v = vectorize(parent).entries;
      std::vector<Rational> image(v.size(), Rational(0));
      for (std::size_t r = 0; r < v.size(); ++r) {
        for (std::size_t c = 0; c < v.size(); ++c) {
          Rational term = power(r, c) * v[c];
          image[r] += term;
        }
      }
      Rational total(0);
      for (const Rational& x : image) total += x;
      if (!require(total != 0, at + "matrix power image sums to zero", detail)) return false;
      for (Rational& x : image) x /= total;
      if (!require(devectorize(ProbabilityVector{image}, m, n).grid() ==
                       gens[k - 1].descendant,
                   at + "generation " + std::to_string(k) + " differs from the matrix power",
                   detail)) {
        return false;
      }
    }

    // (b) eigenvalue multiset equals the weight multiset.
    SpectralReport report = analyze(op);
    if (!require(sorted(report.eigenvalues) == sorted(g.grid().data()),
                 at + "eigenvalue multiset differs", detail)) {
      return false;
    }

    // (c) classification converges to the spectral limit within 1e-9.
    ProbabilityMatrix expected = limit_distribution(op);
    ClassifyOptions options;
    options.backend = Backend::Float;
    options.tol = 1e-11;
    SequenceClassification result = classify(parent, g, options);
    if (!require(result.verdict == Verdict::Converged, at + "did not converge", detail)) {
      return false;
    }
    for (std::size_t i = 0; i < expected.grid().size(); ++i) {
      double got = to_double(result.limit->data()[i]);
      double want = to_double(expected.grid().data()[i]);
      if (!require(std::fabs(got - want) < 1e-9,
                   at + "limit entry " + std::to_string(i) + " is off by more than 1e-9",
                   detail)) {
        return false;
      }
    }

    // (d) scale invariance of the descendant under g -> alpha*g.
    Rational alpha = rng.positive_rational();
    WeightFunction scaled(map_grid<Rational>(g.grid(), [&](const Rational& w) {
      Rational out = alpha * w;
      return out;
    }));
    SummationOutcome base = partial_sum_once(parent, g);
    SummationOutcome other = partial_sum_once(parent, scaled);
    if (!require(other.descendant == base.descendant, at + "descendant not scale invariant",
                 detail)) {
      return false;
    }
    Rational recovered = other.normalizer * alpha;
    if (!require(recovered == base.normalizer, at + "normalizer did not rescale", detail)) {
      return false;
    }
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (!require(seconds < 30.0, "runtime exceeded 30 s", detail)) return false;
  detail = std::to_string(instances) + " instances in " + std::to_string(seconds) + " s";
  return true;
}

bool criterion_generators(std::string& detail) {
  bool ok = require(inverse_hypergeometric({2, 2, 5, 2}) == parent_inv_hypergeom(),
                    "inverse hypergeometric matrix differs", detail);
  ok &= require(hypergeometric({1, 1, 2, 1}) == parent_hypergeom(),
                "hypergeometric matrix differs", detail);
  TestRng rng(8001);
  for (int trial = 0; ok && trial < 20; ++trial) {
    InvHypergeomParams params{rng.pick(1, 4), rng.pick(1, 4), rng.pick(1, 6), 0};
    params.k = rng.pick(1, params.n3);
    ProbabilityMatrix pm = inverse_hypergeometric(params);
    Rational total(0);
    for (const Rational& cell : pm.grid().data()) total += cell;
    ok &= require(total == 1, "inverse hypergeometric sum is not exactly 1", detail);
  }
  for (int trial = 0; ok && trial < 20; ++trial) {
    HypergeomParams params{rng.pick(1, 4), rng.pick(1, 4), rng.pick(1, 4), 0};
    params.sample_size = rng.pick(1, params.n1 + params.n2 + params.n3);
    ProbabilityMatrix pm = hypergeometric(params);
    Rational total(0);
    for (const Rational& cell : pm.grid().data()) total += cell;
    ok &= require(total == 1, "hypergeometric sum is not exactly 1", detail);
  }
  return ok;
}

const Criterion kCriteria[] = {
    {1, "inverse hypergeometric fixed point, exact", criterion_fixed_point},
    {2, "fixed-point limit, spectral path", criterion_spectral_limit},
    {3, "fixed-point limit, iterative path", criterion_power_iteration},
    {4, "period-2 oscillation", criterion_oscillation},
    {5, "operator construction", criterion_operator_construction},
    {6, "inverse derivation", criterion_inverse_derivation},
    {7, "property suite", criterion_property_suite},
    {8, "generator checks", criterion_generators},
};

}  // namespace

int main() {
  int failures = 0;
  for (const Criterion& criterion : kCriteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (ok) {
      std::printf("PASS criterion %d (%s)%s%s\n", criterion.number, criterion.label,
                  detail.empty() ? "" : ": ", detail.c_str());
    } else {
      ++failures;
      std::printf("FAIL criterion %d (%s)%s%s\n", criterion.number, criterion.label,
                  detail.empty() ? "" : ": ", detail.c_str());
    }
  }
  return failures == 0 ? 0 : 1;
}
