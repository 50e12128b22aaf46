#include "psum/analysis.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "psum/errors.hpp"

namespace psum {
namespace {

Rational rational_abs(const Rational& q) {
  Rational out = q < 0 ? Rational(-q) : q;
  return out;
}

bool within(const Grid<Rational>& a, const Grid<Rational>& b, const Rational& tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational diff = a.data()[i] - b.data()[i];
    if (rational_abs(diff) >= tol) return false;
  }
  return true;
}

bool within(const Grid<double>& a, const Grid<double>& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(std::fabs(a.data()[i] - b.data()[i]) < tol)) return false;
  }
  return true;
}

// Smallest period then smallest start, requiring every checkable pair at
// distance p from s onward to match and no divisor of p to already be a
// period from the same start. A period-1 tail (a constant run) is
// convergence, not a cycle, so it disqualifies its multiples.
template <typename GridT, typename Match>
std::optional<CycleMatch> find_cycle(const std::vector<GridT>& trace, Match match) {
  const std::size_t len = trace.size();
  auto holds_from = [&](std::size_t s, std::size_t p) {
    if (s + p >= len) return false;
    for (std::size_t i = s; i + p < len; ++i) {
      if (!match(trace[i], trace[i + p])) return false;
    }
    return true;
  };
  if (len < 3) return std::nullopt;
  for (std::size_t p = 2; p < len; ++p) {
    for (std::size_t s = 0; s + p < len; ++s) {
      if (!holds_from(s, p)) continue;
      bool divisor_holds = false;
      for (std::size_t q = 1; q < p; ++q) {
        if (p % q == 0 && holds_from(s, q)) {
          divisor_holds = true;
          break;
        }
      }
      if (!divisor_holds) return CycleMatch{p, s};
      break;  // larger s only shrinks the evidence for this p
    }
  }
  return std::nullopt;
}

Grid<Rational> step_exact(const Grid<Rational>& current, const Grid<Rational>& weights,
                          std::size_t generation) {
  TailSums<Rational> sums = weighted_tail_sums(current, weights);
  if (sums.total == 0) {
    throw Error(Errc::DegenerateSum,
                "tail sums total zero at generation " + std::to_string(generation),
                static_cast<long>(generation));
  }
  Grid<Rational> next = std::move(sums.table);
  for (Rational& cell : next.data()) cell /= sums.total;
  return next;
}

Grid<double> step_float(const Grid<double>& current, const Grid<double>& weights,
                        std::size_t generation) {
  TailSums<double> sums = weighted_tail_sums(current, weights);
  if (sums.total == 0.0) {
    throw Error(Errc::DegenerateSum,
                "tail sums total zero at generation " + std::to_string(generation),
                static_cast<long>(generation));
  }
  Grid<double> next = std::move(sums.table);
  for (double& cell : next.data()) cell /= sums.total;
  return next;
}

// Observed behaviour versus spectral prediction. The spectral conditions
// are sufficient for convergence from a generic start, so when they hold
// the run must converge to the dominant eigenvector; when they fail the
// run must not converge. Entry comparison gets a 10x allowance over the
// stopping tolerance.
bool check_agreement(const SequenceClassification& result, double tol) {
  const SpectralReport& spectral = result.spectral;
  if (result.verdict != Verdict::Converged) return !spectral.power_method_applicable;
  if (!spectral.power_method_applicable || !spectral.dominant_eigenvector) return false;
  const std::vector<Rational>& predicted = *spectral.dominant_eigenvector;
  const Grid<Rational>& observed = *result.limit;
  if (predicted.size() != observed.size()) return false;
  Rational allowance = rational_from_double(10.0 * tol);
  for (std::size_t r = 0; r < predicted.size(); ++r) {
    Rational diff = observed.data()[r] - predicted[r];
    if (rational_abs(diff) > allowance) return false;
  }
  return true;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "Converged";
    case Verdict::Oscillating: return "Oscillating";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::optional<CycleMatch> detect_cycle(const std::vector<Grid<Rational>>& trace) {
  return find_cycle(trace,
                    [](const Grid<Rational>& a, const Grid<Rational>& b) { return a == b; });
}

std::optional<CycleMatch> detect_cycle(const std::vector<Grid<double>>& trace, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidParams, "cycle tolerance must be positive");
  return find_cycle(trace, [tol](const Grid<double>& a, const Grid<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::fabs(a.data()[i] - b.data()[i]) > tol) return false;
    }
    return true;
  });
}

SequenceClassification classify(const ProbabilityMatrix& parent, const WeightFunction& g,
                                const ClassifyOptions& options,
                                std::vector<Grid<Rational>>* trace_out) {
  if (!(options.tol > 0.0)) {
    throw Error(Errc::InvalidParams, "tolerance must be positive");
  }
  if (options.max_iter < 1) {
    throw Error(Errc::InvalidParams, "iteration budget must be at least 1");
  }
  if (parent.rows() != g.rows() || parent.cols() != g.cols()) {
    throw Error(Errc::ShapeMismatch,
                "parent is " + std::to_string(parent.rows()) + "x" +
                    std::to_string(parent.cols()) + " but weights are " +
                    std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
  }

  SequenceClassification result;
  result.backend = options.backend;
  result.spectral = analyze(build_operator(g));

  if (options.backend == Backend::Exact) {
    const Rational tol = rational_from_double(options.tol);
    std::vector<Grid<Rational>> trace;
    trace.reserve(options.max_iter + 1);
    trace.push_back(parent.grid());
    if (trace_out) trace_out->push_back(parent.grid());
    for (std::size_t gen = 1; gen <= options.max_iter; ++gen) {
      Grid<Rational> next = step_exact(trace.back(), g.grid(), gen);
      if (trace_out) trace_out->push_back(next);
      result.iterations_used = gen;
      if (within(next, trace.back(), tol)) {
        result.verdict = Verdict::Converged;
        result.limit = std::move(next);
        break;
      }
      trace.push_back(std::move(next));
      // First exact repeat: the match index is unique and the distance
      // is the minimal period (distance 1 lands in the branch above).
      for (std::size_t s = 0; s + 2 <= gen; ++s) {
        if (trace[s] == trace[gen]) {
          result.verdict = Verdict::Oscillating;
          result.period = gen - s;
          result.cycle_start = s;
          result.cycle.assign(trace.begin() + static_cast<long>(s) + 1,
                              trace.begin() + static_cast<long>(s + result.period) + 1);
          break;
        }
      }
      if (result.verdict == Verdict::Oscillating) break;
    }
  } else {
    std::vector<Grid<double>> trace;
    trace.reserve(options.max_iter + 1);
    trace.push_back(parent.as_doubles());
    auto record = [&](const Grid<double>& grid) {
      if (trace_out) {
        trace_out->push_back(map_grid<Rational>(grid, [](double v) { return rational_from_double(v); }));
      }
    };
    record(trace.front());
    const Grid<double> weights = g.as_doubles();
    for (std::size_t gen = 1; gen <= options.max_iter; ++gen) {
      Grid<double> next = step_float(trace.back(), weights, gen);
      record(next);
      result.iterations_used = gen;
      if (within(next, trace.back(), options.tol)) {
        result.verdict = Verdict::Converged;
        result.limit = map_grid<Rational>(next, [](double v) { return rational_from_double(v); });
        break;
      }
      trace.push_back(std::move(next));
      auto close = [&](const Grid<double>& a, const Grid<double>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (std::fabs(a.data()[i] - b.data()[i]) > options.tol) return false;
        }
        return true;
      };
      bool candidate = false;
      for (std::size_t s = 0; s + 2 <= gen && !candidate; ++s) {
        candidate = close(trace[s], trace[gen]);
      }
      if (candidate) {
        // A lone match can be a transient; certify period and start over
        // the whole trace so far.
        if (std::optional<CycleMatch> cycle = detect_cycle(trace, options.tol)) {
          result.verdict = Verdict::Oscillating;
          result.period = cycle->period;
          result.cycle_start = cycle->start_index;
          for (std::size_t i = cycle->start_index + 1; i <= cycle->start_index + cycle->period;
               ++i) {
            result.cycle.push_back(
                map_grid<Rational>(trace[i], [](double v) { return rational_from_double(v); }));
          }
          break;
        }
      }
    }
  }

  result.agreement = check_agreement(result, options.tol);
  return result;
}

}  // namespace psum
