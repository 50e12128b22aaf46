#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "psum/distributions.hpp"
#include "psum/grid.hpp"
#include "psum/rational.hpp"
#include "psum/spectral.hpp"
#include "psum/summation.hpp"

namespace psum {

enum class Verdict { Converged, Oscillating, Undetermined };

const char* verdict_name(Verdict v);

// Outcome of watching a descendant sequence: it settled, it provably
// cycles, or the budget ran out. The spectral report rides along and
// `agreement` records whether the observed behaviour matches what the
// spectral conditions predict (they are sufficient for convergence, not
// necessary).
struct SequenceClassification {
  Verdict verdict = Verdict::Undetermined;
  std::optional<Grid<Rational>> limit;   // Converged only
  std::size_t period = 0;                // Oscillating only, >= 2 and minimal
  std::size_t cycle_start = 0;           // first generation of the provable cycle
  std::vector<Grid<Rational>> cycle;     // generations cycle_start+1 .. cycle_start+period
  std::size_t iterations_used = 0;
  SpectralReport spectral;
  bool agreement = false;
  Backend backend = Backend::Exact;
};

struct ClassifyOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  Backend backend = Backend::Exact;
};

// Iterates the partial summation generation by generation. Converged:
// consecutive generations differ by < tol entrywise. Oscillating: a
// generation matches an earlier one (exactly on the exact backend,
// within tol on the float backend) at minimal distance >= 2.
// Undetermined: budget exhausted. DegenerateSum propagates with its
// generation index. When trace_out is given it receives every
// generation, parent first.
SequenceClassification classify(const ProbabilityMatrix& parent, const WeightFunction& g,
                                const ClassifyOptions& options = {},
                                std::vector<Grid<Rational>>* trace_out = nullptr);

struct CycleMatch {
  std::size_t period;       // minimal, >= 2
  std::size_t start_index;  // smallest index the periodicity holds from
};

// Smallest period p >= 2 and smallest start s such that every verifiable
// pair (i, i+p) with i >= s matches, and no divisor of p is itself a
// period from s. Matching is exact for rational traces, entrywise
// |a - b| <= tol for floating traces.
std::optional<CycleMatch> detect_cycle(const std::vector<Grid<Rational>>& trace);
std::optional<CycleMatch> detect_cycle(const std::vector<Grid<double>>& trace, double tol);

}  // namespace psum
