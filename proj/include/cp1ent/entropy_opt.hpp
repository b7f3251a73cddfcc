#pragma once

// Entanglement entropy maximization over the unit sphere of a subspace.
//
// A point is a real coordinate vector x of length 2m for an orthonormal basis
// B_0..B_{m-1}: x = (re_0..re_{m-1}, im_0..im_{m-1}) and C = sum (re_i + i im_i) B_i.

#include <cstdint>
#include <vector>

#include "cp1ent/tensor_states.hpp"

namespace cp1ent {

struct OptProblem {
  std::vector<StateTensor> subspace;
  int max_iters = 5000;
  double step0 = 1.0;
  // Below ~1e-8 the ascent per step drops under the rounding of the objective.
  double tol_grad = 1e-7;
  int restarts = 16;
  std::uint64_t seed = 0;
  bool trace = false;
};

struct RestartTrace {
  int restart = 0;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct OptResult {
  double best_value = 0.0;
  StateTensor best_state;
  RVector best_coords;
  double grad_norm = 0.0;
  int iterations = 0;
  double critical_residual = 0.0;
  int best_restart = 0;
  bool converged = false;  // false: NoConvergence, every restart stopped above tol_grad
  std::vector<RestartTrace> trace;  // filled when OptProblem::trace is set
};

struct EntropyGradient {
  double value = 0.0;
  RVector gradient;  // tangential to the sphere
  bool degenerate = false;  // two nonzero Schmidt values within 1e-10
};

inline constexpr double kArmijo = 1e-4;
inline constexpr double kBacktrack = 0.5;
// Floor inside the logarithm of the gradient only; reported values are exact.
inline constexpr double kGradientLogFloor = 1e-12;
inline constexpr double kCriticalZeroFloor = 1e-10;

StateTensor embed(const std::vector<StateTensor>& subspace, const RVector& coords);

// Throws NotNormalized if |coords| differs from 1 by more than 1e-8.
EntropyGradient entropy_and_gradient(const std::vector<StateTensor>& subspace, const RVector& coords);

// Throws PreconditionError for an empty or non-orthonormal subspace.
OptResult maximize(const OptProblem& problem);

enum class ResidualSupport {
  Nonzero,  // drop |a_j|^2 < kCriticalZeroFloor
  All,
};

// Max pairwise deviation among the |a_j|^2 of a diagonal unit state; these are
// the values the stationarity conditions of the constrained entropy force equal.
// Throws PreconditionError if C is not diagonal.
double critical_residual(const StateTensor& c, ResidualSupport support = ResidualSupport::Nonzero);

}  // namespace cp1ent
