#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "cp1ent/exact.hpp"
#include "cp1ent/tensor_states.hpp"

namespace cp1ent {

struct MCEstimate {
  int level = 1;
  long long n_samples = 0;
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t seed = 0;

  friend bool operator==(const MCEstimate&, const MCEstimate&) = default;
};

// Leading coefficients of the large-k mean entropy m ln k - 1/2 + ln beta + (gamma/beta)/k.
struct AsymptoticModel {
  int m = 1;
  double beta = 1.0;
  double gamma = 2.0;

  // CP1 with the hyperplane bundle: deg c1(L) = 1, deg c1(T CP1) = 2.
  static AsymptoticModel cp1() { return {1, 1.0, 2.0}; }
};

struct TailFit {
  double c0 = 0.0;  // intercept of mean - ln k against 1/k
  double c1 = 0.0;  // slope
};

// Samples in one generator block. Block b is seeded from (seed, b), so results
// do not depend on how blocks are spread over threads.
inline constexpr long long kSampleBlock = 1024;
inline constexpr long long kMinSamples = 100;

// Uniform (unitarily invariant) unit state: normalized i.i.d. standard complex Gaussians.
StateTensor sample_uniform_state(int k, std::mt19937_64& gen);
std::mt19937_64 block_generator(std::uint64_t seed, std::uint64_t block);

// Throws PreconditionError if n < kMinSamples or k < 1. `threads` = 0 uses the hardware count.
MCEstimate mc_mean_entropy(int k, long long n, std::uint64_t seed, unsigned threads = 0);

// Exact mean entanglement entropy of a uniform pure state on C^d (x) C^d:
// H_{d^2} - H_d - (d-1)/(2d).
exact::Rational page_mean_exact(int d);
// Exact rational below this dimension, long-double summation above.
inline constexpr int kPageExactMaxDim = 32;
double page_mean(int d);

double theorem1_prediction(const AsymptoticModel& model, double k);

// Least squares of mean - ln k against (1, 1/k). Throws SingularFit with fewer
// than three distinct k or a rank-deficient design.
TailFit fit_tail(const std::vector<std::pair<double, double>>& k_mean);

}  // namespace cp1ent
