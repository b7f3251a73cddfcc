#include "cp1ent/sphere_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <thread>

#include <Eigen/QR>

#include "cp1ent/errors.hpp"

namespace cp1ent {

namespace {

// Running mean / M2 (Welford), combined pairwise in block order.
struct Moments {
  long long n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    const long long total = n + o.n;
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / static_cast<double>(total);
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / static_cast<double>(total);
    n = total;
  }
};

}  // namespace

std::mt19937_64 block_generator(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

StateTensor sample_uniform_state(int k, std::mt19937_64& gen) {
  if (k < 1) throw PreconditionError("level k must be >= 1");
  std::normal_distribution<double> normal;
  CMatrix c(k + 1, k + 1);
  for (Eigen::Index j = 0; j < c.cols(); ++j)
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      c(i, j) = cplx(re, im);
    }
  return StateTensor(k, std::move(c)).normalized();
}

MCEstimate mc_mean_entropy(int k, long long n, std::uint64_t seed, unsigned threads) {
  if (k < 1) throw PreconditionError("level k must be >= 1");
  if (n < kMinSamples) throw PreconditionError("sphere average needs at least 100 samples");

  const long long blocks = (n + kSampleBlock - 1) / kSampleBlock;
  std::vector<Moments> per_block(static_cast<size_t>(blocks));
  auto run_block = [&](long long b) {
    auto gen = block_generator(seed, static_cast<std::uint64_t>(b));
    const long long count = std::min(kSampleBlock, n - b * kSampleBlock);
    Moments mom;
    for (long long s = 0; s < count; ++s) mom.add(entanglement_entropy(sample_uniform_state(k, gen)));
    per_block[static_cast<size_t>(b)] = mom;
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<long long>(workers, blocks));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (long long b = w; b < blocks; b += workers) run_block(b);
    }));
  }
  for (auto& j : jobs) j.get();

  Moments total;
  for (const Moments& m : per_block) total.merge(m);
  const double var = total.n > 1 ? total.m2 / static_cast<double>(total.n - 1) : 0.0;
  return {k, n, total.mean, std::sqrt(var / static_cast<double>(n)), seed};
}

exact::Rational page_mean_exact(int d) {
  if (d < 1) throw PreconditionError("dimension d must be >= 1");
  auto harmonic = [](int m) {
    exact::Rational h = 0;
    for (int i = 1; i <= m; ++i) h += exact::Rational(1, i);
    return h;
  };
  return harmonic(d * d) - harmonic(d) - exact::Rational(d - 1, 2 * d);
}

double page_mean(int d) {
  if (d <= kPageExactMaxDim) return exact::to_double(page_mean_exact(d));
  long double tail = 0.0L;  // H_{d^2} - H_d, smallest terms first
  for (long long i = static_cast<long long>(d) * d; i > d; --i) tail += 1.0L / static_cast<long double>(i);
  return static_cast<double>(tail - static_cast<long double>(d - 1) / (2.0L * d));
}

double theorem1_prediction(const AsymptoticModel& model, double k) {
  if (k < 1.0) throw PreconditionError("k must be >= 1");
  if (model.beta <= 0.0) throw PreconditionError("beta must be positive");
  return model.m * std::log(k) - 0.5 + std::log(model.beta) + (model.gamma / model.beta) / k;
}

TailFit fit_tail(const std::vector<std::pair<double, double>>& k_mean) {
  std::set<double> distinct;
  for (const auto& [k, mean] : k_mean) distinct.insert(k);
  if (distinct.size() < 3) throw SingularFit("tail fit needs at least three distinct k");

  const auto rows = static_cast<Eigen::Index>(k_mean.size());
  Eigen::MatrixXd design(rows, 2);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& [k, mean] = k_mean[static_cast<size_t>(r)];
    if (k <= 0.0) throw SingularFit("tail fit needs positive k");
    design(r, 0) = 1.0;
    design(r, 1) = 1.0 / k;
    y(r) = mean - std::log(k);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 2) throw SingularFit("tail fit design matrix is rank deficient");
  const Eigen::VectorXd c = qr.solve(y);
  return {c(0), c(1)};
}

}  // namespace cp1ent
