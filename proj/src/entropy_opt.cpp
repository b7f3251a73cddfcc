#include "cp1ent/entropy_opt.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <thread>

#include <Eigen/SVD>

#include "cp1ent/errors.hpp"

namespace cp1ent {

namespace {

constexpr double kCoordNormTol = 1e-8;
constexpr double kMinStep = 1e-14;
constexpr double kMaxStep = 1e3;

void check_subspace(const std::vector<StateTensor>& subspace) {
  if (subspace.empty()) throw PreconditionError("optimization subspace is empty");
  const int k = subspace.front().level();
  const auto m = static_cast<Eigen::Index>(subspace.size());
  CMatrix v((k + 1) * (k + 1), m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (subspace[static_cast<size_t>(i)].level() != k) throw PreconditionError("subspace levels differ");
    v.col(i) = subspace[static_cast<size_t>(i)].flatten();
  }
  const double dev = (v.adjoint() * v - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
  if (dev > kNormalizationTol) throw NotOrthonormal("optimization subspace is not orthonormal");
}

double objective(const std::vector<StateTensor>& subspace, const RVector& coords) {
  const RVector s = Eigen::JacobiSVD<CMatrix>(embed(subspace, coords).coeffs()).singularValues();
  return entropy_from_probabilities(s.array().square().matrix());
}

struct RestartOutcome {
  double value = -1.0;
  RVector coords;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

RestartOutcome run_restart(const OptProblem& p, int index) {
  const auto m = static_cast<Eigen::Index>(p.subspace.size());
  std::mt19937_64 rng(p.seed + static_cast<std::uint64_t>(index));
  std::normal_distribution<double> normal;
  RVector x(2 * m);
  for (auto& v : x) v = normal(rng);
  x.normalize();

  RestartOutcome out;
  EntropyGradient eg = entropy_and_gradient(p.subspace, x);
  double step = p.step0;
  int it = 0;
  for (; it < p.max_iters; ++it) {
    const double gn2 = eg.gradient.squaredNorm();
    if (std::sqrt(gn2) < p.tol_grad) break;
    double t = step;
    bool accepted = false;
    RVector trial;
    double f_trial = 0.0;
    while (t >= kMinStep) {
      trial = (x + t * eg.gradient).normalized();
      f_trial = objective(p.subspace, trial);
      if (f_trial > eg.value && f_trial >= eg.value + kArmijo * t * gn2) {
        accepted = true;
        break;
      }
      t *= kBacktrack;
    }
    if (!accepted) break;  // no ascent step left at machine precision
    x = trial;
    eg = entropy_and_gradient(p.subspace, x);
    step = std::min(2.0 * t, kMaxStep);
  }
  out.value = eg.value;
  out.coords = x;
  out.grad_norm = eg.gradient.norm();
  out.iterations = it;
  out.converged = out.grad_norm < p.tol_grad;
  return out;
}

}  // namespace

StateTensor embed(const std::vector<StateTensor>& subspace, const RVector& coords) {
  const auto m = static_cast<Eigen::Index>(subspace.size());
  if (m == 0 || coords.size() != 2 * m) throw PreconditionError("coordinate vector must have length 2m");
  const int k = subspace.front().level();
  CMatrix c = CMatrix::Zero(k + 1, k + 1);
  for (Eigen::Index i = 0; i < m; ++i)
    c += cplx(coords(i), coords(m + i)) * subspace[static_cast<size_t>(i)].coeffs();
  return {k, std::move(c)};
}

EntropyGradient entropy_and_gradient(const std::vector<StateTensor>& subspace, const RVector& coords) {
  if (std::abs(coords.norm() - 1.0) > kCoordNormTol) throw NotNormalized(coords.norm());
  const auto m = static_cast<Eigen::Index>(subspace.size());
  const StateTensor c = embed(subspace, coords);
  Eigen::JacobiSVD<CMatrix> svd(c.coeffs(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector s = svd.singularValues();

  EntropyGradient out;
  out.value = entropy_from_probabilities(s.array().square().matrix());
  for (Eigen::Index j = 0; j + 1 < s.size(); ++j)
    if (s(j + 1) > std::sqrt(kEntropyZeroFloor) && s(j) - s(j + 1) < 1e-10) out.degenerate = true;

  // d/d sigma of -sigma^2 ln sigma^2, with the log floored.
  RVector g(s.size());
  for (Eigen::Index j = 0; j < s.size(); ++j)
    g(j) = -2.0 * s(j) * (std::log(s(j) * s(j) + kGradientLogFloor) + 1.0);
  // Euclidean gradient w.r.t. C under <A,B> = Re tr(A^H B).
  const CMatrix grad_c = svd.matrixU() * g.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();

  out.gradient.resize(2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    // tr(G^H B)
    const cplx ip = grad_c.conjugate().cwiseProduct(subspace[static_cast<size_t>(i)].coeffs()).sum();
    out.gradient(i) = ip.real();
    out.gradient(m + i) = -ip.imag();
  }
  out.gradient -= out.gradient.dot(coords) * coords;
  return out;
}

OptResult maximize(const OptProblem& problem) {
  check_subspace(problem.subspace);
  if (problem.restarts < 1 || problem.max_iters < 1 || problem.step0 <= 0.0 || problem.tol_grad <= 0.0)
    throw PreconditionError("invalid optimizer settings");

  const int n = problem.restarts;
  std::vector<RestartOutcome> outcomes(static_cast<size_t>(n));
  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, n);
  std::vector<std::future<void>> jobs;
  for (int w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (int r = w; r < n; r += workers) outcomes[static_cast<size_t>(r)] = run_restart(problem, r);
    }));
  }
  for (auto& j : jobs) j.get();

  OptResult result;
  int best = 0;
  for (int r = 1; r < n; ++r)
    if (outcomes[static_cast<size_t>(r)].value > outcomes[static_cast<size_t>(best)].value) best = r;
  const RestartOutcome& b = outcomes[static_cast<size_t>(best)];

  result.best_restart = best;
  result.best_coords = b.coords;
  result.best_state = embed(problem.subspace, b.coords);
  result.best_value = objective(problem.subspace, b.coords);
  result.grad_norm = b.grad_norm;
  result.iterations = b.iterations;
  result.converged = std::any_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.converged; });
  if (result.best_state.is_diagonal()) {
    result.critical_residual = critical_residual(result.best_state.normalized());
  } else {
    const RVector s = schmidt(result.best_state).alphas;
    result.critical_residual = critical_residual(StateTensor::diagonal(s.size() - 1, s.cast<cplx>()));
  }
  if (problem.trace) {
    for (int r = 0; r < n; ++r) {
      const auto& o = outcomes[static_cast<size_t>(r)];
      result.trace.push_back({r, o.value, o.grad_norm, o.iterations, o.converged});
    }
  }
  return result;
}

double critical_residual(const StateTensor& c, ResidualSupport support) {
  if (!c.is_diagonal()) throw PreconditionError("critical_residual needs a diagonal state");
  std::vector<double> p;
  for (int j = 0; j < c.dim(); ++j) {
    const double v = std::norm(c(j, j));
    if (support == ResidualSupport::All || v >= kCriticalZeroFloor) p.push_back(v);
  }
  if (p.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  return *hi - *lo;
}

}  // namespace cp1ent
