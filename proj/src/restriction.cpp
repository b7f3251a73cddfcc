#include "cp1ent/restriction.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "cp1ent/errors.hpp"

namespace cp1ent {

namespace {

void check_level(int k) {
  if (k < 1) throw PreconditionError("level k must be >= 1");
}

double binom_double(int k, int j) {
  return static_cast<double>(exact::binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)));
}

// (k+1) sqrt(binom(k,i) binom(k,j)): the value of e_i(z) e_j(w) on Lambda up to the phase.
double lambda_weight(int k, int i, int j) {
  return (k + 1) * std::sqrt(binom_double(k, i) * binom_double(k, j));
}

// Orthonormal basis of the null space of `a` (columns), via QR of a^T.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double tol) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.transpose());
  qr.setThreshold(tol);
  const auto n = a.cols();
  const auto r = qr.rank();
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return q.rightCols(n - r);
}

// Real, largest-magnitude entry positive.
Eigen::VectorXd fix_sign(Eigen::VectorXd v) {
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  if (v(idx) < 0) v = -v;
  return v;
}

std::vector<StateTensor> to_states(int k, const Eigen::MatrixXd& cols) {
  std::vector<StateTensor> out;
  out.reserve(static_cast<size_t>(cols.cols()));
  for (Eigen::Index c = 0; c < cols.cols(); ++c)
    out.push_back(StateTensor::unflatten(k, fix_sign(cols.col(c)).cast<cplx>()));
  return out;
}

ExactState diagonal_direction(int k, const std::vector<long long>& a) {
  ExactState s = ExactState::zeros(k);
  for (int j = 0; j <= k; ++j) s.at(j, j) = exact::Rational(a[static_cast<size_t>(j)]);
  return s;
}

}  // namespace

ExactState ExactState::zeros(int k) {
  check_level(k);
  return {k, std::vector<exact::ComplexRational>(static_cast<size_t>((k + 1) * (k + 1)))};
}

StateTensor ExactState::to_state() const {
  const int n = level + 1;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = at(i, j).to_complex();
  return StateTensor(level, std::move(m)).normalized();
}

LambdaRestriction restrict(const StateTensor& c) {
  const int k = c.level();
  LambdaRestriction out{k, Eigen::VectorXcd::Zero(2 * k + 1)};
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) out.fourier(i - j + k) += lambda_weight(k, i, j) * c(i, j);
  return out;
}

std::vector<exact::ExactComplex> restrict_exact(const ExactState& c) {
  const int k = c.level;
  std::vector<exact::ExactComplex> out(static_cast<size_t>(2 * k + 1));
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; j <= k; ++j) {
      const auto& q = c.at(i, j);
      if (q.re == 0 && q.im == 0) continue;
      const exact::SurdSum w =
          exact::Rational(k + 1) *
          exact::SurdSum::sqrt(exact::binomial(static_cast<unsigned>(k), static_cast<unsigned>(i)) *
                               exact::binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)));
      out[static_cast<size_t>(i - j + k)] += exact::ExactComplex(w * q.re, w * q.im);
    }
  }
  return out;
}

bool in_kernel_exact(const ExactState& c) {
  const auto modes = restrict_exact(c);
  return std::all_of(modes.begin(), modes.end(), [](const auto& m) { return m.is_zero(); });
}

ConstraintSystem constraint_system(int k) {
  check_level(k);
  const int n = k + 1;
  ConstraintSystem sys{k, Eigen::MatrixXd::Zero(2 * k + 1, n * n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sys.matrix(i - j + k, i * n + j) = lambda_weight(k, i, j);
  return sys;
}

int constraint_rank(int k, double tol) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(constraint_system(k).matrix);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

std::vector<StateTensor> kernel_basis(int k, double tol) {
  return to_states(k, null_space(constraint_system(k).matrix, tol));
}

std::vector<StateTensor> kernel_basis_modewise(int k) {
  check_level(k);
  const int n = k + 1;
  std::vector<StateTensor> out;
  for (int d = -k; d <= k; ++d) {
    // Support of mode d: pairs (i, i-d).
    std::vector<int> flat;
    Eigen::VectorXd w;
    for (int i = std::max(0, d); i <= std::min(k, k + d); ++i) flat.push_back(i * n + (i - d));
    w.resize(static_cast<Eigen::Index>(flat.size()));
    for (size_t s = 0; s < flat.size(); ++s) {
      const int i = flat[s] / n;
      w(static_cast<Eigen::Index>(s)) = lambda_weight(k, i, i - d);
    }
    const Eigen::MatrixXd local = null_space(w.transpose(), kRankTolerance);
    for (Eigen::Index c = 0; c < local.cols(); ++c) {
      Eigen::VectorXcd full = Eigen::VectorXcd::Zero(n * n);
      const Eigen::VectorXd v = fix_sign(local.col(c));
      for (size_t s = 0; s < flat.size(); ++s) full(flat[s]) = v(static_cast<Eigen::Index>(s));
      out.push_back(StateTensor::unflatten(k, full));
    }
  }
  return out;
}

Eigen::MatrixXd kernel_projector(int k) {
  const Eigen::MatrixXd a = constraint_system(k).matrix;
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(a.cols(), a.cols());
  for (Eigen::Index d = 0; d < a.rows(); ++d) {
    const Eigen::VectorXd w = a.row(d).transpose();
    p -= w * w.transpose() / w.squaredNorm();
  }
  return p;
}

std::vector<std::vector<exact::SurdSum>> kernel_projector_exact(int k) {
  check_level(k);
  const int n = k + 1;
  const int dim = n * n;
  std::vector<std::vector<exact::SurdSum>> p(static_cast<size_t>(dim),
                                             std::vector<exact::SurdSum>(static_cast<size_t>(dim)));
  for (int r = 0; r < dim; ++r) p[static_cast<size_t>(r)][static_cast<size_t>(r)] = exact::Rational(1);

  auto b = [k](int j) { return exact::binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)); };
  for (int d = -k; d <= k; ++d) {
    // Row weights share the factor (k+1), which cancels against |w_d|^2.
    exact::BigInt norm_sq = 0;
    for (int i = std::max(0, d); i <= std::min(k, k + d); ++i) norm_sq += b(i) * b(i - d);
    for (int i = std::max(0, d); i <= std::min(k, k + d); ++i) {
      for (int i2 = std::max(0, d); i2 <= std::min(k, k + d); ++i2) {
        const exact::SurdSum entry =
            exact::SurdSum::sqrt(b(i) * b(i - d) * b(i2) * b(i2 - d)) * exact::Rational(1, norm_sq);
        p[static_cast<size_t>(i * n + i - d)][static_cast<size_t>(i2 * n + i2 - d)] -= entry;
      }
    }
  }
  return p;
}

std::vector<StateTensor> diagonal_kernel_basis(int k, double tol) {
  check_level(k);
  Eigen::RowVectorXd row(k + 1);
  for (int j = 0; j <= k; ++j) row(j) = binom_double(k, j);
  const Eigen::MatrixXd ns = null_space(row, tol);
  std::vector<StateTensor> out;
  for (Eigen::Index c = 0; c < ns.cols(); ++c)
    out.push_back(StateTensor::diagonal(k, fix_sign(ns.col(c)).cast<cplx>()));
  return out;
}

int diagonal_kernel_dimension(int k, double tol) {
  const ConstraintSystem sys = constraint_system(k);
  const int n = k + 1;
  Eigen::MatrixXd diag_cols(sys.matrix.rows(), n);
  for (int j = 0; j < n; ++j) diag_cols.col(j) = sys.matrix.col(j * n + j);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(diag_cols);
  qr.setThreshold(tol);
  return n - static_cast<int>(qr.rank());
}

ExactState vector_b_direction(int k) {
  check_level(k);
  std::vector<long long> a(static_cast<size_t>(k + 1), 0);
  a[0] = -k;
  a[1] = 1;
  return diagonal_direction(k, a);
}

StateTensor vector_b(int k) {
  check_level(k);
  const double s = std::sqrt(1.0 + static_cast<double>(k) * k);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(k + 1);
  a(0) = -k / s;
  a(1) = 1.0 / s;
  return StateTensor::diagonal(k, a);
}

double vector_b_entropy_formula(int k) {
  const double kk = static_cast<double>(k) * k;
  const double p = 1.0 / (1.0 + kk);
  const double q = kk / (1.0 + kk);
  return -p * std::log(p) - q * std::log(q);
}

ExactState vector_c_direction(int k) {
  check_level(k);
  std::vector<long long> a(static_cast<size_t>(k + 1), 0);
  a[0] = 1;
  a[static_cast<size_t>(k)] = -1;
  return diagonal_direction(k, a);
}

StateTensor vector_c(int k) {
  check_level(k);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(k + 1);
  a(0) = 1.0 / std::sqrt(2.0);
  a(k) = -1.0 / std::sqrt(2.0);
  return StateTensor::diagonal(k, a);
}

ExactState max_entropy_direction(int k) {
  check_level(k);
  std::vector<long long> a(static_cast<size_t>(k + 1), 0);
  for (int j = 0; j <= k; ++j) {
    if (2 * j < k) a[static_cast<size_t>(j)] = 1;
    else if (2 * j > k) a[static_cast<size_t>(j)] = -1;
  }
  return diagonal_direction(k, a);
}

StateTensor max_entropy_vector(int k) {
  check_level(k);
  const int support = (k % 2 == 1) ? k + 1 : k;
  const double mag = 1.0 / std::sqrt(static_cast<double>(support));
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(k + 1);
  for (int j = 0; j <= k; ++j) {
    if (2 * j < k) a(j) = mag;
    else if (2 * j > k) a(j) = -mag;
  }
  return StateTensor::diagonal(k, a);
}

}  // namespace cp1ent
