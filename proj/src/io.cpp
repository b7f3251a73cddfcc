#include "cp1ent/io.hpp"

#include <charconv>
#include <ostream>

#include "cp1ent/errors.hpp"

namespace cp1ent::io {

namespace {

json real_rows(const CMatrix& m, bool imag) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string fmt_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(x);
}

json state_to_json(const StateTensor& c) {
  return {{"k", c.level()}, {"re", real_rows(c.coeffs(), false)}, {"im", real_rows(c.coeffs(), true)}};
}

StateTensor state_from_json(const json& j) {
  try {
    const int k = j.at("k").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const int n = k + 1;
    if (k < 1 || re.size() != static_cast<size_t>(n) || im.size() != static_cast<size_t>(n))
      throw PreconditionError("state JSON has the wrong shape");
    CMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
      if (re[static_cast<size_t>(r)].size() != static_cast<size_t>(n) ||
          im[static_cast<size_t>(r)].size() != static_cast<size_t>(n))
        throw PreconditionError("state JSON has the wrong shape");
      for (int c = 0; c < n; ++c)
        m(r, c) = cplx(re[static_cast<size_t>(r)][static_cast<size_t>(c)].get<double>(),
                       im[static_cast<size_t>(r)][static_cast<size_t>(c)].get<double>());
    }
    return {k, std::move(m)};
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed state JSON: ") + e.what());
  }
}

json states_to_json(const std::vector<StateTensor>& states) {
  json arr = json::array();
  for (const auto& s : states) arr.push_back(state_to_json(s));
  return arr;
}

json matrix_to_json(int k, const CMatrix& m) {
  return {{"k", k},
          {"dim", m.rows()},
          {"basis_order", "lexicographic (a,b)"},
          {"re", real_rows(m, false)},
          {"im", real_rows(m, true)}};
}

json restriction_to_json(const LambdaRestriction& r) {
  json modes = json::array();
  for (int d = -r.level; d <= r.level; ++d)
    modes.push_back({{"d", d}, {"re", r.mode(d).real()}, {"im", r.mode(d).imag()}});
  return {{"k", r.level}, {"fourier", modes}};
}

json opt_result_to_json(const OptResult& r, bool with_trace) {
  json j = {{"best_value", r.best_value},
            {"best_state", state_to_json(r.best_state)},
            {"grad_norm", r.grad_norm},
            {"iterations", r.iterations},
            {"critical_residual", r.critical_residual},
            {"best_restart", r.best_restart},
            {"converged", r.converged}};
  if (with_trace) {
    json t = json::array();
    for (const auto& x : r.trace)
      t.push_back({{"restart", x.restart},
                   {"value", x.value},
                   {"grad_norm", x.grad_norm},
                   {"iterations", x.iterations},
                   {"converged", x.converged}});
    j["trace"] = std::move(t);
  }
  return j;
}

json mc_estimate_to_json(const MCEstimate& e, double page_exact, double thm1_prediction) {
  return {{"k", e.level},      {"n", e.n_samples},          {"mean", e.mean},
          {"stderr", e.stderr_}, {"page_exact", page_exact}, {"thm1_prediction", thm1_prediction},
          {"seed", e.seed}};
}

void write_fourier_csv(std::ostream& os, const LambdaRestriction& r) {
  os << "d,re,im\n";
  for (int d = -r.level; d <= r.level; ++d)
    os << d << ',' << fmt_double(r.mode(d).real()) << ',' << fmt_double(r.mode(d).imag()) << '\n';
}

void write_matrix_csv(std::ostream& os, const CMatrix& m) {
  os << "row,col,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      os << i << ',' << j << ',' << fmt_double(m(i, j).real()) << ',' << fmt_double(m(i, j).imag()) << '\n';
}

void write_sphere_csv_row(std::ostream& os, const MCEstimate& e, double page_exact, double thm1_prediction) {
  os << e.level << ',' << e.n_samples << ',' << fmt_double(e.mean) << ',' << fmt_double(e.stderr_) << ','
     << fmt_double(page_exact) << ',' << fmt_double(thm1_prediction) << ',' << e.seed << '\n';
}

}  // namespace cp1ent::io
