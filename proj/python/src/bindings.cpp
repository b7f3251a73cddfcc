#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cp1ent/entropy_opt.hpp"
#include "cp1ent/errors.hpp"
#include "cp1ent/restriction.hpp"
#include "cp1ent/sphere_sampling.hpp"
#include "cp1ent/tensor_states.hpp"
#include "cp1ent/toeplitz.hpp"

namespace py = pybind11;
using namespace cp1ent;

namespace {

StateTensor as_state(const CMatrix& c) {
  if (c.rows() < 2 || c.rows() != c.cols()) throw PreconditionError("state must be a square (k+1)x(k+1) matrix, k >= 1");
  return {static_cast<int>(c.rows()) - 1, c};
}

std::vector<CMatrix> as_arrays(const std::vector<StateTensor>& states) {
  std::vector<CMatrix> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.coeffs());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entanglement entropy on CP1 x CP1 sections";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  m.def("entanglement_entropy", [](const CMatrix& c) { return entanglement_entropy(as_state(c)); }, py::arg("c"));
  m.def("schmidt_coefficients", [](const CMatrix& c) { return schmidt(as_state(c)).alphas; }, py::arg("c"));
  m.def("schmidt_rank", [](const CMatrix& c, double tol) { return schmidt_rank(as_state(c), tol); }, py::arg("c"),
        py::arg("tol") = 1e-8);
  m.def("reduced_density", [](const CMatrix& c) { return partial_trace_first(as_state(c)).matrix; }, py::arg("c"));

  m.def("restrict", [](const CMatrix& c) { return restrict(as_state(c)).fourier; }, py::arg("c"),
        "Fourier coefficients of the restriction to Lambda, index d + k");
  m.def("kernel_basis", [](int k, double tol) { return as_arrays(kernel_basis(k, tol)); }, py::arg("k"),
        py::arg("tol") = kRankTolerance);
  m.def("diagonal_kernel_basis", [](int k, double tol) { return as_arrays(diagonal_kernel_basis(k, tol)); },
        py::arg("k"), py::arg("tol") = kRankTolerance);
  m.def("kernel_projector", &kernel_projector, py::arg("k"));
  m.def("vector_b", [](int k) { return vector_b(k).coeffs(); }, py::arg("k"));
  m.def("vector_c", [](int k) { return vector_c(k).coeffs(); }, py::arg("k"));
  m.def("max_entropy_vector", [](int k) { return max_entropy_vector(k).coeffs(); }, py::arg("k"));
  m.def("vector_b_entropy_formula", &vector_b_entropy_formula, py::arg("k"));

  m.def(
      "toeplitz_matrix",
      [](int k, double offset) {
        SymbolExpr f = symbol_of_theorem2e();
        f.offset = exact::ComplexRational::from_complex(offset);
        return toeplitz_matrix(f, k).entries;
      },
      py::arg("k") = 1, py::arg("offset") = -2.0);
  m.def("toeplitz_matches_projector_exactly", [](int k) {
    return exact_equal(toeplitz_matrix_exact(symbol_of_theorem2e(), k), to_exact(kernel_projector_exact(k)));
  }, py::arg("k") = 1);

  py::class_<OptResult>(m, "OptResult")
      .def_readonly("best_value", &OptResult::best_value)
      .def_property_readonly("best_state", [](const OptResult& r) { return r.best_state.coeffs(); })
      .def_readonly("grad_norm", &OptResult::grad_norm)
      .def_readonly("iterations", &OptResult::iterations)
      .def_readonly("critical_residual", &OptResult::critical_residual)
      .def_readonly("best_restart", &OptResult::best_restart)
      .def_readonly("converged", &OptResult::converged);
  m.def(
      "maximize",
      [](int k, const std::string& subspace, int restarts, int max_iters, std::uint64_t seed, double tol_grad) {
        OptProblem p;
        if (subspace == "diagonal") p.subspace = diagonal_kernel_basis(k);
        else if (subspace == "kernel") p.subspace = kernel_basis(k);
        else throw PreconditionError("subspace must be 'diagonal' or 'kernel'");
        p.restarts = restarts;
        p.max_iters = max_iters;
        p.seed = seed;
        p.tol_grad = tol_grad;
        py::gil_scoped_release release;
        return maximize(p);
      },
      py::arg("k"), py::arg("subspace") = "diagonal", py::arg("restarts") = 16, py::arg("max_iters") = 5000,
      py::arg("seed") = 0, py::arg("tol_grad") = OptProblem{}.tol_grad);

  py::class_<MCEstimate>(m, "MCEstimate")
      .def_readonly("k", &MCEstimate::level)
      .def_readonly("n", &MCEstimate::n_samples)
      .def_readonly("mean", &MCEstimate::mean)
      .def_readonly("stderr", &MCEstimate::stderr_)
      .def_readonly("seed", &MCEstimate::seed);
  m.def(
      "mc_mean_entropy",
      [](int k, long long n, std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        return mc_mean_entropy(k, n, seed, threads);
      },
      py::arg("k"), py::arg("n"), py::arg("seed") = 0, py::arg("threads") = 0);
  m.def("page_mean", &page_mean, py::arg("d"));
  m.def(
      "fit_tail",
      [](const std::vector<std::pair<double, double>>& k_mean) {
        const TailFit f = fit_tail(k_mean);
        return std::pair{f.c0, f.c1};
      },
      py::arg("k_mean"), "Least-squares (c0, c1) of mean - ln k = c0 + c1 / k");
}
