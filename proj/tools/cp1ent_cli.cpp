// cp1ent: command-line front end. Every subcommand writes a CSV table (default)
// or a JSON document; CSV outputs start with '#' lines recording the parameters.
//
// Exit codes: 0 success, 2 usage or precondition violation, 3 optimizer did not converge.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cp1ent/entropy_opt.hpp"
#include "cp1ent/errors.hpp"
#include "cp1ent/io.hpp"
#include "cp1ent/restriction.hpp"
#include "cp1ent/sphere_sampling.hpp"
#include "cp1ent/tensor_states.hpp"
#include "cp1ent/toeplitz.hpp"

namespace {

using namespace cp1ent;
using nlohmann::json;

constexpr const char* kSeedEnv = "CP1ENT_SEED";
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

enum class Format { csv, json };

struct RunConfig {
  int k = 1;
  long long n = 100000;
  std::optional<std::uint64_t> seed;
  Format format = Format::csv;
  std::string out;
  std::optional<double> tol;
  bool trace = false;

  // entropy
  std::string state_file;
  std::string vector_name = "c";
  bool fourier = false;
  // kernel
  bool diagonal = false;
  // maximize
  std::string subspace = "diagonal";
  int restarts = 16;
  int max_iters = 5000;
  // toeplitz-check
  double offset = -2.0;
  // bk-series
  int k_max = 10;
  // sphere-average
  unsigned threads = 0;
};

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv(kSeedEnv)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw PreconditionError(std::string(kSeedEnv) + " is not an unsigned integer");
    }
  }
  return 0;
}

void require_level(int k) {
  if (k < 1) throw PreconditionError("--k must be >= 1");
}

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw PreconditionError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

void csv_header(std::ostream& os, const std::string& command, const json& params) {
  os << "# cp1ent " << command << '\n';
  for (const auto& [key, value] : params.items()) os << "# " << key << '=' << value.dump() << '\n';
}

void emit_json(std::ostream& os, const std::string& command, const json& params, json body) {
  body["command"] = command;
  body["params"] = params;
  os << body.dump(2) << '\n';
}

StateTensor named_vector(const std::string& name, int k) {
  if (name == "b") return vector_b(k);
  if (name == "c") return vector_c(k);
  if (name == "max") return max_entropy_vector(k);
  throw PreconditionError("unknown vector '" + name + "' (expected b, c or max)");
}

ExactState named_direction(const std::string& name, int k) {
  if (name == "b") return vector_b_direction(k);
  if (name == "c") return vector_c_direction(k);
  return max_entropy_direction(k);
}

int cmd_entropy(const RunConfig& cfg, std::ostream& os) {
  StateTensor state;
  std::string source;
  if (!cfg.state_file.empty()) {
    std::ifstream in(cfg.state_file);
    if (!in) throw PreconditionError("cannot read state file " + cfg.state_file);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw PreconditionError(std::string("state file is not JSON: ") + e.what());
    }
    state = io::state_from_json(j);
    source = cfg.state_file;
  } else {
    require_level(cfg.k);
    state = named_vector(cfg.vector_name, cfg.k);
    source = cfg.vector_name;
  }
  const double rank_tol = cfg.tol.value_or(1e-8);
  const json params = {{"source", source}, {"k", state.level()}, {"tol", rank_tol}, {"zero_floor", kEntropyZeroFloor}};
  const double e = entanglement_entropy(state);
  const RVector alphas = schmidt(state).alphas;
  const int rank = schmidt_rank(state, rank_tol);
  const LambdaRestriction r = restrict(state);

  if (cfg.format == Format::json) {
    emit_json(os, "entropy", params,
              {{"k", state.level()},
               {"entropy", e},
               {"schmidt_rank", rank},
               {"alphas", std::vector<double>(alphas.begin(), alphas.end())},
               {"restriction", io::restriction_to_json(r)}});
    return 0;
  }
  csv_header(os, "entropy", params);
  if (cfg.fourier) {
    io::write_fourier_csv(os, r);
    return 0;
  }
  os << "k,entropy,schmidt_rank";
  for (Eigen::Index j = 0; j < alphas.size(); ++j) os << ",alpha_" << j;
  os << '\n' << state.level() << ',' << io::fmt_double(e) << ',' << rank;
  for (double a : alphas) os << ',' << io::fmt_double(a);
  os << '\n';
  return 0;
}

int cmd_kernel(const RunConfig& cfg, std::ostream& os) {
  require_level(cfg.k);
  const double tol = cfg.tol.value_or(kRankTolerance);
  const auto basis = cfg.diagonal ? diagonal_kernel_basis(cfg.k, tol) : kernel_basis(cfg.k, tol);
  const json params = {{"k", cfg.k}, {"tol", tol}, {"space", cfg.diagonal ? "W_k" : "ker R_k"}};
  if (cfg.format == Format::json) {
    emit_json(os, "kernel", params, {{"k", cfg.k}, {"dim", basis.size()}, {"basis", io::states_to_json(basis)}});
    return 0;
  }
  csv_header(os, "kernel", params);
  os << "dim=" << basis.size() << '\n';
  const int n = cfg.k + 1;
  os << "index";
  for (const char* part : {"re", "im"})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) os << ',' << part << '_' << i << '_' << j;
  os << '\n';
  for (size_t b = 0; b < basis.size(); ++b) {
    os << b;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) os << ',' << io::fmt_double(basis[b](i, j).real());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) os << ',' << io::fmt_double(basis[b](i, j).imag());
    os << '\n';
  }
  return 0;
}

int cmd_named_vectors(const RunConfig& cfg, std::ostream& os) {
  require_level(cfg.k);
  const json params = {{"k", cfg.k}};
  json rows = json::array();
  for (const char* name : {"b", "c", "max"}) {
    const StateTensor s = named_vector(name, cfg.k);
    rows.push_back({{"name", std::string(name) + "_" + std::to_string(cfg.k)},
                    {"entropy", entanglement_entropy(s)},
                    {"schmidt_rank", schmidt_rank(s)},
                    {"restriction_max_abs", restrict(s).max_abs()},
                    {"in_kernel_exact", in_kernel_exact(named_direction(name, cfg.k))},
                    {"state", io::state_to_json(s)}});
  }
  if (cfg.format == Format::json) {
    emit_json(os, "named-vectors", params, {{"k", cfg.k}, {"vectors", rows}});
    return 0;
  }
  csv_header(os, "named-vectors", params);
  os << "name,k,entropy,schmidt_rank,restriction_max_abs,in_kernel_exact\n";
  for (const auto& r : rows)
    os << r["name"].get<std::string>() << ',' << cfg.k << ',' << io::fmt_double(r["entropy"].get<double>()) << ','
       << r["schmidt_rank"].get<int>() << ',' << io::fmt_double(r["restriction_max_abs"].get<double>()) << ','
       << (r["in_kernel_exact"].get<bool>() ? "true" : "false") << '\n';
  return 0;
}

int cmd_maximize(const RunConfig& cfg, std::ostream& os) {
  require_level(cfg.k);
  OptProblem p;
  if (cfg.subspace == "diagonal") p.subspace = diagonal_kernel_basis(cfg.k);
  else if (cfg.subspace == "kernel") p.subspace = kernel_basis(cfg.k);
  else throw PreconditionError("--subspace must be 'diagonal' or 'kernel'");
  p.restarts = cfg.restarts;
  p.max_iters = cfg.max_iters;
  p.seed = resolve_seed(cfg);
  p.tol_grad = cfg.tol.value_or(p.tol_grad);
  p.trace = cfg.trace;
  const json params = {{"k", cfg.k},           {"subspace", cfg.subspace}, {"restarts", p.restarts},
                       {"max_iters", p.max_iters}, {"seed", p.seed},           {"tol_grad", p.tol_grad},
                       {"step0", p.step0},     {"armijo", kArmijo},        {"backtrack", kBacktrack}};
  const OptResult r = maximize(p);
  if (cfg.format == Format::json) {
    emit_json(os, "maximize", params, io::opt_result_to_json(r, cfg.trace));
  } else {
    csv_header(os, "maximize", params);
    os << "best_value,grad_norm,iterations,critical_residual,best_restart,converged\n"
       << io::fmt_double(r.best_value) << ',' << io::fmt_double(r.grad_norm) << ',' << r.iterations << ','
       << io::fmt_double(r.critical_residual) << ',' << r.best_restart << ',' << (r.converged ? "true" : "false")
       << '\n';
    if (cfg.trace) {
      os << "restart,value,grad_norm,iterations,converged\n";
      for (const auto& t : r.trace)
        os << t.restart << ',' << io::fmt_double(t.value) << ',' << io::fmt_double(t.grad_norm) << ','
           << t.iterations << ',' << (t.converged ? "true" : "false") << '\n';
    }
  }
  if (!r.converged) {
    std::cerr << "cp1ent: maximize did not reach tol_grad in any restart\n";
    return kExitNoConvergence;
  }
  return 0;
}

int cmd_toeplitz_check(const RunConfig& cfg, std::ostream& os) {
  require_level(cfg.k);
  const double tol = cfg.tol.value_or(1e-10);
  SymbolExpr f = symbol_of_theorem2e();
  f.offset = exact::ComplexRational::from_complex(cfg.offset);
  const ToeplitzMatrix t = toeplitz_matrix(f, cfg.k);
  const ToeplitzMatrix p = projection_matrix(cfg.k, kernel_basis(cfg.k));
  const double diff = max_abs_diff(t.entries, p.entries);
  const bool exact_match = exact_equal(toeplitz_matrix_exact(f, cfg.k), to_exact(kernel_projector_exact(cfg.k)));
  const bool pass = diff <= tol;
  const json params = {{"k", cfg.k}, {"offset", cfg.offset}, {"tol", tol}};
  if (cfg.format == Format::json) {
    emit_json(os, "toeplitz-check", params,
              {{"toeplitz", io::matrix_to_json(cfg.k, t.entries)},
               {"projection", io::matrix_to_json(cfg.k, p.entries)},
               {"max_abs_diff", diff},
               {"exact_equal", exact_match},
               {"pass", pass}});
    return 0;
  }
  csv_header(os, "toeplitz-check", params);
  os << "matrix,row,col,re,im\n";
  for (const auto& [name, m] : {std::pair{"toeplitz", &t.entries}, std::pair{"projection", &p.entries}})
    for (Eigen::Index i = 0; i < m->rows(); ++i)
      for (Eigen::Index j = 0; j < m->cols(); ++j)
        os << name << ',' << i << ',' << j << ',' << io::fmt_double((*m)(i, j).real()) << ','
           << io::fmt_double((*m)(i, j).imag()) << '\n';
  os << "# max_abs_diff=" << io::fmt_double(diff) << '\n'
     << "# exact_equal=" << (exact_match ? "true" : "false") << '\n'
     << "# result=" << (pass ? "PASS" : "FAIL") << '\n';
  return 0;
}

int cmd_sphere_average(const RunConfig& cfg, std::ostream& os) {
  require_level(cfg.k);
  if (cfg.n < kMinSamples) throw PreconditionError("--n must be >= 100 for sphere-average");
  const std::uint64_t seed = resolve_seed(cfg);
  const MCEstimate e = mc_mean_entropy(cfg.k, cfg.n, seed, cfg.threads);
  const double page = page_mean(cfg.k + 1);
  const double thm1 = theorem1_prediction(AsymptoticModel::cp1(), cfg.k);
  const json params = {{"k", cfg.k}, {"n", cfg.n}, {"seed", seed}, {"block", kSampleBlock}, {"beta", 1.0}, {"gamma", 2.0}};
  if (cfg.format == Format::json) {
    emit_json(os, "sphere-average", params, io::mc_estimate_to_json(e, page, thm1));
    return 0;
  }
  csv_header(os, "sphere-average", params);
  os << io::kSphereCsvHeader << '\n';
  io::write_sphere_csv_row(os, e, page, thm1);
  return 0;
}

int cmd_bk_series(const RunConfig& cfg, std::ostream& os) {
  if (cfg.k_max < 1) throw PreconditionError("bk-series needs --k (k_max) >= 1");
  const json params = {{"k_max", cfg.k_max}};
  json rows = json::array();
  for (int k = 1; k <= cfg.k_max; ++k)
    rows.push_back({{"k", k}, {"entropy", entanglement_entropy(vector_b(k))}, {"closed_form", vector_b_entropy_formula(k)}});
  if (cfg.format == Format::json) {
    emit_json(os, "bk-series", params, {{"rows", rows}});
    return 0;
  }
  csv_header(os, "bk-series", params);
  os << "k,entropy,closed_form\n";
  for (const auto& r : rows)
    os << r["k"].get<int>() << ',' << io::fmt_double(r["entropy"].get<double>()) << ','
       << io::fmt_double(r["closed_form"].get<double>()) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement entropy, restriction kernels and Berezin-Toeplitz operators on CP1 x CP1"};
  app.require_subcommand(1);
  app.footer(std::string("Environment: ") + kSeedEnv + " supplies the seed when --seed is absent.\n"
             "Exit codes: 0 success, 2 usage/precondition, 3 no convergence.");

  RunConfig cfg;
  std::string format = "csv";
  auto common = [&](CLI::App* sub, bool with_seed, bool with_n, int* level = nullptr) {
    sub->add_option("--k", level ? *level : cfg.k, level ? "Largest level k_max" : "Level k")->capture_default_str();
    if (with_n) sub->add_option("--n", cfg.n, "Sample count (>= 100)")->capture_default_str();
    if (with_seed) sub->add_option("--seed", cfg.seed, std::string("Seed (default: $") + kSeedEnv + " or 0)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--tol", cfg.tol, "Tolerance override");
    sub->add_flag("--trace", cfg.trace, "Include per-restart traces");
  };

  auto* entropy = app.add_subcommand("entropy", "Entropy and Schmidt data of a state (JSON file or named vector)");
  common(entropy, false, false);
  entropy->add_option("--state", cfg.state_file, "State JSON {k, re, im}");
  entropy->add_option("--vector", cfg.vector_name, "Named vector b, c or max")->capture_default_str();
  entropy->add_flag("--fourier", cfg.fourier, "Emit the restriction to Lambda as d,re,im");

  auto* kernel = app.add_subcommand("kernel", "Orthonormal basis of ker R_k (or W_k with --diagonal)");
  common(kernel, false, false);
  kernel->add_flag("--diagonal", cfg.diagonal, "Restrict to span{e_j (x) e_j}");

  auto* named = app.add_subcommand("named-vectors", "b_k, c_k and the extremal vector with their entropies");
  common(named, false, false);

  auto* maxim = app.add_subcommand("maximize", "Maximize entropy over W_k or ker R_k");
  common(maxim, true, false);
  maxim->add_option("--subspace", cfg.subspace, "diagonal (W_k) or kernel")->capture_default_str();
  maxim->add_option("--restarts", cfg.restarts, "Random restarts")->capture_default_str();
  maxim->add_option("--max-iters", cfg.max_iters, "Iterations per restart")->capture_default_str();

  auto* toep = app.add_subcommand("toeplitz-check", "Compare T_f with the projector onto ker R_k");
  common(toep, false, false);
  toep->add_option("--offset", cfg.offset, "Constant offset of the symbol")->capture_default_str();

  auto* sphere = app.add_subcommand("sphere-average", "Monte-Carlo mean entropy on the unit sphere");
  common(sphere, true, true);
  sphere->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");

  auto* bk = app.add_subcommand("bk-series", "E(b_k) for k = 1..k_max");
  common(bk, false, false, &cfg.k_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  cfg.format = format == "json" ? Format::json : Format::csv;

  try {
    Output out(cfg.out);
    std::ostream& os = out.stream();
    if (*entropy) return cmd_entropy(cfg, os);
    if (*kernel) return cmd_kernel(cfg, os);
    if (*named) return cmd_named_vectors(cfg, os);
    if (*maxim) return cmd_maximize(cfg, os);
    if (*toep) return cmd_toeplitz_check(cfg, os);
    if (*sphere) return cmd_sphere_average(cfg, os);
    if (*bk) return cmd_bk_series(cfg, os);
  } catch (const PreconditionError& e) {
    std::cerr << "cp1ent: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "cp1ent: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
