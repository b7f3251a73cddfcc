#pragma once

// JSON and CSV encodings shared by the CLI and the Python module.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cp1ent/entropy_opt.hpp"
#include "cp1ent/restriction.hpp"
#include "cp1ent/sphere_sampling.hpp"
#include "cp1ent/tensor_states.hpp"
#include "cp1ent/toeplitz.hpp"

namespace cp1ent::io {

using nlohmann::json;

// {"k": int, "re": [[...]], "im": [[...]]}
json state_to_json(const StateTensor& c);
// Throws PreconditionError on malformed input.
StateTensor state_from_json(const json& j);
json states_to_json(const std::vector<StateTensor>& states);

// {"k", "dim", "basis_order": "lexicographic (a,b)", "re", "im"}
json matrix_to_json(int k, const CMatrix& m);

json restriction_to_json(const LambdaRestriction& r);
json opt_result_to_json(const OptResult& r, bool with_trace);
json mc_estimate_to_json(const MCEstimate& e, double page_exact, double thm1_prediction);

// d,re,im
void write_fourier_csv(std::ostream& os, const LambdaRestriction& r);
// row,col,re,im
void write_matrix_csv(std::ostream& os, const CMatrix& m);
inline constexpr const char* kSphereCsvHeader = "k,n,mean,stderr,page_exact,thm1_prediction,seed";
void write_sphere_csv_row(std::ostream& os, const MCEstimate& e, double page_exact, double thm1_prediction);

// Shortest round-trip decimal form.
std::string fmt_double(double x);

}  // namespace cp1ent::io
