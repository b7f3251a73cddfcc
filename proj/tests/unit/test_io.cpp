#include <doctest.h>

#include <random>
#include <sstream>

#include "cp1ent/errors.hpp"
#include "cp1ent/io.hpp"
#include "oracles.hpp"

using namespace cp1ent;

TEST_CASE("property: state JSON round-trips bit-exactly") {
  std::mt19937_64 gen(1);
  for (int k = 1; k <= 6; ++k) {
    const StateTensor s(k, cp1ent::testing::random_unit_matrix(k + 1, gen));
    const io::json j = io::state_to_json(s);
    CHECK(j.at("k") == k);
    CHECK(io::state_from_json(io::json::parse(j.dump())).coeffs() == s.coeffs());
  }
}

TEST_CASE("malformed state JSON is a precondition error") {
  CHECK_THROWS_AS(io::state_from_json(io::json{{"k", 1}}), PreconditionError);
  CHECK_THROWS_AS(io::state_from_json(io::json::parse(R"({"k":1,"re":[[1,0]],"im":[[0,0]]})")), PreconditionError);
}

TEST_CASE("CSV layouts") {
  std::ostringstream f;
  io::write_fourier_csv(f, restrict(StateTensor::basis(1, 0, 1)));
  CHECK(f.str() == "d,re,im\n-1,2,0\n0,0,0\n1,0,0\n");

  std::ostringstream m;
  io::write_matrix_csv(m, CMatrix::Identity(2, 2));
  CHECK(m.str() == "row,col,re,im\n0,0,1,0\n0,1,0,0\n1,0,0,0\n1,1,1,0\n");

  std::ostringstream s;
  io::write_sphere_csv_row(s, {1, 100, 0.25, 0.01, 7}, 1.0 / 3.0, 1.5);
  CHECK(s.str() == "1,100,0.25,0.01,0.3333333333333333,1.5,7\n");
}

TEST_CASE("matrix JSON records the basis order") {
  const io::json j = io::matrix_to_json(1, CMatrix::Identity(4, 4));
  CHECK(j.at("dim") == 4);
  CHECK(j.at("basis_order") == "lexicographic (a,b)");
  CHECK(j.at("re")[3][3] == 1.0);
}
