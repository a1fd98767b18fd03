#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "spartan/linalg.hpp"
#include "spartan/matrix.hpp"

using spartan::Matrix;
using spartan::SymMatrix;

TEST_CASE("matrix from_rows and accessors") {
  const Matrix m = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}});
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 2);
  REQUIRE(m(2, 1) == 6.0);
  REQUIRE(m.row(1)[0] == 3.0);
  REQUIRE_THROWS_AS(Matrix::from_rows({{1.0}, {1.0, 2.0}}), spartan::DataError);
}

TEST_CASE("validate rejects empty and non-finite matrices") {
  REQUIRE_THROWS_AS(Matrix().validate(), spartan::DataError);
  Matrix m(2, 2, 1.0);
  m(1, 1) = std::nan("");
  REQUIRE_THROWS_AS(m.validate(), spartan::DataError);
}

TEST_CASE("sym matrix set writes both triangles") {
  SymMatrix s(3);
  s.set(0, 2, 5.0);
  REQUIRE(s(0, 2) == 5.0);
  REQUIRE(s(2, 0) == 5.0);
  REQUIRE(SymMatrix::identity(3).trace() == 3.0);
}

TEST_CASE("sym matrix from_matrix enforces symmetry") {
  REQUIRE_THROWS_AS(SymMatrix::from_matrix(Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}})),
                    spartan::DataError);
  const SymMatrix ok =
      SymMatrix::from_matrix(Matrix::from_rows({{2.0, 1.0}, {1.0, 2.0}}));
  REQUIRE(ok(0, 1) == 1.0);
}

TEST_CASE("squared distance") {
  const Matrix m = Matrix::from_rows({{0.0, 0.0}, {3.0, 4.0}});
  REQUIRE(spartan::squared_distance(m.row(0), m.row(1)) == 25.0);
}

TEST_CASE("empirical covariance matches the hand computation") {
  // rows (0,0), (1,1), (2,0): mean (1, 1/3); unbiased covariance
  //   var(x) = 1, var(y) = 1/3, cov = 0.
  const Matrix m = Matrix::from_rows({{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}});
  const SymMatrix c = spartan::empirical_covariance(m);
  REQUIRE_THAT(c(0, 0), Catch::Matchers::WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(c(1, 1), Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-15));
  REQUIRE_THAT(c(0, 1), Catch::Matchers::WithinAbs(0.0, 1e-15));
  REQUIRE_THROWS_AS(spartan::empirical_covariance(Matrix(1, 2, 0.0)),
                    spartan::UsageError);
}

TEST_CASE("psd square root squares back to the input") {
  SymMatrix s(3);
  s.set(0, 0, 4.0);
  s.set(1, 1, 2.0);
  s.set(2, 2, 3.0);
  s.set(0, 1, 1.0);
  s.set(1, 2, -0.5);
  const SymMatrix r = spartan::sym_psd_sqrt(s, 0.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < 3; ++k) v += r(i, k) * r(k, j);
      REQUIRE_THAT(v, Catch::Matchers::WithinAbs(s(i, j), 1e-12));
    }
}

TEST_CASE("psd square root clamps a singular matrix") {
  SymMatrix s(2);
  s.set(0, 0, 1.0);
  s.set(1, 1, 1.0);
  s.set(0, 1, 1.0);  // rank one
  const SymMatrix r = spartan::sym_psd_sqrt(s, 0.0);
  double v = 0.0;
  for (std::size_t k = 0; k < 2; ++k) v += r(0, k) * r(k, 1);
  REQUIRE_THAT(v, Catch::Matchers::WithinAbs(1.0, 1e-12));
  REQUIRE_THROWS_AS(spartan::sym_psd_sqrt(s, -0.5), spartan::UsageError);
}
