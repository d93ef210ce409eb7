#include <doctest.h>

#include <random>

#include "bimetric/catalog.hpp"
#include "bimetric/decompose.hpp"
#include "oracles.hpp"

using namespace bimetric;

namespace {

Vector e(int n, int i) { return Vector::Unit(n, i); }

const std::vector<std::string> kCompact = {"abelian1", "abelian3", "su2",     "so4",
                                           "so4_blocks", "su2_k3", "su2_plus_r2", "su3",
                                           "so5",      "su2_plus_su3"};

}  // namespace

TEST_CASE("bracket on su(2)") {
  const LieAlgebra su2 = builtin("su2").algebra;
  CHECK((bracket(su2, e(3, 0), e(3, 1)) - e(3, 2)).norm() == 0.0);

  // [e2 + e3, e1] = -e3 + e2
  const Vector lhs = bracket(su2, Vector(e(3, 1) + e(3, 2)), e(3, 0));
  CHECK((lhs - (e(3, 1) - e(3, 2))).norm() == 0.0);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Vector x = oracle::random_vector(3, rng);
    CHECK(bracket(su2, x, x).norm() <= 1e-15);
  }
  CHECK_THROWS_AS(bracket(su2, Vector::Zero(2), e(3, 0)), Error);
}

TEST_CASE("bracket agrees with the tensor oracle and is antisymmetric") {
  std::mt19937_64 rng(11);
  for (const auto& name : kCompact) {
    const LieAlgebra lie = builtin(name).algebra;
    const auto t = oracle::tensor(lie);
    for (int s = 0; s < 10; ++s) {
      const Vector x = oracle::random_vector(lie.dim(), rng);
      const Vector y = oracle::random_vector(lie.dim(), rng);
      CHECK((bracket(lie, x, y) - oracle::bracket(t, x, y)).norm() <= 1e-12);
      CHECK((bracket(lie, x, y) + bracket(lie, y, x)).norm() <= 1e-12);
    }
  }
}

TEST_CASE("ad_matrix") {
  const LieAlgebra su2 = builtin("su2").algebra;
  const Matrix ad = ad_matrix(su2, e(3, 0));
  Matrix expected = Matrix::Zero(3, 3);
  expected(2, 1) = 1.0;   // e2 -> e3
  expected(1, 2) = -1.0;  // e3 -> -e2
  CHECK(max_abs(ad - expected) == 0.0);

  const LieAlgebra abelian = builtin("abelian3").algebra;
  std::mt19937_64 rng(5);
  const Vector x = oracle::random_vector(3, rng);
  CHECK(max_abs(ad_matrix(abelian, x)) == 0.0);

  const LieAlgebra so5 = builtin("so5").algebra;
  const Vector a = oracle::random_vector(10, rng);
  const Vector b = oracle::random_vector(10, rng);
  CHECK((ad_matrix(so5, a) * b + ad_matrix(so5, b) * a).norm() <= 1e-12);
  CHECK_THROWS_AS(ad_matrix(so5, e(3, 0)), Error);
}

TEST_CASE("validate_jacobi") {
  CHECK(validate_jacobi(builtin("su2").algebra).empty());
  CHECK(validate_jacobi(builtin("abelian3").algebra).empty());

  // Rescaling one structure constant of a 3-dim algebra keeps Jacobi: the
  // cyclic sum of [[e1,e2],e3] type terms vanishes for any diagonal scaling.
  BracketTable scaled = builtin("su2").algebra.table();
  scaled[{0, 1}] = {{2, 1.1}};
  const LieAlgebra rescaled("su2_scaled", 3, scaled);
  const auto t = oracle::tensor(rescaled);
  const Vector cyc = -oracle::bracket(t, e(3, 2), oracle::bracket(t, e(3, 0), e(3, 1))) -
                     oracle::bracket(t, e(3, 0), oracle::bracket(t, e(3, 1), e(3, 2))) -
                     oracle::bracket(t, e(3, 1), oracle::bracket(t, e(3, 2), e(3, 0)));
  CHECK(cyc.norm() == 0.0);
  CHECK(validate_jacobi(rescaled).empty());

  // [e1,e2] = e3 + 0.1 e1 breaks it: the cyclic sum is -0.1 e2.
  BracketTable broken = builtin("su2").algebra.table();
  broken[{0, 1}] = {{2, 1.0}, {0, 0.1}};
  const auto violations = validate_jacobi(LieAlgebra("broken", 3, broken));
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].i == 0);
  CHECK(violations[0].j == 1);
  CHECK(violations[0].k == 2);
  CHECK(violations[0].residual == doctest::Approx(0.1));
}

TEST_CASE("construction rejects malformed tables") {
  CHECK_THROWS_AS(LieAlgebra("x", 0, {}), Error);
  CHECK_THROWS_AS(LieAlgebra("x", 2, BracketTable{{{0, 2}, {{0, 1.0}}}}), Error);
  CHECK_THROWS_AS(LieAlgebra("x", 2, BracketTable{{{1, 1}, {{0, 1.0}}}}), Error);
  CHECK_THROWS_AS(LieAlgebra("x", 2, BracketTable{{{0, 1}, {{5, 1.0}}}}), Error);

  // (1, 0) is stored as -(0, 1); zero terms vanish from the table.
  const LieAlgebra flipped("x", 2, BracketTable{{{1, 0}, {{1, -1.0}}}, {{0, 1}, {}}});
  CHECK(flipped.table().size() == 1);
  CHECK(flipped.basis_bracket(0, 1)(1) == 1.0);
}

TEST_CASE("killing_form") {
  CHECK(max_abs(killing_form(builtin("su2").algebra).matrix() + 2.0 * Matrix::Identity(3, 3)) ==
        0.0);
  CHECK(max_abs(killing_form(builtin("abelian3").algebra).matrix()) == 0.0);
  CHECK(max_abs(killing_form(builtin("so4_blocks").algebra).matrix() +
                2.0 * Matrix::Identity(6, 6)) == 0.0);
  for (const auto& name : kCompact) {
    const LieAlgebra lie = builtin(name).algebra;
    CHECK(max_abs(killing_form(lie).matrix() - oracle::killing(oracle::tensor(lie))) <= 1e-12);
  }
}

TEST_CASE("is_skew_adjoint_all") {
  const LieAlgebra su2 = builtin("su2").algebra;
  CHECK(is_skew_adjoint_all(su2, Metric(-killing_form(su2))));
  Matrix m = Matrix::Identity(3, 3);
  m(2, 2) = 4.0;
  // M([e1,e2],e3) + M(e2,[e1,e3]) = 4 - 1
  CHECK(skew_adjoint_residual(su2, SymmetricForm(m)) == doctest::Approx(3.0));
  CHECK_FALSE(is_skew_adjoint_all(su2, Metric(m)));

  const LieAlgebra abelian = builtin("abelian3").algebra;
  Matrix spd(3, 3);
  spd << 2, 1, 0, 1, 3, 1, 0, 1, 5;
  CHECK(is_skew_adjoint_all(abelian, Metric(spd)));
  CHECK_THROWS_AS(is_skew_adjoint_all(abelian, Metric(Matrix::Identity(2, 2))), Error);
}

TEST_CASE("center and derived subalgebra") {
  CHECK(center(builtin("su2").algebra).dim() == 0);
  CHECK(center(builtin("abelian3").algebra).dim() == 3);
  const LieAlgebra su2r2 = builtin("su2_plus_r2").algebra;
  const Subspace z = center(su2r2);
  CHECK(z.dim() == oracle::center_dim(oracle::tensor(su2r2)));
  CHECK(z.dim() == 2);
  for (Eigen::Index c = 0; c < z.dim(); ++c) {
    for (int j = 0; j < su2r2.dim(); ++j) {
      CHECK(bracket(su2r2, Vector(z.basis().col(c)), e(5, j)).norm() <= 1e-12);
    }
  }

  CHECK(derived_subalgebra(builtin("su2").algebra).dim() == 3);
  CHECK(derived_subalgebra(builtin("abelian2").algebra).dim() == 0);
  const Subspace d = derived_subalgebra(su2r2);
  CHECK(d.dim() == 3);
  CHECK(max_abs(d.basis().transpose() * z.basis()) <= 1e-12);
  CHECK(max_abs(d.basis().transpose() * d.basis() - Matrix::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("property: Jacobi and ad-invariance of the Killing form on random vectors") {
  std::mt19937_64 rng(2024);
  for (const auto& name : kCompact) {
    const LieAlgebra lie = builtin(name).algebra;
    const SymmetricForm b = killing_form(lie);
    const int n = lie.dim();
    double jacobi = 0.0;
    double invariance = 0.0;
    for (int s = 0; s < 100; ++s) {
      const Vector x = oracle::random_vector(n, rng);
      const Vector y = oracle::random_vector(n, rng);
      const Vector z = oracle::random_vector(n, rng);
      const Vector cyc = bracket(lie, bracket(lie, x, y), z) + bracket(lie, bracket(lie, y, z), x) +
                         bracket(lie, bracket(lie, z, x), y);
      jacobi = std::max(jacobi, cyc.cwiseAbs().maxCoeff());
      invariance = std::max(invariance,
                            std::abs(b(bracket(lie, x, y), z) + b(y, bracket(lie, x, z))));
    }
    CAPTURE(name);
    CHECK(jacobi <= 1e-9);
    CHECK(invariance <= 1e-8);
  }
}

TEST_CASE("property: compact type splits as center plus derived; -B is bi-invariant") {
  for (const auto& name : kCompact) {
    const LieAlgebra lie = builtin(name).algebra;
    CAPTURE(name);
    REQUIRE(compact_type_check(lie).is_compact_type);
    const Subspace z = center(lie);
    const Subspace d = derived_subalgebra(lie);
    CHECK(z.dim() + d.dim() == lie.dim());
    Matrix both(lie.dim(), lie.dim());
    both << z.basis(), d.basis();
    CHECK(oracle::rank(both) == lie.dim());
    if (z.dim() == 0) {
      CHECK(is_skew_adjoint_all(lie, Metric(-killing_form(lie))));
    }
  }
}

TEST_CASE("forms and metrics") {
  Matrix a(2, 2);
  a << 1.0, 0.3, 0.1, 2.0;
  const SymmetricForm f(a);
  CHECK(f.matrix()(0, 1) == f.matrix()(1, 0));
  CHECK(f.matrix()(0, 1) == doctest::Approx(0.2));

  Matrix indefinite(2, 2);
  indefinite << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(Metric{indefinite}, Error);
  CHECK_THROWS_AS(Metric(Matrix::Zero(2, 2)), Error);
  const Metric m(Matrix::Identity(2, 2));
  CHECK(m.scaled(3.0).matrix()(1, 1) == 3.0);
  CHECK_THROWS_AS(m.scaled(-1.0), Error);
}

TEST_CASE("change_basis is an isomorphism") {
  std::mt19937_64 rng(9);
  const LieAlgebra so4 = builtin("so4").algebra;
  const Matrix p = oracle::random_orthogonal(6, rng);
  const LieAlgebra moved = change_basis(so4, p);
  CHECK(validate_jacobi(moved).empty());
  // [p x, p y] = p [x, y]_moved
  const Vector x = oracle::random_vector(6, rng);
  const Vector y = oracle::random_vector(6, rng);
  CHECK((bracket(so4, Vector(p * x), Vector(p * y)) - p * bracket(moved, x, y)).norm() <= 1e-12);
}
