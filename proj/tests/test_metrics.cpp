#include <doctest.h>

#include <cmath>
#include <random>

#include "bimetric/catalog.hpp"
#include "bimetric/metrics.hpp"
#include "oracles.hpp"

using namespace bimetric;

namespace {

struct Fixture {
  LieAlgebra lie;
  Decomposition d;
  explicit Fixture(const std::string& name)
      : lie(builtin(name).algebra), d(simple_ideals(lie, 0)) {}

  Metric with(std::vector<double> alphas, Matrix center = Matrix()) const {
    if (center.size() == 0 && d.center.dim() > 0) {
      center = Matrix::Identity(d.center.dim(), d.center.dim());
    }
    return compose_biinvariant_metric(lie, d, alphas, center);
  }
};

Metric minus_killing(const LieAlgebra& lie) { return Metric(-killing_form(lie)); }

}  // namespace

TEST_CASE("invariant_form_space dimension") {
  for (const auto& name : {"su2", "so4", "su2_k3", "su2_plus_r2", "su2_plus_su3", "abelian3", "nonbi2"}) {
    const LieAlgebra lie = builtin(name).algebra;
    CAPTURE(name);
    const auto forms = invariant_form_space(lie);
    CHECK(static_cast<int>(forms.size()) == oracle::invariant_form_dim(oracle::tensor(lie)));
    CHECK(static_cast<int>(forms.size()) == builtin(name).expected.invariant_form_dim);
  }
  CHECK(invariant_form_space(builtin("su2").algebra).size() == 1);
  CHECK(invariant_form_space(builtin("so4").algebra).size() == 2);
  CHECK(invariant_form_space(builtin("su2_plus_r2").algebra).size() == 4);
}

TEST_CASE("is_biinvariant_metric") {
  const LieAlgebra su2 = builtin("su2").algebra;
  CHECK(is_biinvariant_metric(su2, Metric(Matrix::Identity(3, 3))));
  CHECK_FALSE(is_biinvariant_metric(su2, Metric(Vector(Eigen::Vector3d(1, 1, 4)).asDiagonal().toDenseMatrix())));
  // Every metric on an abelian algebra qualifies.
  Matrix m(2, 2);
  m << 2, 1, 1, 3;
  CHECK(is_biinvariant_metric(builtin("abelian2").algebra, Metric(m)));
}

TEST_CASE("random bi-invariant metrics lie in the invariant span") {
  for (const auto& name : {"so4", "su2_k3", "su2_plus_r2", "su2_k2_plus_su3"}) {
    const Fixture f(name);
    const auto forms = invariant_form_space(f.lie);
    Matrix span(f.lie.dim() * f.lie.dim(), static_cast<Eigen::Index>(forms.size()));
    for (std::size_t k = 0; k < forms.size(); ++k) {
      span.col(static_cast<Eigen::Index>(k)) = forms[k].matrix().reshaped();
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Metric m = random_biinvariant_metric(f.lie, f.d, seed);
      CAPTURE(name);
      CHECK(is_biinvariant_metric(f.lie, m));
      const Vector v = m.matrix().reshaped();
      const Vector fit = span * span.colPivHouseholderQr().solve(v);
      CHECK((v - fit).norm() <= 1e-8 * std::max(1.0, v.norm()));
    }
  }
  CHECK_THROWS_AS(random_biinvariant_metric(builtin("nonbi2").algebra, Decomposition{}, 0), Error);
}

TEST_CASE("metric_coordinates") {
  const LieAlgebra su2 = builtin("su2").algebra;
  const Decomposition d = simple_ideals(su2, 0);
  CHECK(metric_coordinates(su2, minus_killing(su2), d).flattened()(0) == doctest::Approx(1.0));
  CHECK(metric_coordinates(su2, Metric(-3.0 * killing_form(su2)), d).flattened()(0) ==
        doctest::Approx(3.0));

  const Fixture so4("so4");
  const Vector a = canonicalize(metric_coordinates(so4.lie, so4.with({5, 2}), so4.d)).flattened();
  REQUIRE(a.size() == 2);
  CHECK(a(0) == doctest::Approx(2.0));
  CHECK(a(1) == doctest::Approx(5.0));

  const Metric skew(Vector(Eigen::Vector3d(1, 1, 4)).asDiagonal().toDenseMatrix());
  CHECK_THROWS_AS(metric_coordinates(su2, skew, d), Error);
}

TEST_CASE("canonicalize sorts within classes") {
  BiInvariantCoordinates c;
  c.classes.push_back({Fingerprint{}, {3.0, 1.0, 2.0}});
  c.classes.push_back({Fingerprint{}, {9.0}});
  const auto s = canonicalize(c);
  CHECK(s.classes[0].alphas == std::vector<double>{1, 2, 3});
  CHECK(s.ideal_count() == 4);
  CHECK(s.flattened()(3) == 9.0);
}

TEST_CASE("bi_chart") {
  const Fixture so4("so4");
  const auto c = canonicalize(metric_coordinates(so4.lie, so4.with({5, 2}), so4.d));
  const Vector x = bi_chart(c).coordinates();
  REQUIRE(x.size() == 2);
  CHECK(x(0) == doctest::Approx(std::log(2.0)));
  CHECK(x(1) == doctest::Approx(std::log(5.0) - std::log(2.0)));

  const Fixture su2("su2");
  const auto e = canonicalize(metric_coordinates(su2.lie, su2.with({std::exp(1.0)}), su2.d));
  CHECK(bi_chart(e).coordinates()(0) == doctest::Approx(1.0));

  const Fixture k3("su2_k3");
  const auto t = canonicalize(metric_coordinates(k3.lie, k3.with({4, 1, 1}), k3.d));
  const Vector y = bi_chart(t).coordinates();
  REQUIRE(y.size() == 3);
  CHECK(y(0) == doctest::Approx(0.0));
  CHECK(y(1) == doctest::Approx(0.0));
  CHECK(y(2) == doctest::Approx(std::log(4.0)));
}

TEST_CASE("property: bi_chart inverts to the sorted multisets") {
  std::mt19937_64 rng(5);
  for (const auto& name : {"so4", "su2_k3", "su2_k2_plus_su3", "su2_plus_r2"}) {
    const Fixture f(name);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto c = canonicalize(
          metric_coordinates(f.lie, random_biinvariant_metric(f.lie, f.d, seed), f.d));
      const auto back = bi_chart(c).reconstruct();
      REQUIRE(back.size() == c.classes.size());
      for (std::size_t k = 0; k < back.size(); ++k) {
        REQUIRE(back[k].size() == c.classes[k].alphas.size());
        for (std::size_t i = 0; i < back[k].size(); ++i) {
          CHECK(std::abs(back[k][i] - c.classes[k].alphas[i]) <= 1e-10 * c.classes[k].alphas[i]);
        }
      }
    }
  }
}

TEST_CASE("ebi_chart") {
  const Fixture so4("so4");
  const auto c = canonicalize(metric_coordinates(so4.lie, so4.with({4, 3}), so4.d));
  const ConformalChart chart = ebi_chart(c);
  REQUIRE(chart.unit_coordinates.size() == 2);
  CHECK(chart.unit_coordinates(0) == doctest::Approx(0.6));
  CHECK(chart.unit_coordinates(1) == doctest::Approx(0.8));

  const auto eq = canonicalize(metric_coordinates(so4.lie, so4.with({7, 7}), so4.d));
  CHECK(ebi_chart(eq).unit_coordinates(0) == doctest::Approx(1.0 / std::sqrt(2.0)));

  const Fixture flat("abelian2");
  const auto none = canonicalize(metric_coordinates(flat.lie, flat.with({}), flat.d));
  CHECK(ebi_chart(none).unit_coordinates.size() == 0);
  CHECK(ebi_chart(none).description.is_point());
}

TEST_CASE("isometry and conformal equivalence") {
  const Fixture so4("so4");
  CHECK(isometric(so4.lie, so4.with({1, 2}), so4.lie, so4.with({2, 1})));
  CHECK_FALSE(isometric(so4.lie, so4.with({1, 2}), so4.lie, so4.with({1, 3})));

  const auto v = conformally_equivalent(so4.lie, so4.with({1, 2}), so4.lie, so4.with({2, 4}));
  CHECK(v.equivalent);
  REQUIRE(v.lambda);
  CHECK(*v.lambda == doctest::Approx(0.5));
  CHECK_FALSE(conformally_equivalent(so4.lie, so4.with({1, 2}), so4.lie, so4.with({1, 3})).equivalent);

  const LieAlgebra su2 = builtin("su2").algebra;
  const Metric m = minus_killing(su2);
  const auto w = conformally_equivalent(su2, m, su2, m.scaled(5.0));
  CHECK(w.equivalent);
  CHECK(*w.lambda == doctest::Approx(0.2));
  CHECK_FALSE(isometric(su2, m, su2, m.scaled(5.0)));

  // Different algebras are never equivalent.
  CHECK_FALSE(isometric(su2, m, so4.lie, so4.with({1, 1})));
  CHECK_FALSE(conformally_equivalent(su2, m, so4.lie, so4.with({1, 1})).equivalent);
}

TEST_CASE("equivalence across bases") {
  std::mt19937_64 rng(77);
  const Fixture so4("so4");
  const Matrix q = oracle::random_orthogonal(6, rng);
  const LieAlgebra moved = change_basis(so4.lie, q);
  // The pulled-back metric is the same inner product in new coordinates.
  const Metric m = so4.with({1, 2});
  const Metric pulled(q.transpose() * m.matrix() * q);
  CHECK(isometric(so4.lie, m, moved, pulled));
}

TEST_CASE("property: coordinates scale linearly") {
  for (const auto& name : {"so4", "su2_k2_plus_su3", "su2_plus_r2"}) {
    const Fixture f(name);
    const Metric m = random_biinvariant_metric(f.lie, f.d, 11);
    const Vector a = canonicalize(metric_coordinates(f.lie, m, f.d)).flattened();
    for (double lambda : {0.5, 2.0, 10.0}) {
      const Vector b = canonicalize(metric_coordinates(f.lie, m.scaled(lambda), f.d)).flattened();
      CHECK((b - lambda * a).norm() <= 1e-9 * b.norm());
      const auto v = conformally_equivalent(f.lie, m.scaled(lambda), f.lie, m);
      CHECK(v.equivalent);
      CHECK(*v.lambda == doctest::Approx(lambda));
    }
  }
}

TEST_CASE("property: decisions agree with the charts") {
  const Fixture k3("su2_k3");
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Metric a = random_biinvariant_metric(k3.lie, k3.d, s);
    const Metric b = random_biinvariant_metric(k3.lie, k3.d, s + 100);
    const auto ca = bi_chart(canonicalize(metric_coordinates(k3.lie, a, k3.d))).coordinates();
    const auto cb = bi_chart(canonicalize(metric_coordinates(k3.lie, b, k3.d))).coordinates();
    CHECK(isometric(k3.lie, a, k3.lie, b) == ((ca - cb).norm() <= 1e-8));
    CHECK(isometric(k3.lie, a, k3.lie, a));
    CHECK(conformally_equivalent(k3.lie, a, k3.lie, a.scaled(3.0)).equivalent);
  }
}

TEST_CASE("analyze_metric errors") {
  const LieAlgebra su2 = builtin("su2").algebra;
  CHECK_THROWS_AS(analyze_metric(su2, Metric(Matrix::Identity(4, 4)), 0), Error);
  CHECK_THROWS_AS(
      analyze_metric(su2, Metric(Vector(Eigen::Vector3d(1, 1, 4)).asDiagonal().toDenseMatrix()), 0),
      Error);
  CHECK_THROWS_AS(analyze_metric(builtin("nonbi2").algebra, Metric(Matrix::Identity(2, 2)), 0),
                  Error);
}

TEST_CASE("moduli descriptions") {
  const auto su2 = moduli_description(builtin("su2").algebra);
  CHECK(su2.bi.display() == "ℝ⁺");
  CHECK(su2.ebi.is_point());
  CHECK(su2.ebi.display() == "point");
  CHECK(su2.contractible);

  const auto so4 = moduli_description(builtin("so4").algebra);
  CHECK(so4.bi.symbolic() == "SP²(ℝ)");
  CHECK(so4.bi.homeomorphic() == "ℝ⁺×ℝ");
  CHECK(so4.ebi.homeomorphic() == "ℝ⁺");
  CHECK(so4.bi.dimension() == 2);
  CHECK(so4.ebi.dimension() == 1);

  const auto mixed = moduli_description(builtin("su2_k2_plus_su3").algebra);
  CHECK(mixed.bi.dimension() == 3);
  CHECK(mixed.ebi.dimension() == 2);

  const auto flat = moduli_description(builtin("abelian3").algebra);
  CHECK(flat.bi.is_point());
  CHECK(flat.ebi.is_point());

  try {
    moduli_description(builtin("nonbi2").algebra);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCompactType);
    CHECK(std::string(e.what()).find("no bi-invariant metric exists") != std::string::npos);
  }
}
