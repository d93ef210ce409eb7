#include "bimetric/catalog.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <sstream>

namespace bimetric {

namespace {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

LieAlgebra abelian(int n) { return LieAlgebra("abelian" + std::to_string(n), n, {}); }

// [e1,e2] = l e3, [e2,e3] = l e1, [e3,e1] = l e2
LieAlgebra su2_scaled(std::string name, double l) {
  BracketTable t;
  t[{0, 1}] = {{2, l}};
  t[{1, 2}] = {{0, l}};
  t[{0, 2}] = {{1, -l}};
  return LieAlgebra(std::move(name), 3, t);
}

LieAlgebra su2_copies(int k) {
  std::vector<LieAlgebra> parts(static_cast<std::size_t>(k), su2_scaled("su2", 1.0));
  return direct_sum("su2_k" + std::to_string(k), parts);
}

LieAlgebra nonbi2() {
  BracketTable t;
  t[{0, 1}] = {{1, 1.0}};
  return LieAlgebra("nonbi2", 2, t);
}

// E_ij - E_ji, i < j.
LieAlgebra so_n(int n) {
  std::vector<CMatrix> basis;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      CMatrix m = CMatrix::Zero(n, n);
      m(i, j) = 1.0;
      m(j, i) = -1.0;
      basis.push_back(m);
    }
  }
  return from_matrix_basis("so" + std::to_string(n), basis);
}

// Traceless skew-Hermitian 3x3: E_jk - E_kj, i(E_jk + E_kj), i(E_11 - E_22),
// i(E_22 - E_33). All structure constants are integers in this basis.
LieAlgebra su3() {
  const Complex i(0.0, 1.0);
  std::vector<CMatrix> basis;
  for (int j = 0; j < 3; ++j) {
    for (int k = j + 1; k < 3; ++k) {
      CMatrix x = CMatrix::Zero(3, 3);
      x(j, k) = 1.0;
      x(k, j) = -1.0;
      CMatrix y = CMatrix::Zero(3, 3);
      y(j, k) = i;
      y(k, j) = i;
      basis.push_back(x);
      basis.push_back(y);
    }
  }
  for (int j = 0; j < 2; ++j) {
    CMatrix h = CMatrix::Zero(3, 3);
    h(j, j) = i;
    h(j + 1, j + 1) = -i;
    basis.push_back(h);
  }
  return from_matrix_basis("su3", basis);
}

LieAlgebra renamed(const LieAlgebra& lie, std::string name) {
  return LieAlgebra(std::move(name), lie.dim(), lie.table());
}

bool parse_suffix(std::string_view name, std::string_view prefix, double& value) {
  if (!name.starts_with(prefix) || name.size() == prefix.size()) return false;
  const std::string rest(name.substr(prefix.size()));
  std::istringstream in(rest);
  in >> value;
  return in && in.eof();
}

bool parse_int_suffix(std::string_view name, std::string_view prefix, int& value) {
  if (!name.starts_with(prefix) || name.size() == prefix.size()) return false;
  const auto rest = name.substr(prefix.size());
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  return ec == std::errc() && ptr == rest.data() + rest.size();
}

std::string su2_k_bi(int k) {
  // SP^k(R); for k = 1 the space is a single half-line.
  static const char* const sup[] = {"", "", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸"};
  if (k == 1) return "ℝ⁺";
  const std::string half = k == 2 ? "ℝ⁺" : std::string("(ℝ⁺)") + sup[k - 1];
  return std::string("SP") + sup[k] + "(ℝ) ≅ " + half + "×ℝ";
}

std::string su2_k_ebi(int k) {
  static const char* const sup[] = {"", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸"};
  static const char* const sub[] = {"", "", "₂", "₃", "₄", "₅", "₆", "₇", "₈"};
  if (k == 1) return "point";
  const std::string half = k == 2 ? "ℝ⁺" : std::string("(ℝ⁺)") + sup[k - 1];
  return std::string("𝕊") + sup[k - 1] + "₊/S" + sub[k] + " ≅ " + half;
}

}  // namespace

LieAlgebra from_matrix_basis(std::string name, const std::vector<CMatrix>& basis) {
  const int n = static_cast<int>(basis.size());
  const Eigen::Index rows = basis.front().size();
  Matrix frame(2 * rows, n);
  for (int a = 0; a < n; ++a) {
    const CMatrix& m = basis[static_cast<std::size_t>(a)];
    frame.col(a) << m.real().reshaped(), m.imag().reshaped();
  }
  const auto solver = frame.colPivHouseholderQr();
  BracketTable table;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const CMatrix& x = basis[static_cast<std::size_t>(a)];
      const CMatrix& y = basis[static_cast<std::size_t>(b)];
      const CMatrix c = x * y - y * x;
      Vector rhs(2 * rows);
      rhs << c.real().reshaped(), c.imag().reshaped();
      const Vector coeffs = solver.solve(rhs);
      std::vector<BracketTerm> terms;
      for (int k = 0; k < n; ++k) {
        double v = coeffs(k);
        if (std::abs(v - std::round(v)) < 1e-9) v = std::round(v);
        if (v != 0.0) terms.push_back({k, v});
      }
      if (!terms.empty()) table[{a, b}] = std::move(terms);
    }
  }
  return LieAlgebra(std::move(name), n, table);
}

std::vector<std::string> builtin_names() {
  return {"abelian1",      "abelian2", "abelian3",   "nonbi2",      "su2",
          "su2_lambda0.5", "su2_lambda2", "so4",     "so4_blocks",  "su2_k2",
          "su2_k3",        "su2_plus_r2", "su3",     "so5",         "su2_plus_su3",
          "su2_k2_plus_su3"};
}

CatalogEntry builtin(std::string_view name) {
  const std::string key(name);
  int count = 0;
  double lambda = 0.0;

  // Invariant form counts follow #ideals + m(m+1)/2 with m = dim center.
  if (parse_int_suffix(name, "abelian", count) && count >= 1 && count <= 32) {
    // Any metric is bi-invariant; both moduli spaces are a point.
    return {key, abelian(count),
            {true, count, {}, {}, count * (count + 1) / 2, "point", "point"},
            "abelian R^" + std::to_string(count)};
  }
  if (key == "nonbi2") {
    // No simple ideals, no bi-invariant metric; the invariant forms are the
    // multiples of e1* (x) e1*.
    return {key, nonbi2(), {false, 0, {}, {}, 1, "none", "none"}, "[e1,e2] = e2"};
  }
  if (key == "su2") {
    // BI = R+, EBI = point, invariant forms unique up to scale.
    return {key, su2_scaled("su2", 1.0), {true, 0, {3}, {1}, 1, "ℝ⁺", "point"}, "su(2)"};
  }
  if (parse_suffix(name, "su2_lambda", lambda) && lambda > 0.0) {
    // Isomorphic to su(2) for every lambda > 0.
    return {key, su2_scaled(key, lambda), {true, 0, {3}, {1}, 1, "ℝ⁺", "point"},
            "su(2) with structure constants scaled by lambda"};
  }
  if (key == "so4" || key == "so4_blocks") {
    // so(4) = su(2) + su(2): BI ~ R+ x R, EBI ~ R+.
    LieAlgebra lie = key == "so4" ? so_n(4) : renamed(su2_copies(2), "so4_blocks");
    return {key, lie, {true, 0, {3, 3}, {2}, 2, su2_k_bi(2), su2_k_ebi(2)},
            key == "so4" ? "so(4), antisymmetric matrix basis" : "so(4) as su(2) + su(2)"};
  }
  if (parse_int_suffix(name, "su2_k", count) && count >= 1 && count <= 8) {
    // k isomorphic factors: SP^k(R), S^{k-1}_+/S_k.
    return {key, su2_copies(count),
            {true, 0, std::vector<int>(static_cast<std::size_t>(count), 3), {count}, count,
             su2_k_bi(count), su2_k_ebi(count)},
            std::to_string(count) + " copies of su(2)"};
  }
  if (key == "su2_plus_r2") {
    // 1 + 2*3/2 = 4 invariant forms; the center adds a point.
    return {key, direct_sum(key, {su2_scaled("su2", 1.0), abelian(2)}),
            {true, 2, {3}, {1}, 4, "ℝ⁺", "point"}, "su(2) + R^2"};
  }
  if (key == "su3") {
    return {key, su3(), {true, 0, {8}, {1}, 1, "ℝ⁺", "point"}, "su(3)"};
  }
  if (key == "so5") {
    return {key, so_n(5), {true, 0, {10}, {1}, 1, "ℝ⁺", "point"}, "so(5)"};
  }
  if (key == "su2_plus_su3") {
    // Two non-isomorphic factors: (R+)^2 and S^1_+.
    return {key, direct_sum(key, {su2_scaled("su2", 1.0), su3()}),
            {true, 0, {3, 8}, {1, 1}, 2, "(ℝ⁺)²", "𝕊¹₊ ≅ ℝ⁺"}, "su(2) + su(3)"};
  }
  if (key == "su2_k2_plus_su3") {
    // Classes ordered by fingerprint: su(2) pair first, then su(3).
    return {key, direct_sum(key, {su2_copies(2), su3()}),
            {true, 0, {3, 3, 8}, {2, 1}, 3, "ℝ⁺×SP²(ℝ) ≅ (ℝ⁺)²×ℝ", "𝕊²₊/S₂ ≅ (ℝ⁺)²"},
            "su(2) + su(2) + su(3)"};
  }
  throw Error(ErrorKind::UnknownName, "unknown catalog algebra '" + key + "'");
}

}  // namespace bimetric
