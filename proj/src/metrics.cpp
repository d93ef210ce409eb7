#include "bimetric/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace bimetric {

namespace {

std::string digits(int value, const char* const glyphs[10]) {
  std::string s = std::to_string(value);
  std::string out;
  for (char c : s) out += glyphs[c - '0'];
  return out;
}

std::string superscript(int v) {
  static const char* const g[10] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  return digits(v, g);
}

std::string subscript(int v) {
  static const char* const g[10] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  return digits(v, g);
}

std::string power(const std::string& base, int exponent, bool parenthesize) {
  if (exponent == 1) return base;
  return (parenthesize ? "(" + base + ")" : base) + superscript(exponent);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool close_relative(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

bool same_class_structure(const BiInvariantCoordinates& a, const BiInvariantCoordinates& b) {
  if (a.center_dim != b.center_dim || a.classes.size() != b.classes.size()) return false;
  for (std::size_t c = 0; c < a.classes.size(); ++c) {
    if (a.classes[c].fingerprint != b.classes[c].fingerprint) return false;
    if (a.classes[c].alphas.size() != b.classes[c].alphas.size()) return false;
  }
  return true;
}

}  // namespace

int BiInvariantCoordinates::ideal_count() const {
  int k = 0;
  for (const auto& c : classes) k += static_cast<int>(c.alphas.size());
  return k;
}

Vector BiInvariantCoordinates::flattened() const {
  Vector v(ideal_count());
  Eigen::Index i = 0;
  for (const auto& c : classes) {
    for (double a : c.alphas) v(i++) = a;
  }
  return v;
}

int SpaceFactor::dimension() const {
  switch (kind) {
    case Kind::PositiveReals: return 1;
    case Kind::SymmetricProduct: return order;
    case Kind::PositiveSphereQuotient: return order - 1;
  }
  return 0;
}

int SpaceTerm::dimension() const {
  int d = 0;
  for (const auto& f : factors) d += f.dimension();
  return d;
}

std::string SpaceTerm::symbolic() const {
  if (is_point()) return "point";
  std::vector<std::string> parts;
  int pending_half_lines = 0;
  auto flush = [&] {
    if (pending_half_lines > 0) parts.push_back(power("ℝ⁺", pending_half_lines, true));
    pending_half_lines = 0;
  };
  for (const auto& f : factors) {
    if (f.kind == SpaceFactor::Kind::PositiveReals) {
      ++pending_half_lines;
      continue;
    }
    flush();
    if (f.kind == SpaceFactor::Kind::SymmetricProduct) {
      parts.push_back("SP" + superscript(f.order) + "(ℝ)");
    } else {
      std::string s = "𝕊" + superscript(f.order - 1) + "₊";
      std::vector<std::string> groups;
      for (int m : f.symmetric_groups) groups.push_back("S" + subscript(m));
      if (groups.size() == 1) s += "/" + groups.front();
      if (groups.size() > 1) s += "/(" + join(groups, "×") + ")";
      parts.push_back(s);
    }
  }
  flush();
  return join(parts, "×");
}

std::string SpaceTerm::homeomorphic() const {
  // Every factor is a product of open or closed half-lines (written ℝ⁺)
  // and full lines; SP^m contributes m-1 gaps and one line.
  int half_lines = 0;
  int lines = 0;
  for (const auto& f : factors) {
    switch (f.kind) {
      case SpaceFactor::Kind::PositiveReals: ++half_lines; break;
      case SpaceFactor::Kind::SymmetricProduct:
        half_lines += f.order - 1;
        ++lines;
        break;
      case SpaceFactor::Kind::PositiveSphereQuotient: half_lines += f.order - 1; break;
    }
  }
  std::vector<std::string> parts;
  if (half_lines > 0) parts.push_back(power("ℝ⁺", half_lines, true));
  if (lines > 0) parts.push_back(power("ℝ", lines, false));
  return parts.empty() ? "point" : join(parts, "×");
}

std::string SpaceTerm::display() const {
  const std::string s = symbolic();
  const std::string h = homeomorphic();
  return s == h ? s : s + " ≅ " + h;
}

Vector ModuliChart::coordinates() const {
  std::vector<double> flat;
  for (const auto& f : factors) {
    if (const auto* s = std::get_if<Scalar>(&f)) {
      flat.push_back(s->log_alpha);
    } else {
      const auto& sp = std::get<SymmetricProduct>(f);
      flat.push_back(sp.base);
      flat.insert(flat.end(), sp.gaps.begin(), sp.gaps.end());
    }
  }
  return Eigen::Map<const Vector>(flat.data(), static_cast<Eigen::Index>(flat.size()));
}

std::vector<std::vector<double>> ModuliChart::reconstruct() const {
  std::vector<std::vector<double>> out;
  for (const auto& f : factors) {
    if (const auto* s = std::get_if<Scalar>(&f)) {
      out.push_back({std::exp(s->log_alpha)});
    } else {
      const auto& sp = std::get<SymmetricProduct>(f);
      std::vector<double> alphas{std::exp(sp.base)};
      double acc = sp.base;
      for (double g : sp.gaps) {
        acc += g;
        alphas.push_back(std::exp(acc));
      }
      out.push_back(std::move(alphas));
    }
  }
  return out;
}

std::vector<SymmetricForm> invariant_form_space(const LieAlgebra& lie, const Tolerances& tol) {
  const int n = lie.dim();
  const int m = n * (n + 1) / 2;
  std::vector<std::pair<int, int>> slots;
  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) slots.emplace_back(p, q);
  }
  // Unknown c_s for each upper-triangle slot; constraint rows are the upper
  // triangle of ad_i^T S + S ad_i for every i.
  Matrix system = Matrix::Zero(static_cast<Eigen::Index>(n) * m, m);
  for (int s = 0; s < m; ++s) {
    Matrix e = Matrix::Zero(n, n);
    e(slots[s].first, slots[s].second) = 1.0;
    e(slots[s].second, slots[s].first) = 1.0;
    for (int i = 0; i < n; ++i) {
      const Matrix& ad = lie.ad_basis(i);
      const Matrix r = ad.transpose() * e + e * ad;
      for (int t = 0; t < m; ++t) system(i * m + t, s) = r(slots[t].first, slots[t].second);
    }
  }
  const Matrix kernel = null_space(system, rank_cutoff(lie, tol));
  std::vector<SymmetricForm> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    Matrix f = Matrix::Zero(n, n);
    for (int s = 0; s < m; ++s) {
      f(slots[s].first, slots[s].second) = kernel(s, c);
      f(slots[s].second, slots[s].first) = kernel(s, c);
    }
    out.emplace_back(f);
  }
  return out;
}

bool is_biinvariant_metric(const LieAlgebra& lie, const Metric& metric, const Tolerances& tol) {
  return is_skew_adjoint_all(lie, metric, tol);
}

Metric compose_biinvariant_metric(const LieAlgebra& lie, const Decomposition& d,
                                  std::span<const double> alphas, const Matrix& center_form) {
  if (d.ambient_dim() != lie.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "decomposition does not belong to this algebra");
  }
  if (alphas.size() != d.ideals.size()) {
    throw Error(ErrorKind::DimensionMismatch, "one alpha per simple ideal is required");
  }
  if (center_form.rows() != d.center.dim() || center_form.cols() != d.center.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "center block must be dim Z x dim Z");
  }
  const auto projectors = summand_projectors(d);
  const Matrix killing = killing_form(lie).matrix();
  Matrix m = Matrix::Zero(lie.dim(), lie.dim());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, "alpha must be positive");
    const Matrix& p = projectors[i + 1];
    m -= alphas[i] * (p.transpose() * killing * p);
  }
  const Matrix to_center = d.center.basis().transpose() * projectors[0];
  m += to_center.transpose() * center_form * to_center;
  return Metric(m);
}

Metric random_biinvariant_metric(const LieAlgebra& lie, const Decomposition& d,
                                 std::uint64_t seed) {
  if (const auto report = compact_type_check(lie); !report.is_compact_type) {
    throw Error(ErrorKind::NotCompactType, "no bi-invariant metric exists: " + report.reason);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_alpha(std::log(0.1), std::log(10.0));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> alphas;
  for (std::size_t i = 0; i < d.ideals.size(); ++i) alphas.push_back(std::exp(log_alpha(rng)));
  const int z = d.center.dim();
  Matrix g(z, z);
  for (int i = 0; i < z; ++i) {
    for (int j = 0; j < z; ++j) g(i, j) = normal(rng);
  }
  const Matrix center_form = g * g.transpose() + 0.5 * Matrix::Identity(z, z);
  return compose_biinvariant_metric(lie, d, alphas, center_form);
}

BiInvariantCoordinates metric_coordinates(const LieAlgebra& lie, const Metric& metric,
                                          const Decomposition& d, const Tolerances& tol) {
  if (metric.dim() != lie.dim() || d.ambient_dim() != lie.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "metric, decomposition and algebra dimensions differ");
  }
  const Matrix killing = killing_form(lie).matrix();
  std::vector<double> alphas;
  for (std::size_t i = 0; i < d.ideals.size(); ++i) {
    const Matrix& basis = d.ideals[i].space.basis();
    const Matrix mi = basis.transpose() * metric.matrix() * basis;
    const Matrix bi = -(basis.transpose() * killing * basis);
    const double alpha = mi(0, 0) / bi(0, 0);
    if (max_abs(mi - alpha * bi) > tol.proportional * max_abs(mi)) {
      std::ostringstream msg;
      msg << "metric restricted to ideal " << i << " is not a multiple of -B";
      throw Error(ErrorKind::Proportionality, msg.str());
    }
    alphas.push_back(alpha);
  }
  BiInvariantCoordinates out;
  out.center_dim = d.center.dim();
  for (const auto& members : d.classes) {
    BiInvariantCoordinates::ClassEntry entry;
    entry.fingerprint = d.ideals[static_cast<std::size_t>(members.front())].fingerprint;
    for (int idx : members) entry.alphas.push_back(alphas[static_cast<std::size_t>(idx)]);
    out.classes.push_back(std::move(entry));
  }
  return out;
}

BiInvariantCoordinates canonicalize(BiInvariantCoordinates c) {
  for (auto& entry : c.classes) std::sort(entry.alphas.begin(), entry.alphas.end());
  return c;
}

namespace {

SpaceTerm bi_term(const std::vector<int>& class_sizes) {
  SpaceTerm t;
  for (int m : class_sizes) {
    if (m == 1) t.factors.push_back({SpaceFactor::Kind::PositiveReals, 1, {}});
  }
  for (int m : class_sizes) {
    if (m > 1) t.factors.push_back({SpaceFactor::Kind::SymmetricProduct, m, {}});
  }
  return t;
}

SpaceTerm ebi_term(const std::vector<int>& class_sizes) {
  SpaceTerm t;
  int total = 0;
  std::vector<int> groups;
  for (int m : class_sizes) {
    total += m;
    if (m > 1) groups.push_back(m);
  }
  if (total > 1) t.factors.push_back({SpaceFactor::Kind::PositiveSphereQuotient, total, groups});
  return t;
}

std::vector<int> sizes_of(const BiInvariantCoordinates& c) {
  std::vector<int> out;
  for (const auto& entry : c.classes) out.push_back(static_cast<int>(entry.alphas.size()));
  return out;
}

}  // namespace

ModuliChart bi_chart(const BiInvariantCoordinates& canonical) {
  const BiInvariantCoordinates c = canonicalize(canonical);
  ModuliChart chart;
  for (const auto& entry : c.classes) {
    if (entry.alphas.size() == 1) {
      chart.factors.emplace_back(ModuliChart::Scalar{std::log(entry.alphas.front())});
      continue;
    }
    ModuliChart::SymmetricProduct sp{std::log(entry.alphas.front()), {}};
    for (std::size_t i = 1; i < entry.alphas.size(); ++i) {
      sp.gaps.push_back(std::log(entry.alphas[i]) - std::log(entry.alphas[i - 1]));
    }
    chart.factors.emplace_back(std::move(sp));
  }
  chart.description = bi_term(sizes_of(c));
  return chart;
}

ConformalChart ebi_chart(const BiInvariantCoordinates& canonical) {
  const BiInvariantCoordinates c = canonicalize(canonical);
  ConformalChart chart;
  chart.class_sizes = sizes_of(c);
  chart.description = ebi_term(chart.class_sizes);
  const Vector alpha = c.flattened();
  chart.unit_coordinates = alpha.size() > 0 ? Vector(alpha / alpha.norm()) : Vector();
  return chart;
}

MetricAnalysis analyze_metric(const LieAlgebra& lie, const Metric& metric, std::uint64_t seed,
                              const Tolerances& tol) {
  if (metric.dim() != lie.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "metric dimension does not match algebra");
  }
  const auto report = compact_type_check(lie, tol);
  if (!report.is_compact_type) {
    throw Error(ErrorKind::NotCompactType, "no bi-invariant metric exists: " + report.reason);
  }
  if (!is_biinvariant_metric(lie, metric, tol)) {
    throw Error(ErrorKind::NotBiInvariant, "metric is not bi-invariant (ad(x) not skew-adjoint)");
  }
  MetricAnalysis out;
  out.decomposition = simple_ideals(lie, seed, tol);
  out.canonical = canonicalize(metric_coordinates(lie, metric, out.decomposition, tol));
  return out;
}

bool isometric(const MetricAnalysis& a, const MetricAnalysis& b, const Tolerances& tol) {
  if (!same_class_structure(a.canonical, b.canonical)) return false;
  for (std::size_t c = 0; c < a.canonical.classes.size(); ++c) {
    const auto& x = a.canonical.classes[c].alphas;
    const auto& y = b.canonical.classes[c].alphas;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!close_relative(x[i], y[i], tol.equal)) return false;
    }
  }
  return true;
}

bool isometric(const LieAlgebra& lie1, const Metric& m1, const LieAlgebra& lie2, const Metric& m2,
               std::uint64_t seed, const Tolerances& tol) {
  return isometric(analyze_metric(lie1, m1, seed, tol), analyze_metric(lie2, m2, seed, tol), tol);
}

ConformalVerdict conformally_equivalent(const MetricAnalysis& a, const MetricAnalysis& b,
                                        const Tolerances& tol) {
  if (!same_class_structure(a.canonical, b.canonical)) return {};
  const ConformalChart ca = ebi_chart(a.canonical);
  const ConformalChart cb = ebi_chart(b.canonical);
  if (ca.unit_coordinates.size() == 0) return {true, 1.0};
  if ((ca.unit_coordinates - cb.unit_coordinates).cwiseAbs().maxCoeff() > tol.equal) return {};
  return {true, a.canonical.flattened().norm() / b.canonical.flattened().norm()};
}

ConformalVerdict conformally_equivalent(const LieAlgebra& lie1, const Metric& m1,
                                        const LieAlgebra& lie2, const Metric& m2,
                                        std::uint64_t seed, const Tolerances& tol) {
  return conformally_equivalent(analyze_metric(lie1, m1, seed, tol),
                                analyze_metric(lie2, m2, seed, tol), tol);
}

ModuliDescription moduli_description(const Decomposition& d) {
  const auto sizes = d.class_sizes();
  return {bi_term(sizes), ebi_term(sizes), true};
}

ModuliDescription moduli_description(const LieAlgebra& lie, std::uint64_t seed,
                                     const Tolerances& tol) {
  const auto report = compact_type_check(lie, tol);
  if (!report.is_compact_type) {
    throw Error(ErrorKind::NotCompactType, "no bi-invariant metric exists: " + report.reason);
  }
  return moduli_description(simple_ideals(lie, seed, tol));
}

}  // namespace bimetric
