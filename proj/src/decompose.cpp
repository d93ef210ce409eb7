#include "bimetric/decompose.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace bimetric {

namespace {

constexpr int kIdealRetries = 8;
constexpr int kRankDraws = 4;
constexpr int kPlaneRetries = 8;

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

Vector gaussian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

// Groups ascending values into runs separated by gaps above rel_gap * scale.
std::vector<std::vector<int>> cluster_sorted(const Vector& values, double rel_gap) {
  std::vector<std::vector<int>> clusters;
  if (values.size() == 0) return clusters;
  const double scale = std::max(values.cwiseAbs().maxCoeff(), 1e-300);
  clusters.push_back({0});
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    if (values(i) - values(i - 1) > rel_gap * scale) clusters.emplace_back();
    clusters.back().push_back(static_cast<int>(i));
  }
  return clusters;
}

Matrix columns(const Matrix& m, const std::vector<int>& idx) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = m.col(idx[c]);
  return out;
}

// ad(x) restricted to an invariant subspace, in the coordinates of `basis`
// (least squares against the basis, exact when the subspace is invariant).
struct Restricted {
  std::vector<Matrix> ad;  // one per basis vector of the subspace
  double closure_residual = 0.0;
};

Restricted restrict_ad(const LieAlgebra& lie, const Matrix& basis) {
  Restricted out;
  const auto solver = basis.colPivHouseholderQr();
  for (Eigen::Index a = 0; a < basis.cols(); ++a) {
    const Matrix image = ad_matrix(lie, basis.col(a)) * basis;
    Matrix coords = solver.solve(image);
    out.closure_residual = std::max(out.closure_residual, max_abs(image - basis * coords));
    out.ad.push_back(std::move(coords));
  }
  return out;
}

double ad_scale(const LieAlgebra& lie) {
  double s = 0.0;
  for (int i = 0; i < lie.dim(); ++i) s = std::max(s, max_abs(lie.ad_basis(i)));
  return std::max(s, 1.0);
}

// Lower Cholesky factor of -B restricted to the span of `basis`.
Matrix negative_killing_factor(const SymmetricForm& killing, const Matrix& basis) {
  const Matrix gram = -(basis.transpose() * killing.matrix() * basis);
  Eigen::LLT<Matrix> llt(symmetrized(gram));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotCompactType, "Killing form is not negative definite on subspace");
  }
  return llt.matrixL();
}

}  // namespace

std::string to_string(const Fingerprint& fp) {
  std::ostringstream out;
  out << "dim=" << fp.dim << " rank=" << fp.rank << " roots=" << fp.root_count << " profile={";
  for (std::size_t i = 0; i < fp.root_profile.size(); ++i) {
    if (i) out << ",";
    out << fp.root_profile[i];
  }
  out << "}";
  return out.str();
}

std::vector<int> Decomposition::class_sizes() const {
  std::vector<int> out;
  for (const auto& c : classes) out.push_back(static_cast<int>(c.size()));
  return out;
}

std::vector<int> Decomposition::ideal_dims() const {
  std::vector<int> out;
  for (const auto& ideal : ideals) out.push_back(ideal.space.dim());
  return out;
}

CompactTypeReport compact_type_check(const LieAlgebra& lie, const Tolerances& tol) {
  const int n = lie.dim();
  const Subspace z = center(lie, tol);
  const Subspace derived = derived_subalgebra(lie, tol);
  if (z.dim() + derived.dim() != n) {
    std::ostringstream msg;
    msg << "dim center (" << z.dim() << ") + dim [g,g] (" << derived.dim()
        << ") != dim g (" << n << ")";
    return {false, msg.str()};
  }
  Matrix both(n, n);
  both << z.basis(), derived.basis();
  if (numerical_rank(both, rank_cutoff(lie, tol)) != n) {
    return {false, "center and [g,g] intersect non-trivially"};
  }
  if (derived.dim() == 0) return {true, "abelian"};
  const Matrix restricted = derived.basis().transpose() * killing_form(lie).matrix() * derived.basis();
  const SymmetricForm kr(restricted);
  const double top = kr.max_eigenvalue();
  if (top > -rank_cutoff(lie, tol) * std::max(1.0, max_abs(restricted))) {
    std::ostringstream msg;
    msg << "Killing form is not negative definite on [g,g] (largest eigenvalue " << top << ")";
    return {false, msg.str()};
  }
  return {true, "g = [g,g] + Z(g) with negative definite Killing form on [g,g]"};
}

std::vector<Matrix> commutant_basis(const LieAlgebra& lie, const Subspace& subalgebra,
                                    const Tolerances& tol) {
  const Eigen::Index d = subalgebra.dim();
  if (d == 0) return {};
  const Restricted r = restrict_ad(lie, subalgebra.basis());
  if (r.closure_residual > rank_cutoff(lie, tol) * ad_scale(lie)) {
    throw Error(ErrorKind::NotBracketClosed, "subspace is not closed under the bracket");
  }
  // vec(M A - A M) = (A^T (x) I - I (x) A) vec(M), column-major vec.
  const Eigen::Index dd = d * d;
  Matrix system = Matrix::Zero(d * dd, dd);
  const Matrix eye = Matrix::Identity(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const Matrix& ad = r.ad[static_cast<std::size_t>(a)];
    auto block = system.middleRows(a * dd, dd);
    for (Eigen::Index p = 0; p < d; ++p) {
      for (Eigen::Index q = 0; q < d; ++q) {
        block.block(p * d, q * d, d, d) += ad(q, p) * eye;
        block.block(p * d, q * d, d, d) -= (p == q ? ad : Matrix::Zero(d, d));
      }
    }
  }
  const Matrix kernel = null_space(system, rank_cutoff(lie, tol));
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) out.push_back(kernel.col(c).reshaped(d, d));
  return out;
}

int cartan_rank(const LieAlgebra& lie, const Subspace& ideal, std::uint64_t seed,
                const Tolerances& tol) {
  if (ideal.dim() == 0) return 0;
  auto rng = make_rng(seed, 0xca27a9);
  int best = ideal.dim();
  for (int draw = 0; draw < kRankDraws; ++draw) {
    const Vector x = ideal.basis() * gaussian(rng, ideal.dim());
    const Matrix centralizer_map = ad_matrix(lie, x) * ideal.basis();
    const int nullity = ideal.dim() - numerical_rank(centralizer_map, rank_cutoff(lie, tol));
    best = std::min(best, nullity);
  }
  return best;
}

Fingerprint root_fingerprint(const LieAlgebra& lie, const Subspace& ideal, std::uint64_t seed,
                             const Tolerances& tol) {
  const Eigen::Index d = ideal.dim();
  const SymmetricForm killing = killing_form(lie);
  const Matrix factor = negative_killing_factor(killing, ideal.basis());
  // -B-orthonormal basis of the ideal.
  const Matrix q = factor.triangularView<Eigen::Lower>()
                       .solve(ideal.basis().transpose())
                       .transpose();
  const Matrix neg_b = -killing.matrix();
  std::vector<Matrix> ad_hat;
  for (Eigen::Index a = 0; a < d; ++a) {
    ad_hat.push_back(q.transpose() * neg_b * ad_matrix(lie, q.col(a)) * q);
  }
  auto combine = [&](const Vector& c) {
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index a = 0; a < d; ++a) m += c(a) * ad_hat[static_cast<std::size_t>(a)];
    return m;
  };

  const int rank = cartan_rank(lie, ideal, seed, tol);
  const double cutoff = rank_cutoff(lie, tol);
  auto rng = make_rng(seed, 0x2007);

  for (int attempt = 0; attempt < kPlaneRetries; ++attempt) {
    const Matrix generic = combine(gaussian(rng, d));
    const Matrix cartan = null_space(generic, cutoff);
    if (cartan.cols() != rank) continue;

    // generic^2 is symmetric negative semidefinite: zero on the Cartan
    // subalgebra, -alpha(h)^2 (twice) on each root plane.
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(generic * generic));
    const Vector& evals = es.eigenvalues();
    const double scale = std::max(evals.cwiseAbs().maxCoeff(), 1e-300);
    std::vector<int> nonzero;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (std::abs(evals(i)) > cutoff * scale) nonzero.push_back(static_cast<int>(i));
    }
    if (static_cast<Eigen::Index>(nonzero.size()) != d - rank) continue;

    Vector nz(static_cast<Eigen::Index>(nonzero.size()));
    for (std::size_t i = 0; i < nonzero.size(); ++i) nz(static_cast<Eigen::Index>(i)) = evals(nonzero[i]);
    const auto clusters = cluster_sorted(nz, tol.cluster_gap);
    bool planes_ok = true;
    std::vector<double> lengths;
    for (const auto& cluster : clusters) {
      if (cluster.size() != 2) {
        planes_ok = false;
        break;
      }
      Matrix plane(d, 2);
      plane << es.eigenvectors().col(nonzero[static_cast<std::size_t>(cluster[0])]),
          es.eigenvectors().col(nonzero[static_cast<std::size_t>(cluster[1])]);
      double length_sq = 0.0;
      for (Eigen::Index j = 0; j < cartan.cols(); ++j) {
        const Matrix h = combine(cartan.col(j));
        const Matrix hp = h * plane;
        const Matrix on_plane = plane.transpose() * hp;
        if (max_abs(hp - plane * on_plane) > 1e3 * cutoff * std::max(1.0, max_abs(h))) {
          planes_ok = false;
          break;
        }
        const double theta = on_plane(1, 0);
        length_sq += theta * theta;
      }
      if (!planes_ok) break;
      lengths.push_back(length_sq);
      lengths.push_back(length_sq);
    }
    if (!planes_ok) continue;

    Fingerprint fp;
    fp.dim = static_cast<int>(d);
    fp.rank = rank;
    fp.root_count = static_cast<int>(lengths.size());
    if (!lengths.empty()) {
      const double shortest = *std::min_element(lengths.begin(), lengths.end());
      for (double& v : lengths) v = std::round(v / shortest * 1e6) / 1e6;
      std::sort(lengths.begin(), lengths.end());
    }
    fp.root_profile = std::move(lengths);
    return fp;
  }
  throw Error(ErrorKind::DecompositionFailure,
              "root plane splitting failed after retries; input is numerically degenerate");
}

Decomposition group_by_isomorphism(Decomposition d) {
  std::map<Fingerprint, std::vector<int>> by_fp;
  for (std::size_t i = 0; i < d.ideals.size(); ++i) {
    by_fp[d.ideals[i].fingerprint].push_back(static_cast<int>(i));
  }
  d.classes.clear();
  for (auto& [fp, members] : by_fp) d.classes.push_back(std::move(members));
  return d;
}

Decomposition simple_ideals(const LieAlgebra& lie, std::uint64_t seed, const Tolerances& tol) {
  const auto report = compact_type_check(lie, tol);
  if (!report.is_compact_type) throw Error(ErrorKind::NotCompactType, report.reason);

  Decomposition out;
  out.center = center(lie, tol);
  const Subspace derived = derived_subalgebra(lie, tol);
  if (derived.dim() == 0) return out;

  const std::vector<Matrix> commutant = commutant_basis(lie, derived, tol);
  const auto k = commutant.size();
  const Eigen::Index d = derived.dim();
  const SymmetricForm killing = killing_form(lie);
  const Matrix factor = negative_killing_factor(killing, derived.basis());
  const Matrix factor_t = factor.transpose();
  const double cutoff = rank_cutoff(lie, tol);
  auto rng = make_rng(seed, 0x1dea1);

  for (int attempt = 0; attempt < kIdealRetries; ++attempt) {
    const Vector coeffs = gaussian(rng, static_cast<Eigen::Index>(k));
    Matrix element = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < k; ++i) element += coeffs(static_cast<Eigen::Index>(i)) * commutant[i];
    // In y = L^T x coordinates the element is -B-self-adjoint, hence symmetric.
    const Matrix sym = symmetrized(
        factor_t * factor_t.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(element));
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    const auto clusters = cluster_sorted(es.eigenvalues(), tol.cluster_gap);
    if (clusters.size() != k) continue;

    std::vector<Ideal> ideals;
    for (const auto& cluster : clusters) {
      const Matrix y = columns(es.eigenvectors(), cluster);
      const Matrix x = factor_t.triangularView<Eigen::Upper>().solve(y);
      ideals.push_back({Subspace(derived.basis() * x), {}});
    }
    // Distinct ideals must commute.
    bool commuting = true;
    for (std::size_t a = 0; a < ideals.size() && commuting; ++a) {
      for (std::size_t b = a + 1; b < ideals.size() && commuting; ++b) {
        for (Eigen::Index u = 0; u < ideals[a].space.dim() && commuting; ++u) {
          const Matrix cross = ad_matrix(lie, ideals[a].space.basis().col(u)) * ideals[b].space.basis();
          if (max_abs(cross) > 1e3 * cutoff * ad_scale(lie)) commuting = false;
        }
      }
    }
    if (!commuting) continue;

    for (std::size_t i = 0; i < ideals.size(); ++i) {
      ideals[i].fingerprint = root_fingerprint(lie, ideals[i].space, seed + 7919 * (i + 1), tol);
    }
    out.ideals = std::move(ideals);
    return group_by_isomorphism(std::move(out));
  }
  throw Error(ErrorKind::DecompositionFailure,
              "could not separate simple ideals after retries; input is numerically degenerate");
}

std::vector<Matrix> summand_projectors(const Decomposition& d) {
  const Eigen::Index n = d.ambient_dim();
  Matrix frame(n, n);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges;
  Eigen::Index col = 0;
  auto add = [&](const Subspace& s) {
    frame.middleCols(col, s.dim()) = s.basis();
    ranges.emplace_back(col, s.dim());
    col += s.dim();
  };
  add(d.center);
  for (const auto& ideal : d.ideals) add(ideal.space);
  if (col != n) throw Error(ErrorKind::DimensionMismatch, "summands do not span the algebra");
  const Matrix inverse = frame.fullPivLu().inverse();
  std::vector<Matrix> out;
  for (auto [start, len] : ranges) {
    out.push_back(frame.middleCols(start, len) * inverse.middleRows(start, len));
  }
  return out;
}

SymmetricForm ideal_killing_form(const LieAlgebra& lie, const Decomposition& d, int ideal) {
  const auto projectors = summand_projectors(d);
  const Matrix& p = projectors.at(static_cast<std::size_t>(ideal) + 1);
  return SymmetricForm(p.transpose() * killing_form(lie).matrix() * p);
}

}  // namespace bimetric
