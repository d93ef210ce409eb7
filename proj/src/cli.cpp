#include "bimetric/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "bimetric/catalog.hpp"
#include "bimetric/curvature.hpp"
#include "bimetric/decompose.hpp"
#include "bimetric/io.hpp"
#include "bimetric/metrics.hpp"

namespace bimetric::cli {

namespace {

using Json = nlohmann::ordered_json;

struct GlobalOptions {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  bool json = false;
  bool skip_validate = false;

  Tolerances tolerances() const {
    Tolerances t;
    t.rank = tol;
    t.jacobi = tol;
    t.skew = tol;
    return t;
  }
};

// 12 significant digits in JSON, 6 for people.
double json_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string human(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

Json json_vector(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(json_number(v(i)));
  return arr;
}

Json json_matrix(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(json_vector(m.row(r).transpose()));
  return rows;
}

std::string human_vector(const Vector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + human(v(i));
  return s + ")";
}

std::string human_ints(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

Json json_fingerprint(const Fingerprint& fp) {
  Json profile = Json::array();
  for (double v : fp.root_profile) profile.push_back(json_number(v));
  return Json{{"dim", fp.dim}, {"rank", fp.rank}, {"root_count", fp.root_count},
              {"root_profile", profile}};
}

Json json_term(const SpaceTerm& t) {
  Json factors = Json::array();
  for (const auto& f : t.factors) {
    const char* kind = f.kind == SpaceFactor::Kind::PositiveReals      ? "positive_reals"
                       : f.kind == SpaceFactor::Kind::SymmetricProduct ? "symmetric_product"
                                                                       : "positive_sphere_quotient";
    factors.push_back(Json{{"kind", kind}, {"order", f.order}, {"dimension", f.dimension()},
                           {"symmetric_groups", f.symmetric_groups}});
  }
  return Json{{"symbolic", t.symbolic()},     {"homeomorphic", t.homeomorphic()},
              {"display", t.display()},       {"dimension", t.dimension()},
              {"factors", factors}};
}

std::string moduli_line(const char* label, const SpaceTerm& t) {
  return std::string(label) + (t.is_point() ? " = point" : " ≅ " + t.display());
}

Json json_coordinates(const BiInvariantCoordinates& c) {
  Json classes = Json::array();
  for (const auto& entry : c.classes) {
    Json alphas = Json::array();
    for (double a : entry.alphas) alphas.push_back(json_number(a));
    classes.push_back(Json{{"fingerprint", json_fingerprint(entry.fingerprint)}, {"alphas", alphas}});
  }
  return Json{{"center_dim", c.center_dim}, {"classes", classes}};
}

std::string human_alphas(const BiInvariantCoordinates& c) {
  return human_vector(c.flattened());
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::UnknownName:
    case ErrorKind::DegeneratePlane: return kParseError;
    case ErrorKind::Jacobi: return kJacobiFailure;
    case ErrorKind::NotCompactType:
    case ErrorKind::DecompositionFailure:
    case ErrorKind::NotBracketClosed: return kNotCompactType;
    case ErrorKind::NotPositiveDefinite: return kNotPositiveDefinite;
    case ErrorKind::NotBiInvariant:
    case ErrorKind::Proportionality: return kNegative;
  }
  return kNegative;
}

class Session {
 public:
  Session(const GlobalOptions& opts, std::ostream& out, std::ostream& err, std::istream& in)
      : opts_(opts), tol_(opts.tolerances()), out_(out), err_(err), in_(in) {}

  LieAlgebra load_algebra(const std::string& path) const {
    LieAlgebra lie = io::parse_algebra(io::read_text(path, in_));
    if (!opts_.skip_validate) {
      const auto violations = validate_jacobi(lie, tol_);
      if (!violations.empty()) {
        std::ostringstream msg;
        msg << "Jacobi identity fails on " << violations.size() << " triple(s), first ("
            << violations[0].i << ", " << violations[0].j << ", " << violations[0].k
            << ") with residual " << violations[0].residual;
        throw Error(ErrorKind::Jacobi, msg.str());
      }
    }
    return lie;
  }

  Metric load_metric(const std::string& path, const LieAlgebra& lie) const {
    const Matrix m = io::parse_metric_matrix(io::read_text(path, in_), err_);
    if (m.rows() != lie.dim()) {
      throw Error(ErrorKind::Parse, "metric in '" + path + "' is " + std::to_string(m.rows()) +
                                        "x" + std::to_string(m.rows()) + ", algebra has dimension " +
                                        std::to_string(lie.dim()));
    }
    return Metric(m, tol_);
  }

  int analyze(const std::string& path) {
    const LieAlgebra lie = load_algebra(path);
    const auto report = compact_type_check(lie, tol_);
    const int inv_dim = static_cast<int>(invariant_form_space(lie, tol_).size());
    Json doc{{"command", "analyze"}, {"algebra", lie.name()}, {"dim", lie.dim()},
             {"jacobi_ok", true}, {"compact_type", report.is_compact_type},
             {"reason", report.reason}, {"invariant_form_dim", inv_dim}};
    std::ostringstream text;
    text << "algebra: " << lie.name() << "\n"
         << "dim: " << lie.dim() << "\n"
         << "compact type: " << (report.is_compact_type ? "yes" : "no") << " (" << report.reason
         << ")\n";
    if (!report.is_compact_type) {
      doc["center_dim"] = center(lie, tol_).dim();
      doc["bi_invariant_metric_exists"] = false;
      doc["message"] = "no bi-invariant metric exists";
      text << "center dim: " << doc["center_dim"].get<int>() << "\n"
           << "invariant form dim: " << inv_dim << "\n"
           << "no bi-invariant metric exists\n";
      return emit(doc, text.str(), kOk);
    }
    const Decomposition d = simple_ideals(lie, opts_.seed, tol_);
    const ModuliDescription moduli = moduli_description(d);
    Json ideals = Json::array();
    text << "center dim: " << d.center.dim() << "\n"
         << "ideals: " << d.ideals.size() << "\n";
    for (std::size_t i = 0; i < d.ideals.size(); ++i) {
      ideals.push_back(Json{{"dim", d.ideals[i].space.dim()},
                            {"fingerprint", json_fingerprint(d.ideals[i].fingerprint)}});
      text << "  ideal " << i << ": dim " << d.ideals[i].space.dim() << ", "
           << to_string(d.ideals[i].fingerprint) << "\n";
    }
    Json classes = Json::array();
    for (const auto& members : d.classes) classes.push_back(members);
    doc["bi_invariant_metric_exists"] = true;
    doc["center_dim"] = d.center.dim();
    doc["ideals"] = ideals;
    doc["classes"] = classes;
    doc["class_sizes"] = d.class_sizes();
    doc["bi"] = json_term(moduli.bi);
    doc["ebi"] = json_term(moduli.ebi);
    doc["contractible"] = moduli.contractible;
    text << "class sizes: " << human_ints(d.class_sizes()) << "\n"
         << "invariant form dim: " << inv_dim << "\n"
         << moduli_line("BI", moduli.bi) << "; " << moduli_line("EBI", moduli.ebi) << "\n"
         << "contractible: yes\n";
    return emit(doc, text.str(), kOk);
  }

  int check_metric(const std::string& algebra_path, const std::string& metric_path) {
    const LieAlgebra lie = load_algebra(algebra_path);
    const Metric metric = load_metric(metric_path, lie);
    const auto report = compact_type_check(lie, tol_);
    if (!report.is_compact_type) {
      throw Error(ErrorKind::NotCompactType, "no bi-invariant metric exists: " + report.reason);
    }
    const bool bi = is_biinvariant_metric(lie, metric, tol_);
    Json doc{{"command", "check-metric"}, {"algebra", lie.name()}, {"bi_invariant", bi},
             {"skew_residual", json_number(skew_adjoint_residual(lie, metric.form()))}};
    std::ostringstream text;
    text << "bi-invariant: " << (bi ? "yes" : "no") << "\n";
    if (!bi) return emit(doc, text.str(), kNegative);
    const MetricAnalysis analysis = analyze_metric(lie, metric, opts_.seed, tol_);
    doc["coordinates"] = json_coordinates(analysis.canonical);
    doc["chart"] = json_vector(bi_chart(analysis.canonical).coordinates());
    text << "alpha: " << human_alphas(analysis.canonical) << "\n";
    return emit(doc, text.str(), kOk);
  }

  int equivalent(const std::string& mode, const std::string& a1, const std::string& m1,
                 const std::string& a2, const std::string& m2) {
    const LieAlgebra lie1 = load_algebra(a1);
    const Metric metric1 = load_metric(m1, lie1);
    const LieAlgebra lie2 = load_algebra(a2);
    const Metric metric2 = load_metric(m2, lie2);
    const MetricAnalysis x = analyze_metric(lie1, metric1, opts_.seed, tol_);
    const MetricAnalysis y = analyze_metric(lie2, metric2, opts_.seed, tol_);
    Json doc{{"command", "equivalent"}, {"mode", mode}};
    std::ostringstream text;
    bool equal = false;
    if (mode == "isometry") {
      equal = isometric(x, y, tol_);
      doc["equivalent"] = equal;
      text << "isometric: " << (equal ? "yes" : "no") << "\n";
    } else {
      const ConformalVerdict v = conformally_equivalent(x, y, tol_);
      equal = v.equivalent;
      doc["equivalent"] = equal;
      doc["lambda"] = v.lambda ? Json(json_number(*v.lambda)) : Json(nullptr);
      text << "conformally equivalent: " << (equal ? "yes" : "no") << "\n";
      if (v.lambda) text << "lambda: " << human(*v.lambda) << "\n";
    }
    doc["coordinates"] = Json::array({json_coordinates(x.canonical), json_coordinates(y.canonical)});
    return emit(doc, text.str(), equal ? kOk : kNegative);
  }

  int curvature(const std::string& algebra_path, const std::string& metric_path, int samples,
                bool csv) {
    const LieAlgebra lie = load_algebra(algebra_path);
    const Metric metric = load_metric(metric_path, lie);
    const auto report = compact_type_check(lie, tol_);
    if (!report.is_compact_type) {
      throw Error(ErrorKind::NotCompactType, "no bi-invariant metric exists: " + report.reason);
    }
    const CurvatureReport r = positivity_probe(lie, metric, samples, opts_.seed, tol_);
    if (csv) {
      out_ << "plane_index,sectional\n";
      char buf[32];
      for (std::size_t i = 0; i < r.samples.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", r.samples[i]);
        out_ << i << "," << buf << "\n";
      }
      return kOk;
    }
    Json doc{{"command", "curvature"},
             {"algebra", lie.name()},
             {"ricci", json_matrix(r.ricci.matrix())},
             {"scalar", json_number(r.scalar)},
             {"samples", static_cast<int>(r.samples.size())},
             {"min_sectional_sampled", json_number(r.min_sectional_sampled)},
             {"flat", r.flat}};
    std::ostringstream text;
    text << "ricci:\n";
    for (Eigen::Index i = 0; i < r.ricci.matrix().rows(); ++i) {
      text << "  " << human_vector(r.ricci.matrix().row(i).transpose()) << "\n";
    }
    text << "scalar curvature: " << human(r.scalar) << "\n"
         << "min sectional (" << r.samples.size() << " samples): " << human(r.min_sectional_sampled)
         << "\n";
    if (r.zero_plane) {
      doc["zero_plane"] = Json::array({json_vector(r.zero_plane->first), json_vector(r.zero_plane->second)});
      text << "zero plane: " << human_vector(r.zero_plane->first) << " ^ "
           << human_vector(r.zero_plane->second) << "\n";
    } else {
      doc["zero_plane"] = nullptr;
      text << "zero plane: none\n";
    }
    if (r.einstein_constant) {
      doc["einstein_constant"] = json_number(*r.einstein_constant);
      text << "einstein constant: " << human(*r.einstein_constant) << "\n";
    } else {
      doc["einstein_constant"] = nullptr;
      text << "einstein constant: none\n";
    }
    text << "flat: " << (r.flat ? "yes" : "no") << "\n";
    return emit(doc, text.str(), kOk);
  }

  int catalog_list() {
    Json entries = Json::array();
    std::ostringstream text;
    for (const auto& name : builtin_names()) {
      const CatalogEntry e = builtin(name);
      entries.push_back(Json{{"name", e.name},
                             {"dim", e.algebra.dim()},
                             {"summary", e.summary},
                             {"compact_type", e.expected.compact_type},
                             {"center_dim", e.expected.center_dim},
                             {"ideal_dims", e.expected.ideal_dims},
                             {"class_sizes", e.expected.class_sizes},
                             {"invariant_form_dim", e.expected.invariant_form_dim},
                             {"bi", e.expected.bi_description},
                             {"ebi", e.expected.ebi_description}});
      text << e.name << ": " << e.summary << "; dim " << e.algebra.dim() << ", center "
           << e.expected.center_dim << ", ideals " << human_ints(e.expected.ideal_dims)
           << ", BI " << e.expected.bi_description << ", EBI " << e.expected.ebi_description << "\n";
    }
    return emit(Json{{"command", "catalog list"}, {"entries", entries}}, text.str(), kOk);
  }

  int catalog_emit(const std::string& name) {
    out_ << io::algebra_to_json(builtin(name).algebra);
    return kOk;
  }

  int fail(const std::string& command, const Error& e) {
    const int code = exit_code_for(e.kind());
    err_ << "error: " << e.what() << "\n";
    if (opts_.json) {
      out_ << Json{{"command", command},
                   {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}},
                   {"exit_code", code}}
                  .dump(2)
           << "\n";
    } else if (e.kind() == ErrorKind::NotCompactType) {
      out_ << "no bi-invariant metric exists\n";
    }
    return code;
  }

 private:
  int emit(Json doc, const std::string& text, int code) {
    if (opts_.json) {
      doc["exit_code"] = code;
      out_ << doc.dump(2) << "\n";
    } else {
      out_ << text;
    }
    return code;
  }

  GlobalOptions opts_;
  Tolerances tol_;
  std::ostream& out_;
  std::ostream& err_;
  std::istream& in_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  CLI::App app{"Bi-invariant metrics on Lie algebras given by structure constants", "bimetric"};
  app.fallthrough();
  app.require_subcommand(1);
  GlobalOptions opts;
  app.add_option("--tol", opts.tol, "Rank, Jacobi and skew-adjointness tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opts.seed, "Seed for randomized steps");
  app.add_flag("--json", opts.json, "Machine-readable output");
  app.add_flag("--skip-validate", opts.skip_validate, "Do not check the Jacobi identity");

  std::string algebra, metric, algebra2, metric2, mode, name;
  int samples = 1000;
  bool csv = false;

  auto* analyze = app.add_subcommand("analyze", "Decompose an algebra and describe its moduli");
  analyze->add_option("algebra", algebra, "Algebra JSON file ('-' for stdin)")->required();

  auto* check = app.add_subcommand("check-metric", "Test bi-invariance and print coordinates");
  check->add_option("algebra", algebra)->required();
  check->add_option("metric", metric)->required();

  auto* equiv = app.add_subcommand("equivalent", "Decide isometry or conformal equivalence");
  equiv->add_option("mode", mode)->required()->check(CLI::IsMember({"isometry", "conformal"}));
  equiv->add_option("algebra1", algebra)->required();
  equiv->add_option("metric1", metric)->required();
  equiv->add_option("algebra2", algebra2)->required();
  equiv->add_option("metric2", metric2)->required();

  auto* curv = app.add_subcommand("curvature", "Ricci, scalar and sampled sectional curvature");
  curv->add_option("algebra", algebra)->required();
  curv->add_option("metric", metric)->required();
  curv->add_option("--samples", samples, "Number of random planes")->check(CLI::NonNegativeNumber);
  curv->add_flag("--csv", csv, "Emit plane_index,sectional rows instead of the report");

  auto* catalog = app.add_subcommand("catalog", "Built-in algebras");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "List built-in algebras");
  auto* emit_cmd = catalog->add_subcommand("emit", "Write a built-in algebra as JSON");
  emit_cmd->add_option("name", name)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  Session session(opts, out, err, in);
  std::string command = "unknown";
  try {
    if (*analyze) {
      command = "analyze";
      return session.analyze(algebra);
    }
    if (*check) {
      command = "check-metric";
      return session.check_metric(algebra, metric);
    }
    if (*equiv) {
      command = "equivalent";
      return session.equivalent(mode, algebra, metric, algebra2, metric2);
    }
    if (*curv) {
      command = "curvature";
      return session.curvature(algebra, metric, samples, csv);
    }
    if (*list) {
      command = "catalog list";
      return session.catalog_list();
    }
    if (*emit_cmd) {
      command = "catalog emit";
      return session.catalog_emit(name);
    }
  } catch (const Error& e) {
    return session.fail(command, e);
  }
  return kParseError;
}

}  // namespace bimetric::cli
