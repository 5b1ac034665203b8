#include "tautres/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace tautres {

namespace {

std::string decimal_text(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", q.get_d());
  return std::string("~") + buf;
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw SpecError(where + ": expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw SpecError(where + ": unknown key '" + key + "'");
}

int get_int(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw SpecError(where + ": missing '" + key + "'");
  if (!j[key].is_number_integer()) throw SpecError(where + ": '" + key + "' must be an integer");
  return j[key].get<int>();
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      throw SpecError(std::string("bad rational: ") + e.what());
    }
  }
  throw SpecError("expected a rational as integer or \"p/q\" string");
}

std::shared_ptr<const Integrand> class_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "segre") return std::make_shared<MultiplicativeIntegrand>(MultiplicativeIntegrand::segre());
    if (s == "chern") return std::make_shared<MultiplicativeIntegrand>(MultiplicativeIntegrand::chern());
    throw SpecError("unknown class '" + s + "' (expected segre, chern or {\"name\", \"coefficients\"})");
  }
  check_keys(j, {"name", "coefficients"}, "class");
  if (!j.contains("coefficients") || !j["coefficients"].is_array() || j["coefficients"].empty())
    throw SpecError("class: 'coefficients' must be a non-empty array a_0, a_1, ...");
  std::vector<Rational> a;
  for (const auto& c : j["coefficients"]) a.push_back(rational_from_json(c));
  if (a[0] != 1) throw SpecError("class: a_0 must be 1");
  return std::make_shared<MultiplicativeIntegrand>(j.value("name", std::string("custom")), a);
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json rational_to_json(const Rational& q) { return to_string(q); }

Json poly_to_json(const MultiPoly& p) {
  auto& reg = VarRegistry::global();
  std::vector<std::pair<std::string, Json>> rows;
  for (const auto& t : p.terms()) {
    Json mono = Json::object();
    std::string key;
    std::vector<std::pair<std::string, int>> named;
    for (const auto& [v, e] : t.mono) named.emplace_back(reg.info(v).name, e);
    std::sort(named.begin(), named.end());
    for (const auto& [name, e] : named) {
      mono[name] = e;
      key += name + "^" + std::to_string(e) + "*";
    }
    rows.emplace_back(key, Json{{"coeff", to_string(t.coeff)}, {"monomial", mono}});
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Json out = Json::array();
  for (auto& r : rows) out.push_back(std::move(r.second));
  return out;
}

MultiPoly parse_weight_expression(const std::string& src) {
  auto& reg = VarRegistry::global();
  try {
    auto ast = parse_expression(src, {"lambda", "z"});
    return evaluate_expression(*ast, [&](const std::string& prefix, int i) {
      return MultiPoly::var(prefix == "lambda" ? reg.lambda(0, i) : reg.z(1, i));
    });
  } catch (const ParseError& e) {
    throw SpecError(std::string("expression '") + src + "': " + e.what());
  }
}

MultiPoly poly_from_json(const Json& j) {
  if (j.is_string()) return parse_weight_expression(j.get<std::string>());
  if (j.is_number_integer()) return MultiPoly(Rational(j.get<long>()));
  if (!j.is_array()) throw SpecError("polynomial must be an expression string or a term list");
  auto& reg = VarRegistry::global();
  std::vector<Term> terms;
  for (const auto& t : j) {
    check_keys(t, {"coeff", "monomial"}, "term");
    Monomial m;
    if (t.contains("monomial")) {
      if (!t["monomial"].is_object()) throw SpecError("term: 'monomial' must be an object");
      for (const auto& [name, e] : t["monomial"].items()) {
        auto v = reg.find_by_name(name);
        if (!v) {
          // accept the compact spellings used in expressions
          MultiPoly x = parse_weight_expression(name);
          if (x.size() != 1 || x.terms()[0].mono.size() != 1) throw SpecError("unknown variable '" + name + "'");
          v = x.terms()[0].mono[0].first;
        }
        if (!e.is_number_integer()) throw SpecError("term: exponents must be integers");
        m = mono_mul(m, Monomial{{*v, e.get<int>()}});
      }
    }
    terms.push_back({m, t.contains("coeff") ? rational_from_json(t["coeff"]) : Rational(1)});
  }
  return MultiPoly::from_terms(std::move(terms));
}

Json rational_function_to_json(const RationalFunction& f) {
  Json den = Json::array();
  std::vector<std::pair<std::string, Json>> rows;
  for (const auto& [p, m] : f.denominator()) rows.emplace_back(p.str(), Json{{"factor", poly_to_json(p)}, {"mult", m}});
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& r : rows) den.push_back(std::move(r.second));
  return Json{{"numerator", poly_to_json(f.numerator())}, {"denominator", den}, {"text", f.str()}};
}

IntersectionTable surface_table_from_json(const Json& j, int n, int r) {
  check_keys(j, {"name", "line_degrees"}, "surface");
  const std::string name = j.value("name", std::string());
  if (!j.contains("line_degrees") || !j["line_degrees"].is_array())
    throw SpecError("surface: 'line_degrees' must be an array");
  if (static_cast<int>(j["line_degrees"].size()) != r)
    throw SpecError("surface: need one line degree per rank of V");
  if (name == "projective_space" || name == "p2") {
    if (name == "p2" && n != 2) throw SpecError("surface p2 needs n = 2");
    std::vector<int> d;
    for (const auto& x : j["line_degrees"]) {
      if (!x.is_number_integer()) throw SpecError("surface: line degrees must be integers");
      d.push_back(x.get<int>());
    }
    return IntersectionTable::projective_space(n, d);
  }
  if (name == "p1xp1") {
    if (n != 2) throw SpecError("surface p1xp1 needs n = 2");
    std::vector<std::pair<int, int>> d;
    for (const auto& x : j["line_degrees"]) {
      if (!x.is_array() || x.size() != 2 || !x[0].is_number_integer() || !x[1].is_number_integer())
        throw SpecError("surface p1xp1: line degrees are pairs [a, b]");
      d.emplace_back(x[0].get<int>(), x[1].get<int>());
    }
    return IntersectionTable::p1xp1(d);
  }
  throw SpecError("surface: unknown name '" + name + "' (projective_space, p2, p1xp1)");
}

ParsedProblem problem_from_json(const Json& j) {
  check_keys(j, {"schema_version", "n", "k", "mode", "bundle", "phi", "class", "tangent_weights", "surface", "options"},
             "spec");
  if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion)
    throw SpecError("spec: schema_version must be " + std::to_string(kSchemaVersion));
  ParsedProblem out;
  ProblemSpec& s = out.spec;
  s.n = get_int(j, "n", "spec");
  s.k = get_int(j, "k", "spec");
  const std::string mode = j.value("mode", std::string("manifold"));
  if (mode == "manifold")
    s.mode = Mode::Manifold;
  else if (mode == "equivariant")
    s.mode = Mode::Equivariant;
  else
    throw SpecError("spec: mode must be manifold or equivariant");

  if (!j.contains("bundle")) throw SpecError("spec: missing 'bundle'");
  const Json& b = j["bundle"];
  check_keys(b, {"rank", "chern"}, "bundle");
  const int r = get_int(b, "rank", "bundle");
  if (r < 1) throw SpecError("bundle: rank must be >= 1");
  if (!b.contains("chern") || !b["chern"].is_array() || b["chern"].empty())
    throw SpecError("bundle: 'chern' must be [\"formal\"] or a list of weight expressions");
  if (b["chern"].size() == 1 && b["chern"][0] == "formal") {
    s.V = BundleSpec::formal(r);
  } else {
    std::vector<MultiPoly> w;
    for (const auto& x : b["chern"]) {
      if (!x.is_string()) throw SpecError("bundle: weights must be strings");
      w.push_back(parse_weight_expression(x.get<std::string>()));
    }
    if (static_cast<int>(w.size()) != r) throw SpecError("bundle: number of weights differs from rank");
    s.V = BundleSpec::explicit_weights(std::move(w));
  }

  if (j.contains("phi") == j.contains("class")) throw SpecError("spec: give exactly one of 'phi' or 'class'");
  if (j.contains("phi")) {
    if (!j["phi"].is_string()) throw SpecError("spec: 'phi' must be a string");
    try {
      s.phi = std::make_shared<PhiIntegrand>(parse_phi(j["phi"].get<std::string>()));
    } catch (const ParseError& e) {
      throw SpecError(std::string("phi: ") + e.what());
    }
  } else {
    s.phi = class_from_json(j["class"]);
  }

  if (j.contains("tangent_weights")) {
    if (!j["tangent_weights"].is_array()) throw SpecError("spec: 'tangent_weights' must be an array");
    for (const auto& x : j["tangent_weights"]) {
      if (!x.is_string()) throw SpecError("spec: tangent weights must be strings");
      s.tangent_weights.push_back(parse_weight_expression(x.get<std::string>()));
    }
  } else if (s.mode == Mode::Equivariant) {
    for (int i = 1; i <= s.n; ++i) s.tangent_weights.push_back(MultiPoly::var(VarRegistry::global().lambda(0, i)));
  }

  out.qtable = std::make_shared<QTable>();
  if (j.contains("options")) {
    const Json& o = j["options"];
    check_keys(o, {"prune", "convention", "q_poly", "threads", "per_factor_torus"}, "options");
    if (o.contains("prune")) {
      if (!o["prune"].is_boolean()) throw SpecError("options: 'prune' must be boolean");
      out.options.prune = o["prune"].get<bool>();
    }
    if (o.contains("convention")) out.options.convention = convention_from_string(o["convention"].get<std::string>());
    if (o.contains("threads")) out.options.threads = get_int(o, "threads", "options");
    if (o.contains("per_factor_torus")) out.options.per_factor_torus = o["per_factor_torus"].get<bool>();
    if (o.contains("q_poly")) {
      if (!o["q_poly"].is_object()) throw SpecError("options: 'q_poly' must map j to an expression");
      for (const auto& [key, val] : o["q_poly"].items()) {
        int jj = 0;
        try {
          jj = std::stoi(key);
        } catch (...) {
          throw SpecError("options: q_poly key '" + key + "' is not an integer");
        }
        if (!val.is_string()) throw SpecError("options: q_poly values must be strings");
        out.qtable->set_override(jj, val.get<std::string>());
      }
    }
  }
  out.options.qtable = out.qtable.get();

  if (j.contains("surface")) {
    if (s.mode != Mode::Manifold) throw SpecError("spec: 'surface' only applies to manifold mode");
    if (s.V.presentation != BundleSpec::Presentation::Formal) throw SpecError("spec: 'surface' needs a formal bundle");
    out.table = surface_table_from_json(j["surface"], s.n, s.V.rank);
    out.surface_name = j["surface"].value("name", std::string());
  }
  s.validate();
  return out;
}

Json universal_to_json(const UniversalIntegral& u, const JsonOptions& o) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = u.n;
  j["k"] = u.k;
  j["rank"] = u.r;
  j["mode"] = u.mode == Mode::Manifold ? "manifold" : "equivariant";
  j["convention"] = to_string(u.convention);
  j["notes"] = u.notes;
  Json terms = Json::array();
  for (const auto& t : u.terms) {
    Json jt;
    jt["partition"] = t.partition.str();
    jt["weight"] = to_string(t.weight);
    jt["value"] = poly_to_json(u.mode == Mode::Manifold ? t.value : t.residue);
    jt["pruned_monomials"] = t.pruned_monomials;
    terms.push_back(std::move(jt));
  }
  j["partitions"] = std::move(terms);
  if (u.mode == Mode::Manifold) {
    j["universal"] = poly_to_json(u.universal);
    j["universal_text"] = u.universal.str();
  } else {
    j["equivariant_total"] = rational_function_to_json(u.equivariant_total);
  }
  if (u.total) {
    j["total"] = to_string(*u.total);
    if (o.decimal) j["total_decimal_approx"] = decimal_text(*u.total);
  }
  return j;
}

Json residue_term_to_json(const RationalTerm& t) {
  auto& reg = VarRegistry::global();
  Json f = Json::array();
  for (const auto& d : t.factors) f.push_back(Json{{"form", poly_to_json(d.form.to_poly())}, {"mult", d.mult}});
  Json order = Json::array();
  for (VarId v : t.z_order) order.push_back(reg.info(v).name);
  return Json{{"numerator", poly_to_json(t.numerator)}, {"factors", f}, {"z_order", order}};
}

RationalTerm residue_term_from_json(const Json& j) {
  check_keys(j, {"schema_version", "numerator", "factors", "z_order"}, "residue term");
  RationalTerm t;
  if (!j.contains("numerator")) throw SpecError("residue term: missing 'numerator'");
  t.numerator = poly_from_json(j["numerator"]);
  if (!j.contains("z_order") || !j["z_order"].is_array()) throw SpecError("residue term: 'z_order' must be an array");
  for (const auto& x : j["z_order"]) {
    MultiPoly v = x.is_string() ? poly_from_json(x) : MultiPoly();
    if (v.size() != 1 || v.terms()[0].mono.size() != 1 || v.terms()[0].mono[0].second != 1 ||
        VarRegistry::global().info(v.terms()[0].mono[0].first).key.kind != VarKind::ResidueZ)
      throw SpecError("residue term: z_order entries must be z variables");
    t.z_order.push_back(v.terms()[0].mono[0].first);
  }
  if (!j.contains("factors") || !j["factors"].is_array()) throw SpecError("residue term: 'factors' must be an array");
  for (const auto& f : j["factors"]) {
    check_keys(f, {"form", "mult"}, "factor");
    if (!f.contains("form")) throw SpecError("factor: missing 'form'");
    MultiPoly p = poly_from_json(f["form"]);
    LinearForm lf;
    try {
      lf = LinearForm::from_poly(p);
    } catch (const std::exception& e) {
      throw SpecError(std::string("factor: ") + e.what());
    }
    t.factors.push_back({lf, f.contains("mult") ? get_int(f, "mult", "factor") : 1});
  }
  try {
    t.validate();
  } catch (const std::exception& e) {
    throw SpecError(std::string("residue term: ") + e.what());
  }
  return t;
}

Json series_to_json(const SeriesReport& s, const JsonOptions& o) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = s.n;
  j["rank"] = s.r;
  j["kmax"] = s.k_max;
  j["class"] = s.class_name;
  j["normalization"] =
      "direct: (1/k!) sum over set partitions with block weight (m-1)!; exponential: exp(sum_m R_m q^m / m)";
  Json coeffs = Json::array();
  for (int k = 0; k <= s.k_max; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    Json c;
    c["k"] = k;
    c["direct"] = poly_to_json(s.direct[ku]);
    c["exponential"] = poly_to_json(s.exp_pinned[ku]);
    c["exponential_literal_factorial"] = poly_to_json(s.exp_literal[ku]);
    if (k >= 1) c["connected"] = poly_to_json(s.connected[ku]);
    if (!s.direct_numbers.empty() && s.direct_numbers[ku]) {
      c["direct_value"] = to_string(*s.direct_numbers[ku]);
      c["exponential_value"] = to_string(*s.exp_numbers[ku]);
      if (o.decimal) c["direct_value_decimal_approx"] = decimal_text(*s.direct_numbers[ku]);
    }
    coeffs.push_back(std::move(c));
  }
  j["coefficients"] = std::move(coeffs);
  j["agreement"] = s.agree_pinned;
  j["agreement_literal_factorial"] = s.agree_literal;
  return j;
}

Json oracle_to_json(const OracleResult& r, const JsonOptions& o) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["fixed_point_count"] = r.fixed_point_count;
  j["value"] = r.number ? Json(to_string(*r.number)) : rational_function_to_json(r.value);
  if (r.number && o.decimal) j["value_decimal_approx"] = decimal_text(*r.number);
  if (!r.contributions.empty()) {
    Json pts = Json::array();
    for (const auto& c : r.contributions) {
      Json d = Json::array();
      for (const auto& y : c.diagrams) d.push_back(y.str());
      pts.push_back(Json{{"diagrams", d}, {"value", rational_function_to_json(c.value)}});
    }
    j["per_point_contributions"] = std::move(pts);
  }
  return j;
}

}  // namespace tautres
