#include "tautres/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tautres/acceptance.hpp"
#include "tautres/genfun.hpp"
#include "tautres/json_io.hpp"
#include "tautres/oracle.hpp"
#include "tautres/positivity.hpp"
#include "tautres/residue.hpp"
#include "tautres/tautint.hpp"

namespace tautres {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw SpecError(what + ": '" + s + "' is not an integer");
  }
}

void apply_overrides(const RunConfig& c, EvalOptions& o, QTable& q) {
  if (c.prune) o.prune = *c.prune;
  if (c.convention) o.convention = convention_from_string(*c.convention);
  if (c.threads > 0) o.threads = c.threads;
  for (const auto& [j, expr] : c.q_poly) q.set_override(j, expr);
}

Json run_integrate(const RunConfig& c, const JsonOptions& jo) {
  if (c.input.empty()) throw SpecError("integrate: empty spec");
  ParsedProblem p = problem_from_json(parse_json_text(c.input));
  apply_overrides(c, p.options, *p.qtable);
  const auto u = p.spec.mode == Mode::Manifold
                     ? integrate_ghilb(p.spec, p.table ? &*p.table : nullptr, p.options)
                     : integrate_equivariant(p.spec, p.options);
  Json j = universal_to_json(u, jo);
  if (!p.qtable->overrides().empty()) {
    Json q = Json::object();
    for (const auto& [jj, expr] : p.qtable->overrides()) q[std::to_string(jj)] = expr;
    j["q_poly_overrides"] = q;
  }
  if (p.table) j["surface"] = p.surface_name;
  return j;
}

std::vector<MultiPoly> affine_weights(const std::string& s) {
  std::vector<MultiPoly> w;
  for (const auto& part : split(s, ',')) w.push_back(parse_weight_expression(part));
  if (w.empty()) throw SpecError("--bundle: need at least one weight");
  return w;
}

ToricSurface surface_chart(const std::string& name, const std::string& bundle) {
  if (name == "p2") {
    std::vector<int> d;
    for (const auto& x : split(bundle, ',')) d.push_back(to_int(x, "--bundle"));
    if (d.empty()) throw SpecError("--bundle: give line degrees, e.g. 1 or 1,2");
    return projective_plane_chart(d);
  }
  if (name == "p1xp1") {
    std::vector<std::pair<int, int>> d;
    for (const auto& x : split(bundle, ',')) {
      const auto ab = split(x, ':');
      if (ab.size() != 2) throw SpecError("--bundle: p1xp1 degrees are a:b pairs");
      d.emplace_back(to_int(ab[0], "--bundle"), to_int(ab[1], "--bundle"));
    }
    if (d.empty()) throw SpecError("--bundle: give degree pairs, e.g. 1:0,0:1");
    return p1xp1_chart(d);
  }
  if (name == "affine") return affine_plane_chart(affine_weights(bundle));
  throw SpecError("--surface must be p2, p1xp1 or affine");
}

Json run_oracle(const RunConfig& c, const JsonOptions& jo) {
  if (c.phi.empty()) throw SpecError("oracle: --phi is required");
  const ToricSurface s = surface_chart(c.surface, c.bundle);
  std::shared_ptr<const Integrand> phi;
  if (c.phi == "segre")
    phi = std::make_shared<MultiplicativeIntegrand>(MultiplicativeIntegrand::segre());
  else if (c.phi == "chern")
    phi = std::make_shared<MultiplicativeIntegrand>(MultiplicativeIntegrand::chern());
  else
    try {
      phi = std::make_shared<PhiIntegrand>(parse_phi(c.phi));
    } catch (const ParseError& e) {
      throw SpecError(std::string("--phi: ") + e.what());
    }
  const auto r = ab_integrate(s, c.k, *phi, c.threads, c.contributions);
  Json j = oracle_to_json(r, jo);
  j["surface"] = s.name;
  j["k"] = c.k;
  j["phi"] = phi->describe();
  return j;
}

Json run_series(const RunConfig& c, const JsonOptions& jo) {
  std::unique_ptr<MultiplicativeIntegrand> cls;
  if (c.series_class == "segre") {
    cls = std::make_unique<MultiplicativeIntegrand>(MultiplicativeIntegrand::segre());
  } else if (c.series_class == "chern") {
    cls = std::make_unique<MultiplicativeIntegrand>(MultiplicativeIntegrand::chern());
  } else if (c.series_class == "custom-json") {
    const Json j = parse_json_text(c.class_json);
    if (!j.is_object() || !j.contains("coefficients") || !j["coefficients"].is_array() || j["coefficients"].empty())
      throw SpecError("custom class: expected {\"name\": ..., \"coefficients\": [1, a_1, ...]}");
    std::vector<Rational> a;
    for (const auto& x : j["coefficients"]) a.push_back(x.is_string() ? parse_rational(x.get<std::string>())
                                                                     : Rational(x.get<long>()));
    if (a[0] != 1) throw SpecError("custom class: a_0 must be 1");
    cls = std::make_unique<MultiplicativeIntegrand>(j.value("name", std::string("custom")), a);
  } else {
    throw SpecError("--class must be segre, chern or custom-json");
  }
  if (c.n < 0 || c.rank < 1 || c.kmax < 1) throw SpecError("series: need n >= 0, rank >= 1, kmax >= 1");
  EvalOptions o;
  QTable q;
  o.qtable = &q;
  apply_overrides(c, o, q);
  std::optional<IntersectionTable> table;
  if (!c.surface.empty()) {
    Json sj;
    sj["name"] = c.surface;
    Json d = Json::array();
    for (const auto& x : split(c.bundle, ',')) {
      const auto ab = split(x, ':');
      if (ab.size() == 2)
        d.push_back(Json::array({to_int(ab[0], "--bundle"), to_int(ab[1], "--bundle")}));
      else
        d.push_back(to_int(x, "--bundle"));
    }
    sj["line_degrees"] = d;
    table = surface_table_from_json(sj, c.n, c.rank);
  }
  const auto rep = series_coefficients(*cls, c.n, c.rank, c.kmax, table ? &*table : nullptr, o);
  Json j = series_to_json(rep, jo);
  if (!c.surface.empty()) j["surface"] = c.surface;
  return j;
}

Json run_residue(const RunConfig& c, const JsonOptions&) {
  if (c.input.empty()) throw SpecError("residue: empty term");
  const Json in = parse_json_text(c.input);
  const RationalTerm t = residue_term_from_json(in);
  ResidueReport report;
  const MultiPoly r = iterated_residue(t, &report);
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["term"] = residue_term_to_json(t);
  j["residue"] = poly_to_json(r);
  j["residue_text"] = r.str();
  Json b = Json::array();
  for (const auto& x : report.bounds)
    b.push_back(Json{{"variable", VarRegistry::global().info(x.var).name}, {"truncation", x.truncation}});
  j["truncation_bounds"] = b;
  j["vanishing_precheck"] = vanishing_precheck(t);
  if (c.bruteforce_truncation >= 0) {
    const MultiPoly bf = iterated_residue_bruteforce(t, c.bruteforce_truncation);
    j["bruteforce"] = poly_to_json(bf);
    j["bruteforce_agrees"] = bf == r;
  }
  return j;
}

Json run_positivity(const RunConfig& c, const JsonOptions&) {
  PositivityScan scan;
  scan.n_values = c.n_values;
  scan.k_values = c.k_values;
  scan.r_values = c.r_values;
  scan.phis = c.phis;
  scan.monomial_cap = c.monomial_cap;
  for (int v : scan.n_values)
    if (v < 1) throw SpecError("positivity: n must be >= 1");
  for (int v : scan.k_values)
    if (v < 1) throw SpecError("positivity: k must be >= 1");
  for (int v : scan.r_values)
    if (v < 1) throw SpecError("positivity: r must be >= 1");
  EvalOptions o;
  QTable q;
  o.qtable = &q;
  apply_overrides(c, o, q);
  const auto rep = positivity_scan(scan, o);
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back(Json{{"n", r.n},
                        {"k", r.k},
                        {"r", r.r},
                        {"phi", r.phi},
                        {"coefficient", to_string(r.coefficient)},
                        {"monomial", r.monomial},
                        {"sign", r.sign > 0 ? "+" : (r.sign < 0 ? "-" : "0")}});
  return Json{{"schema_version", kSchemaVersion},
              {"rows", rows},
              {"negative_coefficients", rep.negative},
              {"basis", "Chern numbers N[m] = int_X m for monomials m in c_i(V), s_j(X)"}};
}

Json run_selftest(const RunConfig& c, std::ostream& err, bool* all_pass) {
  AcceptanceOptions o;
  o.threads = c.threads;
  o.on_result = [&](const CriterionResult& r) { err << format_result_line(r) << std::endl; };
  const auto results = run_acceptance(o);
  Json rows = Json::array();
  *all_pass = true;
  for (const auto& r : results) {
    *all_pass = *all_pass && r.passed;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
    rows.push_back(Json{{"criterion", r.id},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"seconds", secs},
                        {"budget_seconds", r.budget_seconds},
                        {"detail", r.detail}});
  }
  return Json{{"schema_version", kSchemaVersion}, {"criteria", rows}, {"all_passed", *all_pass}};
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  JsonOptions jo;
  jo.decimal = c.decimal;
  int code = 0;
  Json result;
  try {
    switch (c.command) {
      case Command::Integrate: result = run_integrate(c, jo); break;
      case Command::Series: result = run_series(c, jo); break;
      case Command::Oracle: result = run_oracle(c, jo); break;
      case Command::Residue: result = run_residue(c, jo); break;
      case Command::Positivity: result = run_positivity(c, jo); break;
      case Command::Selftest: {
        bool ok = false;
        result = run_selftest(c, err, &ok);
        code = ok ? 0 : 3;
        break;
      }
    }
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const AsymmetryError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  const std::string text = dump_json(result);
  if (c.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) {
      err << "cannot write " << c.out_path << "\n";
      return 2;
    }
    f << text;
  }
  return code;
}

namespace {

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw SpecError("cannot read " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

void add_common(CLI::App* sub, RunConfig& c, std::vector<std::string>& qpoly, std::string& conv) {
  sub->add_option("--out,-o", c.out_path, "Write JSON here instead of stdout");
  sub->add_flag("--decimal", c.decimal, "Add labeled decimal approximations");
  sub->add_option("--threads", c.threads, "Worker threads (default: TAUTRES_THREADS or all cores)");
  sub->add_option("--q-poly", qpoly, "Override Q_j, as j=expression in z1..zj (repeatable)");
  sub->add_option("--convention", conv, "pinned (default) or as_printed");
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Tautological integrals over Hilbert schemes of points via iterated residues"};
  app.require_subcommand(1);
  RunConfig c;
  std::vector<std::string> qpoly;
  std::string conv, spec_path, term_path, ns, ks, rs;
  bool prune = false, no_prune = false;

  auto* integ = app.add_subcommand("integrate", "Evaluate a JSON problem spec");
  integ->add_option("spec", spec_path, "Spec file, '-' or empty for stdin");
  integ->add_flag("--prune", prune, "Drop provably vanishing numerator terms first");
  integ->add_flag("--no-prune", no_prune, "Disable pruning even if the spec enables it");
  add_common(integ, c, qpoly, conv);

  auto* series = app.add_subcommand("series", "Generating series of a multiplicative class");
  series->add_option("--class", c.series_class, "segre, chern or custom-json");
  series->add_option("--class-json", c.class_json, "Custom class {\"name\", \"coefficients\": [1, a1, ...]}");
  series->add_option("--kmax", c.kmax, "Highest coefficient");
  series->add_option("--n", c.n, "Dimension of X");
  series->add_option("--rank", c.rank, "Rank of V");
  series->add_option("--surface", c.surface, "Also evaluate on projective_space, p2 or p1xp1");
  series->add_option("--bundle", c.bundle, "Line degrees for --surface");
  series->add_flag("--prune", prune, "Drop provably vanishing numerator terms first");
  add_common(series, c, qpoly, conv);

  auto* oracle = app.add_subcommand("oracle", "Localization sum over monomial-ideal fixed points");
  oracle->add_option("--surface", c.surface, "p2, p1xp1 or affine")->required();
  oracle->add_option("--k", c.k, "Number of points")->required();
  oracle->add_option("--bundle", c.bundle, "p2: 1,2  p1xp1: 1:0,0:1  affine: weights in lambda1, lambda2")->required();
  oracle->add_option("--phi", c.phi, "Integrand in c1, c2, ... (or segre, chern)")->required();
  oracle->add_flag("--contributions", c.contributions, "Include per fixed point values");
  add_common(oracle, c, qpoly, conv);

  auto* residue = app.add_subcommand("residue", "Iterated residue of a JSON term");
  residue->add_option("term", term_path, "Term file, '-' or empty for stdin");
  residue->add_option("--bruteforce", c.bruteforce_truncation, "Also expand every factor to this order");
  add_common(residue, c, qpoly, conv);

  auto* pos = app.add_subcommand("positivity", "Sign scan of universal polynomial coefficients");
  pos->add_option("--n", ns, "Dimensions, comma separated")->default_str("1");
  pos->add_option("--k", ks, "Numbers of points, comma separated")->default_str("1,2");
  pos->add_option("--r", rs, "Ranks, comma separated")->default_str("1");
  pos->add_option("--phi", c.phis, "Integrands (repeatable); default: Chern monomials of degree nk");
  pos->add_option("--cap", c.monomial_cap, "Chern monomials per (n,k,r) when --phi is absent");
  pos->add_flag("--prune", prune, "Drop provably vanishing numerator terms first");
  add_common(pos, c, qpoly, conv);

  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  add_common(self, c, qpoly, conv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    for (const auto& q : qpoly) {
      const auto eq = q.find('=');
      if (eq == std::string::npos) throw SpecError("--q-poly expects j=expression");
      c.q_poly.emplace_back(to_int(q.substr(0, eq), "--q-poly"), q.substr(eq + 1));
    }
    if (!conv.empty()) c.convention = conv;
    if (prune) c.prune = true;
    if (no_prune) c.prune = false;
    auto ints = [](const std::string& s, std::vector<int>& into, const char* what) {
      if (s.empty()) return;
      into.clear();
      for (const auto& x : split(s, ',')) into.push_back(to_int(x, what));
    };
    ints(ns, c.n_values, "--n");
    ints(ks, c.k_values, "--k");
    ints(rs, c.r_values, "--r");
    if (*integ) {
      c.command = Command::Integrate;
      c.input = read_input(spec_path);
    } else if (*series) {
      c.command = Command::Series;
    } else if (*oracle) {
      c.command = Command::Oracle;
    } else if (*residue) {
      c.command = Command::Residue;
      c.input = read_input(term_path);
    } else if (*pos) {
      c.command = Command::Positivity;
    } else {
      c.command = Command::Selftest;
    }
  } catch (const SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  }
  return run(c, std::cout, std::cerr);
}

}  // namespace tautres
