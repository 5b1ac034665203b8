#include "tautres/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "tautres/closed_forms.hpp"
#include "tautres/genfun.hpp"
#include "tautres/json_io.hpp"
#include "tautres/oracle.hpp"
#include "tautres/positivity.hpp"
#include "tautres/tautint.hpp"

namespace tautres {

namespace {

using Clock = std::chrono::steady_clock;

ChernExpr random_phi(std::mt19937& rng, int degree, int max_index) {
  auto& reg = VarRegistry::global();
  std::uniform_int_distribution<int> count(1, 3), coeff(-3, 3);
  MultiPoly p;
  while (p.is_zero()) {
    for (int t = count(rng); t > 0; --t) {
      MultiPoly m(1);
      for (int left = degree; left > 0;) {
        std::uniform_int_distribution<int> part(1, std::min(left, max_index));
        const int i = part(rng);
        m *= MultiPoly::var(reg.taut(i));
        left -= i;
      }
      int c = 0;
      while (c == 0) c = coeff(rng);
      p += m * Rational(c);
    }
  }
  return phi_from_poly(p);
}

ProblemSpec manifold_spec(int n, int k, int r, std::shared_ptr<const Integrand> phi) {
  ProblemSpec s;
  s.n = n;
  s.k = k;
  s.V = BundleSpec::formal(r);
  s.phi = std::move(phi);
  return s;
}

// Partition values and the universal polynomial only (no pruning counters).
std::string result_bytes(const UniversalIntegral& u) {
  Json j;
  j["universal"] = poly_to_json(u.universal);
  Json parts = Json::array();
  for (const auto& t : u.terms) parts.push_back(Json{{"p", t.partition.str()}, {"v", poly_to_json(t.value)}});
  j["partitions"] = parts;
  return j.dump();
}

// Degree-n-per-factor check on a partition value.
bool per_factor_degree_n(const MultiPoly& value, int n, int factors) {
  auto& reg = VarRegistry::global();
  for (const auto& t : value.terms()) {
    std::vector<int> deg(static_cast<std::size_t>(factors) + 1, 0);
    for (const auto& [v, e] : t.mono) {
      const auto& info = reg.info(v);
      if (info.key.group < 1 || info.key.group > factors) return false;
      deg[static_cast<std::size_t>(info.key.group)] += info.degree * e;
    }
    for (int l = 1; l <= factors; ++l)
      if (deg[static_cast<std::size_t>(l)] != n) return false;
  }
  return true;
}

int term_degree(const RationalTerm& t) {
  int deg = 0;
  if (!t.numerator.is_homogeneous(&deg)) return INT32_MIN;
  for (const auto& f : t.factors) deg -= f.mult;
  return deg;
}

struct Harness {
  AcceptanceOptions opts;
  EvalOptions eval;
  // specs from criteria 2-4, rerun by 6 and 7
  std::vector<std::pair<ProblemSpec, std::string>> engine_runs;  // spec, unpruned result bytes
  std::size_t consistency_failures = 0;
  std::vector<std::string> consistency_messages;

  UniversalIntegral integrate(const ProblemSpec& spec, const IntersectionTable* table = nullptr) {
    try {
      auto u = integrate_ghilb(spec, table, eval);
      engine_runs.emplace_back(spec, result_bytes(u));
      return u;
    } catch (const ConsistencyError& e) {
      ++consistency_failures;
      consistency_messages.emplace_back(e.what());
      throw;
    }
  }
};

using Body = bool (*)(Harness&, std::string&);

bool criterion_k1(Harness& h, std::string& detail) {
  std::mt19937 rng(h.opts.seed + 1);
  int checked = 0;
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 2; ++r) {
      std::vector<int> degs;
      for (int i = 0; i < r; ++i) degs.push_back(i + 1);
      const auto table = IntersectionTable::projective_space(n, degs);
      auto& reg = VarRegistry::global();
      std::map<VarId, MultiPoly> to_v;
      for (int i = 1; i <= r; ++i) to_v[reg.taut(i)] = MultiPoly::var(reg.chern_v(0, i));
      for (int i = 0; i < 10; ++i) {
        const ChernExpr phi = random_phi(rng, n, r);
        const auto u = integrate_ghilb(manifold_spec(n, 1, r, std::make_shared<PhiIntegrand>(phi)), &table, h.eval);
        // degree-n part of Phi(V) integrated directly on X
        Rational expect = 0;
        const MultiPoly on_v = phi.expanded.substitute(to_v);
        for (const auto& t : on_v.terms()) expect += t.coeff * table.integrate(t.mono);
        if (!u.total || *u.total != expect) {
          detail = "n=" + std::to_string(n) + " r=" + std::to_string(r) + " phi=" + phi.str() + ": engine " +
                   (u.total ? to_string(*u.total) : "none") + " vs " + to_string(expect);
          return false;
        }
        ++checked;
      }
    }
  detail = std::to_string(checked) + " integrands";
  return true;
}

bool criterion_k2(Harness& h, std::string& detail) {
  std::mt19937 rng(h.opts.seed + 2);
  int checked = 0;
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 2; ++r)
      for (int i = 0; i < 10; ++i) {
        const auto spec = manifold_spec(n, 2, r, std::make_shared<PhiIntegrand>(random_phi(rng, 2 * n, 2 * r)));
        const auto a = h.integrate(spec);
        const auto b = closed_form_k2(spec, nullptr, h.eval.convention);
        if (!(a.universal == b.universal)) {
          detail = "n=" + std::to_string(n) + " r=" + std::to_string(r) + " phi=" + spec.phi->describe();
          return false;
        }
        ++checked;
      }
  detail = std::to_string(checked) + " integrands, universal polynomials equal";
  return true;
}

bool criterion_k3(Harness& h, std::string& detail) {
  std::mt19937 rng(h.opts.seed + 3);
  int checked = 0;
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i < 5; ++i) {
      const auto spec = manifold_spec(n, 3, 1, std::make_shared<PhiIntegrand>(random_phi(rng, 3 * n, 3)));
      const auto a = h.integrate(spec);
      const auto b = closed_form_k3(spec, nullptr, h.eval.convention);
      if (!(a.universal == b.universal)) {
        detail = "n=" + std::to_string(n) + " phi=" + spec.phi->describe();
        return false;
      }
      ++checked;
    }
  detail = std::to_string(checked) + " integrands, universal polynomials equal";
  return true;
}

bool criterion_oracle(Harness& h, std::string& detail) {
  int checked = 0;
  std::vector<std::pair<ToricSurface, IntersectionTable>> surfaces;
  for (int d = 1; d <= 3; ++d) surfaces.emplace_back(projective_plane_chart({d}), IntersectionTable::projective_plane({d}));
  for (int k = 2; k <= 4; ++k) {
    auto monos = chern_monomials(2 * k, k);
    if (monos.size() > 10) monos.resize(10);
    for (const auto& m : monos) {
      const ChernExpr phi = phi_monomial(m);
      const auto u = h.integrate(manifold_spec(2, k, 1, std::make_shared<PhiIntegrand>(phi)));
      for (int d = 1; d <= 3; ++d) {
        const auto& [surface, table] = surfaces[static_cast<std::size_t>(d - 1)];
        const Rational engine = table.evaluate(u.universal);
        const auto oracle = ab_integrate(surface, k, phi, h.opts.threads);
        if (!oracle.number || *oracle.number != engine) {
          detail = "P^2 O(" + std::to_string(d) + ") k=" + std::to_string(k) + " phi=" + phi.str() + ": engine " +
                   to_string(engine) + " oracle " + (oracle.number ? to_string(*oracle.number) : "none");
          return false;
        }
        ++checked;
      }
    }
  }
  detail = std::to_string(checked) + " (d, k, monomial) cases";
  return true;
}

bool criterion_flag(Harness& h, std::string& detail) {
  std::mt19937 rng(h.opts.seed + 5);
  auto& reg = VarRegistry::global();
  int checked = 0, nonzero = 0;
  for (int d = 1; d <= 3; ++d)
    for (int m = d; m <= 5; ++m) {
      std::vector<VarId> zs;
      for (int i = 1; i <= d; ++i) zs.push_back(reg.z(90, i));
      std::vector<MultiPoly> lambdas;
      for (int j = 1; j <= m; ++j) lambdas.push_back(MultiPoly::var(reg.lambda(0, j)));
      for (int t = 0; t < 20; ++t) {
        // random homogeneous Q of degree <= 6, from the flag dimension d(m-d) upwards
        std::uniform_int_distribution<int> degd(std::min(d * (m - d), 6), std::min(d * (m - d) + 2, 6)), coeff(-4, 4),
            var(0, d - 1);
        const int deg = degd(rng);
        MultiPoly Q;
        for (int s = 0; s < 4; ++s) {
          MultiPoly mono(1);
          for (int e = 0; e < deg; ++e) mono *= MultiPoly::var(zs[static_cast<std::size_t>(var(rng))]);
          Q += mono * Rational(coeff(rng));
        }
        const auto res = flag_sum_to_residue_check(Q, zs, lambdas);
        if (!res.left.is_zero()) ++nonzero;
        if (!(res.left == res.right)) {
          detail = "d=" + std::to_string(d) + " m=" + std::to_string(m) + " Q=" + Q.str();
          return false;
        }
        ++checked;
      }
    }
  (void)h;
  detail = std::to_string(checked) + " random Q (" + std::to_string(nonzero) + " with nonzero value)";
  return true;
}

bool criterion_degrees(Harness& h, std::string& detail) {
  if (h.consistency_failures > 0) {
    detail = std::to_string(h.consistency_failures) + " engine assertion failures: " + h.consistency_messages.front();
    return false;
  }
  std::size_t terms = 0;
  for (const auto& [spec, bytes] : h.engine_runs) {
    (void)bytes;
    for (const auto& p : enumerate_partitions(spec.k)) {
      const int s = static_cast<int>(p.blocks.size());
      const auto t = assemble_partition_term(spec, p.block_sizes(), h.eval);
      if (term_degree(t) != (spec.n + 1) * s - spec.k) {
        detail = "partition " + p.str() + " of k=" + std::to_string(spec.k) + " has degree " +
                 std::to_string(term_degree(t));
        return false;
      }
      ++terms;
    }
    const auto u = integrate_ghilb(spec, nullptr, h.eval);
    for (const auto& t : u.terms)
      if (!per_factor_degree_n(t.value, spec.n, static_cast<int>(t.partition.blocks.size()))) {
        detail = "partition value " + t.partition.str() + " not of degree n per factor";
        return false;
      }
  }
  detail = std::to_string(terms) + " partition terms over " + std::to_string(h.engine_runs.size()) +
           " specs, 0 assertion failures";
  return true;
}

bool criterion_pruning(Harness& h, std::string& detail) {
  EvalOptions pruned = h.eval;
  pruned.prune = true;
  std::size_t removed = 0;
  for (const auto& [spec, bytes] : h.engine_runs) {
    const auto u = integrate_ghilb(spec, nullptr, pruned);
    for (const auto& t : u.terms) removed += t.pruned_monomials;
    if (result_bytes(u) != bytes) {
      detail = "n=" + std::to_string(spec.n) + " k=" + std::to_string(spec.k) + " phi=" + spec.phi->describe();
      return false;
    }
  }
  detail = std::to_string(h.engine_runs.size()) + " specs byte-identical, " + std::to_string(removed) +
           " numerator monomials pruned";
  return true;
}

bool criterion_series(Harness& h, std::string& detail) {
  const auto rep = series_coefficients(MultiplicativeIntegrand::segre(), 2, 1, 4, nullptr, h.eval);
  detail = std::string("segre n=2 r=1 k<=4: exp(sum R_m q^m/m) ") + (rep.agree_pinned ? "agrees" : "differs") +
           ", exp(sum R_m q^m/m!) " + (rep.agree_literal ? "agrees" : "differs");
  return rep.agree_pinned;
}

// Reference table in LaTeX spelling; z_i and juxtaposition rewritten to the parser syntax.
std::string latex_to_expr(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '_') continue;
    const bool starts_factor = c == 'z' || c == '(';
    if (starts_factor && !out.empty()) {
      const char p = out.back();
      if (std::isdigit(static_cast<unsigned char>(p)) || p == ')') {
        // digit ends a coefficient, an index or an exponent; all are followed by a product here
        out += '*';
      }
    }
    out += c;
  }
  return out;
}

bool criterion_qtable(Harness& h, std::string& detail) {
  (void)h;
  const std::vector<std::pair<int, std::string>> printed = {
      {2, "1"},
      {3, "1"},
      {4, "2z_1+z_2-z_4"},
      {5, "(2z_1+z_2-z_5)(2z_1^2 +3z_1z_2-2z_1z_5+2z_2z_3-z_2z_4-z_2z_5-z_3z_4+z_4z_5)"},
  };
  auto& reg = VarRegistry::global();
  for (const auto& [j, tex] : printed) {
    std::string expr = latex_to_expr(tex);
    expr.erase(std::remove(expr.begin(), expr.end(), ' '), expr.end());
    if (q_polynomial_text(j) != expr) {
      detail = "Q_" + std::to_string(j) + ": table '" + q_polynomial_text(j) + "' vs printed '" + expr + "'";
      return false;
    }
    std::vector<VarId> zs;
    for (int i = 1; i <= j; ++i) zs.push_back(reg.z(91, i));
    const auto ast = parse_expression(expr, {"z"});
    const MultiPoly p = evaluate_expression(*ast, [&](const std::string&, int i) {
      return MultiPoly::var(zs[static_cast<std::size_t>(i - 1)]);
    });
    if (!(q_polynomial(j, zs) == p)) {
      detail = "Q_" + std::to_string(j) + " polynomial differs";
      return false;
    }
  }
  detail = "Q_2..Q_5 match";
  return true;
}

bool criterion_orientation(Harness& h, std::string& detail) {
  (void)h;
  auto& reg = VarRegistry::global();
  for (int d = 1; d <= 3; ++d) {
    RationalTerm t;
    for (int i = 1; i <= d; ++i) {
      t.z_order.push_back(reg.z(92, i));
      LinearForm f;
      f.coeffs[reg.z(92, i)] = 1;
      t.factors.push_back({f, 1});
    }
    t.numerator = MultiPoly(1);
    const MultiPoly want(d % 2 == 0 ? 1 : -1);
    if (!(iterated_residue(t) == want)) {
      detail = "Res 1/(z_1...z_" + std::to_string(d) + ") = " + iterated_residue(t).str();
      return false;
    }
    // monomial integrands: z^a / z^(a+1) per variable, and a non-residue monomial
    RationalTerm u = t;
    for (auto& f : u.factors) f.mult = 3;
    Monomial m;
    for (VarId z : u.z_order) m.emplace_back(z, 2);
    u.numerator = MultiPoly::monomial(m, 5);
    if (!(iterated_residue(u) == want * Rational(5))) {
      detail = "monomial integrand, d=" + std::to_string(d);
      return false;
    }
    u.numerator = MultiPoly::monomial({{u.z_order[0], 1}});
    if (!iterated_residue(u).is_zero()) {
      detail = "z^1/z^3 gave nonzero residue";
      return false;
    }
  }
  detail = "Res dz/z = -1, orientation (-1)^d for d<=3";
  return true;
}

}  // namespace

std::string format_result_line(const CriterionResult& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%7.2fs / %gs", r.seconds, r.budget_seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + " [" + r.name + "] " + buf +
         " : " + r.detail;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  Harness h;
  h.opts = opts;
  h.eval.threads = opts.threads;
  struct Entry {
    int id;
    const char* name;
    double budget;
    Body body;
  };
  const std::vector<Entry> entries = {
      {1, "k=1 reduction", 1, criterion_k1},
      {2, "closed form k=2", 10, criterion_k2},
      {3, "closed form k=3", 60, criterion_k3},
      {4, "P^2 localization oracle", 600, criterion_oracle},
      {5, "flag sum vs residue", 30, criterion_flag},
      {6, "degree bookkeeping", 600, criterion_degrees},
      {7, "pruning neutrality", 670, criterion_pruning},
      {8, "exponential formula", 300, criterion_series},
      {9, "Q table", 1, criterion_qtable},
      {10, "residue orientation", 1, criterion_orientation},
  };
  std::vector<CriterionResult> out;
  for (const auto& e : entries) {
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    r.budget_seconds = e.budget;
    const auto t0 = Clock::now();
    try {
      r.passed = e.body(h, r.detail);
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.passed && r.seconds > r.budget_seconds) {
      r.passed = false;
      r.detail += " (over time budget)";
    }
    if (opts.on_result) opts.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tautres
