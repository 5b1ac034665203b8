#include "tautres/chern.hpp"

#include <algorithm>
#include <unordered_map>

namespace tautres {

int ChernExpr::max_index() const {
  auto& reg = VarRegistry::global();
  int m = 0;
  for (VarId v : expanded.variables()) m = std::max(m, reg.info(v).key.index);
  return m;
}

ChernExpr parse_phi(const std::string& source) {
  ChernExpr e;
  e.source = source;
  e.ast = parse_expression(source, {"c"});
  auto& reg = VarRegistry::global();
  e.expanded = evaluate_expression(*e.ast, [&](const std::string&, int i) { return MultiPoly::var(reg.taut(i)); });
  return e;
}

ChernExpr phi_from_poly(const MultiPoly& p) {
  auto& reg = VarRegistry::global();
  for (VarId v : p.variables())
    if (reg.info(v).key.kind != VarKind::TautClass) throw std::invalid_argument("integrand must be a polynomial in c_i");
  ChernExpr e;
  e.expanded = p;
  e.source = p.str();
  return e;
}

ChernExpr phi_monomial(const std::vector<int>& indices) {
  auto& reg = VarRegistry::global();
  MultiPoly p(1);
  for (int i : indices) p *= MultiPoly::var(reg.taut(i));
  return phi_from_poly(p);
}

std::vector<MultiPoly> segre_from_chern(const std::vector<MultiPoly>& c, int order) {
  std::vector<MultiPoly> s{MultiPoly(1)};
  for (int i = 1; i <= order; ++i) {
    MultiPoly si;
    for (int j = 1; j <= i && j <= static_cast<int>(c.size()); ++j)
      si -= c[static_cast<std::size_t>(j - 1)] * s[static_cast<std::size_t>(i - j)];
    s.push_back(std::move(si));
  }
  return s;
}

std::vector<MultiPoly> twist_roots(const std::vector<MultiPoly>& theta, const MultiPoly& z) {
  std::vector<MultiPoly> out;
  out.reserve(theta.size());
  for (const auto& t : theta) out.push_back(t + z);
  return out;
}

std::vector<MultiPoly> elementary_symmetric(const std::vector<MultiPoly>& roots, int upto) {
  std::vector<MultiPoly> e(static_cast<std::size_t>(upto) + 1);
  e[0] = MultiPoly(1);
  for (const auto& x : roots)
    for (int i = upto; i >= 1; --i)
      if (!e[static_cast<std::size_t>(i - 1)].is_zero()) e[static_cast<std::size_t>(i)] += e[static_cast<std::size_t>(i - 1)] * x;
  return e;
}

MultiPoly phi_eval_on_roots(const ChernExpr& phi, const std::vector<MultiPoly>& roots) {
  const int m = phi.max_index();
  if (m > static_cast<int>(roots.size()))
    throw std::invalid_argument("integrand uses c" + std::to_string(m) + " but the bundle has rank " +
                                std::to_string(roots.size()));
  const auto e = elementary_symmetric(roots, m);
  auto& reg = VarRegistry::global();
  std::map<VarId, MultiPoly> bind;
  for (int i = 1; i <= m; ++i) bind[reg.taut(i)] = e[static_cast<std::size_t>(i)];
  return phi.expanded.substitute(bind);
}

MultiPoly symmetric_reduce(const MultiPoly& p, const std::vector<VarId>& block, const std::vector<VarId>& targets) {
  auto& reg = VarRegistry::global();
  if (targets.size() < block.size()) throw std::invalid_argument("symmetric_reduce: need one target per root");
  for (std::size_t i = 0; i + 1 < block.size(); ++i) {
    const VarId a = block[i], b = block[i + 1];
    std::map<VarId, MultiPoly> swap{{a, MultiPoly::var(b)}, {b, MultiPoly::var(a)}};
    if (!(p.substitute(swap) == p))
      throw AsymmetryError(a, b, "polynomial not symmetric under " + reg.info(a).name + " <-> " + reg.info(b).name);
  }
  const auto e = elementary_symmetric([&] {
    std::vector<MultiPoly> r;
    for (VarId v : block) r.push_back(MultiPoly::var(v));
    return r;
  }(), static_cast<int>(block.size()));
  std::map<std::pair<std::size_t, int>, MultiPoly> epow;
  auto e_pow = [&](std::size_t i, int d) -> const MultiPoly& {
    auto key = std::make_pair(i, d);
    auto it = epow.find(key);
    if (it == epow.end()) it = epow.emplace(key, e[i].pow(static_cast<unsigned>(d))).first;
    return it->second;
  };
  auto block_exps = [&](const Monomial& m) {
    std::vector<int> x;
    for (VarId v : block) x.push_back(mono_exponent(m, v));
    return x;
  };
  MultiPoly rest = p, out;
  while (!rest.is_zero()) {
    std::vector<int> lead;
    for (const auto& t : rest.terms()) lead = std::max(lead, block_exps(t.mono));
    std::vector<Term> coeff_terms;
    for (const auto& t : rest.terms()) {
      if (block_exps(t.mono) != lead) continue;
      Monomial m;
      for (const auto& pr : t.mono)
        if (std::find(block.begin(), block.end(), pr.first) == block.end()) m.push_back(pr);
      coeff_terms.push_back(Term{std::move(m), t.coeff});
    }
    const MultiPoly c = MultiPoly::from_terms(std::move(coeff_terms));
    MultiPoly in_roots = c, in_targets = c;
    for (std::size_t i = 0; i < lead.size(); ++i) {
      const int d = lead[i] - (i + 1 < lead.size() ? lead[i + 1] : 0);
      if (d < 0) throw AsymmetryError(block[i], block[i + 1], "leading exponents not decreasing");
      if (d == 0) continue;
      in_roots *= e_pow(i + 1, d);
      in_targets *= MultiPoly::var(targets[i], d);
    }
    rest -= in_roots;
    out += in_targets;
  }
  return out;
}

MultiPoly mul_truncated(const MultiPoly& a, const MultiPoly& b, int max_degree) {
  std::vector<int> da, db;
  for (const auto& t : a.terms()) da.push_back(weighted_degree(t.mono));
  for (const auto& t : b.terms()) db.push_back(weighted_degree(t.mono));
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  for (std::size_t i = 0; i < da.size(); ++i)
    for (std::size_t j = 0; j < db.size(); ++j) {
      if (da[i] + db[j] > max_degree) continue;
      const Rational c = a.terms()[i].coeff * b.terms()[j].coeff;
      auto [it, ins] = acc.try_emplace(mono_mul(a.terms()[i].mono, b.terms()[j].mono), c);
      if (!ins) it->second += c;
    }
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [m, c] : acc) ts.push_back(Term{m, std::move(c)});
  return MultiPoly::from_terms(std::move(ts));
}

MultiPoly truncate_degree(const MultiPoly& p, int max_degree) {
  std::vector<Term> ts;
  for (const auto& t : p.terms())
    if (weighted_degree(t.mono) <= max_degree) ts.push_back(t);
  return MultiPoly::from_terms(std::move(ts));
}

MultiPoly PhiIntegrand::on_roots(const std::vector<MultiPoly>& roots, int /*degree*/) const {
  return phi_eval_on_roots(phi_, roots);
}

int PhiIntegrand::fixed_degree() const {
  int d = 0;
  if (!phi_.is_homogeneous(&d)) return -1;
  return d;
}

MultiplicativeIntegrand::MultiplicativeIntegrand(std::string name, std::vector<Rational> coeffs)
    : name_(std::move(name)), a_(std::move(coeffs)) {
  if (a_.empty() || a_[0] != 1) throw std::invalid_argument("multiplicative class must start with a_0 = 1");
}

MultiplicativeIntegrand MultiplicativeIntegrand::segre() {
  MultiplicativeIntegrand m("segre", {1});
  m.periodic_sign_ = true;
  return m;
}

MultiplicativeIntegrand MultiplicativeIntegrand::chern() { return MultiplicativeIntegrand("chern", {1, 1}); }

MultiPoly MultiplicativeIntegrand::on_roots(const std::vector<MultiPoly>& roots, int degree) const {
  auto coeff_at = [&](int i) -> Rational {
    if (periodic_sign_) return i % 2 == 0 ? 1 : -1;
    return coeff(static_cast<std::size_t>(i));
  };
  MultiPoly total(1);
  for (const auto& x : roots) {
    MultiPoly f(1), xp(1);
    for (int i = 1; i <= degree; ++i) {
      xp = mul_truncated(xp, x, degree);
      const Rational a = coeff_at(i);
      if (a != 0) f += xp * a;
    }
    total = mul_truncated(total, f, degree);
  }
  return total.weighted_degree_part(degree);
}

}  // namespace tautres
