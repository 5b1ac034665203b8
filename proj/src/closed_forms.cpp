#include "tautres/closed_forms.hpp"

namespace tautres {

namespace {

void check(const ProblemSpec& spec, int k) {
  if (spec.k != k) throw SpecError("closed form for k=" + std::to_string(k) + " called with k=" + std::to_string(spec.k));
  spec.validate();
  if (spec.mode != Mode::Manifold) throw SpecError("closed forms are manifold-mode only");
}

std::vector<MultiPoly> thetas(int factor, int r) {
  auto& reg = VarRegistry::global();
  std::vector<MultiPoly> out;
  for (int t = 1; t <= r; ++t) out.push_back(MultiPoly::var(reg.theta(factor, t)));
  return out;
}

MultiPoly segre_inverse(int factor, int n, VarId z) {
  auto& reg = VarRegistry::global();
  MultiPoly s(1);
  for (int j = 1; j <= n; ++j) s += MultiPoly::var(reg.segre_x(factor, j)).shifted({{z, -j}});
  return s;
}

// Roots to Chern classes, then the (n,...,n) part.
MultiPoly finish(MultiPoly p, int factors, int n, int r) {
  auto& reg = VarRegistry::global();
  std::map<int, int> grade;
  for (int l = 1; l <= factors; ++l) {
    std::vector<VarId> b, c;
    for (int t = 1; t <= r; ++t) b.push_back(reg.theta(l, t)), c.push_back(reg.chern_v(l, t));
    p = symmetric_reduce(p, b, c);
    grade[l] = n;
  }
  return collapse_to_chern_numbers(p.graded_part(grade), factors);
}

// Res_{z=inf} F s_X(1/z) dz / z^{n+1} = -[z^{-1}](...)
MultiPoly one_variable_term(const std::vector<MultiPoly>& roots, const PhiIntegrand& phi, VarId z, int n) {
  const MultiPoly g = phi.on_roots(roots, 0) * segre_inverse(1, n, z);
  return -g.coefficient_of(z, n);
}

UniversalIntegral shell(const ProblemSpec& spec, Convention c) {
  UniversalIntegral u;
  u.n = spec.n;
  u.k = spec.k;
  u.r = spec.V.rank;
  u.convention = c;
  u.notes.push_back("closed form, convention=" + to_string(c));
  return u;
}

const PhiIntegrand& as_phi(const ProblemSpec& spec) {
  auto* p = dynamic_cast<const PhiIntegrand*>(spec.phi.get());
  if (!p) throw SpecError("closed forms take a Chern polynomial integrand");
  return *p;
}

}  // namespace

UniversalIntegral closed_form_k2(const ProblemSpec& spec, const IntersectionTable* table, Convention convention) {
  check(spec, 2);
  auto& reg = VarRegistry::global();
  const int n = spec.n, r = spec.V.rank;
  const auto& phi = as_phi(spec);
  const VarId z = reg.z(1, 1);

  auto th = thetas(1, r);
  std::vector<MultiPoly> roots = th;
  for (const auto& t : th) roots.push_back(t + MultiPoly::var(z));
  const MultiPoly deep = finish(one_variable_term(roots, phi, z, n), 1, n, r);

  auto th2 = thetas(2, r);
  std::vector<MultiPoly> roots2 = th;
  roots2.insert(roots2.end(), th2.begin(), th2.end());
  const MultiPoly prod = finish(phi.on_roots(roots2, 0), 2, n, r);

  UniversalIntegral u = shell(spec, convention);
  if (convention == Convention::Pinned)
    u.universal = (deep + prod) * Rational(1, 2);
  else
    u.universal = prod - deep;
  if (table) u.total = table->evaluate(u.universal);
  return u;
}

UniversalIntegral closed_form_k3(const ProblemSpec& spec, const IntersectionTable* table, Convention convention) {
  check(spec, 3);
  auto& reg = VarRegistry::global();
  const int n = spec.n, r = spec.V.rank;
  const auto& phi = as_phi(spec);
  const VarId z1 = reg.z(1, 1), z2 = reg.z(1, 2);
  auto th1 = thetas(1, r), th2 = thetas(2, r), th3 = thetas(3, r);

  // deepest term: (z1-z2) / ((z1 z2)^{n+1} (2 z1 - z2)), z2 dominant:
  // 1/(2z1 - z2) = -sum_j 2^j z1^j z2^{-j-1}
  std::vector<MultiPoly> roots = th1;
  for (const auto& t : th1) roots.push_back(t + MultiPoly::var(z1));
  for (const auto& t : th1) roots.push_back(t + MultiPoly::var(z2));
  const MultiPoly h = phi.on_roots(roots, 0) * (MultiPoly::var(z1) - MultiPoly::var(z2)) * segre_inverse(1, n, z1) *
                      segre_inverse(1, n, z2);
  std::vector<Term> acc;
  for (const auto& t : h.terms()) {
    const int a = mono_exponent(t.mono, z1), b = mono_exponent(t.mono, z2);
    const int j = b - n - 1;
    if (j < 0 || a + j != n) continue;
    Rational c = t.coeff;
    for (int i = 0; i < j; ++i) c *= 2;
    // one sign from the expansion, two orientation signs
    acc.push_back(Term{mono_without(mono_without(t.mono, z1), z2), -c});
  }
  const MultiPoly deep = finish(MultiPoly::from_terms(std::move(acc)), 1, n, r);

  std::vector<MultiPoly> mroots = th1;
  for (const auto& t : th1) mroots.push_back(t + MultiPoly::var(z1));
  mroots.insert(mroots.end(), th2.begin(), th2.end());
  const MultiPoly mixed = finish(one_variable_term(mroots, phi, z1, n), 2, n, r);

  std::vector<MultiPoly> proots = th1;
  proots.insert(proots.end(), th2.begin(), th2.end());
  proots.insert(proots.end(), th3.begin(), th3.end());
  const MultiPoly prod = finish(phi.on_roots(proots, 0), 3, n, r);

  UniversalIntegral u = shell(spec, convention);
  if (convention == Convention::Pinned)
    u.universal = (deep * Rational(2) + mixed * Rational(3) + prod) * Rational(1, 6);
  else
    u.universal = deep - mixed * Rational(3) + prod;
  if (table) u.total = table->evaluate(u.universal);
  return u;
}

}  // namespace tautres
