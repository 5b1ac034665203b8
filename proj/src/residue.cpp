#include "tautres/residue.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <stdexcept>

#include "tautres/rational_function.hpp"

namespace tautres {

namespace {

std::map<VarId, int> ranks(const std::vector<VarId>& order) {
  std::map<VarId, int> r;
  for (std::size_t i = 0; i < order.size(); ++i) r[order[i]] = static_cast<int>(i);
  return r;
}

bool is_pure_monomial(const LinearForm& f) { return f.constant.is_zero() && f.coeffs.size() == 1; }

// Fold a*z factors into the numerator as a^-m z^-m.
void fold_monomials(MultiPoly& num, std::vector<DenFactor>& factors) {
  std::vector<DenFactor> keep;
  for (auto& f : factors) {
    if (is_pure_monomial(f.form)) {
      const auto& [v, a] = *f.form.coeffs.begin();
      Rational inv = 1;
      for (int i = 0; i < f.mult; ++i) inv /= a;
      num = num.shifted({{v, -f.mult}}) * inv;
    } else {
      keep.push_back(std::move(f));
    }
  }
  factors = std::move(keep);
}

}  // namespace

void RationalTerm::validate() const {
  auto rk = ranks(z_order);
  if (rk.size() != z_order.size()) throw std::invalid_argument("z_order has duplicates");
  auto& reg = VarRegistry::global();
  for (VarId v : numerator.variables())
    if (reg.info(v).key.kind == VarKind::ResidueZ && !rk.count(v))
      throw std::invalid_argument("numerator variable " + reg.info(v).name + " missing from z_order");
  for (const auto& f : factors) {
    if (f.mult < 1) throw std::invalid_argument("factor multiplicity must be positive");
    if (!f.form.has_z()) throw std::invalid_argument("denominator factor without residue variable");
    for (const auto& [v, c] : f.form.coeffs) {
      if (c == 0) throw std::invalid_argument("zero coefficient stored in linear form");
      if (!rk.count(v)) throw std::invalid_argument("factor variable " + reg.info(v).name + " missing from z_order");
    }
    for (VarId v : f.form.constant.variables())
      if (reg.info(v).key.kind == VarKind::ResidueZ) throw std::invalid_argument("constant part involves z");
  }
}

MultiPoly iterated_residue(const RationalTerm& term, ResidueReport* report) {
  term.validate();
  const auto rk = ranks(term.z_order);
  MultiPoly num = term.numerator;
  std::vector<DenFactor> factors = term.factors;
  fold_monomials(num, factors);

  for (auto it = term.z_order.rbegin(); it != term.z_order.rend(); ++it) {
    const VarId v = *it;
    if (num.is_zero()) {
      if (report) report->bounds.push_back({v, -1});
      continue;
    }
    std::vector<DenFactor> led, rest;
    for (auto& f : factors) (f.form.leading(rk) == v ? led : rest).push_back(std::move(f));
    factors = std::move(rest);
    int M = 0;
    for (const auto& f : led) M += f.mult;
    const auto parts = num.split_by(v);
    const int E = parts.rbegin()->first;
    const int T = E + 1 - M;
    if (report) report->bounds.push_back({v, std::max(T, -1)});
    if (T < 0) return {};

    // S = prod_f a^-m (1 + rest/(a v))^-m as a series in 1/v, truncated at T.
    std::vector<MultiPoly> S(static_cast<std::size_t>(T) + 1);
    S[0] = MultiPoly(1);
    for (const auto& f : led) {
      const Rational a = f.form.coeffs.at(v);
      LinearForm rf = f.form;
      rf.coeffs.erase(v);
      const MultiPoly r = rf.to_poly() * Rational(1 / a);
      std::vector<MultiPoly> g(static_cast<std::size_t>(T) + 1);
      MultiPoly rp(1);
      Rational am = 1;
      for (int i = 0; i < f.mult; ++i) am /= a;
      for (int j = 0; j <= T; ++j) {
        g[static_cast<std::size_t>(j)] = rp * Rational(am * negative_binomial(static_cast<unsigned>(f.mult), static_cast<unsigned>(j)));
        if (j < T) rp *= r;
      }
      std::vector<MultiPoly> h(static_cast<std::size_t>(T) + 1);
      for (int i = 0; i <= T; ++i) {
        if (S[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; i + j <= T; ++j)
          if (!g[static_cast<std::size_t>(j)].is_zero())
            h[static_cast<std::size_t>(i + j)] += S[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(j)];
      }
      S = std::move(h);
    }
    MultiPoly next;
    for (const auto& [e, Ne] : parts) {
      const int J = e + 1 - M;
      if (J < 0 || J > T) continue;
      next += Ne * S[static_cast<std::size_t>(J)];
    }
    num = -next;
    fold_monomials(num, factors);
  }
  if (num.is_zero()) return num;
  if (!factors.empty()) throw std::logic_error("iterated_residue: unconsumed denominator factors");
  return num;
}

MultiPoly iterated_residue_bruteforce(const RationalTerm& term, int truncation) {
  term.validate();
  const auto rk = ranks(term.z_order);
  MultiPoly total = term.numerator;
  for (const auto& f : term.factors) {
    const MultiPoly inv = expand_inverse_linear(f.form, rk, truncation);
    for (int i = 0; i < f.mult; ++i) total *= inv;
  }
  // Full expansion is only valid when each factor's tail is small relative to
  // its leading variable, i.e. expansion in the nested regime |z_1| << ... << |z_d|.
  for (auto it = term.z_order.rbegin(); it != term.z_order.rend(); ++it) total = -total.coefficient_of(*it, -1);
  return total;
}

namespace {

struct VarProfile {
  std::vector<VarId> vars;
  std::vector<int> total_mult;   // multiplicity of factors containing z_l
  std::vector<bool> clean;       // no factor led by a higher variable involves z_l
};

VarProfile profile(const RationalTerm& term) {
  const auto rk = ranks(term.z_order);
  VarProfile p;
  p.vars = term.z_order;
  p.total_mult.assign(p.vars.size(), 0);
  p.clean.assign(p.vars.size(), true);
  for (const auto& f : term.factors) {
    const int lead = rk.at(f.form.leading(rk));
    for (const auto& [v, c] : f.form.coeffs) {
      const int l = rk.at(v);
      p.total_mult[static_cast<std::size_t>(l)] += f.mult;
      if (lead > l) p.clean[static_cast<std::size_t>(l)] = false;
    }
  }
  return p;
}

bool monomial_vanishes(const VarProfile& p, const std::vector<int>& exps) {
  for (std::size_t l = 0; l < p.vars.size(); ++l)
    if (p.clean[l] && exps[l] + 1 < p.total_mult[l]) return true;
  return false;
}

}  // namespace

bool vanishing_precheck(const RationalTerm& term) {
  term.validate();
  if (term.numerator.is_zero()) return true;
  const auto p = profile(term);
  for (std::size_t l = 0; l < p.vars.size(); ++l)
    if (p.clean[l] && term.numerator.max_exponent(p.vars[l]) + 1 < p.total_mult[l]) return true;
  return false;
}

RationalTerm prune_numerator(const RationalTerm& term, std::size_t* removed) {
  const auto p = profile(term);
  std::vector<Term> keep;
  std::size_t dropped = 0;
  std::vector<int> exps(p.vars.size());
  for (const auto& t : term.numerator.terms()) {
    for (std::size_t l = 0; l < p.vars.size(); ++l) exps[l] = mono_exponent(t.mono, p.vars[l]);
    if (monomial_vanishes(p, exps))
      ++dropped;
    else
      keep.push_back(t);
  }
  if (removed) *removed = dropped;
  RationalTerm out = term;
  out.numerator = MultiPoly::from_terms(std::move(keep));
  return out;
}

FlagSumResult flag_sum_to_residue_check(const MultiPoly& Q, const std::vector<VarId>& zs,
                                        const std::vector<MultiPoly>& lambdas) {
  const std::size_t d = zs.size(), m = lambdas.size();
  if (d > m) throw std::invalid_argument("flag sum needs d <= m");
  FlagSumResult res;

  // Left: sum over injections sigma: [d] -> [m].
  RationalFunction left;
  std::vector<std::size_t> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = i;
  // enumerate ordered d-prefixes; the tail order is irrelevant
  std::vector<std::size_t> pick(d);
  std::vector<bool> used(m, false);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == d) {
      std::map<VarId, MultiPoly> bind;
      for (std::size_t j = 0; j < d; ++j) bind[zs[j]] = lambdas[pick[j]];
      std::vector<MultiPoly> den;
      std::vector<bool> seen(m, false);
      for (std::size_t j = 0; j < d; ++j) {
        seen[pick[j]] = true;
        for (std::size_t i = 0; i < m; ++i)
          if (!seen[i]) den.push_back(lambdas[i] - lambdas[pick[j]]);
      }
      left += RationalFunction::quotient(Q.substitute(bind), den);
      return;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      used[i] = true;
      pick[pos] = i;
      rec(pos + 1);
      used[i] = false;
    }
  };
  rec(0);
  left.reduce();
  if (!left.is_polynomial()) throw std::logic_error("flag sum did not reduce to a polynomial");
  res.left = left.numerator();

  // Right: Res prod_{i<j}(z_i - z_j) Q / prod_i prod_j (lambda_j - z_i). With
  // the last variable dominant this is the Vandermonde orientation that makes
  // the identity hold; the reversed product differs by (-1)^(d(d-1)/2).
  RationalTerm t;
  t.z_order = zs;
  MultiPoly num = Q;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) num *= MultiPoly::var(zs[i]) - MultiPoly::var(zs[j]);
  t.numerator = num;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      LinearForm f;
      f.constant = lambdas[j];
      f.coeffs[zs[i]] = -1;
      t.factors.push_back({f, 1});
    }
  res.right = iterated_residue(t);
  return res;
}

}  // namespace tautres
