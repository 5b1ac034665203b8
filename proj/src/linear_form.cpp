#include "tautres/linear_form.hpp"

#include <stdexcept>

namespace tautres {

static bool is_z(VarId v) { return VarRegistry::global().info(v).key.kind == VarKind::ResidueZ; }

LinearForm LinearForm::from_poly(const MultiPoly& p) {
  LinearForm f;
  std::vector<Term> rest;
  for (const auto& t : p.terms()) {
    int zcount = 0;
    for (const auto& [v, e] : t.mono)
      if (is_z(v)) zcount += e == 1 ? 1 : 100;
    if (zcount == 0) {
      rest.push_back(t);
    } else if (zcount == 1 && t.mono.size() == 1) {
      f.coeffs[t.mono[0].first] += t.coeff;
    } else {
      throw std::invalid_argument("not affine-linear in residue variables: " + p.str());
    }
  }
  f.constant = MultiPoly::from_terms(std::move(rest));
  return f;
}

MultiPoly LinearForm::to_poly() const {
  MultiPoly p = constant;
  for (const auto& [v, c] : coeffs) p += MultiPoly::var(v) * c;
  return p;
}

VarId LinearForm::leading(const std::map<VarId, int>& order_rank) const {
  int best = -1;
  VarId lead = 0;
  for (const auto& [v, c] : coeffs) {
    if (c == 0) continue;
    auto it = order_rank.find(v);
    if (it == order_rank.end()) throw std::invalid_argument("variable missing from z order: " + VarRegistry::global().info(v).name);
    if (it->second > best) {
      best = it->second;
      lead = v;
    }
  }
  if (best < 0) throw std::invalid_argument("linear form has no residue variable");
  return lead;
}

MultiPoly expand_inverse_linear(const LinearForm& omega, const std::map<VarId, int>& order_rank, int truncation) {
  if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  const VarId q = omega.leading(order_rank);
  const Rational a = omega.coeffs.at(q);
  LinearForm rest_form = omega;
  rest_form.coeffs.erase(q);
  const MultiPoly rest = rest_form.to_poly() * Rational(-1 / a);  // -rest/a
  MultiPoly out, power(1);
  for (int j = 0; j <= truncation; ++j) {
    out += power.shifted({{q, -(j + 1)}}) * Rational(1 / a);
    if (j < truncation) power *= rest;
  }
  return out;
}

}  // namespace tautres
