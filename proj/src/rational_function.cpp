#include "tautres/rational_function.hpp"

#include <stdexcept>

namespace tautres {

namespace {

// Scale so the first term has coefficient 1; returns the scale removed.
Rational make_primitive(MultiPoly& f) {
  if (f.is_zero()) throw std::domain_error("zero denominator factor");
  const Rational c = f.terms().front().coeff;
  f *= Rational(1 / c);
  return c;
}

}  // namespace

bool divide_exact_linear(const MultiPoly& p, const MultiPoly& linear, MultiPoly* quotient) {
  for (const auto& t : linear.terms())
    if (t.mono.size() > 1 || (t.mono.size() == 1 && t.mono[0].second != 1))
      throw std::invalid_argument("divisor is not linear: " + linear.str());
  // leading variable: the largest VarId appearing
  auto vars = linear.variables();
  if (vars.empty()) throw std::invalid_argument("divisor is constant");
  const VarId x = vars.back();
  const Rational c = linear.coefficient_of(x, 1).constant_term();
  MultiPoly q, r = p;
  while (!r.is_zero()) {
    const int e = r.max_exponent(x);
    if (e <= 0) break;
    MultiPoly lead = r.coefficient_of(x, e).shifted({{x, e - 1}}) * Rational(1 / c);
    q += lead;
    r -= lead * linear;
  }
  if (!r.is_zero()) return false;
  if (quotient) *quotient = std::move(q);
  return true;
}

RationalFunction RationalFunction::quotient(MultiPoly numerator, const std::vector<MultiPoly>& linear_factors) {
  RationalFunction f(std::move(numerator));
  for (const auto& l : linear_factors) f.divide_linear(l, 1);
  return f;
}

void RationalFunction::divide_linear(const MultiPoly& factor, int mult) {
  MultiPoly f = factor;
  const Rational c = make_primitive(f);
  for (int i = 0; i < mult; ++i) num_ *= Rational(1 / c);
  den_[f] += mult;
}

MultiPoly RationalFunction::denominator_poly() const {
  MultiPoly d(1);
  for (const auto& [f, m] : den_) d *= f.pow(static_cast<unsigned>(m));
  return d;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.num_.is_zero()) return *this;
  if (num_.is_zero()) return *this = o;
  std::map<MultiPoly, int> lcm = den_;
  for (const auto& [f, m] : o.den_) lcm[f] = std::max(lcm[f], m);
  auto lift = [&](const RationalFunction& x) {
    MultiPoly n = x.num_;
    for (const auto& [f, m] : lcm) {
      auto it = x.den_.find(f);
      const int have = it == x.den_.end() ? 0 : it->second;
      if (m > have) n *= f.pow(static_cast<unsigned>(m - have));
    }
    return n;
  };
  num_ = lift(*this) + lift(o);
  den_ = std::move(lcm);
  if (num_.is_zero()) den_.clear();
  return *this;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  RationalFunction r(a.num_ * b.num_);
  r.den_ = a.den_;
  for (const auto& [f, m] : b.den_) r.den_[f] += m;
  if (r.num_.is_zero()) r.den_.clear();
  return r;
}

void RationalFunction::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    MultiPoly q;
    while (it->second > 0 && divide_exact_linear(num_, it->first, &q)) {
      num_ = std::move(q);
      --it->second;
    }
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
}

bool RationalFunction::equals(const RationalFunction& o) const {
  return num_ * o.denominator_poly() == o.num_ * denominator_poly();
}

std::string RationalFunction::str() const {
  if (den_.empty()) return num_.str();
  std::string s = "(" + num_.str() + ") / (";
  bool first = true;
  for (const auto& [f, m] : den_) {
    if (!first) s += " * ";
    first = false;
    s += "(" + f.str() + ")";
    if (m != 1) s += "^" + std::to_string(m);
  }
  return s + ")";
}

}  // namespace tautres
