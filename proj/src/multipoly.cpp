#include "tautres/multipoly.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace tautres {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      if (a[i].second != 0) out.push_back(a[i]);
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      if (b[j].second != 0) out.push_back(b[j]);
      ++j;
    } else {
      const int e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

int mono_exponent(const Monomial& m, VarId v) {
  auto it = std::lower_bound(m.begin(), m.end(), v, [](const auto& p, VarId x) { return p.first < x; });
  return (it != m.end() && it->first == v) ? it->second : 0;
}

Monomial mono_without(const Monomial& m, VarId v) {
  Monomial out;
  out.reserve(m.size());
  for (const auto& p : m)
    if (p.first != v) out.push_back(p);
  return out;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& [v, e] : m) {
    h ^= (static_cast<std::size_t>(v) * 0x100000001b3ull + static_cast<std::size_t>(e + 1024)) + 0x9e3779b9 +
         (h << 6) + (h >> 2);
  }
  return h;
}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) terms_.push_back(Term{{}, c});
}

MultiPoly MultiPoly::var(VarId v, int exponent) {
  MultiPoly p;
  if (exponent == 0)
    p.terms_.push_back(Term{{}, 1});
  else
    p.terms_.push_back(Term{{{v, exponent}}, 1});
  return p;
}

MultiPoly MultiPoly::monomial(Monomial m, Rational c) {
  std::sort(m.begin(), m.end());
  Monomial merged;
  for (const auto& x : m) {
    if (!merged.empty() && merged.back().first == x.first)
      merged.back().second += x.second;
    else
      merged.push_back(x);
  }
  m = std::move(merged);
  std::erase_if(m, [](const auto& x) { return x.second == 0; });
  MultiPoly p;
  if (c != 0) p.terms_.push_back(Term{std::move(m), std::move(c)});
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  MultiPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }

Rational MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_[0].mono.empty()) return terms_[0].coeff;
  return 0;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

void MultiPoly::add_scaled(const MultiPoly& o, int sign) {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].mono < o.terms_[j].mono)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].mono < terms_[i].mono) {
      out.push_back(o.terms_[j++]);
      if (sign < 0) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = sign > 0 ? Rational(terms_[i].coeff + o.terms_[j].coeff) : Rational(terms_[i].coeff - o.terms_[j].coeff);
      if (c != 0) out.push_back(Term{std::move(terms_[i].mono), std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  add_scaled(o, 1);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  add_scaled(o, -1);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) return b * a.terms_[0].coeff;
  if (b.is_constant()) return a * b.terms_[0].coeff;
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  Rational prod;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      prod = x.coeff * y.coeff;
      auto [it, inserted] = acc.try_emplace(mono_mul(x.mono, y.mono), prod);
      if (!inserted) it->second += prod;
    }
  }
  MultiPoly p;
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) p.terms_.push_back(Term{m, std::move(c)});
  std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& s, const Term& t) { return s.mono < t.mono; });
  return p;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else if (c != 1) {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

bool operator<(const MultiPoly& a, const MultiPoly& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono) return a.terms_[i].mono < b.terms_[i].mono;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff < b.terms_[i].coeff;
  }
  return a.terms_.size() < b.terms_.size();
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result(1), base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::shifted(const Monomial& m) const {
  bool trivial = true;
  for (const auto& p : m) trivial = trivial && p.second == 0;
  if (trivial) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(Term{mono_mul(t.mono, m), t.coeff});
  return from_terms(std::move(out));
}

MultiPoly MultiPoly::coefficient_of(VarId var, int exponent) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (mono_exponent(t.mono, var) == exponent) out.push_back(Term{mono_without(t.mono, var), t.coeff});
  return from_terms(std::move(out));
}

std::map<int, MultiPoly> MultiPoly::split_by(VarId var) const {
  std::map<int, std::vector<Term>> buckets;
  for (const auto& t : terms_) buckets[mono_exponent(t.mono, var)].push_back(Term{mono_without(t.mono, var), t.coeff});
  std::map<int, MultiPoly> out;
  for (auto& [e, ts] : buckets) out.emplace(e, from_terms(std::move(ts)));
  return out;
}

bool MultiPoly::contains(VarId var) const {
  for (const auto& t : terms_)
    if (mono_exponent(t.mono, var) != 0) return true;
  return false;
}

int MultiPoly::max_exponent(VarId var) const {
  int m = INT_MIN;
  for (const auto& t : terms_) m = std::max(m, mono_exponent(t.mono, var));
  return m;
}

int MultiPoly::min_exponent(VarId var) const {
  int m = INT_MAX;
  for (const auto& t : terms_) m = std::min(m, mono_exponent(t.mono, var));
  return m;
}

std::vector<VarId> MultiPoly::variables() const {
  std::set<VarId> vs;
  for (const auto& t : terms_)
    for (const auto& p : t.mono) vs.insert(p.first);
  return {vs.begin(), vs.end()};
}

MultiPoly MultiPoly::substitute(const std::map<VarId, MultiPoly>& bindings) const {
  std::map<std::pair<VarId, int>, MultiPoly> powers;
  auto power = [&](VarId v, int e) -> const MultiPoly& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, bindings.at(v).pow(static_cast<unsigned>(e))).first;
    return it->second;
  };
  std::vector<Term> direct;
  MultiPoly result;
  for (const auto& t : terms_) {
    Monomial rest;
    MultiPoly factor(t.coeff);
    bool bound = false;
    for (const auto& [v, e] : t.mono) {
      if (bindings.count(v)) {
        if (e < 0)
          throw std::domain_error("cannot substitute into negative exponent of " + VarRegistry::global().info(v).name);
        factor *= power(v, e);
        bound = true;
      } else {
        rest.emplace_back(v, e);
      }
    }
    if (!bound) {
      direct.push_back(t);
    } else {
      result += factor.shifted(rest);
    }
  }
  result += from_terms(std::move(direct));
  return result;
}

MultiPoly MultiPoly::map_coefficients(const std::function<Rational(const Rational&)>& f) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(Term{t.mono, f(t.coeff)});
  return from_terms(std::move(out));
}

int weighted_degree(const Monomial& m) {
  auto& reg = VarRegistry::global();
  int d = 0;
  for (const auto& [v, e] : m) d += reg.info(v).degree * e;
  return d;
}

std::map<int, int> factor_degrees(const Monomial& m) {
  auto& reg = VarRegistry::global();
  std::map<int, int> out;
  for (const auto& [v, e] : m) {
    const auto& info = reg.info(v);
    if (!has_factor(info.key.kind) && info.key.kind != VarKind::ResidueZ) continue;
    out[info.key.group] += info.degree * e;
  }
  return out;
}

MultiPoly MultiPoly::graded_part(const std::map<int, int>& degrees) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    auto fd = factor_degrees(t.mono);
    bool ok = true;
    for (const auto& [f, d] : degrees) {
      auto it = fd.find(f);
      if ((it == fd.end() ? 0 : it->second) != d) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(t);
  }
  return from_terms(std::move(out));
}

bool MultiPoly::is_homogeneous(int* degree) const {
  if (terms_.empty()) {
    if (degree) *degree = 0;
    return true;
  }
  const int d0 = weighted_degree(terms_[0].mono);
  for (const auto& t : terms_)
    if (weighted_degree(t.mono) != d0) return false;
  if (degree) *degree = d0;
  return true;
}

int MultiPoly::max_weighted_degree() const {
  int m = INT_MIN;
  for (const auto& t : terms_) m = std::max(m, weighted_degree(t.mono));
  return m;
}

MultiPoly MultiPoly::weighted_degree_part(int degree) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (weighted_degree(t.mono) == degree) out.push_back(t);
  return from_terms(std::move(out));
}

std::string mono_str(const Monomial& m) {
  auto& reg = VarRegistry::global();
  std::string s;
  for (const auto& [v, e] : m) {
    if (!s.empty()) s += "*";
    s += reg.info(v).name;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    const bool neg = t.coeff < 0;
    const Rational a = neg ? Rational(-t.coeff) : t.coeff;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (t.mono.empty()) {
      s += to_string(a);
    } else {
      if (a != 1) s += to_string(a) + "*";
      s += mono_str(t.mono);
    }
  }
  return s;
}

}  // namespace tautres
