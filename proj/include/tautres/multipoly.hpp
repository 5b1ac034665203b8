#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tautres/rational.hpp"
#include "tautres/var_registry.hpp"

namespace tautres {

// Sparse exponent vector: (variable, nonzero exponent) pairs sorted by VarId.
using Monomial = std::vector<std::pair<VarId, int>>;

Monomial mono_mul(const Monomial& a, const Monomial& b);
int mono_exponent(const Monomial& m, VarId v);
Monomial mono_without(const Monomial& m, VarId v);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(int c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  MultiPoly(const Rational& c);                 // NOLINT(google-explicit-constructor)
  static MultiPoly var(VarId v, int exponent = 1);
  static MultiPoly monomial(Monomial m, Rational c = 1);
  // Build from arbitrary (possibly repeated, possibly zero) terms.
  static MultiPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator<(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned e) const;
  // Multiply every term by a monomial (exponents may go negative for z variables).
  MultiPoly shifted(const Monomial& m) const;

  // Laurent coefficient of var^exponent, as a var-free polynomial.
  MultiPoly coefficient_of(VarId var, int exponent) const;
  // Group by exponent of var: exponent -> var-free coefficient.
  std::map<int, MultiPoly> split_by(VarId var) const;
  bool contains(VarId var) const;
  int max_exponent(VarId var) const;  // INT_MIN for zero polynomial / absent var treated as 0
  int min_exponent(VarId var) const;
  std::vector<VarId> variables() const;

  // Simultaneous substitution; throws if a bound variable has a negative exponent.
  MultiPoly substitute(const std::map<VarId, MultiPoly>& bindings) const;
  MultiPoly map_coefficients(const std::function<Rational(const Rational&)>& f) const;

  // Terms whose per-factor weighted degree equals the requested value for every
  // listed factor. Variables without a factor label are ignored.
  MultiPoly graded_part(const std::map<int, int>& degrees) const;
  // Weighted degree of each term; empty optional if not homogeneous.
  bool is_homogeneous(int* degree = nullptr) const;
  int max_weighted_degree() const;
  MultiPoly weighted_degree_part(int degree) const;

  std::string str() const;

 private:
  std::vector<Term> terms_;  // sorted by mono, no zero coefficients
  void add_scaled(const MultiPoly& o, int sign);
};

int weighted_degree(const Monomial& m);
// Per-factor weighted degree of a monomial (variables with a factor label only).
std::map<int, int> factor_degrees(const Monomial& m);

std::string mono_str(const Monomial& m);

}  // namespace tautres
