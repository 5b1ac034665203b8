#pragma once

#include <map>

#include "tautres/multipoly.hpp"

namespace tautres {

// numerator / prod(linear factor^mult). Factors are kept primitive: the
// lowest monomial has coefficient 1, scalars live in the numerator.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(MultiPoly numerator) : num_(std::move(numerator)) {}  // NOLINT(google-explicit-constructor)

  static RationalFunction quotient(MultiPoly numerator, const std::vector<MultiPoly>& linear_factors);

  const MultiPoly& numerator() const { return num_; }
  const std::map<MultiPoly, int>& denominator() const { return den_; }
  MultiPoly denominator_poly() const;

  RationalFunction& operator+=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  void divide_linear(const MultiPoly& factor, int mult = 1);
  // Cancel every denominator factor that divides the numerator.
  void reduce();
  bool is_polynomial() const { return den_.empty(); }
  bool equals(const RationalFunction& o) const;
  std::string str() const;

 private:
  MultiPoly num_;
  std::map<MultiPoly, int> den_;
};

// Exact division by a linear polynomial; returns false if it does not divide.
bool divide_exact_linear(const MultiPoly& p, const MultiPoly& linear, MultiPoly* quotient);

}  // namespace tautres
