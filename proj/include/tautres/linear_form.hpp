#pragma once

#include <map>

#include "tautres/multipoly.hpp"

namespace tautres {

// omega = constant + sum_j coeffs[j] * z_j. The constant may itself be a
// z-free polynomial (torus weights, Chern roots), not just a number.
struct LinearForm {
  MultiPoly constant;
  std::map<VarId, Rational> coeffs;

  static LinearForm from_poly(const MultiPoly& p);  // throws unless affine-linear in z
  MultiPoly to_poly() const;
  bool has_z() const { return !coeffs.empty(); }
  // Nonzero-coefficient variable with the largest rank; throws if none.
  VarId leading(const std::map<VarId, int>& order_rank) const;
  bool operator==(const LinearForm& o) const { return constant == o.constant && coeffs == o.coeffs; }
  bool operator<(const LinearForm& o) const {
    if (coeffs != o.coeffs) return coeffs < o.coeffs;
    return constant < o.constant;
  }
};

// 1/omega expanded with the leading variable dominant:
//   sum_{j=0..truncation} (-1)^j rest^j / (a z_q)^{j+1}.
MultiPoly expand_inverse_linear(const LinearForm& omega, const std::map<VarId, int>& order_rank, int truncation);

}  // namespace tautres
