#pragma once

#include <string>
#include <vector>

#include "tautres/tautint.hpp"

namespace tautres {

struct PositivityRow {
  int n = 0, k = 0, r = 0;
  std::string phi;
  Rational coefficient;
  std::string monomial;  // product of Chern numbers of c(V), s(X) monomials
  int sign = 0;
};

struct PositivityScan {
  std::vector<int> n_values, k_values, r_values;
  // Integrand strings; "segre" / "chern" select the total class. Empty:
  // every Chern monomial of degree n*k in c_1..c_{rk}, up to `monomial_cap`.
  std::vector<std::string> phis;
  std::size_t monomial_cap = 10;
};

struct PositivityReport {
  std::vector<PositivityRow> rows;
  std::size_t negative = 0;  // counterexample candidates
};

PositivityReport positivity_scan(const PositivityScan& scan, const EvalOptions& opts = {});

// Chern monomials c_{i1}...c_{im} of total degree `degree` with i <= max_index,
// in lexicographic order of non-increasing index lists.
std::vector<std::vector<int>> chern_monomials(int degree, int max_index);

}  // namespace tautres
