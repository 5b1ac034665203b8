#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tautres/tautint.hpp"

namespace tautres {

// Connected (single-block) term for a multiplicative class: block of size k,
// class evaluated on the block's roots theta_t, theta_t + z_i and graded to
// degree n*k, kernel as in the partition formula. z variables belong to
// factor 1.
RationalTerm segre_kernel(int k, int n, int r, const MultiplicativeIntegrand& cls, const QTable* qtable = nullptr);

// The literal generating-function kernel: s_V * prod S(1/z_i) s_X(1/z_i) over
// (z_1...z_{k-1})^{r+n+1}, with S(1/z) = prod_j sum_u (-1)^u (1+theta_j)^u z^-u
// truncated at `truncation`. Diagnostic only.
RationalTerm segre_kernel_as_printed(int k, int n, int r, const QTable* qtable, int truncation);

// Residue of a single-factor kernel, reduced to Chern numbers (degree-n part).
MultiPoly connected_value(const RationalTerm& kernel, int n, int r);

struct SeriesReport {
  int n = 0, r = 0, k_max = 0;
  std::string class_name;
  std::vector<MultiPoly> direct;        // index k: partition-sum coefficient (k = 0..k_max)
  std::vector<MultiPoly> connected;     // index m: raw connected residue R_m (m >= 1)
  std::vector<MultiPoly> exp_pinned;    // exp(sum (m-1)! R_m q^m / m!) = exp(sum R_m q^m / m)
  std::vector<MultiPoly> exp_literal;   // exp(sum R_m q^m / m!)
  bool agree_pinned = false;
  bool agree_literal = false;
  std::vector<std::optional<Rational>> direct_numbers, exp_numbers;  // with a table
};

SeriesReport series_coefficients(const MultiplicativeIntegrand& cls, int n, int r, int k_max,
                                 const IntersectionTable* table = nullptr, const EvalOptions& opts = {});

// Coefficients of exp(sum_{m>=1} b[m] q^m) up to q^k_max.
std::vector<MultiPoly> exp_series(const std::vector<MultiPoly>& b, int k_max);

}  // namespace tautres
