#pragma once

#include <utility>
#include <vector>

#include "tautres/linear_form.hpp"
#include "tautres/multipoly.hpp"

namespace tautres {

struct DenFactor {
  LinearForm form;
  int mult = 1;
};

// numerator / prod(form^mult) dz_1 ... dz_d. z_order[0] is the innermost
// contour, z_order.back() the outermost (dominant) variable.
struct RationalTerm {
  MultiPoly numerator;
  std::vector<DenFactor> factors;
  std::vector<VarId> z_order;

  void validate() const;
};

struct ResidueBound {
  VarId var;
  int truncation;  // highest power of 1/var kept in the expansion; -1 = nothing needed
};

struct ResidueReport {
  std::vector<ResidueBound> bounds;
};

// Iterated residue at infinity, eliminating z_order.back() first. Each step
// contributes the orientation sign -1, so Res dz/z = -1.
MultiPoly iterated_residue(const RationalTerm& term, ResidueReport* report = nullptr);

// Reference evaluation: expand every factor to a fixed truncation, multiply
// everything out and read off the coefficient of prod z^-1. Slow; for tests.
MultiPoly iterated_residue_bruteforce(const RationalTerm& term, int truncation);

// True only if the residue is provably zero: for some z_l no factor led by a
// higher variable involves z_l, and deg(numerator; z_l) + 1 < total
// multiplicity of the factors involving z_l.
bool vanishing_precheck(const RationalTerm& term);

// Drop numerator monomials whose single-monomial term passes the precheck.
RationalTerm prune_numerator(const RationalTerm& term, std::size_t* removed = nullptr);

struct FlagSumResult {
  MultiPoly left;   // fixed-point sum over injections [d] -> [m]
  MultiPoly right;  // iterated residue with Vandermonde prod_{i<j}(z_i - z_j)
};

// Q is a polynomial in zs (|zs| = d); lambdas has m entries.
FlagSumResult flag_sum_to_residue_check(const MultiPoly& Q, const std::vector<VarId>& zs,
                                        const std::vector<MultiPoly>& lambdas);

}  // namespace tautres
