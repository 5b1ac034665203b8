#pragma once

#include "tautres/tautint.hpp"

namespace tautres {

// Two- and three-point formulas written out directly, without the general
// partition assembly or the residue engine. Same output shape as
// integrate_ghilb (universal polynomial in Chern numbers, optional total).
UniversalIntegral closed_form_k2(const ProblemSpec& spec, const IntersectionTable* table = nullptr,
                                 Convention convention = Convention::Pinned);
UniversalIntegral closed_form_k3(const ProblemSpec& spec, const IntersectionTable* table = nullptr,
                                 Convention convention = Convention::Pinned);

}  // namespace tautres
