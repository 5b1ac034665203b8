#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tautres/chern.hpp"
#include "tautres/rational_function.hpp"

namespace tautres {

// Monomial ideal in C[x,y]: parts[j] = number of boxes in row j (along x).
// Box (i,j) stands for the monomial x^i y^j.
struct YoungDiagram {
  std::vector<int> parts;  // weakly decreasing, positive
  int size() const;
  std::vector<std::pair<int, int>> boxes() const;
  int arm(int i, int j) const;  // boxes right of (i,j) in row j
  int leg(int i, int j) const;  // boxes above (i,j) in column i
  std::string str() const;
};

std::vector<YoungDiagram> hilb_fixed_points(int k);

// Weights of T Hilb^k(C^2) at the ideal: per box l1(a+1) - l2 l, -l1 a + l2(l+1).
std::vector<MultiPoly> tangent_weights(const YoungDiagram& mu, const MultiPoly& l1, const MultiPoly& l2);
// Weights of V^[k] at the ideal: w_t - (i l1 + j l2) per box and per weight of V.
std::vector<MultiPoly> taut_weights(const YoungDiagram& mu, const MultiPoly& l1, const MultiPoly& l2,
                                    const std::vector<MultiPoly>& v_weights);

struct ChartPoint {
  MultiPoly l1, l2;                 // tangent weights of the surface
  std::vector<MultiPoly> v_weights;  // weights of V at the point
};

struct ToricSurface {
  std::string name;
  bool compact = true;
  std::vector<ChartPoint> points;
};

ToricSurface projective_plane_chart(const std::vector<int>& line_degrees);
ToricSurface p1xp1_chart(const std::vector<std::pair<int, int>>& line_degrees);
// Equivariant C^2 with tangent weights lambda[1], lambda[2] and the given V weights.
ToricSurface affine_plane_chart(const std::vector<MultiPoly>& v_weights);

struct FixedPointContribution {
  std::vector<YoungDiagram> diagrams;  // one per chart point
  RationalFunction value;
};

struct OracleResult {
  RationalFunction value;
  std::optional<Rational> number;  // compact surfaces
  std::size_t fixed_point_count = 0;
  std::vector<FixedPointContribution> contributions;
};

OracleResult ab_integrate(const ToricSurface& surface, int k, const ChernExpr& phi, int threads = 0,
                          bool keep_contributions = false);
OracleResult ab_integrate(const ToricSurface& surface, int k, const Integrand& phi, int threads = 0,
                          bool keep_contributions = false);

// Same sum with every torus weight replaced by a number. Only meaningful for
// compact surfaces; used to check deformation invariance.
Rational ab_integrate_specialized(const ToricSurface& surface, int k, const ChernExpr& phi,
                                  const std::map<VarId, Rational>& values);

}  // namespace tautres
