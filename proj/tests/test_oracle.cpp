#include <doctest.h>

#include <algorithm>

#include "tautres/oracle.hpp"
#include "tautres/tautint.hpp"
#include "test_util.hpp"

using namespace tautres;
using namespace tautres::testing;

namespace {

std::vector<MultiPoly> sorted(std::vector<MultiPoly> v) {
  std::sort(v.begin(), v.end());
  return v;
}

YoungDiagram transpose(const YoungDiagram& y) {
  YoungDiagram t;
  for (int i = 0; i < y.parts.front(); ++i) {
    int h = 0;
    for (int p : y.parts)
      if (p > i) ++h;
    t.parts.push_back(h);
  }
  return t;
}

ProblemSpec manifold(int k, int r, const std::string& phi) {
  ProblemSpec s;
  s.n = 2;
  s.k = k;
  s.V = BundleSpec::formal(r);
  s.phi = std::make_shared<PhiIntegrand>(parse_phi(phi));
  return s;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("fixed points are integer partitions") {
    CHECK(hilb_fixed_points(1).size() == 1);
    CHECK(hilb_fixed_points(2).size() == 2);
    CHECK(hilb_fixed_points(4).size() == 5);
    CHECK(hilb_fixed_points(6).size() == 11);
    for (const auto& y : hilb_fixed_points(5)) {
      CHECK(y.size() == 5);
      CHECK(std::is_sorted(y.parts.rbegin(), y.parts.rend()));
    }
  }

  TEST_CASE("tangent weights") {
    const MultiPoly l1 = lam(1), l2 = lam(2);
    CHECK(sorted(tangent_weights({{1}}, l1, l2)) == sorted({l1, l2}));
    CHECK(sorted(tangent_weights({{2}}, l1, l2)) == sorted({l1 * Rational(2), l2 - l1, l1, l2}));
    for (int k = 1; k <= 5; ++k)
      for (const auto& y : hilb_fixed_points(k)) {
        CHECK(tangent_weights(y, l1, l2).size() == static_cast<std::size_t>(2 * k));
        // swapping l1, l2 and transposing the diagram gives the same multiset
        CHECK(sorted(tangent_weights(y, l2, l1)) == sorted(tangent_weights(transpose(y), l1, l2)));
      }
  }

  TEST_CASE("tautological weights") {
    const MultiPoly l1 = lam(1), l2 = lam(2), w = theta(1, 0);
    CHECK(taut_weights({{1}}, l1, l2, {w}) == std::vector<MultiPoly>{w});
    CHECK(sorted(taut_weights({{2}}, l1, l2, {w})) == sorted({w, w - l1}));
    for (const auto& y : hilb_fixed_points(4)) CHECK(taut_weights(y, l1, l2, {w, lam(3)}).size() == 8);
  }

  TEST_CASE("k=1 values") {
    CHECK(*ab_integrate(projective_plane_chart({1}), 1, parse_phi("c1^2")).number == 1);
    for (int d = 1; d <= 4; ++d)
      CHECK(*ab_integrate(projective_plane_chart({d}), 1, parse_phi("c1^2")).number == d * d);
    CHECK(*ab_integrate(projective_plane_chart({1, 2}), 1, parse_phi("c2")).number == 2);
    CHECK(*ab_integrate(p1xp1_chart({{1, 1}}), 1, parse_phi("c1^2")).number == 2);
  }

  TEST_CASE("two-point values on P^2") {
    // two sections of O(d)^[2] vanish on pairs taken from the d^2 points where the curves meet
    for (int d = 1; d <= 4; ++d)
      CHECK(*ab_integrate(projective_plane_chart({d}), 2, parse_phi("c2^2")).number == d * d * (d * d - 1) / 2);
  }

  TEST_CASE("results on compact surfaces are weight free") {
    const auto r = ab_integrate(projective_plane_chart({2}), 3, parse_phi("c1^2*c2^2"), 0, true);
    CHECK(r.number.has_value());
    CHECK(r.fixed_point_count == r.contributions.size());
    CHECK_THROWS_AS(ab_integrate(projective_plane_chart({2}), 2, parse_phi("c1^3")), SpecError);
  }

  TEST_CASE("deformation invariance under different weight choices") {
    const auto chart = projective_plane_chart({2});
    const auto phi = parse_phi("c1^2*c2^2");
    const Rational exact = *ab_integrate(chart, 3, phi).number;
    std::vector<std::map<VarId, Rational>> choices = {
        {{reg().weight(0), 0}, {reg().weight(1), 3}, {reg().weight(2), 11}},
        {{reg().weight(0), 5}, {reg().weight(1), -7}, {reg().weight(2), 2}},
    };
    for (const auto& ch : choices) CHECK(ab_integrate_specialized(chart, 3, phi, ch) == exact);
  }

  TEST_CASE("engine and oracle agree on P^2 and P^1 x P^1") {
    for (const char* phi : {"c1^6", "c3^2", "c1*c2*c3"}) {
      const auto u = integrate_ghilb(manifold(3, 1, phi));
      for (int d = 1; d <= 2; ++d)
        CHECK(IntersectionTable::projective_plane({d}).evaluate(u.universal) ==
              *ab_integrate(projective_plane_chart({d}), 3, parse_phi(phi)).number);
      for (auto ab : {std::pair{1, 0}, std::pair{1, 1}, std::pair{2, -1}})
        CHECK(IntersectionTable::p1xp1({ab}).evaluate(u.universal) ==
              *ab_integrate(p1xp1_chart({ab}), 3, parse_phi(phi)).number);
    }
  }

  TEST_CASE("engine and oracle agree for rank 2 bundles") {
    for (const char* phi : {"c4^2", "c1^2*c2*c4", "c2^4", "c3*c1^5"}) {
      const auto u = integrate_ghilb(manifold(4, 2, phi));
      CHECK(IntersectionTable::projective_plane({1, 2}).evaluate(u.universal) ==
            *ab_integrate(projective_plane_chart({1, 2}), 4, parse_phi(phi)).number);
      CHECK(IntersectionTable::p1xp1({{1, 0}, {0, 1}}).evaluate(u.universal) ==
            *ab_integrate(p1xp1_chart({{1, 0}, {0, 1}}), 4, parse_phi(phi)).number);
    }
  }

  TEST_CASE("k=1 reduction against the intersection table") {
    for (int d = 1; d <= 3; ++d) {
      const auto table = IntersectionTable::projective_plane({d, 1});
      for (const char* phi : {"c1^2", "c2", "c1^2 - 3*c2"}) {
        const auto u = integrate_ghilb(manifold(1, 2, phi), &table);
        CHECK(*u.total == *ab_integrate(projective_plane_chart({d, 1}), 1, parse_phi(phi)).number);
      }
    }
  }
}
