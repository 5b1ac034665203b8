#include <doctest.h>

#include "tautres/genfun.hpp"
#include "tautres/oracle.hpp"
#include "test_util.hpp"

using namespace tautres;
using namespace tautres::testing;

TEST_SUITE("genfun") {
  TEST_CASE("k=1 kernel is the degree-n Segre part of V") {
    const auto t = segre_kernel(1, 2, 2, MultiplicativeIntegrand::segre());
    CHECK(t.z_order.empty());
    CHECK(t.numerator == MultiplicativeIntegrand::segre().on_roots({theta(1), theta(2)}, 2));
  }

  TEST_CASE("printed kernel has denominator power r+n+1") {
    const auto t = segre_kernel_as_printed(2, 2, 1, nullptr, 4);
    REQUIRE(t.z_order.size() == 1);
    int zpow = 0;
    for (const auto& f : t.factors)
      if (f.form == LinearForm::from_poly(z(1))) zpow = f.mult;
    CHECK(zpow == 4);
  }

  TEST_CASE("printed kernel has no residue for k >= 2") {
    for (int k = 2; k <= 3; ++k) CHECK(connected_value(segre_kernel_as_printed(k, 2, 1, nullptr, 10), 2, 1).is_zero());
  }

  TEST_CASE("connected kernel is the single-block partition term") {
    for (int k = 1; k <= 4; ++k) {
      ProblemSpec s;
      s.n = 2;
      s.k = k;
      s.phi = std::make_shared<MultiplicativeIntegrand>(MultiplicativeIntegrand::segre());
      const auto a = assemble_partition_term(s, {k}, {});
      const auto b = segre_kernel(k, 2, 1, MultiplicativeIntegrand::segre());
      CHECK(a.numerator == b.numerator);
      CHECK(iterated_residue(a) == iterated_residue(b));
      int deg = 0, den = 0;
      REQUIRE(b.numerator.is_homogeneous(&deg));
      for (const auto& f : b.factors) den += f.mult;
      CHECK(deg - den == 3 - k);  // (n+1)s - k with s = 1
    }
  }

  TEST_CASE("exponential series helper") {
    // exp(q) = sum q^k / k!
    std::vector<MultiPoly> b = {MultiPoly(), MultiPoly(1)};
    const auto a = exp_series(b, 5);
    for (int k = 0; k <= 5; ++k) CHECK(a[static_cast<std::size_t>(k)] == MultiPoly(Rational(1) / Rational(factorial(static_cast<unsigned>(k)))));
  }

  TEST_CASE("direct and exponential coefficients agree") {
    const auto rep = series_coefficients(MultiplicativeIntegrand::segre(), 2, 1, 4);
    CHECK(rep.agree_pinned);
    CHECK_FALSE(rep.agree_literal);
    CHECK(rep.direct[1] == rep.connected[1]);
    // k=2 by hand: (R_1^2 + R_2) / 2
    CHECK(rep.direct[2] == (rep.connected[1] * rep.connected[1] + rep.connected[2]) * Rational(1, 2));
    const auto chern = series_coefficients(MultiplicativeIntegrand::chern(), 1, 2, 3);
    CHECK(chern.agree_pinned);
    const MultiplicativeIntegrand custom("custom", {1, 2, Rational(-1, 3), 5});
    CHECK(series_coefficients(custom, 2, 1, 3).agree_pinned);
  }

  TEST_CASE("Segre numbers on P^2 match localization") {
    const auto table = IntersectionTable::projective_plane({1});
    const auto rep = series_coefficients(MultiplicativeIntegrand::segre(), 2, 1, 3, &table);
    const auto chart = projective_plane_chart({1});
    for (int k = 1; k <= 3; ++k) {
      const Rational o = *ab_integrate(chart, k, MultiplicativeIntegrand::segre()).number;
      CHECK(*rep.direct_numbers[static_cast<std::size_t>(k)] == o);
      CHECK(*rep.exp_numbers[static_cast<std::size_t>(k)] == o);
    }
  }

  TEST_CASE("a point has no higher coefficients") {
    const auto rep = series_coefficients(MultiplicativeIntegrand::segre(), 0, 1, 4);
    const auto table = IntersectionTable::projective_space(0, {0});
    CHECK(table.evaluate(rep.direct[1]) == 1);
    for (int k = 2; k <= 4; ++k) CHECK(table.evaluate(rep.direct[static_cast<std::size_t>(k)]) == 0);
  }

  TEST_CASE("multiplicativity of the k=1 kernel") {
    const auto s = MultiplicativeIntegrand::segre();
    const auto both = segre_kernel(1, 3, 2, s).numerator;
    MultiPoly split;
    for (int i = 0; i <= 3; ++i) split += s.on_roots({theta(1)}, i) * s.on_roots({theta(2)}, 3 - i);
    CHECK(both == split);
  }
}
