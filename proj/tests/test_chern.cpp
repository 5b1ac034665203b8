#include <doctest.h>

#include <algorithm>

#include "tautres/chern.hpp"
#include "test_util.hpp"

using namespace tautres;
using namespace tautres::testing;

TEST_SUITE("chern") {
  TEST_CASE("parsing integrands") {
    const auto p = parse_phi("c1^2 + 3*c2");
    CHECK(p.expanded.size() == 2);
    CHECK(p.expanded == c(1) * c(1) + c(2) * Rational(3));
    CHECK(parse_phi("c1*(c1+c2)").expanded == c(1) * c(1) + c(1) * c(2));
    CHECK(parse_phi("-1/2*c3").expanded == c(3) * Rational(-1, 2));
    try {
      parse_phi("c1 +");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.offset == 4);
    }
    CHECK_THROWS_AS(parse_phi("c0"), ParseError);
    CHECK_THROWS_AS(parse_phi("x1"), ParseError);
    CHECK_THROWS_AS(parse_phi("c1/c2"), ParseError);
    int d = 0;
    CHECK(parse_phi("c1*c2 + c3").is_homogeneous(&d));
    CHECK(d == 3);
    CHECK_FALSE(parse_phi("c1 + c2").is_homogeneous(&d));
  }

  TEST_CASE("Segre from Chern") {
    CHECK(segre_from_chern({}, 0) == std::vector<MultiPoly>{MultiPoly(1)});
    const auto s1 = segre_from_chern({cx(1)}, 1);
    CHECK(s1[1] == -cx(1));
    const auto s2 = segre_from_chern({cx(1), cx(2)}, 2);
    CHECK(s2[1] == -cx(1));
    CHECK(s2[2] == cx(1) * cx(1) - cx(2));
    // s * c = 1 up to the order
    const std::vector<MultiPoly> cc = {cx(1), cx(2), cx(3)};
    const auto s = segre_from_chern(cc, 6);
    MultiPoly total_c(1), total_s;
    for (const auto& x : cc) total_c += x;
    for (const auto& x : s) total_s += x;
    CHECK(truncate_degree(total_c * total_s, 6) == MultiPoly(1));
  }

  TEST_CASE("twisting roots") {
    CHECK(twist_roots({theta(1)}, z(1)) == std::vector<MultiPoly>{theta(1) + z(1)});
    CHECK(twist_roots({theta(1), theta(2)}, MultiPoly()) == std::vector<MultiPoly>{theta(1), theta(2)});
    const auto back = twist_roots(twist_roots({theta(1)}, z(1)), -z(1));
    CHECK(back == std::vector<MultiPoly>{theta(1)});
    CHECK(twist_roots(twist_roots({theta(1)}, z(1)), z(2)) == twist_roots({theta(1)}, z(1) + z(2)));
  }

  TEST_CASE("evaluating on roots") {
    const std::vector<MultiPoly> roots = {theta(1), theta(1) + z(1)};
    CHECK(phi_eval_on_roots(parse_phi("c1"), roots) == theta(1) * Rational(2) + z(1));
    CHECK(phi_eval_on_roots(parse_phi("c2"), roots) == theta(1) * theta(1) + theta(1) * z(1));
    const MultiPoly a = lam(1), b = lam(2);
    CHECK(phi_eval_on_roots(parse_phi("c1^2 - 2*c2"), {a, b}) == a * a + b * b);
    CHECK_THROWS_AS(phi_eval_on_roots(parse_phi("c3"), {a, b}), std::invalid_argument);
  }

  TEST_CASE("evaluation is invariant under permuting roots") {
    const auto phi = parse_phi("c1^3*c2 - 2*c2*c3 + c5");
    std::vector<MultiPoly> roots = {lam(1), lam(2), lam(3) + z(1), theta(1), theta(2)};
    const MultiPoly ref = phi_eval_on_roots(phi, roots);
    std::sort(roots.begin(), roots.end());
    int checked = 0;
    do {
      if (++checked % 7 == 0) CHECK(phi_eval_on_roots(phi, roots) == ref);
    } while (std::next_permutation(roots.begin(), roots.end()));
  }

  TEST_CASE("Newton identities via symmetric reduction") {
    const std::vector<VarId> two = {reg().theta(1, 1), reg().theta(1, 2)};
    const std::vector<VarId> three = {reg().theta(1, 1), reg().theta(1, 2), reg().theta(1, 3)};
    const std::vector<VarId> cs = {reg().chern_v(1, 1), reg().chern_v(1, 2), reg().chern_v(1, 3)};
    const MultiPoly c1 = cv(1, 1), c2 = cv(2, 1), c3 = cv(3, 1);
    CHECK(symmetric_reduce(theta(1) + theta(2), two, {cs[0], cs[1]}) == c1);
    CHECK(symmetric_reduce(theta(1).pow(2) + theta(2).pow(2), two, {cs[0], cs[1]}) == c1 * c1 - c2 * Rational(2));
    CHECK(symmetric_reduce(theta(1).pow(3) + theta(2).pow(3) + theta(3).pow(3), three, cs) ==
          c1.pow(3) - c1 * c2 * Rational(3) + c3 * Rational(3));
    CHECK_THROWS_AS(symmetric_reduce(theta(1), two, {cs[0], cs[1]}), AsymmetryError);
  }

  TEST_CASE("symmetric reduction round trip on random symmetric polynomials") {
    std::mt19937 rng(11);
    for (int r = 1; r <= 4; ++r) {
      std::vector<MultiPoly> roots;
      std::vector<VarId> block, targets;
      for (int t = 1; t <= r; ++t) {
        roots.push_back(theta(t, 3));
        block.push_back(reg().theta(3, t));
        targets.push_back(reg().chern_v(3, t));
      }
      const auto e = elementary_symmetric(roots, r);
      std::map<VarId, MultiPoly> back;
      for (int t = 1; t <= r; ++t) back[targets[static_cast<std::size_t>(t - 1)]] = e[static_cast<std::size_t>(t)];
      for (int trial = 0; trial < 5; ++trial) {
        // random polynomial in the elementary symmetric functions, degree <= 6
        std::vector<MultiPoly> cvars;
        for (VarId v : targets) cvars.push_back(MultiPoly::var(v));
        MultiPoly in_c = truncate_degree(random_poly(rng, cvars, 4, 2), 6);
        const MultiPoly sym = in_c.substitute(back);
        CHECK(symmetric_reduce(sym, block, targets) == in_c);
      }
    }
  }

  TEST_CASE("multiplicative classes") {
    const auto s = MultiplicativeIntegrand::segre();
    const auto ch = MultiplicativeIntegrand::chern();
    const MultiPoly a = lam(1), b = lam(2);
    CHECK(ch.on_roots({a, b}, 2) == a * b);
    CHECK(s.on_roots({a, b}, 2) == a * a + a * b + b * b);
    CHECK(s.on_roots({a}, 3) == -a.pow(3));
    // multiplicativity: s(E' + E'') = s(E') s(E'') degree by degree
    for (int D = 0; D <= 4; ++D) {
      MultiPoly split;
      for (int i = 0; i <= D; ++i) split += s.on_roots({a, b}, i) * s.on_roots({theta(1)}, D - i);
      CHECK(s.on_roots({a, b, theta(1)}, D) == split);
    }
    const MultiplicativeIntegrand custom("todd-ish", {1, Rational(1, 2), Rational(1, 12)});
    CHECK(custom.on_roots({a}, 2) == a * a * Rational(1, 12));
  }
}
