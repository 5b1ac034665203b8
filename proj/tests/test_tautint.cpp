#include <doctest.h>

#include "tautres/closed_forms.hpp"
#include "tautres/oracle.hpp"
#include "tautres/tautint.hpp"
#include "test_util.hpp"

using namespace tautres;
using namespace tautres::testing;

namespace {

ProblemSpec manifold(int n, int k, int r, const std::string& phi) {
  ProblemSpec s;
  s.n = n;
  s.k = k;
  s.V = BundleSpec::formal(r);
  s.phi = std::make_shared<PhiIntegrand>(parse_phi(phi));
  return s;
}

ProblemSpec equivariant_c2(int k, const std::string& phi, const MultiPoly& v_weight) {
  ProblemSpec s;
  s.n = 2;
  s.k = k;
  s.mode = Mode::Equivariant;
  s.V = BundleSpec::explicit_weights({v_weight});
  s.tangent_weights = {lam(1), lam(2)};
  s.phi = std::make_shared<PhiIntegrand>(parse_phi(phi));
  return s;
}

int term_degree(const RationalTerm& t) {
  int deg = 0;
  REQUIRE(t.numerator.is_homogeneous(&deg));
  for (const auto& f : t.factors) deg -= f.mult;
  return deg;
}

}  // namespace

TEST_SUITE("tautint") {
  TEST_CASE("Q table") {
    std::vector<VarId> zs;
    for (int i = 1; i <= 5; ++i) zs.push_back(reg().z(1, i));
    CHECK(q_polynomial(2, zs) == MultiPoly(1));
    CHECK(q_polynomial(3, zs) == MultiPoly(1));
    CHECK(q_polynomial(4, zs) == z(1) * Rational(2) + z(2) - z(4));
    CHECK(q_polynomial_text(5) ==
          "(2*z1+z2-z5)*(2*z1^2+3*z1*z2-2*z1*z5+2*z2*z3-z2*z4-z2*z5-z3*z4+z4*z5)");
    QTable t;
    CHECK(t.has(1));
    CHECK(t.has(5));
    CHECK_FALSE(t.has(6));
    t.set_override(5, q_polynomial_text(5));
    CHECK(t.get(5, zs) == q_polynomial(5, zs));
    CHECK_THROWS_AS(t.set_override(6, "z1+z2^2"), SpecError);  // not homogeneous
  }

  TEST_CASE("missing Q is an explicit error") {
    auto s = manifold(1, 7, 1, "c1^7");
    try {
      integrate_ghilb(s);
      FAIL("expected SpecError");
    } catch (const SpecError& e) {
      CHECK(std::string(e.what()).find("supply via --q-poly") != std::string::npos);
    }
  }

  TEST_CASE("spec validation") {
    CHECK_THROWS_AS(integrate_ghilb(manifold(2, 2, 1, "c1^3")), SpecError);  // degree 3 != nk
    CHECK_THROWS_AS(integrate_ghilb(manifold(2, 2, 1, "c1^2 + c1^4")), SpecError);
    CHECK_THROWS_AS(integrate_ghilb(manifold(1, 1, 1, "c2")), SpecError);  // c2 of a rank-1 bundle
    auto e = equivariant_c2(1, "c2", lam(1));
    CHECK_THROWS_AS(integrate_ghilb(e), SpecError);
    e.tangent_weights.pop_back();
    CHECK_THROWS_AS(integrate_equivariant(e), SpecError);
  }

  TEST_CASE("block assembly shapes") {
    const auto s = manifold(2, 3, 1, "c1^6");
    EvalOptions o;
    // singletons: no residue variables
    const auto t1 = assemble_partition_term(s, {1, 1, 1}, o);
    CHECK(t1.z_order.empty());
    CHECK(t1.factors.empty());
    // block of size 2: one variable, denominator z^{n+1}
    const auto t2 = assemble_partition_term(s, {2, 1}, o);
    REQUIRE(t2.z_order.size() == 1);
    REQUIRE(t2.factors.size() == 1);
    CHECK(t2.factors[0].mult == 3);
    CHECK(t2.numerator.contains(reg().segre_x(1, 1)));
    // block of size 3: two variables, factor 2 z1 - z2
    const auto t3 = assemble_partition_term(s, {3}, o);
    CHECK(t3.z_order.size() == 2);
    bool mixed = false;
    for (const auto& f : t3.factors)
      if (f.form == LinearForm::from_poly(z(1) * Rational(2) - z(2))) mixed = true;
    CHECK(mixed);
  }

  TEST_CASE("degree bookkeeping (n+1)s - k for every partition") {
    for (int n = 1; n <= 3; ++n)
      for (int k = 1; k <= 4; ++k) {
        const auto s = manifold(n, k, 1, "c1^" + std::to_string(n * k));
        for (const auto& p : enumerate_partitions(k))
          CHECK(term_degree(assemble_partition_term(s, p.block_sizes(), {})) ==
                (n + 1) * static_cast<int>(p.size()) - k);
      }
  }

  TEST_CASE("k=1 is the degree-n part of Phi(V)") {
    const auto u = integrate_ghilb(manifold(1, 1, 1, "c1"));
    CHECK(u.universal == MultiPoly::var(chern_number_var({{reg().chern_v(0, 1), 1}})));
    const auto table = IntersectionTable::projective_space(3, {2, 1});
    const auto v = integrate_ghilb(manifold(3, 1, 2, "c1*c2"), &table);
    // c(O(2)+O(1)) = (1+2h)(1+h): c1 c2 = 3h * 2h^2 = 6
    REQUIRE(v.total);
    CHECK(*v.total == 6);
  }

  TEST_CASE("k=2 agrees with the two-point formula") {
    for (const char* phi : {"c1^4", "c2^2", "c1^2*c2", "3*c1^4 - c2^2"}) {
      const auto s = manifold(2, 2, 1, phi);
      CHECK(integrate_ghilb(s).universal == closed_form_k2(s).universal);
    }
    const auto s2 = manifold(3, 2, 2, "c1^2*c4 + c3^2 - c2^3");
    CHECK(integrate_ghilb(s2).universal == closed_form_k2(s2).universal);
    CHECK_THROWS_AS(closed_form_k2(manifold(2, 3, 1, "c1^6")), SpecError);
  }

  TEST_CASE("k=3 agrees with the three-point formula") {
    const auto table = IntersectionTable::projective_plane({1});
    const auto s = manifold(2, 3, 1, "c1^6");
    const auto a = integrate_ghilb(s, &table), b = closed_form_k3(s, &table);
    CHECK(a.universal == b.universal);
    CHECK(*a.total == *b.total);
    CHECK_THROWS_AS(closed_form_k3(manifold(2, 2, 1, "c1^4")), SpecError);
  }

  TEST_CASE("P^2 values match localization") {
    for (int d = 1; d <= 3; ++d) {
      const auto table = IntersectionTable::projective_plane({d});
      const auto chart = projective_plane_chart({d});
      for (const char* phi : {"c1^4", "c2^2", "c1^2*c2"}) {
        const auto u = integrate_ghilb(manifold(2, 2, 1, phi), &table);
        CHECK(*u.total == *ab_integrate(chart, 2, parse_phi(phi)).number);
      }
    }
  }

  TEST_CASE("two-point formula: singleton partition is the square of the k=1 answer") {
    // on singletons c2 of V1 + V2 is c1(V1) c1(V2)
    const auto u = integrate_ghilb(manifold(1, 2, 1, "c2"));
    const auto& singles = u.terms.back();
    CHECK(singles.partition.size() == 2);
    const MultiPoly k1 = integrate_ghilb(manifold(1, 1, 1, "c1")).universal;
    CHECK(collapse_to_chern_numbers(singles.value, 2) == k1 * k1);
  }

  TEST_CASE("pruning does not change results") {
    for (const char* phi : {"c1^6", "c3^2", "c1*c2*c3"}) {
      const auto s = manifold(2, 3, 1, phi);
      EvalOptions on;
      on.prune = true;
      const auto a = integrate_ghilb(s), b = integrate_ghilb(s, nullptr, on);
      CHECK(a.universal == b.universal);
      for (std::size_t i = 0; i < a.terms.size(); ++i) CHECK(a.terms[i].value == b.terms[i].value);
    }
  }

  TEST_CASE("thread count does not change results") {
    const auto s = manifold(2, 4, 1, "c2^2*c4");
    EvalOptions one, four;
    one.threads = 1;
    four.threads = 4;
    CHECK(integrate_ghilb(s, nullptr, one).universal == integrate_ghilb(s, nullptr, four).universal);
  }

  TEST_CASE("printed convention differs from the pinned one") {
    const auto s = manifold(2, 2, 1, "c1^4");
    EvalOptions printed;
    printed.convention = Convention::AsPrinted;
    const auto table = IntersectionTable::projective_plane({2});
    const auto a = integrate_ghilb(s, &table), b = integrate_ghilb(s, &table, printed);
    CHECK(*b.total == *closed_form_k2(s, &table, Convention::AsPrinted).total);
    const auto s3 = manifold(2, 3, 1, "c1^6");
    CHECK(*integrate_ghilb(s3, &table, printed).total == *closed_form_k3(s3, &table, Convention::AsPrinted).total);
    CHECK(*a.total == *ab_integrate(projective_plane_chart({2}), 2, parse_phi("c1^4")).number);
    CHECK(convention_from_string("as_printed") == Convention::AsPrinted);
    CHECK_THROWS_AS(convention_from_string("other"), SpecError);
  }

  TEST_CASE("equivariant k=1 is a single-point localization") {
    ProblemSpec s;
    s.n = 2;
    s.k = 1;
    s.mode = Mode::Equivariant;
    s.V = BundleSpec::explicit_weights({lam(1), lam(2)});
    s.tangent_weights = {lam(1), lam(2)};
    s.phi = std::make_shared<PhiIntegrand>(parse_phi("c2"));
    const auto u = integrate_equivariant(s);
    CHECK(u.equivariant_total.equals(RationalFunction(MultiPoly(1))));  // prod lambda / prod lambda
  }

  TEST_CASE("equivariant k=2 on the plane matches the fixed-point sum") {
    for (const char* phi : {"c1^4", "c2^2", "c1^2*c2"}) {
      for (const MultiPoly& w : {MultiPoly(), lam(1) * Rational(2), lam(1) - lam(2)}) {
        const auto u = integrate_equivariant(equivariant_c2(2, phi, w));
        const auto o = ab_integrate(affine_plane_chart({w}), 2, parse_phi(phi));
        CHECK(u.equivariant_total.equals(o.value));
      }
    }
  }

  TEST_CASE("equivariant k=3 on the plane matches the fixed-point sum") {
    for (const char* phi : {"c1^6", "c3^2", "c1*c2*c3", "c2^3"}) {
      const auto u = integrate_equivariant(equivariant_c2(3, phi, lam(1)));
      const auto o = ab_integrate(affine_plane_chart({lam(1)}), 3, parse_phi(phi));
      CHECK(u.equivariant_total.equals(o.value));
    }
  }

  TEST_CASE("Chern-Weil substitution of the equivariant residue gives the manifold residue") {
    for (int k = 1; k <= 3; ++k)
      for (const char* phi : {"c1^6", "c2^3", "c1^2*c2^2", "c1*c2*c3", "c1^4", "c2^2", "c1^2"}) {
        const auto parsed = parse_phi(phi);
        int deg = 0;
        parsed.is_homogeneous(&deg);
        if (deg != 2 * k || parsed.max_index() > k) continue;
        const auto m = integrate_ghilb(manifold(2, k, 1, phi));
        ProblemSpec e = equivariant_c2(k, phi, MultiPoly::var(reg().theta(0, 1)));
        EvalOptions per;
        per.per_factor_torus = true;
        const auto q2 = integrate_equivariant(e, per);
        REQUIRE(m.terms.size() == q2.terms.size());
        for (std::size_t i = 0; i < m.terms.size(); ++i) {
          const int s = static_cast<int>(m.terms[i].partition.size());
          std::map<VarId, MultiPoly> bind;
          std::map<int, int> grade;
          for (int l = 1; l <= s; ++l) {
            const auto e12 = elementary_symmetric({lam(1, l), lam(2, l)}, 2);
            const auto seg = segre_from_chern({e12[1], e12[2]}, 2);
            bind[reg().segre_x(l, 1)] = seg[1];
            bind[reg().segre_x(l, 2)] = seg[2];
            grade[l] = 2;
          }
          CHECK(m.terms[i].residue.substitute(bind).graded_part(grade) == q2.terms[i].residue.graded_part(grade));
        }
      }
  }

  TEST_CASE("intersection tables") {
    const auto p2 = IntersectionTable::projective_plane({3});
    CHECK(p2.integrate({{reg().chern_x(0, 1), 2}}) == 9);
    CHECK(p2.integrate({{reg().chern_x(0, 2), 1}}) == 3);
    CHECK(p2.integrate({{reg().chern_v(0, 1), 1}, {reg().chern_x(0, 1), 1}}) == 9);
    CHECK(p2.integrate({{reg().segre_x(0, 2), 1}}) == 6);  // s2 = c1^2 - c2
    const auto pp = IntersectionTable::p1xp1({{1, 0}});
    CHECK(pp.integrate({{reg().chern_x(0, 1), 2}}) == 8);
    CHECK(pp.integrate({{reg().chern_x(0, 2), 1}}) == 4);
    CHECK(pp.integrate({{reg().chern_v(0, 1), 2}}) == 0);
    CHECK_THROWS_AS(p2.integrate({{reg().chern_x(0, 1), 1}}), SpecError);
  }
}
