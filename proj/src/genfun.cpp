#include "tautres/genfun.hpp"

namespace tautres {

namespace {

std::vector<VarId> block_z(int k) {
  std::vector<VarId> zs;
  for (int i = 1; i < k; ++i) zs.push_back(VarRegistry::global().z(1, i));
  return zs;
}

MultiPoly vandermonde(const std::vector<VarId>& zs) {
  MultiPoly v(1);
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = i + 1; j < zs.size(); ++j) v *= MultiPoly::var(zs[i]) - MultiPoly::var(zs[j]);
  return v;
}

void add_mixed_factors(RationalTerm& t, const std::vector<VarId>& zs) {
  const int d = static_cast<int>(zs.size());
  for (int q = 1; q <= d; ++q)
    for (int i = 1; i <= q; ++i)
      for (int j = i; i + j <= q; ++j) {
        LinearForm f;
        f.coeffs[zs[static_cast<std::size_t>(i - 1)]] += 1;
        f.coeffs[zs[static_cast<std::size_t>(j - 1)]] += 1;
        f.coeffs[zs[static_cast<std::size_t>(q - 1)]] -= 1;
        t.factors.push_back({f, 1});
      }
}

MultiPoly segre_x_inverse(int n, VarId z) {
  auto& reg = VarRegistry::global();
  MultiPoly s(1);
  for (int j = 1; j <= n; ++j) s += MultiPoly::var(reg.segre_x(1, j)).shifted({{z, -j}});
  return s;
}

MultiPoly kernel_prefix(int k, const std::vector<VarId>& zs, const QTable* qtable) {
  static const QTable default_q;
  const QTable& qt = qtable ? *qtable : default_q;
  if (k == 1) return MultiPoly(1);
  if (!qt.has(k - 1)) throw SpecError("Q_" + std::to_string(k - 1) + " unknown; supply via --q-poly");
  return vandermonde(zs) * qt.get(k - 1, zs);
}

}  // namespace

RationalTerm segre_kernel(int k, int n, int r, const MultiplicativeIntegrand& cls, const QTable* qtable) {
  auto& reg = VarRegistry::global();
  const auto zs = block_z(k);
  RationalTerm t;
  t.z_order = zs;
  // class of V (untwisted copy) up to degree n, then each twisted copy; the
  // product is graded to n*k afterwards
  std::vector<MultiPoly> theta;
  for (int j = 1; j <= r; ++j) theta.push_back(MultiPoly::var(reg.theta(1, j)));
  MultiPoly cls_value = cls.on_roots(theta, 0);
  for (int D = 1; D <= n * k; ++D) cls_value += cls.on_roots(theta, D);
  for (VarId z : zs) {
    const auto tw = twist_roots(theta, MultiPoly::var(z));
    MultiPoly twisted;
    for (int D = 0; D <= n * k; ++D) twisted += cls.on_roots(tw, D);
    cls_value = mul_truncated(cls_value, twisted, n * k);
  }
  MultiPoly num = kernel_prefix(k, zs, qtable) * cls_value.weighted_degree_part(n * k);
  for (VarId z : zs) {
    num *= segre_x_inverse(n, z);
    LinearForm f;
    f.coeffs[z] = 1;
    t.factors.push_back({f, n + 1});
  }
  add_mixed_factors(t, zs);
  t.numerator = num;
  return t;
}

RationalTerm segre_kernel_as_printed(int k, int n, int r, const QTable* qtable, int truncation) {
  auto& reg = VarRegistry::global();
  const auto zs = block_z(k);
  RationalTerm t;
  t.z_order = zs;
  std::vector<MultiPoly> theta;
  for (int j = 1; j <= r; ++j) theta.push_back(MultiPoly::var(reg.theta(1, j)));
  MultiPoly sv(1);
  for (int D = 1; D <= n; ++D) sv += MultiplicativeIntegrand::segre().on_roots(theta, D);
  MultiPoly num = kernel_prefix(k, zs, qtable) * sv;
  for (VarId z : zs) {
    MultiPoly S(1);
    for (const auto& th : theta) {
      MultiPoly series, p(1);
      for (int u = 0; u <= truncation; ++u) {
        series += p.shifted({{z, -u}}) * Rational(u % 2 == 0 ? 1 : -1);
        p *= MultiPoly(1) + th;
      }
      S *= series;
    }
    num *= S * segre_x_inverse(n, z);
    LinearForm f;
    f.coeffs[z] = 1;
    t.factors.push_back({f, r + n + 1});
  }
  add_mixed_factors(t, zs);
  t.numerator = num;
  return t;
}

MultiPoly connected_value(const RationalTerm& kernel, int n, int r) {
  auto& reg = VarRegistry::global();
  MultiPoly res = iterated_residue(kernel);
  std::vector<VarId> block, targets;
  for (int t = 1; t <= r; ++t) block.push_back(reg.theta(1, t)), targets.push_back(reg.chern_v(1, t));
  res = symmetric_reduce(res, block, targets);
  return collapse_to_chern_numbers(res.graded_part({{1, n}}), 1);
}

std::vector<MultiPoly> exp_series(const std::vector<MultiPoly>& b, int k_max) {
  // a_0 = 1, k a_k = sum_{m=1}^k m b_m a_{k-m}
  std::vector<MultiPoly> a(static_cast<std::size_t>(k_max) + 1);
  a[0] = MultiPoly(1);
  for (int k = 1; k <= k_max; ++k) {
    MultiPoly s;
    for (int m = 1; m <= k && m < static_cast<int>(b.size()); ++m)
      s += b[static_cast<std::size_t>(m)] * a[static_cast<std::size_t>(k - m)] * Rational(m);
    a[static_cast<std::size_t>(k)] = s * Rational(1, k);
  }
  return a;
}

SeriesReport series_coefficients(const MultiplicativeIntegrand& cls, int n, int r, int k_max,
                                 const IntersectionTable* table, const EvalOptions& opts) {
  if (k_max < 1) throw SpecError("kmax must be >= 1");
  SeriesReport rep;
  rep.n = n;
  rep.r = r;
  rep.k_max = k_max;
  rep.class_name = cls.name();
  auto shared = std::make_shared<MultiplicativeIntegrand>(cls);
  rep.direct.assign(static_cast<std::size_t>(k_max) + 1, MultiPoly());
  rep.direct[0] = MultiPoly(1);
  rep.connected.assign(static_cast<std::size_t>(k_max) + 1, MultiPoly());
  for (int k = 1; k <= k_max; ++k) {
    ProblemSpec spec;
    spec.n = n;
    spec.k = k;
    spec.V = BundleSpec::formal(r);
    spec.phi = shared;
    rep.direct[static_cast<std::size_t>(k)] = integrate_ghilb(spec, nullptr, opts).universal;
    rep.connected[static_cast<std::size_t>(k)] = connected_value(segre_kernel(k, n, r, cls, opts.qtable), n, r);
  }
  std::vector<MultiPoly> b_pinned(rep.connected.size()), b_literal(rep.connected.size());
  for (int m = 1; m <= k_max; ++m) {
    const auto& R = rep.connected[static_cast<std::size_t>(m)];
    b_pinned[static_cast<std::size_t>(m)] = R * Rational(1, m);
    b_literal[static_cast<std::size_t>(m)] = R * Rational(Rational(1) / Rational(factorial(static_cast<unsigned>(m))));
  }
  rep.exp_pinned = exp_series(b_pinned, k_max);
  rep.exp_literal = exp_series(b_literal, k_max);
  rep.agree_pinned = rep.agree_literal = true;
  for (int k = 0; k <= k_max; ++k) {
    rep.agree_pinned = rep.agree_pinned && rep.direct[static_cast<std::size_t>(k)] == rep.exp_pinned[static_cast<std::size_t>(k)];
    rep.agree_literal = rep.agree_literal && rep.direct[static_cast<std::size_t>(k)] == rep.exp_literal[static_cast<std::size_t>(k)];
  }
  if (table) {
    for (int k = 0; k <= k_max; ++k) {
      rep.direct_numbers.push_back(table->evaluate(rep.direct[static_cast<std::size_t>(k)]));
      rep.exp_numbers.push_back(table->evaluate(rep.exp_pinned[static_cast<std::size_t>(k)]));
    }
  }
  return rep;
}

}  // namespace tautres
