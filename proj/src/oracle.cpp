#include "tautres/oracle.hpp"

#include <functional>

#include "tautres/parallel.hpp"
#include "tautres/tautint.hpp"

namespace tautres {

int YoungDiagram::size() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

std::vector<std::pair<int, int>> YoungDiagram::boxes() const {
  std::vector<std::pair<int, int>> b;
  for (std::size_t j = 0; j < parts.size(); ++j)
    for (int i = 0; i < parts[j]; ++i) b.emplace_back(i, static_cast<int>(j));
  return b;
}

int YoungDiagram::arm(int i, int j) const { return parts[static_cast<std::size_t>(j)] - i - 1; }

int YoungDiagram::leg(int i, int j) const {
  int l = 0;
  for (std::size_t jj = static_cast<std::size_t>(j) + 1; jj < parts.size(); ++jj)
    if (parts[jj] > i) ++l;
  return l;
}

std::string YoungDiagram::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
  return s + ")";
}

std::vector<YoungDiagram> hilb_fixed_points(int k) {
  std::vector<YoungDiagram> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.push_back({cur});
      return;
    }
    for (int p = std::min(left, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  if (k == 0) return {YoungDiagram{}};
  rec(k, k);
  return out;
}

std::vector<MultiPoly> tangent_weights(const YoungDiagram& mu, const MultiPoly& l1, const MultiPoly& l2) {
  std::vector<MultiPoly> w;
  for (auto [i, j] : mu.boxes()) {
    const int a = mu.arm(i, j), l = mu.leg(i, j);
    w.push_back(l1 * Rational(a + 1) - l2 * Rational(l));
    w.push_back(l1 * Rational(-a) + l2 * Rational(l + 1));
  }
  return w;
}

std::vector<MultiPoly> taut_weights(const YoungDiagram& mu, const MultiPoly& l1, const MultiPoly& l2,
                                    const std::vector<MultiPoly>& v_weights) {
  std::vector<MultiPoly> w;
  for (auto [i, j] : mu.boxes())
    for (const auto& v : v_weights) w.push_back(v - l1 * Rational(i) - l2 * Rational(j));
  return w;
}

ToricSurface projective_plane_chart(const std::vector<int>& degrees) {
  auto& reg = VarRegistry::global();
  ToricSurface s{"p2", true, {}};
  for (int i = 0; i < 3; ++i) {
    const MultiPoly wi = MultiPoly::var(reg.weight(i));
    std::vector<MultiPoly> others;
    for (int j = 0; j < 3; ++j)
      if (j != i) others.push_back(MultiPoly::var(reg.weight(j)) - wi);
    ChartPoint p{others[0], others[1], {}};
    for (int d : degrees) p.v_weights.push_back(wi * Rational(-d));
    s.points.push_back(std::move(p));
  }
  return s;
}

ToricSurface p1xp1_chart(const std::vector<std::pair<int, int>>& degrees) {
  auto& reg = VarRegistry::global();
  ToricSurface s{"p1xp1", true, {}};
  const MultiPoly u[2] = {MultiPoly::var(reg.weight(0)), MultiPoly::var(reg.weight(1))};
  const MultiPoly v[2] = {MultiPoly::var(reg.weight(2)), MultiPoly::var(reg.weight(3))};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      ChartPoint p{u[1 - a] - u[a], v[1 - b] - v[b], {}};
      for (auto [x, y] : degrees) p.v_weights.push_back(u[a] * Rational(-x) + v[b] * Rational(-y));
      s.points.push_back(std::move(p));
    }
  return s;
}

ToricSurface affine_plane_chart(const std::vector<MultiPoly>& v_weights) {
  auto& reg = VarRegistry::global();
  return ToricSurface{"affine", false, {ChartPoint{MultiPoly::var(reg.lambda(0, 1)), MultiPoly::var(reg.lambda(0, 2)), v_weights}}};
}

namespace {

// All ways to put a diagram at every chart point with total size k.
std::vector<std::vector<YoungDiagram>> fixed_point_tuples(std::size_t points, int k) {
  std::vector<std::vector<YoungDiagram>> by_size(static_cast<std::size_t>(k) + 1);
  for (int m = 0; m <= k; ++m) by_size[static_cast<std::size_t>(m)] = hilb_fixed_points(m);
  std::vector<std::vector<YoungDiagram>> out;
  std::vector<YoungDiagram> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t p, int left) {
    if (p + 1 == points) {
      for (const auto& d : by_size[static_cast<std::size_t>(left)]) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
      }
      return;
    }
    for (int m = 0; m <= left; ++m)
      for (const auto& d : by_size[static_cast<std::size_t>(m)]) {
        cur.push_back(d);
        rec(p + 1, left - m);
        cur.pop_back();
      }
  };
  rec(0, k);
  return out;
}

void collect(const ToricSurface& s, const std::vector<YoungDiagram>& tuple, std::vector<MultiPoly>& taut,
             std::vector<MultiPoly>& tangent) {
  for (std::size_t p = 0; p < tuple.size(); ++p) {
    const auto& cp = s.points[p];
    auto tw = taut_weights(tuple[p], cp.l1, cp.l2, cp.v_weights);
    auto gw = tangent_weights(tuple[p], cp.l1, cp.l2);
    taut.insert(taut.end(), tw.begin(), tw.end());
    tangent.insert(tangent.end(), gw.begin(), gw.end());
  }
}

}  // namespace

OracleResult ab_integrate(const ToricSurface& surface, int k, const ChernExpr& phi, int threads, bool keep) {
  int deg = 0;
  if (!phi.is_homogeneous(&deg)) throw SpecError("integrand is not homogeneous");
  return ab_integrate(surface, k, PhiIntegrand(phi), threads, keep);
}

OracleResult ab_integrate(const ToricSurface& surface, int k, const Integrand& phi, int threads, bool keep) {
  if (k < 1) throw SpecError("k must be >= 1");
  int deg = phi.fixed_degree();
  if (deg < 0) {
    if (!surface.compact) throw SpecError("total class needs a compact surface to pick its degree");
    deg = 2 * k;
  }
  if (surface.compact && deg != 2 * k)
    throw SpecError("integrand degree " + std::to_string(deg) + " differs from dim Hilb^k = " + std::to_string(2 * k));
  const auto tuples = fixed_point_tuples(surface.points.size(), k);
  std::vector<RationalFunction> parts(tuples.size());
  parallel_for(tuples.size(), threads, [&](std::size_t i) {
    std::vector<MultiPoly> taut, tangent;
    collect(surface, tuples[i], taut, tangent);
    for (const auto& t : tangent)
      if (t.is_zero()) throw ConsistencyError("vanishing tangent weight at a fixed point (non-generic weights)");
    parts[i] = RationalFunction::quotient(phi.on_roots(taut, deg), tangent);
  });
  OracleResult res;
  res.fixed_point_count = tuples.size();
  if (keep)
    for (std::size_t i = 0; i < tuples.size(); ++i) res.contributions.push_back({tuples[i], parts[i]});
  // pairwise tree reduction, deterministic
  std::vector<RationalFunction> level = std::move(parts);
  while (level.size() > 1) {
    std::vector<RationalFunction> next((level.size() + 1) / 2);
    parallel_for(next.size(), threads, [&](std::size_t i) {
      next[i] = level[2 * i];
      if (2 * i + 1 < level.size()) next[i] += level[2 * i + 1];
      next[i].reduce();
    });
    level = std::move(next);
  }
  res.value = level.empty() ? RationalFunction() : level[0];
  res.value.reduce();
  if (surface.compact) {
    if (!res.value.is_polynomial() || !res.value.numerator().is_constant())
      throw ConsistencyError("localization sum on a compact surface still depends on the torus weights: " +
                             res.value.str());
    res.number = res.value.numerator().constant_term();
  }
  return res;
}

Rational ab_integrate_specialized(const ToricSurface& surface, int k, const ChernExpr& phi,
                                  const std::map<VarId, Rational>& values) {
  std::map<VarId, MultiPoly> bind;
  for (const auto& [v, x] : values) bind[v] = MultiPoly(x);
  Rational total = 0;
  for (const auto& tuple : fixed_point_tuples(surface.points.size(), k)) {
    std::vector<MultiPoly> taut, tangent;
    collect(surface, tuple, taut, tangent);
    for (auto& t : taut) t = t.substitute(bind);
    Rational den = 1;
    for (const auto& t : tangent) {
      const MultiPoly x = t.substitute(bind);
      if (!x.is_constant() || x.is_zero()) throw ConsistencyError("specialized tangent weight is zero or not numeric");
      den *= x.constant_term();
    }
    const MultiPoly num = phi_eval_on_roots(phi, taut);
    if (!num.is_constant()) throw SpecError("not every weight was specialized");
    total += num.constant_term() / den;
  }
  return total;
}

}  // namespace tautres
