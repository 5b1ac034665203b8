#include "tautres/tautint.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "tautres/parallel.hpp"

namespace tautres {

std::string to_string(Convention c) { return c == Convention::Pinned ? "pinned" : "as_printed"; }

Convention convention_from_string(const std::string& s) {
  if (s == "pinned") return Convention::Pinned;
  if (s == "as_printed") return Convention::AsPrinted;
  throw SpecError("unknown convention '" + s + "' (expected pinned or as_printed)");
}

Rational block_weight(int m, Convention c) {
  if (c == Convention::Pinned) return Rational(factorial(static_cast<unsigned>(m - 1)));
  return (m - 1) % 2 == 0 ? Rational(1) : Rational(-1);
}

Rational global_weight(int k, Convention c) {
  if (c == Convention::Pinned) return Rational(1) / Rational(factorial(static_cast<unsigned>(k)));
  return 1;
}

// ---- Q table ----

std::string q_polynomial_text(int j) {
  switch (j) {
    case 2:
    case 3: return "1";
    case 4: return "2*z1+z2-z4";
    case 5: return "(2*z1+z2-z5)*(2*z1^2+3*z1*z2-2*z1*z5+2*z2*z3-z2*z4-z2*z5-z3*z4+z4*z5)";
    default: throw SpecError("Q_" + std::to_string(j) + " unknown; supply via --q-poly");
  }
}

static MultiPoly eval_in_z(const std::string& text, int j, const std::vector<VarId>& zs) {
  if (static_cast<int>(zs.size()) < j) throw std::invalid_argument("Q_j needs j residue variables");
  auto ast = parse_expression(text, {"z"});
  return evaluate_expression(*ast, [&](const std::string&, int i) -> MultiPoly {
    if (i > j) throw SpecError("Q_" + std::to_string(j) + " uses z" + std::to_string(i));
    return MultiPoly::var(zs[static_cast<std::size_t>(i - 1)]);
  });
}

MultiPoly q_polynomial(int j, const std::vector<VarId>& zs) { return eval_in_z(q_polynomial_text(j), j, zs); }

void QTable::set_override(int j, const std::string& expr) {
  if (j < 1) throw SpecError("Q index must be >= 1");
  std::vector<VarId> probe;
  auto& reg = VarRegistry::global();
  for (int i = 1; i <= j; ++i) probe.push_back(reg.z(0, i));
  MultiPoly p;
  try {
    p = eval_in_z(expr, j, probe);
  } catch (const ParseError& e) {
    throw SpecError(std::string("bad Q override: ") + e.what());
  }
  int d = 0;
  if (!p.is_homogeneous(&d)) throw SpecError("Q_" + std::to_string(j) + " override is not homogeneous");
  overrides_[j] = expr;
}

bool QTable::has(int j) const { return overrides_.count(j) || (j >= 1 && j <= 5); }

MultiPoly QTable::get(int j, const std::vector<VarId>& zs) const {
  if (auto it = overrides_.find(j); it != overrides_.end()) return eval_in_z(it->second, j, zs);
  if (j == 1) return MultiPoly(1);
  return q_polynomial(j, zs);
}

// ---- problem spec ----

void ProblemSpec::validate() const {
  if (n < 0) throw SpecError("n must be >= 0");
  if (k < 1 || k > kMaxPartitionK) throw SpecError("k must be in 1.." + std::to_string(kMaxPartitionK));
  if (V.rank < 1) throw SpecError("bundle rank must be >= 1");
  if (!phi) throw SpecError("missing integrand");
  const int d = phi->fixed_degree();
  if (phi->fixed_degree() != -1 && d != n * k)
    throw SpecError("integrand has degree " + std::to_string(d) + " but n*k = " + std::to_string(n * k));
  if (auto* p = dynamic_cast<const PhiIntegrand*>(phi.get())) {
    int deg = 0;
    if (!p->phi().is_homogeneous(&deg)) throw SpecError("integrand is not homogeneous");
    if (p->phi().max_index() > V.rank * k)
      throw SpecError("integrand uses c" + std::to_string(p->phi().max_index()) + " beyond rank " +
                      std::to_string(V.rank * k));
  }
  if (mode == Mode::Manifold && V.presentation != BundleSpec::Presentation::Formal)
    throw SpecError("manifold mode needs a formal bundle");
  if (mode == Mode::Equivariant) {
    if (V.presentation != BundleSpec::Presentation::ExplicitWeights) throw SpecError("equivariant mode needs bundle weights");
    if (static_cast<int>(tangent_weights.size()) != n) throw SpecError("equivariant mode needs n tangent weights");
  }
}

// ---- factor bookkeeping ----

static bool factor_tagged(VarKind k) { return has_factor(k) || k == VarKind::ResidueZ; }

MultiPoly relabel_factors(const MultiPoly& p, const std::map<int, int>& map) {
  auto& reg = VarRegistry::global();
  std::map<VarId, VarId> memo;
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (const auto& [v, e] : t.mono) {
      auto it = memo.find(v);
      if (it == memo.end()) {
        VarKey key = reg.info(v).key;
        VarId w = v;
        if (factor_tagged(key.kind)) {
          if (auto f = map.find(key.group); f != map.end()) {
            key.group = f->second;
            w = reg.intern(key);
          }
        }
        it = memo.emplace(v, w).first;
      }
      m.emplace_back(it->second, e);
    }
    std::sort(m.begin(), m.end());
    out.push_back(Term{std::move(m), t.coeff});
  }
  return MultiPoly::from_terms(std::move(out));
}

namespace {
std::mutex g_number_mutex;
std::map<std::string, VarId> g_number_by_name;
std::map<VarId, Monomial> g_number_mono;
}  // namespace

VarId chern_number_var(const Monomial& mono) {
  const std::string name = "N[" + (mono.empty() ? std::string("1") : mono_str(mono)) + "]";
  std::lock_guard lock(g_number_mutex);
  if (auto it = g_number_by_name.find(name); it != g_number_by_name.end()) return it->second;
  const int idx = static_cast<int>(g_number_by_name.size());
  const VarId v = VarRegistry::global().intern_named({VarKind::ChernNumber, 0, idx}, name);
  g_number_by_name.emplace(name, v);
  g_number_mono.emplace(v, mono);
  return v;
}

Monomial chern_number_monomial(VarId v) {
  std::lock_guard lock(g_number_mutex);
  return g_number_mono.at(v);
}

MultiPoly collapse_to_chern_numbers(const MultiPoly& value, int factors) {
  auto& reg = VarRegistry::global();
  std::vector<Term> out;
  for (const auto& t : value.terms()) {
    std::map<int, Monomial> per;
    for (int l = 1; l <= factors; ++l) per[l];
    for (const auto& [v, e] : t.mono) {
      VarKey key = reg.info(v).key;
      if (!has_factor(key.kind) || key.group < 1 || key.group > factors)
        throw ConsistencyError("cannot collapse variable " + reg.info(v).name);
      const int l = key.group;
      key.group = 0;
      per[l].emplace_back(reg.intern(key), e);
    }
    Monomial m;
    for (auto& [l, fm] : per) {
      std::sort(fm.begin(), fm.end());
      m = mono_mul(m, Monomial{{chern_number_var(fm), 1}});
    }
    out.push_back(Term{std::move(m), t.coeff});
  }
  return MultiPoly::from_terms(std::move(out));
}

std::map<VarId, MultiPoly> segre_to_chern_bindings(int n, int factor) {
  auto& reg = VarRegistry::global();
  std::vector<MultiPoly> c;
  for (int i = 1; i <= n; ++i) c.push_back(MultiPoly::var(reg.chern_x(factor, i)));
  const auto s = segre_from_chern(c, n);
  std::map<VarId, MultiPoly> bind;
  for (int j = 1; j <= n; ++j) bind[reg.segre_x(factor, j)] = s[static_cast<std::size_t>(j)];
  return bind;
}

// ---- intersection tables ----

IntersectionTable IntersectionTable::from_model(int n, const std::vector<MultiPoly>& cX, const std::vector<MultiPoly>& cV,
                                                const std::map<Monomial, Rational>& top) {
  auto& reg = VarRegistry::global();
  IntersectionTable t;
  t.n = n;
  std::vector<std::pair<VarId, int>> vars;  // (variable, degree)
  std::map<VarId, MultiPoly> bind;
  for (int i = 1; i <= n; ++i) {
    vars.emplace_back(reg.chern_x(0, i), i);
    bind[reg.chern_x(0, i)] = i <= static_cast<int>(cX.size()) ? cX[static_cast<std::size_t>(i - 1)] : MultiPoly();
  }
  for (int j = 1; j <= static_cast<int>(cV.size()); ++j) {
    vars.emplace_back(reg.chern_v(0, j), j);
    bind[reg.chern_v(0, j)] = cV[static_cast<std::size_t>(j - 1)];
  }
  Monomial cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (left == 0) {
      Monomial m = cur;
      std::sort(m.begin(), m.end());
      const MultiPoly g = MultiPoly::monomial(m).substitute(bind);
      Rational v = 0;
      for (const auto& term : g.terms())
        if (auto it = top.find(term.mono); it != top.end()) v += term.coeff * it->second;
      t.entries[m] = v;
      return;
    }
    if (i == vars.size()) return;
    const auto [var, deg] = vars[i];
    for (int e = 0; e * deg <= left; ++e) {
      if (e > 0) cur.emplace_back(var, e);
      rec(i + 1, left - e * deg);
      if (e > 0) cur.pop_back();
    }
  };
  rec(0, n);
  return t;
}

static std::vector<MultiPoly> line_sum_chern(const std::vector<MultiPoly>& c1s) {
  auto e = elementary_symmetric(c1s, static_cast<int>(c1s.size()));
  return {e.begin() + 1, e.end()};
}

IntersectionTable IntersectionTable::projective_space(int n, const std::vector<int>& degrees) {
  auto& reg = VarRegistry::global();
  const MultiPoly h = MultiPoly::var(reg.gen(1));
  std::vector<MultiPoly> cX;
  for (int i = 1; i <= n; ++i)
    cX.push_back(h.pow(static_cast<unsigned>(i)) * Rational(binomial(static_cast<unsigned>(n + 1), static_cast<unsigned>(i))));
  std::vector<MultiPoly> roots;
  for (int d : degrees) roots.push_back(h * Rational(d));
  Monomial top = n == 0 ? Monomial{} : Monomial{{reg.gen(1), n}};
  return from_model(n, cX, line_sum_chern(roots), {{top, 1}});
}

IntersectionTable IntersectionTable::projective_plane(const std::vector<int>& degrees) {
  return projective_space(2, degrees);
}

IntersectionTable IntersectionTable::p1xp1(const std::vector<std::pair<int, int>>& degrees) {
  auto& reg = VarRegistry::global();
  const MultiPoly a = MultiPoly::var(reg.gen(1)), b = MultiPoly::var(reg.gen(2));
  const MultiPoly c = (MultiPoly(1) + a * Rational(2)) * (MultiPoly(1) + b * Rational(2));
  std::vector<MultiPoly> cX{c.weighted_degree_part(1), c.weighted_degree_part(2)};
  std::vector<MultiPoly> roots;
  for (auto [x, y] : degrees) roots.push_back(a * Rational(x) + b * Rational(y));
  Monomial top{{std::min(reg.gen(1), reg.gen(2)), 1}, {std::max(reg.gen(1), reg.gen(2)), 1}};
  return from_model(2, cX, line_sum_chern(roots), {{top, 1}});
}

Rational IntersectionTable::integrate(const Monomial& mono) const {
  MultiPoly p = MultiPoly::monomial(mono).substitute(segre_to_chern_bindings(n, 0));
  Rational v = 0;
  for (const auto& t : p.terms()) {
    auto it = entries.find(t.mono);
    if (it == entries.end()) throw SpecError("intersection table has no entry for " + mono_str(t.mono));
    v += t.coeff * it->second;
  }
  return v;
}

Rational IntersectionTable::evaluate(const MultiPoly& universal) const {
  std::map<VarId, Rational> cache;
  Rational total = 0;
  for (const auto& t : universal.terms()) {
    Rational v = t.coeff;
    for (const auto& [var, e] : t.mono) {
      auto it = cache.find(var);
      if (it == cache.end()) it = cache.emplace(var, integrate(chern_number_monomial(var))).first;
      for (int i = 0; i < e; ++i) v *= it->second;
    }
    total += v;
  }
  return total;
}

// ---- assembly ----

namespace {

struct Block {
  int factor;
  int size;
  std::vector<VarId> zs;
};

MultiPoly vandermonde(const std::vector<VarId>& zs) {
  MultiPoly v(1);
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = i + 1; j < zs.size(); ++j) v *= MultiPoly::var(zs[i]) - MultiPoly::var(zs[j]);
  return v;
}

MultiPoly to_factor(const MultiPoly& p, int l) { return relabel_factors(p, {{0, l}}); }

}  // namespace

RationalTerm assemble_partition_term(const ProblemSpec& spec, const std::vector<int>& sizes, const EvalOptions& opts) {
  auto& reg = VarRegistry::global();
  static const QTable default_q;
  const QTable& qt = opts.qtable ? *opts.qtable : default_q;
  const int n = spec.n, r = spec.V.rank;
  const int s = static_cast<int>(sizes.size());
  const bool equivariant = spec.mode == Mode::Equivariant;

  std::vector<Block> blocks;
  for (int l = 1; l <= s; ++l) {
    Block b{l, sizes[static_cast<std::size_t>(l - 1)], {}};
    for (int i = 1; i < b.size; ++i) b.zs.push_back(reg.z(l, i));
    blocks.push_back(std::move(b));
  }

  std::vector<MultiPoly> roots;
  RationalTerm term;
  MultiPoly kernel(1);
  for (const auto& b : blocks) {
    std::vector<MultiPoly> base;
    std::vector<MultiPoly> lambdas;
    if (equivariant) {
      for (const auto& w : spec.V.weights) base.push_back(opts.per_factor_torus ? to_factor(w, b.factor) : w);
      for (const auto& w : spec.tangent_weights) lambdas.push_back(opts.per_factor_torus ? to_factor(w, b.factor) : w);
    } else {
      for (int t = 1; t <= r; ++t) base.push_back(MultiPoly::var(reg.theta(b.factor, t)));
    }
    roots.insert(roots.end(), base.begin(), base.end());
    for (VarId z : b.zs) {
      const MultiPoly zt = equivariant ? MultiPoly::var(z) * Rational(opts.root_sign) : MultiPoly::var(z);
      auto tw = twist_roots(base, zt);
      roots.insert(roots.end(), tw.begin(), tw.end());
    }
    if (b.size == 1) continue;
    const int d = b.size - 1;
    if (!qt.has(d)) throw SpecError("Q_" + std::to_string(d) + " unknown; supply via --q-poly");
    kernel *= vandermonde(b.zs) * qt.get(d, b.zs);
    for (int q = 1; q <= d; ++q)
      for (int i = 1; i <= q; ++i)
        for (int j = i; i + j <= q; ++j) {
          LinearForm f;
          f.coeffs[b.zs[static_cast<std::size_t>(i - 1)]] += 1;
          f.coeffs[b.zs[static_cast<std::size_t>(j - 1)]] += 1;
          f.coeffs[b.zs[static_cast<std::size_t>(q - 1)]] -= 1;
          term.factors.push_back({f, 1});
        }
    for (VarId z : b.zs) {
      LinearForm zf;
      zf.coeffs[z] = 1;
      term.factors.push_back({zf, equivariant ? 1 : n + 1});
      if (equivariant) {
        for (const auto& lam : lambdas) {
          LinearForm f;
          f.constant = lam;
          f.coeffs[z] = -1;
          term.factors.push_back({f, 1});
        }
      } else {
        MultiPoly sx(1);
        for (int j = 1; j <= n; ++j) sx += MultiPoly::var(reg.segre_x(b.factor, j)).shifted({{z, -j}});
        kernel *= sx;
      }
    }
    term.z_order.insert(term.z_order.end(), b.zs.begin(), b.zs.end());
  }
  const MultiPoly phi = spec.phi->on_roots(roots, n * spec.k);
  term.numerator = phi * kernel;
  return term;
}

namespace {

struct Signature {
  std::vector<int> sizes;  // sorted descending
  RationalTerm term;
  std::vector<MultiPoly> chunks;
  std::vector<MultiPoly> chunk_results;
  MultiPoly residue;
  MultiPoly value;
  std::size_t pruned = 0;
};

void check_degree(const RationalTerm& t, int n, int k, int s) {
  if (t.numerator.is_zero()) return;
  int deg = 0;
  if (!t.numerator.is_homogeneous(&deg)) throw ConsistencyError("assembled numerator is not homogeneous");
  int den = 0;
  for (const auto& f : t.factors) den += f.mult;
  const int expect = (n + 1) * s - k;
  if (deg - den != expect)
    throw ConsistencyError("partition integrand has degree " + std::to_string(deg - den) + ", expected (n+1)s-k = " +
                           std::to_string(expect));
}

UniversalIntegral run(const ProblemSpec& spec, const IntersectionTable* table, const EvalOptions& opts) {
  spec.validate();
  auto& reg = VarRegistry::global();
  const int n = spec.n, k = spec.k, r = spec.V.rank;
  const bool equivariant = spec.mode == Mode::Equivariant;
  const int threads = resolve_threads(opts.threads);
  const auto parts = enumerate_partitions(k);

  std::vector<Signature> sigs;
  std::map<std::vector<int>, std::size_t> sig_index;
  for (const auto& p : parts) {
    auto sz = p.block_sizes();
    std::sort(sz.rbegin(), sz.rend());
    if (!sig_index.count(sz)) {
      sig_index[sz] = sigs.size();
      sigs.push_back(Signature{sz, {}, {}, {}, {}, {}, 0});
    }
  }
  // pre-intern everything the workers touch so the registry is read-mostly
  for (int l = 0; l <= k; ++l) {
    for (int i = 1; i <= k; ++i) (void)reg.z(l, i);
    for (int t = 1; t <= r; ++t) (void)reg.theta(l, t), (void)reg.chern_v(l, t);
    for (int j = 1; j <= n; ++j) (void)reg.segre_x(l, j), (void)reg.chern_x(l, j), (void)reg.lambda(l, j);
  }

  parallel_for(sigs.size(), threads, [&](std::size_t i) {
    auto& sg = sigs[i];
    sg.term = assemble_partition_term(spec, sg.sizes, opts);
    check_degree(sg.term, n, k, static_cast<int>(sg.sizes.size()));
    if (opts.prune) sg.term = prune_numerator(sg.term, &sg.pruned);
    const auto& ts = sg.term.numerator.terms();
    const std::size_t nchunks = std::max<std::size_t>(1, std::min<std::size_t>(ts.size() / 32, 4 * static_cast<std::size_t>(threads)));
    for (std::size_t c = 0; c < nchunks; ++c) {
      const std::size_t lo = ts.size() * c / nchunks, hi = ts.size() * (c + 1) / nchunks;
      sg.chunks.push_back(MultiPoly::from_terms({ts.begin() + static_cast<long>(lo), ts.begin() + static_cast<long>(hi)}));
    }
    sg.chunk_results.resize(nchunks);
  });

  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < sigs.size(); ++i)
    for (std::size_t c = 0; c < sigs[i].chunks.size(); ++c) jobs.emplace_back(i, c);
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    auto& sg = sigs[jobs[j].first];
    RationalTerm t = sg.term;
    t.numerator = sg.chunks[jobs[j].second];
    sg.chunk_results[jobs[j].second] = iterated_residue(t);
  });

  parallel_for(sigs.size(), threads, [&](std::size_t i) {
    auto& sg = sigs[i];
    for (const auto& c : sg.chunk_results) sg.residue += c;
    const int s = static_cast<int>(sg.sizes.size());
    int deg = 0;
    if (!sg.residue.is_homogeneous(&deg) || (!sg.residue.is_zero() && deg != n * s))
      throw ConsistencyError("residue is not homogeneous of degree n*s = " + std::to_string(n * s));
    if (equivariant) {
      sg.value = sg.residue;
      return;
    }
    MultiPoly v = sg.residue;
    for (int l = 1; l <= s; ++l) {
      std::vector<VarId> block, targets;
      for (int t = 1; t <= r; ++t) block.push_back(reg.theta(l, t)), targets.push_back(reg.chern_v(l, t));
      try {
        v = symmetric_reduce(v, block, targets);
      } catch (const AsymmetryError& e) {
        throw ConsistencyError(std::string("residue not symmetric in factor roots: ") + e.what());
      }
    }
    std::map<int, int> grade;
    for (int l = 1; l <= s; ++l) grade[l] = n;
    sg.value = v.graded_part(grade);
  });

  UniversalIntegral out;
  out.n = n;
  out.k = k;
  out.r = r;
  out.mode = spec.mode;
  out.convention = opts.convention;
  out.notes.push_back("convention=" + to_string(opts.convention));
  if (opts.qtable)
    for (const auto& [j, e] : opts.qtable->overrides()) out.notes.push_back("Q_" + std::to_string(j) + " override: " + e);
  if (equivariant) {
    out.notes.push_back("equivariant kernel: (z_1...z_d)^1 prod(lambda_j - z_i), roots w" +
                        std::string(opts.root_sign < 0 ? "-" : "+") + "z, " +
                        (opts.per_factor_torus ? "torus copy per factor" : "shared torus"));
  }
  const Rational gw = global_weight(k, opts.convention);
  for (const auto& p : parts) {
    auto sizes = p.block_sizes();
    std::vector<std::size_t> order(sizes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });
    std::map<int, int> relabel;
    for (std::size_t c = 0; c < order.size(); ++c) relabel[static_cast<int>(c) + 1] = static_cast<int>(order[c]) + 1;
    auto sorted = sizes;
    std::sort(sorted.rbegin(), sorted.rend());
    const auto& sg = sigs[sig_index.at(sorted)];
    PartitionTerm pt;
    pt.partition = p;
    pt.weight = gw;
    for (int m : sizes) pt.weight *= block_weight(m, opts.convention);
    const bool shared = equivariant && !opts.per_factor_torus;
    pt.residue = shared ? sg.residue : relabel_factors(sg.residue, relabel);
    pt.value = shared ? sg.value : relabel_factors(sg.value, relabel);
    pt.pruned_monomials = sg.pruned;
    out.terms.push_back(std::move(pt));
  }
  if (equivariant) {
    for (const auto& pt : out.terms) {
      std::vector<MultiPoly> den;
      const int s = static_cast<int>(pt.partition.size());
      for (int l = 1; l <= s; ++l)
        for (const auto& w : spec.tangent_weights) den.push_back(opts.per_factor_torus ? to_factor(w, l) : w);
      out.equivariant_total += RationalFunction::quotient(pt.value * pt.weight, den);
    }
    out.equivariant_total.reduce();
  } else {
    for (const auto& pt : out.terms)
      out.universal += collapse_to_chern_numbers(pt.value, static_cast<int>(pt.partition.size())) * pt.weight;
    if (table) out.total = table->evaluate(out.universal);
  }
  return out;
}

}  // namespace

UniversalIntegral integrate_ghilb(const ProblemSpec& spec, const IntersectionTable* table, const EvalOptions& opts) {
  if (spec.mode != Mode::Manifold) throw SpecError("integrate_ghilb needs manifold mode");
  return run(spec, table, opts);
}

UniversalIntegral integrate_equivariant(const ProblemSpec& spec, const EvalOptions& opts) {
  if (spec.mode != Mode::Equivariant) throw SpecError("integrate_equivariant needs equivariant mode");
  return run(spec, nullptr, opts);
}

}  // namespace tautres
