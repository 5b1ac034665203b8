#include "tautres/positivity.hpp"

#include <algorithm>
#include <functional>

namespace tautres {

std::vector<std::vector<int>> chern_monomials(int degree, int max_index) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int top) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int i = std::min(left, top); i >= 1; --i) {
      cur.push_back(i);
      rec(left - i, i);
      cur.pop_back();
    }
  };
  rec(degree, max_index);
  return out;
}

namespace {

std::string monomial_text(const Monomial& m) {
  auto& reg = VarRegistry::global();
  std::vector<std::string> parts;
  for (const auto& [v, e] : m) parts.push_back(reg.info(v).name + (e == 1 ? "" : "^" + std::to_string(e)));
  std::sort(parts.begin(), parts.end());
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "*") + p;
  return s.empty() ? "1" : s;
}

std::string monomial_phi_text(const std::vector<int>& idx) {
  std::string s;
  for (int i : idx) s += (s.empty() ? "c" : "*c") + std::to_string(i);
  return s;
}

}  // namespace

PositivityReport positivity_scan(const PositivityScan& scan, const EvalOptions& opts) {
  PositivityReport rep;
  for (int n : scan.n_values)
    for (int k : scan.k_values)
      for (int r : scan.r_values) {
        std::vector<std::pair<std::string, std::shared_ptr<const Integrand>>> phis;
        if (scan.phis.empty()) {
          auto monos = chern_monomials(n * k, r * k);
          if (monos.size() > scan.monomial_cap) monos.resize(scan.monomial_cap);
          for (const auto& m : monos)
            phis.emplace_back(monomial_phi_text(m), std::make_shared<PhiIntegrand>(phi_monomial(m)));
        } else {
          for (const auto& p : scan.phis) {
            if (p == "segre")
              phis.emplace_back(p, std::make_shared<MultiplicativeIntegrand>(MultiplicativeIntegrand::segre()));
            else if (p == "chern")
              phis.emplace_back(p, std::make_shared<MultiplicativeIntegrand>(MultiplicativeIntegrand::chern()));
            else
              phis.emplace_back(p, std::make_shared<PhiIntegrand>(parse_phi(p)));
          }
        }
        for (const auto& [text, phi] : phis) {
          ProblemSpec spec;
          spec.n = n;
          spec.k = k;
          spec.V = BundleSpec::formal(r);
          spec.phi = phi;
          const auto u = integrate_ghilb(spec, nullptr, opts);
          std::vector<PositivityRow> rows;
          for (const auto& t : u.universal.terms())
            rows.push_back({n, k, r, text, t.coeff, monomial_text(t.mono), sgn(t.coeff)});
          std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.monomial < b.monomial; });
          for (auto& row : rows) {
            if (row.sign < 0) ++rep.negative;
            rep.rows.push_back(std::move(row));
          }
        }
      }
  return rep;
}

}  // namespace tautres
