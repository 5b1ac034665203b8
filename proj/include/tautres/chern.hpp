#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tautres/expr_parser.hpp"
#include "tautres/multipoly.hpp"

namespace tautres {

// A parsed integrand polynomial in c_1, c_2, ... of the tautological bundle.
struct ChernExpr {
  std::string source;
  ExprPtr ast;
  MultiPoly expanded;  // in TautClass variables

  int max_index() const;
  bool is_homogeneous(int* degree) const { return expanded.is_homogeneous(degree); }
  std::string str() const { return source.empty() ? expanded.str() : source; }
};

ChernExpr parse_phi(const std::string& source);
ChernExpr phi_from_poly(const MultiPoly& p);
// Monomial c_{i1} c_{i2} ... from a list of indices.
ChernExpr phi_monomial(const std::vector<int>& indices);

struct BundleSpec {
  enum class Presentation { Formal, ExplicitWeights };
  int rank = 1;
  Presentation presentation = Presentation::Formal;
  std::vector<MultiPoly> weights;  // ExplicitWeights only, size == rank

  static BundleSpec formal(int rank) { return {rank, Presentation::Formal, {}}; }
  static BundleSpec explicit_weights(std::vector<MultiPoly> w) {
    const int r = static_cast<int>(w.size());
    return {r, Presentation::ExplicitWeights, std::move(w)};
  }
};

// s_0 = 1, s_1, ..., s_order with (sum s)(1 + sum c) = 1 up to degree order.
// c[i] is c_{i+1}.
std::vector<MultiPoly> segre_from_chern(const std::vector<MultiPoly>& c, int order);

std::vector<MultiPoly> twist_roots(const std::vector<MultiPoly>& theta, const MultiPoly& z);

// e_0..e_upto of the roots.
std::vector<MultiPoly> elementary_symmetric(const std::vector<MultiPoly>& roots, int upto);

MultiPoly phi_eval_on_roots(const ChernExpr& phi, const std::vector<MultiPoly>& roots);

struct AsymmetryError : std::runtime_error {
  VarId a, b;
  AsymmetryError(VarId x, VarId y, const std::string& msg) : std::runtime_error(msg), a(x), b(y) {}
};

// Rewrite p, symmetric in `block`, in terms of targets[i] = e_{i+1}(block).
MultiPoly symmetric_reduce(const MultiPoly& p, const std::vector<VarId>& block, const std::vector<VarId>& targets);

// Product of a and b dropping terms of weighted degree above max_degree.
MultiPoly mul_truncated(const MultiPoly& a, const MultiPoly& b, int max_degree);
MultiPoly truncate_degree(const MultiPoly& p, int max_degree);

// Characteristic-class integrand evaluated on the Chern roots of V^[k]
// (or its approximating bundles). Returns the weighted-degree `degree` part.
class Integrand {
 public:
  virtual ~Integrand() = default;
  virtual MultiPoly on_roots(const std::vector<MultiPoly>& roots, int degree) const = 0;
  virtual std::string describe() const = 0;
  // Degree of the class if homogeneous, -1 if it is an inhomogeneous total class.
  virtual int fixed_degree() const = 0;
};

class PhiIntegrand : public Integrand {
 public:
  explicit PhiIntegrand(ChernExpr phi) : phi_(std::move(phi)) {}
  MultiPoly on_roots(const std::vector<MultiPoly>& roots, int degree) const override;
  std::string describe() const override { return phi_.str(); }
  int fixed_degree() const override;
  const ChernExpr& phi() const { return phi_; }

 private:
  ChernExpr phi_;
};

// Total class prod_roots (a_0 + a_1 x + a_2 x^2 + ...), a_0 = 1.
class MultiplicativeIntegrand : public Integrand {
 public:
  MultiplicativeIntegrand(std::string name, std::vector<Rational> coeffs);
  static MultiplicativeIntegrand segre();  // 1/(1+x)
  static MultiplicativeIntegrand chern();  // 1+x
  MultiPoly on_roots(const std::vector<MultiPoly>& roots, int degree) const override;
  std::string describe() const override { return name_; }
  int fixed_degree() const override { return -1; }
  Rational coeff(std::size_t i) const { return i < a_.size() ? a_[i] : Rational(0); }
  const std::string& name() const { return name_; }
  bool series_is_geometric_segre() const { return name_ == "segre"; }

 private:
  std::string name_;
  std::vector<Rational> a_;
  bool periodic_sign_ = false;  // a_i = (-1)^i for all i (Segre)
};

}  // namespace tautres
