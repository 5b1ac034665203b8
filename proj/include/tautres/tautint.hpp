#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tautres/chern.hpp"
#include "tautres/rational_function.hpp"
#include "tautres/residue.hpp"
#include "tautres/setpart.hpp"

namespace tautres {

// Internal consistency failure (degree/symmetry assertions). Exit code 3.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Invalid problem specification. Exit code 2.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { Manifold, Equivariant };

// Per-block weight and global normalization of the partition sum.
//   Pinned:    block of size m weighted by (m-1)!, whole sum divided by k!
//   AsPrinted: block weighted by (-1)^(m-1), no global factor
enum class Convention { Pinned, AsPrinted };
std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);
Rational block_weight(int block_size, Convention c);
Rational global_weight(int k, Convention c);

// Q_j polynomials: built-in for j <= 4 (Q_1 = 1), user overrides for any j.
class QTable {
 public:
  // Expression in z1..zj, e.g. "2*z1+z2-z4".
  void set_override(int j, const std::string& expr);
  bool has(int j) const;
  MultiPoly get(int j, const std::vector<VarId>& zs) const;
  const std::map<int, std::string>& overrides() const { return overrides_; }

 private:
  std::map<int, std::string> overrides_;
};

// Table entry for Q_j as printed, j in 2..5. Throws for other j.
MultiPoly q_polynomial(int j, const std::vector<VarId>& zs);
std::string q_polynomial_text(int j);

struct ProblemSpec {
  int n = 1;
  int k = 1;
  Mode mode = Mode::Manifold;
  // Manifold: formal rank r. Equivariant: explicit weights written in
  // theta[0,t] and lambda[j] (factor 0); copied per factor on evaluation.
  BundleSpec V = BundleSpec::formal(1);
  // Equivariant only: torus weights of the tangent space at the origin.
  std::vector<MultiPoly> tangent_weights;
  std::shared_ptr<const Integrand> phi;

  void validate() const;  // throws SpecError
};

struct EvalOptions {
  bool prune = false;
  Convention convention = Convention::Pinned;
  int threads = 0;  // 0: TAUTRES_THREADS or hardware concurrency
  const QTable* qtable = nullptr;
  // Equivariant mode: one torus copy per factor (Chern-Weil coherent) or a
  // single shared torus (the honest equivariant integral over Hilb^k(C^n)).
  bool per_factor_torus = false;
  // Equivariant mode: roots of V(z) are w + root_sign * z.
  int root_sign = -1;
  bool check_symmetry = true;
};

struct PartitionTerm {
  SetPartition partition;
  Rational weight;        // block weights times global weight
  MultiPoly residue;      // raw residue in theta/lambda and class variables
  MultiPoly value;        // Manifold: graded (n,...,n) part in cV[l], sX[l]
  std::size_t pruned_monomials = 0;
};

struct UniversalIntegral {
  int n = 0, k = 0, r = 0;
  Mode mode = Mode::Manifold;
  Convention convention = Convention::Pinned;
  std::vector<PartitionTerm> terms;
  MultiPoly universal;                 // sum of weight * collapsed value, in ChernNumber symbols
  std::optional<Rational> total;       // when an intersection table was supplied
  RationalFunction equivariant_total;  // Equivariant mode only
  std::vector<std::string> notes;
};

class IntersectionTable;

UniversalIntegral integrate_ghilb(const ProblemSpec& spec, const IntersectionTable* table = nullptr,
                                  const EvalOptions& opts = {});
UniversalIntegral integrate_equivariant(const ProblemSpec& spec, const EvalOptions& opts = {});

// The assembled rational term for one partition (all blocks), as fed to the
// residue engine. Exposed for degree bookkeeping tests and the CLI.
RationalTerm assemble_partition_term(const ProblemSpec& spec, const std::vector<int>& block_sizes,
                                     const EvalOptions& opts);

// Chern-number symbol for a class monomial written in factor-0 variables.
VarId chern_number_var(const Monomial& factor0_mono);
Monomial chern_number_monomial(VarId v);
// Relabel factor groups: variables of factor l become factor map[l].
MultiPoly relabel_factors(const MultiPoly& p, const std::map<int, int>& map);
// Replace each factor's class monomial by its Chern-number symbol.
MultiPoly collapse_to_chern_numbers(const MultiPoly& value, int factors);

// Integrals of degree-n class monomials on X.
class IntersectionTable {
 public:
  int n = 0;
  std::map<Monomial, Rational> entries;  // factor-0 monomials in cX_i, cV_j

  // X with cohomology generated by `gens` (degree 1); cX, cV are polynomials
  // in the generators; `top` integrates degree-n generator monomials.
  static IntersectionTable from_model(int n, const std::vector<MultiPoly>& cX, const std::vector<MultiPoly>& cV,
                                      const std::map<Monomial, Rational>& top);
  static IntersectionTable projective_plane(const std::vector<int>& line_degrees);
  static IntersectionTable p1xp1(const std::vector<std::pair<int, int>>& line_degrees);
  static IntersectionTable projective_space(int n, const std::vector<int>& line_degrees);

  // Value of a factor-0 monomial in cX, sX, cV (sX converted through cX).
  Rational integrate(const Monomial& factor0_mono) const;
  // Substitute every ChernNumber symbol.
  Rational evaluate(const MultiPoly& universal) const;
};

// Segre classes sX_j[factor] in terms of cX_i[factor].
std::map<VarId, MultiPoly> segre_to_chern_bindings(int n, int factor);

}  // namespace tautres
