#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>

namespace tautres {

using VarId = std::uint32_t;

enum class VarKind : std::uint8_t {
  ResidueZ,        // z[block, position], degree 1, may carry negative exponents
  ChernRootTheta,  // theta[factor, position], degree 1
  TorusLambda,     // lambda[factor, position], degree 1; factor 0 is the shared torus
  ChernClassX,     // c_d(X) on a factor, degree d
  SegreClassX,     // s_d(X) on a factor, degree d
  ChernClassV,     // c_d(V) on a factor, degree d
  FormalSeriesQ,   // generating-series variable, degree 0
  TautClass,       // c_i(V^[k]) as used in an integrand, degree i
  CohomologyGen,   // ring generator of H*(X) for intersection models, degree 1
  OracleWeight,    // homogeneous torus weight of a toric surface, degree 1
  ChernNumber,     // the number int_X m for a class monomial m, degree 0
};

// Identity of a variable. For ResidueZ `group` is the block label, for every
// other kind except FormalSeriesQ it is the factor label (copy of X). `index`
// is the position (z, theta, lambda) or the cohomological degree (classes).
struct VarKey {
  VarKind kind;
  int group = 0;
  int index = 0;
  auto operator<=>(const VarKey&) const = default;
};

struct VarInfo {
  VarKey key;
  int degree;
  std::string name;
};

// Append-only table of variables. Registration is serialized; lookups take a
// shared lock so concurrent readers never block each other.
class VarRegistry {
 public:
  VarRegistry() = default;
  VarRegistry(const VarRegistry&) = delete;
  VarRegistry& operator=(const VarRegistry&) = delete;

  VarId intern(const VarKey& key);
  // For kinds whose name is not derivable from the key (ChernNumber).
  VarId intern_named(const VarKey& key, const std::string& name);
  std::optional<VarId> find(const VarKey& key) const;
  std::optional<VarId> find_by_name(const std::string& name) const;
  const VarInfo& info(VarId id) const;
  std::size_t size() const;

  VarId z(int block, int position) { return intern({VarKind::ResidueZ, block, position}); }
  VarId theta(int factor, int position) { return intern({VarKind::ChernRootTheta, factor, position}); }
  VarId lambda(int factor, int position) { return intern({VarKind::TorusLambda, factor, position}); }
  VarId chern_x(int factor, int degree) { return intern({VarKind::ChernClassX, factor, degree}); }
  VarId segre_x(int factor, int degree) { return intern({VarKind::SegreClassX, factor, degree}); }
  VarId chern_v(int factor, int degree) { return intern({VarKind::ChernClassV, factor, degree}); }
  VarId q() { return intern({VarKind::FormalSeriesQ, 0, 0}); }
  VarId taut(int degree) { return intern({VarKind::TautClass, 0, degree}); }
  VarId gen(int index) { return intern({VarKind::CohomologyGen, 0, index}); }
  VarId weight(int index) { return intern({VarKind::OracleWeight, 0, index}); }

  static VarRegistry& global();

 private:
  mutable std::shared_mutex mutex_;
  std::deque<VarInfo> vars_;
  std::map<VarKey, VarId> index_;
  std::map<std::string, VarId> by_name_;
};

std::string var_name(const VarKey& key);
int var_degree(const VarKey& key);
bool has_factor(VarKind kind);

}  // namespace tautres
