#include "tautres/var_registry.hpp"

#include <mutex>
#include <stdexcept>

namespace tautres {

std::string var_name(const VarKey& key) {
  const auto g = std::to_string(key.group);
  const auto i = std::to_string(key.index);
  switch (key.kind) {
    case VarKind::ResidueZ: return "z[" + g + "," + i + "]";
    case VarKind::ChernRootTheta: return "theta[" + g + "," + i + "]";
    case VarKind::TorusLambda: return key.group == 0 ? "lambda[" + i + "]" : "lambda[" + g + "," + i + "]";
    case VarKind::ChernClassX: return "cX" + i + "[" + g + "]";
    case VarKind::SegreClassX: return "sX" + i + "[" + g + "]";
    case VarKind::ChernClassV: return "cV" + i + "[" + g + "]";
    case VarKind::FormalSeriesQ: return "q";
    case VarKind::TautClass: return "c" + i;
    case VarKind::CohomologyGen: return "h" + i;
    case VarKind::OracleWeight: return "w" + i;
    case VarKind::ChernNumber: return "N" + i;
  }
  return "?";
}

int var_degree(const VarKey& key) {
  switch (key.kind) {
    case VarKind::ResidueZ:
    case VarKind::ChernRootTheta:
    case VarKind::TorusLambda:
    case VarKind::CohomologyGen:
    case VarKind::OracleWeight: return 1;
    case VarKind::ChernNumber: return 0;
    case VarKind::ChernClassX:
    case VarKind::SegreClassX:
    case VarKind::ChernClassV:
    case VarKind::TautClass: return key.index;
    case VarKind::FormalSeriesQ: return 0;
  }
  return 0;
}

bool has_factor(VarKind kind) {
  return kind == VarKind::ChernRootTheta || kind == VarKind::TorusLambda || kind == VarKind::ChernClassX ||
         kind == VarKind::SegreClassX || kind == VarKind::ChernClassV;
}

VarId VarRegistry::intern(const VarKey& key) { return intern_named(key, var_name(key)); }

VarId VarRegistry::intern_named(const VarKey& key, const std::string& name) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
  }
  const bool is_class = key.kind == VarKind::ChernClassX || key.kind == VarKind::SegreClassX ||
                        key.kind == VarKind::ChernClassV || key.kind == VarKind::TautClass;
  if (is_class && key.index < 1) throw std::invalid_argument("characteristic class degree must be >= 1");
  std::unique_lock lock(mutex_);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto id = static_cast<VarId>(vars_.size());
  if (by_name_.count(name)) throw std::invalid_argument("variable name already taken: " + name);
  vars_.push_back(VarInfo{key, var_degree(key), name});
  index_.emplace(key, id);
  by_name_.emplace(vars_.back().name, id);
  return id;
}

std::optional<VarId> VarRegistry::find(const VarKey& key) const {
  std::shared_lock lock(mutex_);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  return std::nullopt;
}

std::optional<VarId> VarRegistry::find_by_name(const std::string& name) const {
  std::shared_lock lock(mutex_);
  if (auto it = by_name_.find(name); it != by_name_.end()) return it->second;
  return std::nullopt;
}

const VarInfo& VarRegistry::info(VarId id) const {
  std::shared_lock lock(mutex_);
  if (id >= vars_.size()) throw std::out_of_range("unregistered variable id " + std::to_string(id));
  return vars_[id];
}

std::size_t VarRegistry::size() const {
  std::shared_lock lock(mutex_);
  return vars_.size();
}

VarRegistry& VarRegistry::global() {
  static VarRegistry instance;
  return instance;
}

}  // namespace tautres
