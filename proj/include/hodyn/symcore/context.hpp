#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hodyn::sym {

enum class Role { BaseCoordinate, JetDerivative, Momentum, Auxiliary, Multiplier, Parameter };

const char* role_name(Role r);

struct Var {
  std::string name;
  Role role = Role::BaseCoordinate;
  int order = 0;                            // jet order; 0 unless role == JetDerivative
  std::string stem;                         // coordinate stem for jets, otherwise == name
  std::optional<std::string> conjugate_of;  // momenta only
};

/// Name of the r-th jet of a stem: q, q', q'', ...
std::string jet_name(const std::string& stem, int order);

/// Ordered declaration of every symbol an expression may mention.
///
/// Base coordinates and auxiliaries carry jet chains (stem, stem', ...);
/// a jet of order r is only declared once orders 0..r-1 exist.
class VariableContext {
 public:
  /// Adds a single symbol, validating the Var invariants.
  const Var& declare(Var v);

  /// Declares stem with role BaseCoordinate (or Auxiliary) and its jets up to max_order.
  void declare_coordinate(const std::string& stem, int max_order, bool auxiliary = false);
  void declare_parameter(const std::string& name);
  void declare_multiplier(const std::string& name);
  void declare_momentum(const std::string& name, const std::string& conjugate_of);

  /// Extends the jet chain of stem so that order is declared.
  void ensure_jet(const std::string& stem, int order);

  const Var* find(const std::string& name) const;
  const Var& at(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  /// Highest declared jet order of stem, or -1 if stem is not a jet carrier.
  int max_order(const std::string& stem) const;
  bool is_jet_carrier(const std::string& stem) const;

  std::span<const Var> vars() const noexcept { return vars_; }
  std::vector<std::string> names_with_role(Role r) const;

 private:
  std::vector<Var> vars_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, int> max_order_;
};

}  // namespace hodyn::sym
