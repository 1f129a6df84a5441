#include "hodyn/symcore/context.hpp"

#include <regex>

#include "hodyn/error.hpp"

namespace hodyn::sym {

const char* role_name(Role r) {
  switch (r) {
    case Role::BaseCoordinate: return "base-coordinate";
    case Role::JetDerivative: return "jet-derivative";
    case Role::Momentum: return "momentum";
    case Role::Auxiliary: return "auxiliary";
    case Role::Multiplier: return "multiplier";
    case Role::Parameter: return "parameter";
  }
  return "?";
}

std::string jet_name(const std::string& stem, int order) { return stem + std::string(order, '\''); }

namespace {

bool valid_identifier(const std::string& s) {
  static const std::regex ident("[A-Za-z][A-Za-z0-9_]*");
  return std::regex_match(s, ident);
}

}  // namespace

const Var& VariableContext::declare(Var v) {
  if (index_.count(v.name)) throw ValidationError("duplicate variable '" + v.name + "'");
  if (v.stem.empty()) v.stem = v.name;
  if (v.role == Role::JetDerivative) {
    if (v.order <= 0) throw ValidationError("jet variable '" + v.name + "' needs a positive order");
    auto it = max_order_.find(v.stem);
    if (it == max_order_.end()) throw ValidationError("jet '" + v.name + "' has no declared stem");
    if (it->second != v.order - 1)
      throw ValidationError("jet '" + v.name + "' declared before its predecessor");
    if (v.name != jet_name(v.stem, v.order)) throw ValidationError("jet name mismatch for '" + v.name + "'");
  } else {
    if (v.order != 0) throw ValidationError("only jet variables carry a derivative order");
    if (!valid_identifier(v.name)) throw ValidationError("invalid identifier '" + v.name + "'");
  }
  if (v.role == Role::Momentum) {
    if (!v.conjugate_of) throw ValidationError("momentum '" + v.name + "' lacks a conjugate");
    const Var* c = find(*v.conjugate_of);
    if (!c || c->role == Role::Momentum)
      throw ValidationError("momentum '" + v.name + "' must pair with a declared non-momentum");
  } else if (v.conjugate_of) {
    throw ValidationError("only momenta have a conjugate");
  }
  if (v.role == Role::JetDerivative) max_order_[v.stem] = v.order;
  if (v.role == Role::BaseCoordinate || v.role == Role::Auxiliary) max_order_[v.name] = 0;
  index_.emplace(v.name, vars_.size());
  vars_.push_back(std::move(v));
  return vars_.back();
}

void VariableContext::declare_coordinate(const std::string& stem, int max_order, bool auxiliary) {
  declare(Var{stem, auxiliary ? Role::Auxiliary : Role::BaseCoordinate, 0, stem, std::nullopt});
  ensure_jet(stem, max_order);
}

void VariableContext::declare_parameter(const std::string& name) {
  declare(Var{name, Role::Parameter, 0, name, std::nullopt});
}

void VariableContext::declare_multiplier(const std::string& name) {
  declare(Var{name, Role::Multiplier, 0, name, std::nullopt});
}

void VariableContext::declare_momentum(const std::string& name, const std::string& conjugate_of) {
  declare(Var{name, Role::Momentum, 0, name, conjugate_of});
}

void VariableContext::ensure_jet(const std::string& stem, int order) {
  auto it = max_order_.find(stem);
  if (it == max_order_.end()) throw ValidationError("'" + stem + "' is not a coordinate stem");
  for (int r = it->second + 1; r <= order; ++r)
    declare(Var{jet_name(stem, r), Role::JetDerivative, r, stem, std::nullopt});
}

const Var* VariableContext::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &vars_[it->second];
}

const Var& VariableContext::at(const std::string& name) const {
  const Var* v = find(name);
  if (!v) throw ValidationError("undeclared identifier '" + name + "'");
  return *v;
}

int VariableContext::max_order(const std::string& stem) const {
  auto it = max_order_.find(stem);
  return it == max_order_.end() ? -1 : it->second;
}

bool VariableContext::is_jet_carrier(const std::string& stem) const { return max_order_.count(stem) > 0; }

std::vector<std::string> VariableContext::names_with_role(Role r) const {
  std::vector<std::string> out;
  for (const auto& v : vars_)
    if (v.role == r) out.push_back(v.name);
  return out;
}

}  // namespace hodyn::sym
