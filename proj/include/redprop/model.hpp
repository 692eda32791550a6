#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "redprop/channels.hpp"
#include "redprop/dispatch.hpp"
#include "redprop/engine.hpp"

namespace redprop {

struct NamedConstraint {
  std::string id;
  Constraint c;
};

/// Variables over one universe, named constraints, channels posted as
/// propagators, and search groups keyed by selector ("x", "y", "both").
struct Model {
  std::string problem;
  std::string params;
  std::string variant;
  Domain d_init;
  std::vector<VarId> vars;
  std::vector<NamedConstraint> constraints;
  ChannelSet channels;
  std::map<std::string, std::vector<VarId>> groups;
  std::optional<VarId> objective;
  VarOrder order = VarOrder::FirstFail;
  std::vector<std::string> int_names;
  std::vector<std::string> set_names;

  [[nodiscard]] std::string name(VarId v) const {
    const auto& names = v.is_int() ? int_names : set_names;
    auto i = static_cast<std::size_t>(v.index);
    return i < names.size() && !names[i].empty() ? names[i] : default_name(v);
  }
  [[nodiscard]] VarNamer namer() const {
    return [this](VarId v) { return name(v); };
  }

  [[nodiscard]] const NamedConstraint* find(const std::string& id) const {
    for (const auto& nc : constraints)
      if (nc.id == id) return &nc;
    return nullptr;
  }

  [[nodiscard]] std::vector<PropagatorPtr> propagators(std::size_t cap = enumeration_cap()) const {
    std::vector<PropagatorPtr> out;
    for (const auto& nc : constraints) out.push_back(make_propagator(nc.c, d_init, cap));
    auto ch = channels.propagators();
    out.insert(out.end(), ch.begin(), ch.end());
    return out;
  }
};

/// Two viewpoints over one variable universe joined by channels. Constraints
/// on shared variables only live in `common`.
struct CombinedModel {
  Model x;
  Model y;
  std::vector<NamedConstraint> common;
  ChannelSet channels;
  std::vector<VarId> shared;
  Side analyze_first = Side::Y;  // the side whose constraints are tried for removal first

  [[nodiscard]] const Domain& d_init() const { return x.d_init; }

  /// All constraints and channels as one model.
  [[nodiscard]] Model flatten(const std::string& variant) const {
    Model m = x;
    m.variant = variant;
    m.constraints = common;
    m.constraints.insert(m.constraints.end(), x.constraints.begin(), x.constraints.end());
    m.constraints.insert(m.constraints.end(), y.constraints.begin(), y.constraints.end());
    m.vars = x.vars;
    for (VarId v : y.vars)
      if (std::find(m.vars.begin(), m.vars.end(), v) == m.vars.end()) m.vars.push_back(v);
    m.channels = channels;
    m.groups.clear();
    auto gx = x.groups.find("x");
    auto gy = y.groups.find("y");
    if (gx != x.groups.end()) m.groups["x"] = gx->second;
    if (gy != y.groups.end()) m.groups["y"] = gy->second;
    if (gx != x.groups.end() && gy != y.groups.end()) {
      auto both = gx->second;
      both.insert(both.end(), gy->second.begin(), gy->second.end());
      m.groups["both"] = both;
    }
    return m;
  }
};

}  // namespace redprop
