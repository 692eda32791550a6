#pragma once

#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "redprop/constraint.hpp"

namespace redprop {

inline constexpr std::size_t kDefaultCap = 1'000'000;

/// Enumeration cap, overridable with REDPROP_CAP.
inline std::size_t enumeration_cap(std::size_t fallback = kDefaultCap) {
  if (const char* env = std::getenv("REDPROP_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

/// Number of values a variable can take in d (saturating).
inline std::size_t value_count(VarId v, const Domain& d) {
  if (v.is_int()) return d.ints(v.index).size();
  const SetBounds& b = d.sets(v.index);
  if (b.is_false()) return 0;
  std::size_t free = (b.ub - b.lb).size();
  if (free >= 63) return std::numeric_limits<std::size_t>::max();
  return std::size_t{1} << free;
}

/// Size of the valuation space of vars within d (saturating).
inline std::size_t space_size(const std::vector<VarId>& vars, const Domain& d) {
  std::size_t total = 1;
  for (VarId v : vars) {
    std::size_t n = value_count(v, d);
    if (n == 0) return 0;
    if (total > std::numeric_limits<std::size_t>::max() / n) return std::numeric_limits<std::size_t>::max();
    total *= n;
  }
  return total;
}

/// Every value of v in d, ints ascending, sets in subset-counting order.
inline std::vector<Value> values_of(VarId v, const Domain& d) {
  std::vector<Value> out;
  if (v.is_int()) {
    d.ints(v.index).for_each([&](int x) { out.emplace_back(x); });
    return out;
  }
  const SetBounds& b = d.sets(v.index);
  if (b.is_false()) return out;
  std::vector<int> free = (b.ub - b.lb).values();
  if (free.size() >= 31) throw CapExceeded("set variable with too many free elements");
  std::size_t n = std::size_t{1} << free.size();
  for (std::size_t mask = 0; mask < n; ++mask) {
    ValueSet s = b.lb;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1u) s.insert(free[i]);
    out.emplace_back(std::move(s));
  }
  return out;
}

/// Calls f(assignment) for every valuation of vars inside d. The assignment
/// buffer is reused; other entries keep whatever `a` held on entry.
template <typename F>
void for_each_valuation(const std::vector<VarId>& vars, const Domain& d, Assignment& a, F&& f,
                        std::size_t cap = enumeration_cap()) {
  if (space_size(vars, d) > cap) throw CapExceeded("valuation space exceeds enumeration cap");
  std::vector<std::vector<Value>> vals;
  vals.reserve(vars.size());
  for (VarId v : vars) {
    vals.push_back(values_of(v, d));
    if (vals.back().empty()) return;
  }
  std::vector<std::size_t> pos(vars.size(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i) a.put(vars[i], vals[i][0]);
  while (true) {
    f(static_cast<const Assignment&>(a));
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++pos[i] < vals[i].size()) {
        a.put(vars[i], vals[i][pos[i]]);
        break;
      }
      pos[i] = 0;
      a.put(vars[i], vals[i][0]);
      if (i == 0) return;
    }
    if (vars.empty()) return;
  }
}

/// solns(c) ∩ D over vars(c).
inline std::vector<Valuation> solutions(const Constraint& c, const Domain& d, std::size_t cap = enumeration_cap()) {
  std::vector<Valuation> out;
  Assignment a(d);
  for_each_valuation(c.scope(), d, a, [&](const Assignment& asg) {
    if (!c.eval(asg)) return;
    Valuation theta;
    for (VarId v : c.scope()) theta.emplace(v, asg.get(v));
    out.push_back(std::move(theta));
  }, cap);
  return out;
}

/// Supports collected from the solutions of c inside d.
struct Supports {
  bool any = false;
  std::vector<ValueSet> ints;     // per scope position (ints only)
  std::vector<ValueSet> set_and;  // per scope position (sets only)
  std::vector<ValueSet> set_or;
};

inline Supports collect_supports(const Constraint& c, const Domain& d, std::size_t cap = enumeration_cap()) {
  const auto& scope = c.scope();
  Supports s;
  s.ints.resize(scope.size());
  s.set_and.resize(scope.size());
  s.set_or.resize(scope.size());
  Assignment a(d);
  for_each_valuation(scope, d, a, [&](const Assignment& asg) {
    if (!c.eval(asg)) return;
    for (std::size_t i = 0; i < scope.size(); ++i) {
      VarId v = scope[i];
      if (v.is_int()) {
        s.ints[i].insert(asg.value(v));
      } else if (!s.any) {
        s.set_and[i] = asg.set(v);
        s.set_or[i] = asg.set(v);
      } else {
        s.set_and[i] &= asg.set(v);
        s.set_or[i] |= asg.set(v);
      }
    }
    s.any = true;
  }, cap);
  return s;
}

/// dsb(c)(D) by enumeration: domain consistency on integers, set bounds on
/// sets. The result is false when c has no solution in D.
inline Domain dsb_propagate(const Constraint& c, const Domain& d, std::size_t cap = enumeration_cap()) {
  Domain out = d;
  const auto& scope = c.scope();
  Supports s = collect_supports(c, d, cap);
  if (!s.any) {
    if (!scope.empty()) make_false(out, scope.front());
    else if (out.num_ints() > 0) out.ints(0).clear();
    return out;
  }
  for (std::size_t i = 0; i < scope.size(); ++i) {
    VarId v = scope[i];
    if (v.is_int()) {
      out.ints(v.index) = s.ints[i];
    } else {
      out.sets(v.index).lb = s.set_and[i];
      out.sets(v.index).ub = s.set_or[i];
    }
  }
  return out;
}

/// dom(c)(D) restricted to integer variables (identical to dsb on them).
inline Domain dom_propagate(const Constraint& c, const Domain& d, std::size_t cap = enumeration_cap()) {
  for (VarId v : c.scope())
    if (v.is_set()) throw Unsupported("dom_propagate: use dom_set_values for set variables");
  return dsb_propagate(c, d, cap);
}

/// dom(c)(D)(S) for a set variable: the (non-range) family of supported sets.
inline std::vector<ValueSet> dom_set_values(const Constraint& c, const Domain& d, VarId s,
                                            std::size_t cap = enumeration_cap()) {
  std::vector<ValueSet> out;
  Assignment a(d);
  for_each_valuation(c.scope(), d, a, [&](const Assignment& asg) {
    if (c.eval(asg)) out.push_back(asg.set(s));
  }, cap);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// sb(c)(D): the set-bounds projection; requires vars(c) to be set variables.
inline Domain sb_propagate(const Constraint& c, const Domain& d, std::size_t cap = enumeration_cap()) {
  for (VarId v : c.scope())
    if (v.is_int()) throw Unsupported("sb_propagate: integer variable in scope");
  return dsb_propagate(c, d, cap);
}

}  // namespace redprop
