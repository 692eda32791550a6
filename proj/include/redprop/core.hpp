#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "redprop/errors.hpp"
#include "redprop/value_set.hpp"

namespace redprop {

enum class VarKind : std::uint8_t { Int, Set };

/// Typed variable handle. Integer and set variables live in separate index
/// spaces of a Domain.
struct VarId {
  VarKind kind = VarKind::Int;
  int index = 0;

  [[nodiscard]] bool is_int() const { return kind == VarKind::Int; }
  [[nodiscard]] bool is_set() const { return kind == VarKind::Set; }

  friend auto operator<=>(const VarId&, const VarId&) = default;
  friend bool operator==(const VarId&, const VarId&) = default;
};

inline VarId int_var(int i) { return {VarKind::Int, i}; }
inline VarId set_var(int i) { return {VarKind::Set, i}; }

/// Range [lb..ub] of sets of integers.
struct SetBounds {
  ValueSet lb;
  ValueSet ub;

  [[nodiscard]] bool is_false() const { return !lb.subset_of(ub); }
  [[nodiscard]] bool fixed() const { return lb == ub; }
  friend bool operator==(const SetBounds&, const SetBounds&) = default;
};

/// Complete mapping from a fixed variable universe to finite integer sets and
/// set ranges. A false domain is an ordinary value.
class Domain {
 public:
  Domain() = default;
  Domain(std::size_t num_ints, std::size_t num_sets) : ints_(num_ints), sets_(num_sets) {}

  [[nodiscard]] std::size_t num_ints() const { return ints_.size(); }
  [[nodiscard]] std::size_t num_sets() const { return sets_.size(); }

  [[nodiscard]] ValueSet& ints(int i) { return ints_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const ValueSet& ints(int i) const { return ints_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] SetBounds& sets(int i) { return sets_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const SetBounds& sets(int i) const { return sets_[static_cast<std::size_t>(i)]; }

  [[nodiscard]] ValueSet& operator[](VarId v) { return ints(v.index); }
  [[nodiscard]] const ValueSet& operator[](VarId v) const { return ints(v.index); }

  [[nodiscard]] bool var_false(VarId v) const {
    return v.is_int() ? ints(v.index).empty() : sets(v.index).is_false();
  }

  [[nodiscard]] bool fixed(VarId v) const {
    return v.is_int() ? ints(v.index).size() == 1 : sets(v.index).fixed();
  }

  [[nodiscard]] bool is_false() const {
    for (const auto& d : ints_)
      if (d.empty()) return true;
    for (const auto& s : sets_)
      if (s.is_false()) return true;
    return false;
  }

  [[nodiscard]] bool is_singleton() const {
    for (const auto& d : ints_)
      if (d.size() != 1) return false;
    for (const auto& s : sets_)
      if (!s.fixed()) return false;
    return true;
  }

  [[nodiscard]] bool same_universe(const Domain& o) const {
    return ints_.size() == o.ints_.size() && sets_.size() == o.sets_.size();
  }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::vector<ValueSet> ints_;
  std::vector<SetBounds> sets_;
};

/// D1 ⊓ D2.
inline Domain meet(const Domain& a, const Domain& b) {
  Domain out = a;
  for (std::size_t i = 0; i < a.num_ints(); ++i) out.ints(static_cast<int>(i)) &= b.ints(static_cast<int>(i));
  for (std::size_t i = 0; i < a.num_sets(); ++i) {
    auto& s = out.sets(static_cast<int>(i));
    s.lb |= b.sets(static_cast<int>(i)).lb;
    s.ub &= b.sets(static_cast<int>(i)).ub;
  }
  return out;
}

/// D1 ⊑ D2. Set ranges compare by range containment; a false set range is
/// the empty set of sets and so is contained in anything.
inline bool stronger(const Domain& a, const Domain& b) {
  for (std::size_t i = 0; i < a.num_ints(); ++i) {
    if (!a.ints(static_cast<int>(i)).subset_of(b.ints(static_cast<int>(i)))) return false;
  }
  for (std::size_t i = 0; i < a.num_sets(); ++i) {
    const auto& sa = a.sets(static_cast<int>(i));
    const auto& sb = b.sets(static_cast<int>(i));
    if (sa.is_false()) continue;
    if (!sb.lb.subset_of(sa.lb) || !sa.ub.subset_of(sb.ub)) return false;
  }
  return true;
}

/// Makes d false at v while keeping it a well-formed value.
inline void make_false(Domain& d, VarId v) {
  if (v.is_int()) {
    d.ints(v.index).clear();
    return;
  }
  SetBounds& b = d.sets(v.index);
  int witness = b.ub.empty() ? (b.lb.empty() ? 0 : b.lb.min()) : b.ub.min();
  b.ub.clear();
  b.lb.insert(witness);
}

/// Makes d false at its first variable (no-op on an empty universe).
inline void make_false(Domain& d) {
  if (d.num_ints() > 0) make_false(d, VarId{VarKind::Int, 0});
  else if (d.num_sets() > 0) make_false(d, VarId{VarKind::Set, 0});
}

/// Stronger-or-failed: every false domain is treated as the bottom element.
/// Propagation results are compared with this, since a failing solver may
/// stop with any variable emptied.
inline bool refines(const Domain& a, const Domain& b) { return a.is_false() || stronger(a, b); }

/// Equality of propagation outcomes (all false domains are equal).
inline bool same_outcome(const Domain& a, const Domain& b) {
  bool fa = a.is_false();
  bool fb = b.is_false();
  if (fa || fb) return fa && fb;
  return a == b;
}

// ---------------------------------------------------------------------------
// Atomic constraints
// ---------------------------------------------------------------------------

enum class AtomKind : std::uint8_t { Eq, Neq, In, NotIn, Leq, Geq };

/// x=d, x≠d, d∈S, d∉S, plus the pseudo forms x≤d and x≥d.
struct Atom {
  AtomKind kind = AtomKind::Eq;
  VarId var;
  int value = 0;

  [[nodiscard]] bool is_pseudo() const { return kind == AtomKind::Leq || kind == AtomKind::Geq; }

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;
};

inline Atom eq(VarId x, int d) { return {AtomKind::Eq, x, d}; }
inline Atom neq(VarId x, int d) { return {AtomKind::Neq, x, d}; }
inline Atom in(int d, VarId s) { return {AtomKind::In, s, d}; }
inline Atom not_in(int d, VarId s) { return {AtomKind::NotIn, s, d}; }
inline Atom leq(VarId x, int d) { return {AtomKind::Leq, x, d}; }
inline Atom geq(VarId x, int d) { return {AtomKind::Geq, x, d}; }

inline Atom negate(const Atom& a) {
  switch (a.kind) {
    case AtomKind::Eq: return neq(a.var, a.value);
    case AtomKind::Neq: return eq(a.var, a.value);
    case AtomKind::In: return not_in(a.value, a.var);
    case AtomKind::NotIn: return in(a.value, a.var);
    case AtomKind::Leq: return geq(a.var, a.value + 1);
    case AtomKind::Geq: return leq(a.var, a.value - 1);
  }
  return a;
}

/// ⊨ D → a.
inline bool entails_atom(const Domain& d, const Atom& a) {
  if (a.var.is_int()) {
    const ValueSet& dom = d.ints(a.var.index);
    switch (a.kind) {
      case AtomKind::Eq: return dom.singleton() && dom.contains(a.value);
      case AtomKind::Neq: return !dom.contains(a.value);
      case AtomKind::Leq: return dom.empty() || dom.max() <= a.value;
      case AtomKind::Geq: return dom.empty() || dom.min() >= a.value;
      default: throw Unsupported("set atom on an integer variable");
    }
  }
  const SetBounds& s = d.sets(a.var.index);
  switch (a.kind) {
    case AtomKind::In: return s.lb.contains(a.value) || s.is_false();
    case AtomKind::NotIn: return !s.ub.contains(a.value) || s.is_false();
    default: throw Unsupported("integer atom on a set variable");
  }
}

/// Restricts a.var in place; returns true when the domain changed.
inline bool restrict_atom(Domain& d, const Atom& a) {
  if (a.var.is_int()) {
    ValueSet& dom = d.ints(a.var.index);
    switch (a.kind) {
      case AtomKind::Eq: {
        bool had = dom.contains(a.value);
        std::size_t before = dom.size();
        dom.clear();
        if (had) dom.insert(a.value);
        return dom.size() != before;
      }
      case AtomKind::Neq: return dom.erase(a.value);
      case AtomKind::Leq: {
        bool changed = false;
        while (!dom.empty() && dom.max() > a.value) changed |= dom.erase(dom.max());
        return changed;
      }
      case AtomKind::Geq: {
        bool changed = false;
        while (!dom.empty() && dom.min() < a.value) changed |= dom.erase(dom.min());
        return changed;
      }
      default: throw Unsupported("set atom on an integer variable");
    }
  }
  SetBounds& s = d.sets(a.var.index);
  switch (a.kind) {
    case AtomKind::In: {
      if (s.lb.contains(a.value)) return false;
      s.lb.insert(a.value);
      return true;
    }
    case AtomKind::NotIn: return s.ub.erase(a.value);
    default: throw Unsupported("integer atom on a set variable");
  }
}

/// Strongest D' ⊑ D entailing a, changing only a's variable.
inline Domain apply_atom(Domain d, const Atom& a) {
  restrict_atom(d, a);
  return d;
}

/// Expands x≤d / x≥d into the x≠e atoms they stand for relative to d_init.
inline std::vector<Atom> expand_pseudo(const Atom& a, const Domain& d_init) {
  if (!a.is_pseudo()) throw InvalidParams("expand_pseudo: not a pseudo atom");
  std::vector<Atom> out;
  d_init.ints(a.var.index).for_each([&](int v) {
    if ((a.kind == AtomKind::Leq && v > a.value) || (a.kind == AtomKind::Geq && v < a.value)) {
      out.push_back(neq(a.var, v));
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Valuations
// ---------------------------------------------------------------------------

using Value = std::variant<int, ValueSet>;

/// Partial map from variables to values.
using Valuation = std::map<VarId, Value>;

inline bool in_domain(const Valuation& theta, const Domain& d) {
  for (const auto& [v, val] : theta) {
    if (v.is_int()) {
      if (!d.ints(v.index).contains(std::get<int>(val))) return false;
    } else {
      const auto& s = std::get<ValueSet>(val);
      const auto& b = d.sets(v.index);
      if (!b.lb.subset_of(s) || !s.subset_of(b.ub)) return false;
    }
  }
  return true;
}

/// Truth of an atom under a total assignment of its variable.
inline bool holds(const Atom& a, const Value& val) {
  switch (a.kind) {
    case AtomKind::Eq: return std::get<int>(val) == a.value;
    case AtomKind::Neq: return std::get<int>(val) != a.value;
    case AtomKind::Leq: return std::get<int>(val) <= a.value;
    case AtomKind::Geq: return std::get<int>(val) >= a.value;
    case AtomKind::In: return std::get<ValueSet>(val).contains(a.value);
    case AtomKind::NotIn: return !std::get<ValueSet>(val).contains(a.value);
  }
  return false;
}

/// Names variables for printing; falls back to x<i> / S<i>.
using VarNamer = std::function<std::string(VarId)>;

inline std::string default_name(VarId v) {
  return (v.is_int() ? "x" : "S") + std::to_string(v.index);
}

inline std::string format_atom(const Atom& a, const VarNamer& name = default_name) {
  const std::string n = name(a.var);
  const std::string d = std::to_string(a.value);
  switch (a.kind) {
    case AtomKind::Eq: return n + "=" + d;
    case AtomKind::Neq: return n + "!=" + d;
    case AtomKind::Leq: return n + "<=" + d;
    case AtomKind::Geq: return n + ">=" + d;
    case AtomKind::In: return d + " in " + n;
    case AtomKind::NotIn: return d + " notin " + n;
  }
  return {};
}

}  // namespace redprop
