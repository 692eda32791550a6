#pragma once

#include <memory>
#include <string>
#include <vector>

#include "redprop/core.hpp"

namespace redprop {

/// Mutable domain with an undo trail and a change log. Every narrowing goes
/// through here so the solver can wake watchers and backtrack.
class Space {
 public:
  Space() = default;
  explicit Space(Domain d) : dom_(std::move(d)) {}

  [[nodiscard]] const Domain& domain() const { return dom_; }
  [[nodiscard]] const ValueSet& ints(VarId v) const { return dom_.ints(v.index); }
  [[nodiscard]] const SetBounds& sets(VarId v) const { return dom_.sets(v.index); }
  [[nodiscard]] bool failed() const { return failed_; }

  /// Replaces D(v) by nv ∩ D(v). Returns false when v becomes empty.
  bool narrow(VarId v, const ValueSet& nv) {
    ValueSet& cur = dom_.ints(v.index);
    ValueSet next = cur & nv;
    if (next == cur) return true;
    save(v);
    cur = std::move(next);
    return changed(v, !cur.empty());
  }

  bool remove(VarId v, int val) {
    ValueSet& cur = dom_.ints(v.index);
    if (!cur.contains(val)) return true;
    save(v);
    cur.erase(val);
    return changed(v, !cur.empty());
  }

  bool fix(VarId v, int val) {
    ValueSet& cur = dom_.ints(v.index);
    if (cur.size() == 1 && cur.contains(val)) return true;
    save(v);
    bool had = cur.contains(val);
    cur.clear();
    if (had) cur.insert(val);
    return changed(v, had);
  }

  /// Raises lb and lowers ub of a set variable.
  bool tighten(VarId v, const ValueSet& lb, const ValueSet& ub) {
    SetBounds& cur = dom_.sets(v.index);
    ValueSet nlb = cur.lb | lb;
    ValueSet nub = cur.ub & ub;
    if (nlb == cur.lb && nub == cur.ub) return true;
    save(v);
    cur.lb = std::move(nlb);
    cur.ub = std::move(nub);
    return changed(v, !cur.is_false());
  }

  bool include(VarId v, int e) {
    SetBounds& cur = dom_.sets(v.index);
    if (cur.lb.contains(e)) return true;
    save(v);
    cur.lb.insert(e);
    return changed(v, !cur.is_false());
  }

  bool exclude(VarId v, int e) {
    SetBounds& cur = dom_.sets(v.index);
    if (!cur.ub.contains(e)) return true;
    save(v);
    cur.ub.erase(e);
    return changed(v, !cur.is_false());
  }

  bool restrict(const Atom& a) {
    switch (a.kind) {
      case AtomKind::Eq: return fix(a.var, a.value);
      case AtomKind::Neq: return remove(a.var, a.value);
      case AtomKind::In: return include(a.var, a.value);
      case AtomKind::NotIn: return exclude(a.var, a.value);
      case AtomKind::Leq: {
        const ValueSet& cur = ints(a.var);
        if (cur.empty() || cur.max() <= a.value) return true;
        return narrow(a.var, ValueSet::range(cur.min(), a.value));
      }
      case AtomKind::Geq: {
        const ValueSet& cur = ints(a.var);
        if (cur.empty() || cur.min() >= a.value) return true;
        return narrow(a.var, ValueSet::range(a.value, cur.max()));
      }
    }
    return true;
  }

  [[nodiscard]] bool entails(const Atom& a) const { return entails_atom(dom_, a); }

  /// Marks the space failed without touching domains.
  bool fail() {
    failed_ = true;
    return false;
  }

  /// Starts over from d with an empty trail.
  void reset(Domain d) {
    dom_ = std::move(d);
    trail_.clear();
    changes_.clear();
    failed_ = false;
  }

  // -- trail --------------------------------------------------------------
  [[nodiscard]] std::size_t mark() const { return trail_.size(); }

  void undo_to(std::size_t m) {
    while (trail_.size() > m) {
      Entry& e = trail_.back();
      if (e.var.is_int()) dom_.ints(e.var.index) = std::move(e.old_int);
      else dom_.sets(e.var.index) = std::move(e.old_set);
      trail_.pop_back();
    }
    failed_ = false;
    changes_.clear();
  }

  // -- change log ---------------------------------------------------------
  [[nodiscard]] std::vector<VarId>& changes() { return changes_; }

  /// Disables trailing (one-shot propagation on a scratch copy).
  void set_trailing(bool on) { trailing_ = on; }

 private:
  struct Entry {
    VarId var;
    ValueSet old_int;
    SetBounds old_set;
  };

  void save(VarId v) {
    if (!trailing_) return;
    Entry e{v, {}, {}};
    if (v.is_int()) e.old_int = dom_.ints(v.index);
    else e.old_set = dom_.sets(v.index);
    trail_.push_back(std::move(e));
  }

  bool changed(VarId v, bool ok) {
    changes_.push_back(v);
    if (!ok) failed_ = true;
    return ok;
  }

  Domain dom_;
  std::vector<Entry> trail_;
  std::vector<VarId> changes_;
  bool failed_ = false;
  bool trailing_ = true;
};

/// Monotone decreasing function on domains, applied in place on a Space.
class Propagator {
 public:
  explicit Propagator(std::vector<VarId> vars) : vars_(std::move(vars)) {}
  virtual ~Propagator() = default;
  Propagator(const Propagator&) = delete;
  Propagator& operator=(const Propagator&) = delete;

  [[nodiscard]] const std::vector<VarId>& vars() const { return vars_; }

  /// Narrows the space; returns false on failure.
  virtual bool propagate(Space& s) const = 0;

  /// Idempotent propagators are not woken by their own changes.
  [[nodiscard]] virtual bool idempotent() const { return true; }

  [[nodiscard]] virtual std::string describe() const { return "propagator"; }

  /// Pure form: f(D).
  [[nodiscard]] Domain apply(const Domain& d) const {
    Space s(d);
    s.set_trailing(false);
    if (d.is_false()) return d;
    if (!propagate(s) || s.failed()) {
      Domain out = s.domain();
      if (!out.is_false()) make_false(out);
      return out;
    }
    return s.domain();
  }

 private:
  std::vector<VarId> vars_;
};

using PropagatorPtr = std::shared_ptr<const Propagator>;

}  // namespace redprop
