#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "redprop/constraint.hpp"
#include "redprop/enumerate.hpp"
#include "redprop/space.hpp"

namespace redprop {

/// Writes a support-based projection back into the space.
inline bool write_supports(Space& s, const std::vector<VarId>& scope, const Supports& sup) {
  if (!sup.any) {
    if (scope.empty()) return s.fail();
    VarId v = scope.front();
    if (v.is_int()) return s.narrow(v, ValueSet{});
    return s.fail();
  }
  for (std::size_t i = 0; i < scope.size(); ++i) {
    VarId v = scope[i];
    bool ok = v.is_int() ? s.narrow(v, sup.ints[i]) : s.tighten(v, sup.set_and[i], sup.set_or[i]);
    if (!ok) return false;
  }
  return true;
}

/// Generic dsb(c) by enumerating the current valuation space of vars(c).
class EnumDsbProp final : public Propagator {
 public:
  EnumDsbProp(Constraint c, std::size_t cap) : Propagator(c.scope()), c_(std::move(c)), cap_(cap) {}

  bool propagate(Space& s) const override {
    return write_supports(s, c_.scope(), collect_supports(c_, s.domain(), cap_));
  }
  [[nodiscard]] std::string describe() const override { return "enum-dsb(" + c_.key() + ")"; }

 private:
  Constraint c_;
  std::size_t cap_;
};

/// dsb(c) over solution tuples precompiled against D_init.
class TableProp final : public Propagator {
 public:
  TableProp(const Constraint& c, const Domain& d_init, std::size_t cap) : Propagator(c.scope()), label_(c.key()) {
    const auto& scope = c.scope();
    for (VarId v : scope) (v.is_int() ? ni_ : ns_)++;
    Assignment a(d_init);
    for_each_valuation(scope, d_init, a, [&](const Assignment& asg) {
      if (!c.eval(asg)) return;
      for (VarId v : scope) {
        if (v.is_int()) ints_.push_back(asg.value(v));
        else sets_.push_back(asg.set(v));
      }
      ++count_;
    }, cap);
  }

  bool propagate(Space& s) const override {
    const auto& scope = vars();
    Supports sup;
    sup.ints.resize(scope.size());
    sup.set_and.resize(scope.size());
    sup.set_or.resize(scope.size());
    std::vector<const ValueSet*> idom(scope.size(), nullptr);
    std::vector<const SetBounds*> sdom(scope.size(), nullptr);
    for (std::size_t i = 0; i < scope.size(); ++i) {
      if (scope[i].is_int()) idom[i] = &s.ints(scope[i]);
      else sdom[i] = &s.sets(scope[i]);
    }
    for (std::size_t t = 0; t < count_; ++t) {
      const int* iv = ints_.data() + t * ni_;
      const ValueSet* sv = sets_.data() + t * ns_;
      bool ok = true;
      std::size_t ii = 0;
      std::size_t si = 0;
      for (std::size_t i = 0; i < scope.size() && ok; ++i) {
        if (idom[i]) ok = idom[i]->contains(iv[ii++]);
        else {
          const ValueSet& val = sv[si++];
          ok = sdom[i]->lb.subset_of(val) && val.subset_of(sdom[i]->ub);
        }
      }
      if (!ok) continue;
      ii = 0;
      si = 0;
      for (std::size_t i = 0; i < scope.size(); ++i) {
        if (idom[i]) {
          sup.ints[i].insert(iv[ii++]);
        } else if (!sup.any) {
          sup.set_and[i] = sv[si];
          sup.set_or[i] = sv[si++];
        } else {
          sup.set_and[i] &= sv[si];
          sup.set_or[i] |= sv[si++];
        }
      }
      sup.any = true;
    }
    return write_supports(s, scope, sup);
  }

  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] std::string describe() const override { return "table(" + label_ + ")"; }

 private:
  std::string label_;
  std::size_t ni_ = 0;
  std::size_t ns_ = 0;
  std::size_t count_ = 0;
  std::vector<int> ints_;
  std::vector<ValueSet> sets_;
};

class TrueProp final : public Propagator {
 public:
  TrueProp() : Propagator({}) {}
  bool propagate(Space&) const override { return true; }
  [[nodiscard]] std::string describe() const override { return "true"; }
};

/// x ≠ y + o.
class DiseqProp final : public Propagator {
 public:
  DiseqProp(VarId x, VarId y, int o) : Propagator({x, y}), x_(x), y_(y), o_(o) {}

  bool propagate(Space& s) const override {
    const ValueSet& dx = s.ints(x_);
    const ValueSet& dy = s.ints(y_);
    if (dx.size() == 1 && !s.remove(y_, dx.min() - o_)) return false;
    if (dy.size() == 1 && !s.remove(x_, dy.min() + o_)) return false;
    return true;
  }
  [[nodiscard]] std::string describe() const override { return "diseq"; }

 private:
  VarId x_, y_;
  int o_;
};

/// Unary atomic constraint.
class AtomProp final : public Propagator {
 public:
  explicit AtomProp(Atom a) : Propagator({a.var}), a_(a) {}
  bool propagate(Space& s) const override { return s.restrict(a_); }
  [[nodiscard]] std::string describe() const override { return format_atom(a_); }

 private:
  Atom a_;
};

/// Two-literal clause l1 ∨ l2 over distinct variables (covers a ⇒ b).
class ClauseProp final : public Propagator {
 public:
  ClauseProp(Atom l1, Atom l2) : Propagator({l1.var, l2.var}), l1_(l1), l2_(l2) {}

  bool propagate(Space& s) const override {
    if (s.entails(negate(l1_)) && !s.restrict(l2_)) return false;
    if (s.entails(negate(l2_)) && !s.restrict(l1_)) return false;
    return true;
  }
  [[nodiscard]] std::string describe() const override { return "clause"; }

 private:
  Atom l1_, l2_;
};

/// x = a ⇔ y = b over distinct integer variables.
class BiImplProp final : public Propagator {
 public:
  BiImplProp(VarId x, int a, VarId y, int b) : Propagator({x, y}), x_(x), y_(y), a_(a), b_(b) {}

  bool propagate(Space& s) const override {
    for (int round = 0; round < 2; ++round) {
      if (!side(s, x_, a_, y_, b_) || !side(s, y_, b_, x_, a_)) return false;
    }
    return true;
  }
  [[nodiscard]] std::string describe() const override { return "bi-impl"; }

 private:
  static bool side(Space& s, VarId p, int pa, VarId q, int qb) {
    const ValueSet& dq = s.ints(q);
    if (!dq.contains(qb)) return s.remove(p, pa);
    if (dq.size() == 1) return s.fix(p, pa);
    return true;
  }

  VarId x_, y_;
  int a_, b_;
};

/// u = |x − y| by pairwise support.
class AbsDiffProp final : public Propagator {
 public:
  AbsDiffProp(VarId u, VarId x, VarId y) : Propagator({u, x, y}), u_(u), x_(x), y_(y) {}

  bool propagate(Space& s) const override {
    const ValueSet du = s.ints(u_);
    const ValueSet dx = s.ints(x_);
    const ValueSet dy = s.ints(y_);
    ValueSet su, sx, sy;
    dx.for_each([&](int a) {
      dy.for_each([&](int b) {
        int d = a > b ? a - b : b - a;
        if (du.contains(d)) {
          su.insert(d);
          sx.insert(a);
          sy.insert(b);
        }
      });
    });
    return s.narrow(u_, su) && s.narrow(x_, sx) && s.narrow(y_, sy);
  }
  [[nodiscard]] std::string describe() const override { return "abs-diff"; }

 private:
  VarId u_, x_, y_;
};

/// Σ a_i·x_i ≤ k; per-variable support against the others' minima.
class LinearLeqProp final : public Propagator {
 public:
  LinearLeqProp(std::vector<int> coeffs, std::vector<VarId> xs, int k)
      : Propagator(xs), a_(std::move(coeffs)), xs_(std::move(xs)), k_(k) {}

  bool propagate(Space& s) const override {
    std::vector<long> mins(xs_.size());
    long total = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      const ValueSet& d = s.ints(xs_[i]);
      if (d.empty()) return s.fail();
      mins[i] = a_[i] > 0 ? static_cast<long>(a_[i]) * d.min() : static_cast<long>(a_[i]) * d.max();
      total += mins[i];
    }
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      long rest = total - mins[i];
      const ValueSet& d = s.ints(xs_[i]);
      ValueSet keep;
      d.for_each([&](int v) {
        if (static_cast<long>(a_[i]) * v + rest <= k_) keep.insert(v);
      });
      if (!s.narrow(xs_[i], keep)) return false;
    }
    return true;
  }
  [[nodiscard]] std::string describe() const override { return "linear<="; }

 private:
  std::vector<int> a_;
  std::vector<VarId> xs_;
  int k_;
};

/// Reachable sums as a bitset over [lo, lo + size).
struct SumSet {
  long lo = 0;
  boost::dynamic_bitset<> bits{1, 1};  // {0}

  [[nodiscard]] bool has(long v) const {
    long off = v - lo;
    return off >= 0 && static_cast<std::size_t>(off) < bits.size() && bits.test(static_cast<std::size_t>(off));
  }

  /// this ⊕ {a·v | v ∈ d}.
  [[nodiscard]] SumSet add(int a, const ValueSet& d) const {
    SumSet out;
    if (d.empty() || bits.none()) {
      out.bits = boost::dynamic_bitset<>(1);
      return out;
    }
    long vmin = a >= 0 ? static_cast<long>(a) * d.min() : static_cast<long>(a) * d.max();
    long vmax = a >= 0 ? static_cast<long>(a) * d.max() : static_cast<long>(a) * d.min();
    out.lo = lo + vmin;
    out.bits = boost::dynamic_bitset<>(bits.size() + static_cast<std::size_t>(vmax - vmin));
    d.for_each([&](int v) {
      long shift = static_cast<long>(a) * v - vmin;
      boost::dynamic_bitset<> b = bits;
      b.resize(out.bits.size());
      out.bits |= b << static_cast<std::size_t>(shift);
    });
    return out;
  }

  /// Minkowski sum of two reachable-sum sets.
  [[nodiscard]] SumSet plus(const SumSet& o) const {
    SumSet out;
    out.lo = lo + o.lo;
    out.bits = boost::dynamic_bitset<>(bits.size() + o.bits.size() - 1);
    for (std::size_t i = bits.find_first(); i != boost::dynamic_bitset<>::npos; i = bits.find_next(i)) {
      boost::dynamic_bitset<> b = o.bits;
      b.resize(out.bits.size());
      out.bits |= b << i;
    }
    return out;
  }
};

/// Σ a_i·x_i = k with domain consistency from prefix/suffix reachable sums.
class LinearEqProp final : public Propagator {
 public:
  LinearEqProp(std::vector<int> coeffs, std::vector<VarId> xs, int k)
      : Propagator(xs), a_(std::move(coeffs)), xs_(std::move(xs)), k_(k) {}

  bool propagate(Space& s) const override {
    std::size_t n = xs_.size();
    std::vector<SumSet> pre(n + 1), suf(n + 1);
    for (std::size_t i = 0; i < n; ++i) pre[i + 1] = pre[i].add(a_[i], s.ints(xs_[i]));
    for (std::size_t i = n; i > 0; --i) suf[i - 1] = suf[i].add(a_[i - 1], s.ints(xs_[i - 1]));
    if (!pre[n].has(k_)) {
      if (n == 0) return s.fail();
      return s.narrow(xs_[0], ValueSet{});
    }
    for (std::size_t i = 0; i < n; ++i) {
      SumSet others = pre[i].plus(suf[i + 1]);
      ValueSet keep;
      s.ints(xs_[i]).for_each([&](int v) {
        if (others.has(k_ - static_cast<long>(a_[i]) * v)) keep.insert(v);
      });
      if (!s.narrow(xs_[i], keep)) return false;
    }
    return true;
  }
  [[nodiscard]] std::string describe() const override { return "linear="; }

 private:
  std::vector<int> a_;
  std::vector<VarId> xs_;
  int k_;
};

/// Shared kernel for Σ w_i·[item i chosen] = target with items in, out or free.
/// Weights are non-negative.
struct ItemSumResult {
  bool feasible = false;
  ValueSet target;              // supported target values
  std::vector<bool> can_in;     // per free item
  std::vector<bool> can_out;
};

inline ItemSumResult item_sum(long base, const std::vector<int>& free_w, const ValueSet& target) {
  ItemSumResult r;
  std::size_t k = free_w.size();
  r.can_in.assign(k, false);
  r.can_out.assign(k, false);
  std::vector<SumSet> pre(k + 1), suf(k + 1);
  ValueSet zero_one{0, 1};
  for (std::size_t i = 0; i < k; ++i) pre[i + 1] = pre[i].add(free_w[i], zero_one);
  for (std::size_t i = k; i > 0; --i) suf[i - 1] = suf[i].add(free_w[i - 1], zero_one);
  target.for_each([&](int t) {
    if (pre[k].has(t - base)) r.target.insert(t);
  });
  r.feasible = !r.target.empty();
  if (!r.feasible) return r;
  for (std::size_t i = 0; i < k; ++i) {
    SumSet others = pre[i].plus(suf[i + 1]);
    r.target.for_each([&](int t) {
      if (others.has(t - base - free_w[i])) r.can_in[i] = true;
      if (others.has(t - base)) r.can_out[i] = true;
    });
  }
  return r;
}

/// Σ w_i·(x_i = j) = target (variable or constant).
class ReifSumProp final : public Propagator {
 public:
  ReifSumProp(std::vector<VarId> xs, std::vector<int> w, int j, std::optional<VarId> target, int constant)
      : Propagator(scope_of(xs, target)), xs_(std::move(xs)), w_(std::move(w)), j_(j), target_(target),
        constant_(constant) {}

  bool propagate(Space& s) const override {
    long base = 0;
    std::vector<int> free_w;
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      const ValueSet& d = s.ints(xs_[i]);
      if (!d.contains(j_)) continue;
      if (d.size() == 1) base += w_[i];
      else {
        free_w.push_back(w_[i]);
        free_idx.push_back(i);
      }
    }
    ValueSet tdom = target_ ? s.ints(*target_) : ValueSet{constant_};
    ItemSumResult r = item_sum(base, free_w, tdom);
    if (!r.feasible) {
      if (target_) return s.narrow(*target_, ValueSet{});
      return s.narrow(xs_.front(), ValueSet{});
    }
    if (target_ && !s.narrow(*target_, r.target)) return false;
    for (std::size_t f = 0; f < free_idx.size(); ++f) {
      VarId x = xs_[free_idx[f]];
      if (!r.can_in[f] && !s.remove(x, j_)) return false;
      if (!r.can_out[f] && !s.fix(x, j_)) return false;
    }
    return true;
  }
  [[nodiscard]] std::string describe() const override { return "reif-sum"; }

 private:
  static std::vector<VarId> scope_of(const std::vector<VarId>& xs, std::optional<VarId> t) {
    std::vector<VarId> out = xs;
    if (t) out.push_back(*t);
    return out;
  }

  std::vector<VarId> xs_;
  std::vector<int> w_;
  int j_;
  std::optional<VarId> target_;
  int constant_;
};

/// u = max(l_1..l_n), iterated to its fixpoint.
class MaxProp final : public Propagator {
 public:
  MaxProp(VarId u, std::vector<VarId> ls) : Propagator(scope_of(u, ls)), u_(u), ls_(std::move(ls)) {}

  bool propagate(Space& s) const override {
    while (true) {
      bool changed = false;
      std::size_t n = ls_.size();
      std::vector<ValueSet> d(n);
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = s.ints(ls_[i]);
        if (d[i].empty()) return s.fail();
      }
      const ValueSet du = s.ints(u_);
      // supports of u
      int lower = d[0].min();
      for (std::size_t i = 1; i < n; ++i) lower = std::max(lower, d[i].min());
      ValueSet su;
      du.for_each([&](int v) {
        if (v < lower) return;
        for (std::size_t i = 0; i < n; ++i)
          if (d[i].contains(v)) {
            su.insert(v);
            return;
          }
      });
      if (su.empty()) return s.narrow(u_, su);
      if (su != du) {
        changed = true;
        if (!s.narrow(u_, su)) return false;
      }
      // supports of each l_j
      for (std::size_t j = 0; j < n; ++j) {
        int others_lower = std::numeric_limits<int>::min();
        for (std::size_t i = 0; i < n; ++i)
          if (i != j) others_lower = std::max(others_lower, d[i].min());
        ValueSet keep;
        d[j].for_each([&](int w) {
          bool ok = false;
          su.for_each([&](int v) {
            if (ok || v < w || v < others_lower) return;
            if (v == w) {
              ok = true;
              return;
            }
            for (std::size_t i = 0; i < n && !ok; ++i)
              if (i != j && d[i].contains(v)) ok = true;
          });
          if (ok) keep.insert(w);
        });
        if (keep != d[j]) {
          changed = true;
          if (!s.narrow(ls_[j], keep)) return false;
        }
      }
      if (!changed) return true;
    }
  }
  [[nodiscard]] std::string describe() const override { return "max"; }

 private:
  static std::vector<VarId> scope_of(VarId u, const std::vector<VarId>& ls) {
    std::vector<VarId> out{u};
    out.insert(out.end(), ls.begin(), ls.end());
    return out;
  }

  VarId u_;
  std::vector<VarId> ls_;
};

}  // namespace redprop
