#pragma once

#include <optional>
#include <string>
#include <vector>

#include "redprop/propagators.hpp"

namespace redprop {

/// Binary/ternary set relations that decompose per element. Elements are
/// independent, so per-element support is exact set-bounds consistency.
class SetElementwiseProp final : public Propagator {
 public:
  SetElementwiseProp(ConstraintKind kind, std::vector<VarId> vs) : Propagator(vs), kind_(kind), vs_(std::move(vs)) {}

  bool propagate(Space& s) const override {
    std::size_t n = vs_.size();
    ValueSet universe;
    for (VarId v : vs_) universe |= s.sets(v).ub | s.sets(v).lb;
    bool ok = true;
    universe.for_each([&](int e) {
      if (!ok) return;
      unsigned can1 = 0;
      unsigned can0 = 0;
      for (unsigned m = 0; m < (1u << n); ++m) {
        bool consistent = true;
        for (std::size_t i = 0; i < n && consistent; ++i) {
          bool bit = m >> i & 1u;
          const SetBounds& b = s.sets(vs_[i]);
          if (bit && !b.ub.contains(e)) consistent = false;
          if (!bit && b.lb.contains(e)) consistent = false;
        }
        if (!consistent || !holds(m)) continue;
        can1 |= m;
        can0 |= ~m;
      }
      for (std::size_t i = 0; i < n && ok; ++i) {
        if (!(can1 >> i & 1u)) ok = s.exclude(vs_[i], e);
        if (ok && !(can0 >> i & 1u)) ok = s.include(vs_[i], e);
      }
    });
    return ok;
  }
  [[nodiscard]] std::string describe() const override { return "set-elementwise"; }

 private:
  [[nodiscard]] bool holds(unsigned m) const {
    bool a = m & 1u;
    bool b = m >> 1 & 1u;
    bool c = m >> 2 & 1u;
    switch (kind_) {
      case ConstraintKind::SetSubset: return !a || b;
      case ConstraintKind::SetDisjoint: return !(a && b);
      case ConstraintKind::SetUnion: return a == (b || c);
      case ConstraintKind::SetInter: return a == (b && c);
      case ConstraintKind::SetDiff: return a == (b && !c);
      default: return true;
    }
  }

  ConstraintKind kind_;
  std::vector<VarId> vs_;
};

/// |A ∩ B| ≤ k.
class InterCardLeqProp final : public Propagator {
 public:
  InterCardLeqProp(VarId a, VarId b, int k) : Propagator({a, b}), a_(a), b_(b), k_(k) {}

  bool propagate(Space& s) const override {
    const ValueSet la = s.sets(a_).lb;
    const ValueSet lb = s.sets(b_).lb;
    long common = static_cast<long>((la & lb).size());
    if (common > k_) return s.fail();
    if (common < k_) return true;
    bool ok = true;
    (lb - la).for_each([&](int e) { ok = ok && s.exclude(a_, e); });
    (la - lb).for_each([&](int e) { ok = ok && s.exclude(b_, e); });
    return ok;
  }
  [[nodiscard]] std::string describe() const override { return "inter-card<="; }

 private:
  VarId a_, b_;
  int k_;
};

/// Σ_{e ∈ S} w(e) = target; covers |S| = x with unit weights. Elements without
/// a weight cannot be in S.
class SetItemSumProp final : public Propagator {
 public:
  SetItemSumProp(VarId set, std::optional<std::vector<std::pair<int, int>>> weights, std::optional<VarId> target,
                 int constant)
      : Propagator(target ? std::vector<VarId>{set, *target} : std::vector<VarId>{set}), s_(set),
        weights_(std::move(weights)), target_(target), constant_(constant) {}

  bool propagate(Space& s) const override {
    const SetBounds b = s.sets(s_);
    if (b.is_false()) return s.fail();
    long base = 0;
    std::vector<int> free_w;
    std::vector<int> free_e;
    bool ok = true;
    b.lb.for_each([&](int e) {
      auto w = weight(e);
      if (!w) ok = false;
      else base += *w;
    });
    if (!ok) return s.fail();
    for (int e : (b.ub - b.lb).values()) {
      auto w = weight(e);
      if (!w) {
        if (!s.exclude(s_, e)) return false;
        continue;
      }
      free_w.push_back(*w);
      free_e.push_back(e);
    }
    ValueSet tdom = target_ ? s.ints(*target_) : ValueSet{constant_};
    ItemSumResult r = item_sum(base, free_w, tdom);
    if (!r.feasible) {
      if (target_) return s.narrow(*target_, ValueSet{});
      return s.fail();
    }
    if (target_ && !s.narrow(*target_, r.target)) return false;
    for (std::size_t f = 0; f < free_e.size(); ++f) {
      if (!r.can_in[f] && !s.exclude(s_, free_e[f])) return false;
      if (!r.can_out[f] && !s.include(s_, free_e[f])) return false;
    }
    return true;
  }
  [[nodiscard]] std::string describe() const override { return weights_ ? "weighted-sum" : "card"; }

 private:
  [[nodiscard]] std::optional<int> weight(int e) const {
    if (!weights_) return 1;
    auto it = std::lower_bound(weights_->begin(), weights_->end(), std::pair<int, int>{e, std::numeric_limits<int>::min()});
    if (it == weights_->end() || it->first != e) return std::nullopt;
    return it->second;
  }

  VarId s_;
  std::optional<std::vector<std::pair<int, int>>> weights_;
  std::optional<VarId> target_;
  int constant_;
};

}  // namespace redprop
