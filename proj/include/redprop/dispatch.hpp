#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <vector>

#include "redprop/alldifferent.hpp"
#include "redprop/propagators.hpp"
#include "redprop/set_propagators.hpp"

namespace redprop {

namespace detail {

inline bool distinct(std::vector<VarId> vs) {
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

inline bool nonneg(const std::vector<int>& ws) {
  return std::all_of(ws.begin(), ws.end(), [](int w) { return w >= 0; });
}

}  // namespace detail

/// Generic dsb(c): a precompiled table when the scope is small over d_init,
/// otherwise enumeration of the current domain.
inline PropagatorPtr make_generic_propagator(const Constraint& c, const Domain& d_init,
                                             std::size_t cap = enumeration_cap()) {
  if (space_size(c.scope(), d_init) <= cap) return std::make_shared<TableProp>(c, d_init, cap);
  return std::make_shared<EnumDsbProp>(c, cap);
}

/// Picks a specialized propagator equal to dsb(c) where one applies.
inline PropagatorPtr make_propagator(const Constraint& c, const Domain& d_init, std::size_t cap = enumeration_cap()) {
  const ConstraintData& d = c.data();
  const auto& vs = d.vars;
  switch (d.kind) {
    case ConstraintKind::True: return std::make_shared<TrueProp>();
    case ConstraintKind::AtomC: return std::make_shared<AtomProp>(d.atom);
    case ConstraintKind::Linear:
      if (vs.empty()) break;
      if (d.op == RelOp::Leq) return std::make_shared<LinearLeqProp>(d.coeffs, vs, d.constant);
      if (d.op == RelOp::Eq) return std::make_shared<LinearEqProp>(d.coeffs, vs, d.constant);
      if (d.op == RelOp::Neq && vs.size() == 2 && d.coeffs[0] == -d.coeffs[1] && std::abs(d.coeffs[0]) == 1) {
        // ±(x − y) ≠ k  ⇔  x ≠ y ± k
        int k = d.coeffs[0] == 1 ? d.constant : -d.constant;
        return std::make_shared<DiseqProp>(vs[0], vs[1], k);
      }
      break;
    case ConstraintKind::Diseq: return std::make_shared<DiseqProp>(vs[0], vs[1], d.constant);
    case ConstraintKind::AbsDiff:
      if (detail::distinct(vs)) return std::make_shared<AbsDiffProp>(vs[0], vs[1], vs[2]);
      break;
    case ConstraintKind::ReifSum:
      if (detail::distinct(vs) && detail::nonneg(d.coeffs)) {
        std::vector<VarId> xs = vs;
        std::optional<VarId> target;
        if (d.has_target) {
          target = xs.back();
          xs.pop_back();
        }
        return std::make_shared<ReifSumProp>(xs, d.coeffs, d.value, target, d.constant);
      }
      break;
    case ConstraintKind::BiImpl:
      if (vs[0] != vs[1]) return std::make_shared<BiImplProp>(vs[0], d.ints[0], vs[1], d.ints[1]);
      break;
    case ConstraintKind::AllDifferent:
      if (detail::distinct(vs)) return std::make_shared<AllDifferentProp>(vs);
      break;
    case ConstraintKind::SetSubset:
    case ConstraintKind::SetDisjoint:
    case ConstraintKind::SetUnion:
    case ConstraintKind::SetInter:
    case ConstraintKind::SetDiff:
      if (detail::distinct(vs)) return std::make_shared<SetElementwiseProp>(d.kind, vs);
      break;
    case ConstraintKind::SetEmpty: return std::make_shared<SetItemSumProp>(vs[0], std::nullopt, std::nullopt, 0);
    case ConstraintKind::SetCard:
      return std::make_shared<SetItemSumProp>(vs[0], std::nullopt,
                                              d.has_target ? std::optional<VarId>(vs[1]) : std::nullopt, d.constant);
    case ConstraintKind::SetInterCardLeq:
      if (vs[0] != vs[1]) return std::make_shared<InterCardLeqProp>(vs[0], vs[1], d.constant);
      break;
    case ConstraintKind::SetWeightedSum: {
      bool ok = std::all_of(d.weights.begin(), d.weights.end(), [](auto& p) { return p.second >= 0; });
      if (ok) return std::make_shared<SetItemSumProp>(vs[0], d.weights, vs[1], 0);
      break;
    }
    case ConstraintKind::Max:
      if (detail::distinct(vs)) return std::make_shared<MaxProp>(vs[0], std::vector<VarId>(vs.begin() + 1, vs.end()));
      break;
    case ConstraintKind::Implication: {
      const Constraint& a = d.children[0];
      const Constraint& b = d.children[1];
      if (a.kind() == ConstraintKind::AtomC && b.kind() == ConstraintKind::AtomC &&
          a.data().atom.var != b.data().atom.var)
        return std::make_shared<ClauseProp>(negate(a.data().atom), b.data().atom);
      break;
    }
    case ConstraintKind::Negation:
      if (d.children[0].kind() == ConstraintKind::AtomC)
        return std::make_shared<AtomProp>(negate(d.children[0].data().atom));
      break;
    default: break;
  }
  return make_generic_propagator(c, d_init, cap);
}

}  // namespace redprop
