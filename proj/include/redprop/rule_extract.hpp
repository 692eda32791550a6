#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "redprop/dispatch.hpp"
#include "redprop/engine.hpp"
#include "redprop/rules.hpp"

namespace redprop {

inline bool is_boolean(VarId v, const Domain& d_init) {
  return v.is_int() && d_init.ints(v.index) == ValueSet{0, 1};
}

/// Atoms over vars that are not already decided by D_init. Boolean variables
/// only get equations.
inline std::vector<Atom> atom_universe(const std::vector<VarId>& vars, const Domain& d_init) {
  std::vector<Atom> out;
  for (VarId v : vars) {
    if (v.is_int()) {
      const ValueSet& d = d_init.ints(v.index);
      if (d.size() <= 1) continue;
      bool boolean = is_boolean(v, d_init);
      d.for_each([&](int x) {
        out.push_back(eq(v, x));
        if (!boolean) out.push_back(neq(v, x));
      });
    } else {
      const SetBounds& b = d_init.sets(v.index);
      (b.ub - b.lb).for_each([&](int e) {
        out.push_back(in(e, v));
        out.push_back(not_in(e, v));
      });
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of non-false subdomains of d_init over vars (saturating).
inline std::size_t count_subdomains(const std::vector<VarId>& vars, const Domain& d_init) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 1;
  for (VarId v : vars) {
    std::size_t k = v.is_int() ? d_init.ints(v.index).size() : (d_init.sets(v.index).ub - d_init.sets(v.index).lb).size();
    std::size_t n = 1;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t f = v.is_int() ? 2 : 3;
      if (n > kMax / f) return kMax;
      n *= f;
    }
    if (v.is_int()) n -= 1;
    if (n == 0) return 0;
    if (total > kMax / n) return kMax;
    total *= n;
  }
  return total;
}

/// Calls f(D) for every non-false D ⊑ d_init that differs from d_init only on vars.
template <typename F>
void for_each_subdomain(const std::vector<VarId>& vars, const Domain& d_init, F&& f) {
  Domain d = d_init;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == vars.size()) {
      f(static_cast<const Domain&>(d));
      return;
    }
    VarId v = vars[i];
    if (v.is_int()) {
      std::vector<int> vals = d_init.ints(v.index).values();
      std::size_t n = std::size_t{1} << vals.size();
      for (std::size_t m = 1; m < n; ++m) {
        ValueSet s;
        for (std::size_t j = 0; j < vals.size(); ++j)
          if (m >> j & 1u) s.insert(vals[j]);
        d.ints(v.index) = s;
        self(self, i + 1);
      }
      d.ints(v.index) = d_init.ints(v.index);
    } else {
      const SetBounds& b0 = d_init.sets(v.index);
      std::vector<int> free = (b0.ub - b0.lb).values();
      std::size_t n = 1;
      for (std::size_t j = 0; j < free.size(); ++j) n *= 3;
      for (std::size_t m = 0; m < n; ++m) {
        SetBounds b = b0;
        std::size_t code = m;
        for (int e : free) {
          if (code % 3 == 1) b.lb.insert(e);
          else if (code % 3 == 2) b.ub.erase(e);
          code /= 3;
        }
        d.sets(v.index) = b;
        self(self, i + 1);
      }
      d.sets(v.index) = b0;
    }
  };
  rec(rec, 0);
}

/// solv(props, D) = dsb(c)(D) for every subdomain of d_init over vars(c).
inline bool equivalent_to_dsb(const Constraint& c, const std::vector<PropagatorPtr>& props, const Domain& d_init) {
  PropagatorPtr ref = make_propagator(c, d_init);
  FixpointRunner run(d_init, props);
  bool ok = true;
  for_each_subdomain(c.scope(), d_init, [&](const Domain& d) {
    if (ok && !same_outcome(run(d), ref->apply(d))) ok = false;
  });
  return ok;
}

namespace detail {

/// Minimal hitting sets by the MMCS recursion.
class Mmcs {
 public:
  using Bits = boost::dynamic_bitset<>;

  Mmcs(std::size_t num_atoms, const std::vector<std::vector<std::size_t>>& edges, std::size_t limit,
       std::vector<Atom> atoms = {})
      : cover_(num_atoms, Bits(edges.size())), crit_(num_atoms, Bits(edges.size())), atoms_(std::move(atoms)),
        limit_(limit) {
    for (std::size_t e = 0; e < edges.size(); ++e)
      for (std::size_t a : edges[e]) cover_[a].set(e);
    edges_ = edges;
  }

  std::vector<std::vector<std::size_t>> run() {
    Bits uncov(edges_.size());
    uncov.set();
    std::vector<char> cand(cover_.size(), 1);
    std::vector<std::size_t> s;
    rec(s, cand, uncov);
    return out_;
  }

 private:
  void rec(std::vector<std::size_t>& s, std::vector<char>& cand, const Bits& uncov) {
    if (uncov.none()) {
      out_.push_back(s);
      if (out_.size() > limit_) throw CapExceeded("too many minimal rule bodies");
      return;
    }
    std::size_t best = Bits::npos;
    std::size_t best_n = std::numeric_limits<std::size_t>::max();
    for (std::size_t e = uncov.find_first(); e != Bits::npos; e = uncov.find_next(e)) {
      std::size_t n = 0;
      for (std::size_t a : edges_[e]) n += cand[a] ? 1 : 0;
      if (n < best_n) {
        best_n = n;
        best = e;
      }
    }
    std::vector<std::size_t> c;
    for (std::size_t a : edges_[best])
      if (cand[a]) c.push_back(a);
    for (std::size_t a : c) cand[a] = 0;
    for (std::size_t a : c) {
      std::vector<Bits> saved;
      saved.reserve(s.size());
      bool minimal = true;
      for (std::size_t x : s) {
        saved.push_back(crit_[x]);
        crit_[x] -= cover_[a];
        if (crit_[x].none()) minimal = false;
      }
      if (minimal && !conflicts(s, a)) {
        crit_[a] = cover_[a] & uncov;
        s.push_back(a);
        rec(s, cand, uncov - cover_[a]);
        s.pop_back();
      }
      for (std::size_t i = 0; i < s.size(); ++i) crit_[s[i]] = saved[i];
      cand[a] = 1;
    }
  }

  // every superset of an inconsistent body is inconsistent, so the branch is dropped
  [[nodiscard]] bool conflicts(const std::vector<std::size_t>& s, std::size_t a) const {
    if (atoms_.empty()) return false;
    const Atom& x = atoms_[a];
    for (std::size_t b : s) {
      const Atom& y = atoms_[b];
      if (x.var != y.var || x.value != y.value) {
        if (x.var == y.var && x.kind == AtomKind::Eq && y.kind == AtomKind::Eq) return true;
        continue;
      }
      if (x.kind != y.kind && negate(x) == y) return true;
    }
    return false;
  }

  std::vector<Bits> cover_;
  std::vector<Bits> crit_;
  std::vector<Atom> atoms_;
  std::vector<std::vector<std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::size_t limit_;
};

/// Replaces k−1 disequations on a k-valued variable by the remaining equation.
inline std::vector<Atom> compact_lhs(std::vector<Atom> lhs, const Domain& d_init) {
  std::vector<Atom> out;
  std::sort(lhs.begin(), lhs.end());
  for (std::size_t i = 0; i < lhs.size();) {
    std::size_t j = i;
    ValueSet removed;
    while (j < lhs.size() && lhs[j].var == lhs[i].var) {
      if (lhs[j].kind == AtomKind::Neq) removed.insert(lhs[j].value);
      ++j;
    }
    VarId v = lhs[i].var;
    if (v.is_int()) {
      ValueSet rest = d_init.ints(v.index) - removed;
      if (!removed.empty() && rest.size() == 1) {
        out.push_back(eq(v, rest.min()));
        for (std::size_t k = i; k < j; ++k)
          if (lhs[k].kind != AtomKind::Neq) out.push_back(lhs[k]);
        i = j;
        continue;
      }
    }
    for (std::size_t k = i; k < j; ++k) out.push_back(lhs[k]);
    i = j;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

struct RuleExtraction {
  RuleSet rules;
  bool verified = false;  // exhaustive equivalence with dsb(c) was checked
  bool pruned = false;    // greedy minimization ran
  std::size_t dead = 0;   // rules whose body is inconsistent with c
};

/// prop(dsb(c)) relative to d_init.
inline RuleExtraction extract_rules_detailed(const Constraint& c, const Domain& d_init,
                                             std::size_t cap = enumeration_cap(), std::size_t prune_cap = 10'000) {
  RuleExtraction res;
  const auto& scope = c.scope();
  std::vector<Atom> universe = atom_universe(scope, d_init);
  std::vector<Assignment> sols;
  {
    Assignment a(d_init);
    for_each_valuation(scope, d_init, a, [&](const Assignment& asg) {
      if (c.eval(asg)) sols.push_back(asg);
    }, cap);
  }
  if (c.kind() == ConstraintKind::True) return res;
  if (sols.empty()) {
    // c unsatisfiable: empty the first variable that can be emptied
    auto int_it = std::find_if(scope.begin(), scope.end(), [](VarId v) { return v.is_int(); });
    if (int_it != scope.end()) {
      VarId v = *int_it;
      d_init.ints(v.index).for_each([&](int x) { res.rules.emplace_back(std::vector<Atom>{}, neq(v, x)); });
    } else if (!scope.empty()) {
      // set variables only: force an element both in and out
      VarId s = scope.front();
      const SetBounds& b = d_init.sets(s.index);
      ValueSet open = b.ub - b.lb;
      if (!open.empty()) {
        res.rules.emplace_back(std::vector<Atom>{}, in(open.min(), s));
        res.rules.emplace_back(std::vector<Atom>{}, not_in(open.min(), s));
      } else if (!b.lb.empty()) {
        res.rules.emplace_back(std::vector<Atom>{}, not_in(b.lb.min(), s));
      } else {
        res.rules.emplace_back(std::vector<Atom>{}, in(b.ub.empty() ? 0 : b.ub.max() + 1, s));
      }
    }
    res.verified = true;
    return res;
  }

  RuleSet live, dead;
  for (const Atom& rhs : universe) {
    std::vector<std::size_t> allowed;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      const Atom& a = universe[i];
      if (a.var == rhs.var && (a.var.is_int() || a.value == rhs.value)) continue;
      allowed.push_back(i);
    }
    std::vector<std::vector<std::size_t>> edges;
    bool impossible = false;
    for (const auto& s : sols) {
      if (atom_holds(rhs, s)) continue;
      std::vector<std::size_t> e;
      for (std::size_t k = 0; k < allowed.size(); ++k)
        if (!atom_holds(universe[allowed[k]], s)) e.push_back(k);
      if (e.empty()) {
        impossible = true;
        break;
      }
      edges.push_back(std::move(e));
    }
    if (impossible) continue;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::vector<std::vector<std::size_t>> bodies;
    if (edges.empty()) bodies.emplace_back();
    else {
      std::vector<Atom> atoms;
      for (std::size_t k : allowed) atoms.push_back(universe[k]);
      bodies = detail::Mmcs(allowed.size(), edges, cap, std::move(atoms)).run();
    }
    std::vector<std::vector<Atom>> lhss;
    for (const auto& b : bodies) {
      std::vector<Atom> lhs;
      for (std::size_t k : b) lhs.push_back(universe[allowed[k]]);
      if (restrict_all(d_init, lhs).is_false()) continue;
      lhss.push_back(detail::compact_lhs(std::move(lhs), d_init));
    }
    std::sort(lhss.begin(), lhss.end());
    lhss.erase(std::unique(lhss.begin(), lhss.end()), lhss.end());
    for (std::size_t i = 0; i < lhss.size(); ++i) {
      bool superset = false;
      for (std::size_t j = 0; j < lhss.size() && !superset; ++j)
        if (i != j && lhss[j].size() < lhss[i].size() &&
            std::includes(lhss[i].begin(), lhss[i].end(), lhss[j].begin(), lhss[j].end()))
          superset = true;
      if (superset) continue;
      bool sat = std::any_of(sols.begin(), sols.end(), [&](const Assignment& s) {
        return std::all_of(lhss[i].begin(), lhss[i].end(), [&](const Atom& a) { return atom_holds(a, s); });
      });
      (sat ? live : dead).emplace_back(lhss[i], rhs);
    }
  }

  // an equation on the rhs covers the disequations on the same variable; on a
  // two-valued variable the single disequation is kept instead
  auto drop_covered = [&](RuleSet& rs) {
    RuleSet out;
    for (const auto& r : rs) {
      bool two = r.rhs.var.is_int() && !is_boolean(r.rhs.var, d_init) && d_init.ints(r.rhs.var.index).size() == 2;
      bool covered = false;
      if (r.rhs.kind == AtomKind::Neq && !two)
        covered = std::any_of(rs.begin(), rs.end(), [&](const PropRule& o) {
          return o.lhs == r.lhs && o.rhs.kind == AtomKind::Eq && o.rhs.var == r.rhs.var;
        });
      if (r.rhs.kind == AtomKind::Eq && two) covered = true;
      if (!covered) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  // a body entailing another body with the same head adds nothing
  auto drop_subsumed = [&](RuleSet& rs) {
    std::map<Atom, std::vector<std::size_t>> by_head;
    for (std::size_t i = 0; i < rs.size(); ++i) by_head[rs[i].rhs].push_back(i);
    std::vector<Domain> body;
    body.reserve(rs.size());
    for (const auto& r : rs) body.push_back(restrict_all(d_init, r.lhs));
    // same head, so only the bodies matter
    auto covers = [&](std::size_t j, std::size_t i) {
      if (body[i].is_false()) return true;
      return std::all_of(rs[j].lhs.begin(), rs[j].lhs.end(), [&](const Atom& a) { return entails_atom(body[i], a); });
    };
    std::vector<bool> drop(rs.size(), false);
    for (const auto& [head, idx] : by_head)
      for (std::size_t i : idx)
        for (std::size_t j : idx)
          if (i != j && covers(j, i) && (!covers(i, j) || j < i)) {
            drop[i] = true;
            break;
          }
    RuleSet out;
    for (std::size_t i = 0; i < rs.size(); ++i)
      if (!drop[i]) out.push_back(rs[i]);
    return out;
  };
  live = drop_subsumed(live);
  dead = drop_subsumed(dead);
  live = drop_covered(live);
  dead = drop_covered(dead);
  res.dead = dead.size();

  if (count_subdomains(scope, d_init) > prune_cap) {
    res.rules = live;
    res.rules.insert(res.rules.end(), dead.begin(), dead.end());
    std::sort(res.rules.begin(), res.rules.end());
    return res;
  }
  res.verified = true;
  res.rules = live;
  // dsb(c) on every subdomain, once; subdomains that told two rule sets apart
  // move to the front since they tend to do so again
  PropagatorPtr ref = make_propagator(c, d_init, cap);
  std::vector<std::pair<Domain, Domain>> cases;
  for_each_subdomain(scope, d_init, [&](const Domain& d) { cases.emplace_back(d, ref->apply(d)); });
  std::vector<std::size_t> order(cases.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto equivalent = [&](const RuleSet& rs) {
    FixpointRunner run(d_init, rule_propagators(rs));
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& [d, want] = cases[order[k]];
      if (!same_outcome(run(d), want)) {
        std::rotate(order.begin(), order.begin() + static_cast<long>(k), order.begin() + static_cast<long>(k) + 1);
        return false;
      }
    }
    return true;
  };
  if (!equivalent(res.rules)) {
    res.rules.insert(res.rules.end(), dead.begin(), dead.end());
    std::sort(res.rules.begin(), res.rules.end());
  }
  res.pruned = true;
  for (std::size_t i = 0; i < res.rules.size();) {
    RuleSet without = res.rules;
    without.erase(without.begin() + static_cast<long>(i));
    if (equivalent(without)) res.rules = std::move(without);
    else ++i;
  }
  return res;
}

inline RuleSet extract_rules(const Constraint& c, const Domain& d_init, std::size_t cap = enumeration_cap()) {
  return extract_rules_detailed(c, d_init, cap).rules;
}

}  // namespace redprop
