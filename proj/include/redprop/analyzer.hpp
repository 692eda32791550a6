#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "redprop/model.hpp"
#include "redprop/rule_extract.hpp"

namespace redprop {

enum class Status { Redundant, NotProven, Counterexample };

/// How a removal was justified.
enum class Method {
  Implication,      // c1 logically implies c2 on the same side
  ChannelRules,     // one constraint on the other side covers every rule through the channel
  RuleWitnesses,    // a witness per rule, singles or pairs sharing at most one integer variable
  Unrestrictive,    // logical consequence through an unrestrictive channel
  PermutationDiseq, // disequality absorbed by a permutation channel
  BooleanRow,       // exactly-one row absorbed by a Boolean channel
  SetDisjoint,      // disjointness absorbed by a set channel
  Oracle,           // exhaustive subdomain sweep
};

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Redundant: return "redundant";
    case Status::NotProven: return "not_proven";
    case Status::Counterexample: return "counterexample";
  }
  return "?";
}

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Implication: return "implication";
    case Method::ChannelRules: return "channel_rules";
    case Method::RuleWitnesses: return "rule_witnesses";
    case Method::Unrestrictive: return "unrestrictive";
    case Method::PermutationDiseq: return "perm_diseq";
    case Method::BooleanRow: return "bool_row";
    case Method::SetDisjoint: return "set_disjoint";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

struct Verdict {
  Status status = Status::NotProven;
  std::optional<Method> method;
  std::vector<std::string> witness_ids;                  // constraints used, by id
  std::vector<std::pair<PropRule, Constraint>> witnesses; // per rule, for rule_witnesses
  std::optional<Domain> counterexample;
  std::optional<PropRule> failed_rule;

  [[nodiscard]] bool redundant() const { return status == Status::Redundant; }

  static Verdict proven(Method m, std::vector<std::string> ids = {}) {
    Verdict v;
    v.status = Status::Redundant;
    v.method = m;
    v.witness_ids = std::move(ids);
    return v;
  }
};

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

struct OracleMode {
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::size_t trials = 10'000;
  std::size_t cap = 100'000;  // subdomains, exhaustive only

  static OracleMode sampled(std::uint64_t seed = 0, std::size_t trials = 10'000) { return {false, seed, trials}; }
};

namespace detail {

inline std::vector<VarId> vars_of(const std::vector<PropagatorPtr>& ps) {
  std::vector<VarId> out;
  for (const auto& p : ps) out.insert(out.end(), p->vars().begin(), p->vars().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<VarId> merge_vars(std::vector<VarId> a, const std::vector<VarId>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

/// A random non-false subdomain: each variable is narrowed with probability 1/2.
inline Domain random_subdomain(const std::vector<VarId>& vars, const Domain& d_init, std::mt19937_64& rng) {
  Domain d = d_init;
  std::bernoulli_distribution coin(0.5);
  for (VarId v : vars) {
    if (!coin(rng)) continue;
    if (v.is_int()) {
      std::vector<int> vals = d_init.ints(v.index).values();
      if (vals.size() < 2) continue;
      ValueSet keep;
      for (int x : vals)
        if (coin(rng)) keep.insert(x);
      if (keep.empty()) keep.insert(vals[std::uniform_int_distribution<std::size_t>(0, vals.size() - 1)(rng)]);
      d.ints(v.index) = keep;
    } else {
      SetBounds b = d_init.sets(v.index);
      std::uniform_int_distribution<int> three(0, 2);
      (d_init.sets(v.index).ub - d_init.sets(v.index).lb).for_each([&](int e) {
        int r = three(rng);
        if (r == 1) b.lb.insert(e);
        else if (r == 2) b.ub.erase(e);
      });
      d.sets(v.index) = b;
    }
  }
  return d;
}

}  // namespace detail

/// Checks solv(F1, D) ⊑ solv(F2, D) at a single domain.
inline Verdict oracle_at(const std::vector<PropagatorPtr>& f1, const std::vector<PropagatorPtr>& f2, const Domain& d) {
  Verdict v;
  if (!refines(fixpoint(f1, d), fixpoint(f2, d))) {
    v.status = Status::Counterexample;
    v.method = Method::Oracle;
    v.counterexample = d;
  }
  return v;
}

/// F1 ≫ F2 over the subdomains of d_init on the variables of F1 ∪ F2.
inline Verdict oracle_stronger(const std::vector<PropagatorPtr>& f1, const std::vector<PropagatorPtr>& f2,
                               const Domain& d_init, OracleMode mode = {}) {
  std::vector<VarId> vars = detail::merge_vars(detail::vars_of(f1), detail::vars_of(f2));
  Verdict v;
  if (mode.exhaustive) {
    if (count_subdomains(vars, d_init) > mode.cap) throw CapExceeded("oracle: too many subdomains for an exhaustive sweep");
    for_each_subdomain(vars, d_init, [&](const Domain& d) {
      if (v.status == Status::Counterexample) return;
      Verdict at = oracle_at(f1, f2, d);
      if (at.status == Status::Counterexample) v = std::move(at);
    });
    if (v.status != Status::Counterexample) v = Verdict::proven(Method::Oracle);
    return v;
  }
  std::mt19937_64 rng(mode.seed);
  for (std::size_t t = 0; t < mode.trials; ++t) {
    Verdict at = oracle_at(f1, f2, detail::random_subdomain(vars, d_init, rng));
    if (at.status == Status::Counterexample) return at;
  }
  return v;  // not refuted
}

// ---------------------------------------------------------------------------
// Logical implication
// ---------------------------------------------------------------------------

/// ⊨ D_init ∧ c1 → c2.
inline bool is_logically_redundant(const Constraint& c2, const Constraint& c1, const Domain& d_init,
                                   std::size_t cap = enumeration_cap()) {
  std::vector<VarId> vars = detail::merge_vars(c1.scope(), c2.scope());
  bool ok = true;
  Assignment a(d_init);
  for_each_valuation(vars, d_init, a, [&](const Assignment& asg) {
    if (ok && c1.eval(asg) && !c2.eval(asg)) ok = false;
  }, cap);
  return ok;
}

// ---------------------------------------------------------------------------
// Channel-based tests
// ---------------------------------------------------------------------------

/// Caches propagators and rule sets per constraint over one D_init and channel set.
class RedundancyContext {
 public:
  RedundancyContext(Domain d_init, ChannelSet chs, std::size_t cap = enumeration_cap())
      : d_init_(std::move(d_init)), chs_(std::move(chs)), cap_(cap), chan_(chs_.propagators()) {
    for (std::size_t i = 0; i < chan_.size(); ++i)
      for (VarId v : chan_[i]->vars()) chan_index_[v].push_back(i);
  }

  [[nodiscard]] const Domain& d_init() const { return d_init_; }
  [[nodiscard]] const ChannelSet& channels() const { return chs_; }
  [[nodiscard]] std::size_t cap() const { return cap_; }

  PropagatorPtr prop(const Constraint& c) {
    auto [it, fresh] = props_.try_emplace(c.key());
    if (fresh) it->second = make_propagator(c, d_init_, cap_);
    return it->second;
  }

  const RuleSet& rules(const Constraint& c) {
    auto [it, fresh] = rules_.try_emplace(c.key());
    if (fresh) it->second = extract_rules(c, d_init_, cap_);
    return it->second;
  }

  /// The channel propagators that mention any of vars.
  [[nodiscard]] std::vector<PropagatorPtr> channel_props(const std::vector<VarId>& vars) const {
    std::vector<std::size_t> ids;
    for (VarId v : vars) {
      auto it = chan_index_.find(v);
      if (it != chan_index_.end()) ids.insert(ids.end(), it->second.begin(), it->second.end());
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<PropagatorPtr> out;
    for (std::size_t i : ids) out.push_back(chan_[i]);
    return out;
  }

  /// {dsb(w) | w ∈ ws} ∪ F_⋄ ≫ {r}: the rule's head follows from its body at
  /// D_init ∧ lhs, where the body reaches the witnesses through the channel.
  bool rule_covered(const PropRule& r, const std::vector<Constraint>& ws) {
    Domain d0 = restrict_all(d_init_, r.lhs);
    if (d0.is_false()) return true;
    std::vector<VarId> vars = r.vars();
    std::vector<PropagatorPtr> ps;
    for (const auto& w : ws) {
      vars = detail::merge_vars(std::move(vars), w.scope());
      ps.push_back(prop(w));
    }
    auto ch = channel_props(vars);
    ps.insert(ps.end(), ch.begin(), ch.end());
    Domain d1 = fixpoint(ps, d0);
    return d1.is_false() || entails_atom(d1, r.rhs);
  }

 private:
  Domain d_init_;
  ChannelSet chs_;
  std::size_t cap_;
  std::vector<PropagatorPtr> chan_;
  std::map<VarId, std::vector<std::size_t>> chan_index_;
  std::map<std::string, PropagatorPtr> props_;
  std::map<std::string, RuleSet> rules_;
};

inline bool rule_redundant_via_channel(const PropRule& r, const Constraint& c_x, RedundancyContext& ctx) {
  return ctx.rule_covered(r, {c_x});
}

inline bool rule_redundant_via_channel(const PropRule& r, const Constraint& c_x, const ChannelSet& chs,
                                       const Domain& d_init) {
  RedundancyContext ctx(d_init, chs);
  return rule_redundant_via_channel(r, c_x, ctx);
}

inline Verdict constraint_redundant_via_channel(const Constraint& c_y, const NamedConstraint& c_x,
                                                RedundancyContext& ctx) {
  Verdict v;
  for (const auto& r : ctx.rules(c_y)) {
    if (!ctx.rule_covered(r, {c_x.c})) {
      v.failed_rule = r;
      return v;
    }
  }
  return Verdict::proven(Method::ChannelRules, {c_x.id});
}

inline Verdict constraint_redundant_via_channel(const Constraint& c_y, const Constraint& c_x, const ChannelSet& chs,
                                                const Domain& d_init) {
  RedundancyContext ctx(d_init, chs);
  return constraint_redundant_via_channel(c_y, NamedConstraint{"c", c_x}, ctx);
}

/// Two constraints whose conjunction propagates like the pair: they share at
/// most one variable, and it is an integer.
inline bool decomposable_pair(const Constraint& a, const Constraint& b) {
  std::vector<VarId> common;
  std::set_intersection(a.scope().begin(), a.scope().end(), b.scope().begin(), b.scope().end(),
                        std::back_inserter(common));
  return common.size() <= 1 && (common.empty() || common[0].is_int());
}

struct MultiOptions {
  bool pairs = true;
  std::size_t max_pairs_per_rule = 20'000;
};

/// A witness (single candidate or decomposable pair) for every rule of c_y.
inline Verdict constraint_redundant_multi(const Constraint& c_y, const std::vector<NamedConstraint>& candidates,
                                          RedundancyContext& ctx, MultiOptions opt = {}) {
  std::map<VarId, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (VarId v : candidates[i].c.scope()) index[v].push_back(i);
  auto mentioning = [&](VarId v) -> const std::vector<std::size_t>& {
    static const std::vector<std::size_t> none;
    auto it = index.find(v);
    return it == index.end() ? none : it->second;
  };

  Verdict v;
  std::vector<std::string> used;
  auto use = [&](const std::string& id) {
    if (std::find(used.begin(), used.end(), id) == used.end()) used.push_back(id);
  };
  for (const auto& r : ctx.rules(c_y)) {
    std::vector<VarId> rule_vars;
    try {
      for (const Atom& a : r.lhs) rule_vars.push_back(ctx.channels().map(a).var);
      rule_vars.push_back(ctx.channels().map(r.rhs).var);
    } catch (const AtomOutOfUniverse&) {
      v.failed_rule = r;
      return v;
    }
    VarId head = rule_vars.back();
    if (ctx.rule_covered(r, {})) continue;

    bool found = false;
    // singles: those on the mapped head first, then those on the mapped body
    std::vector<std::size_t> singles = mentioning(head);
    for (VarId x : rule_vars)
      for (std::size_t i : mentioning(x))
        if (std::find(singles.begin(), singles.end(), i) == singles.end()) singles.push_back(i);
    for (std::size_t i : singles) {
      if (ctx.rule_covered(r, {candidates[i].c})) {
        v.witnesses.emplace_back(r, candidates[i].c);
        use(candidates[i].id);
        found = true;
        break;
      }
    }
    if (!found && opt.pairs) {
      std::size_t tried = 0;
      for (std::size_t i : mentioning(head)) {
        for (VarId x : candidates[i].c.scope()) {
          for (std::size_t j : mentioning(x)) {
            if (j == i || !decomposable_pair(candidates[i].c, candidates[j].c)) continue;
            if (++tried > opt.max_pairs_per_rule) break;
            if (ctx.rule_covered(r, {candidates[i].c, candidates[j].c})) {
              v.witnesses.emplace_back(r, conjoin(candidates[i].c, candidates[j].c));
              use(candidates[i].id);
              use(candidates[j].id);
              found = true;
              break;
            }
          }
          if (found || tried > opt.max_pairs_per_rule) break;
        }
        if (found || tried > opt.max_pairs_per_rule) break;
      }
    }
    if (!found) {
      v.failed_rule = r;
      v.witnesses.clear();
      return v;
    }
  }
  Verdict out = Verdict::proven(Method::RuleWitnesses, used);
  out.witnesses = std::move(v.witnesses);
  return out;
}

inline Verdict constraint_redundant_multi(const Constraint& c_y, const std::vector<NamedConstraint>& candidates,
                                          const ChannelSet& chs, const Domain& d_init, MultiOptions opt = {}) {
  RedundancyContext ctx(d_init, chs);
  return constraint_redundant_multi(c_y, candidates, ctx, opt);
}

/// Restrictiveness in the direction that matters for c_y: a channel owning a
/// variable of c_y on its Y side is checked on X, and vice versa.
inline bool restrictive_towards(const Constraint& c_y, const ChannelSet& chs, const Domain& d_init) {
  for (const auto& ch : chs.channels()) {
    for (VarId v : c_y.scope()) {
      if (ch.ypos(v) && classify_restrictive(ch, d_init, Side::X)) return true;
      if (ch.xpos(v) && classify_restrictive(ch, d_init, Side::Y)) return true;
    }
  }
  return false;
}

/// ⊨ D_init ∧ c_x ∧ C_⋄ → c_y through an unrestrictive channel, decided by
/// searching for a valuation of c_x whose channel image violates c_y.
inline Verdict redundant_unrestrictive(const Constraint& c_y, const NamedConstraint& c_x, RedundancyContext& ctx,
                                       std::size_t node_limit = 1'000'000) {
  if (restrictive_towards(c_y, ctx.channels(), ctx.d_init()))
    throw RestrictiveChannel("unrestrictive test: the channel is restrictive towards " + c_y.key());
  std::vector<PropagatorPtr> ps = ctx.channel_props(c_y.scope());
  std::vector<VarId> vars = detail::merge_vars(detail::vars_of(ps), c_x.c.scope());
  vars = detail::merge_vars(std::move(vars), c_y.scope());
  ps.push_back(ctx.prop(c_x.c));
  ps.push_back(ctx.prop(cons::negation(c_y)));
  SearchConfig cfg;
  cfg.search_vars = vars;
  cfg.mode = SearchMode::First;
  cfg.record_solutions = true;
  cfg.node_limit = node_limit;
  SearchResult res = search(ctx.d_init(), ps, cfg);
  Verdict v;
  if (res.stats.solutions == 0 && res.stats.complete) return Verdict::proven(Method::Unrestrictive, {c_x.id});
  return v;
}

inline Verdict redundant_unrestrictive(const Constraint& c_y, const Constraint& c_x, const ChannelSet& chs,
                                       const Domain& d_init) {
  RedundancyContext ctx(d_init, chs);
  return redundant_unrestrictive(c_y, NamedConstraint{"c", c_x}, ctx);
}

// ---------------------------------------------------------------------------
// Constraints absorbed by a channel on its own
// ---------------------------------------------------------------------------

namespace detail {

inline bool both_on_one_side(const Channel& ch, VarId a, VarId b) {
  return (ch.xpos(a) && ch.xpos(b)) || (ch.ypos(a) && ch.ypos(b));
}

inline bool is_plain_diseq(const ConstraintData& d) {
  if (d.kind == ConstraintKind::Diseq) return d.constant == 0;
  return d.kind == ConstraintKind::Linear && d.op == RelOp::Neq && d.vars.size() == 2 && d.constant == 0 &&
         d.coeffs[0] == -d.coeffs[1] && std::abs(d.coeffs[0]) == 1;
}

}  // namespace detail

inline Verdict builtin_channel_redundancy(const Constraint& c, const ChannelSet& chs) {
  const ConstraintData& d = c.data();
  for (const auto& ch : chs.channels()) {
    switch (ch.kind) {
      case ChannelKind::Permutation:
        if (detail::is_plain_diseq(d) && d.vars[0] != d.vars[1] && detail::both_on_one_side(ch, d.vars[0], d.vars[1]))
          return Verdict::proven(Method::PermutationDiseq);
        break;
      case ChannelKind::Boolean: {
        if (d.kind != ConstraintKind::Linear || d.op != RelOp::Eq || d.constant != 1) break;
        if (static_cast<int>(d.vars.size()) != ch.k) break;
        if (!std::all_of(d.coeffs.begin(), d.coeffs.end(), [](int w) { return w == 1; })) break;
        auto p = ch.ypos(d.vars[0]);
        if (!p) break;
        int row = *p / ch.k;
        std::vector<VarId> want(ch.ys.begin() + row * ch.k, ch.ys.begin() + (row + 1) * ch.k);
        std::sort(want.begin(), want.end());
        if (want == d.vars) return Verdict::proven(Method::BooleanRow);
        break;
      }
      case ChannelKind::Set:
        if (d.kind == ConstraintKind::SetDisjoint && d.vars[0] != d.vars[1] && ch.ypos(d.vars[0]) &&
            ch.ypos(d.vars[1]))
          return Verdict::proven(Method::SetDisjoint);
        break;
      case ChannelKind::Set2Bool: break;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Whole-model analysis
// ---------------------------------------------------------------------------

struct AnalysisBudget {
  bool pairs = true;
  bool split_equalities = true;
  std::size_t split_check_cap = 100'000;  // subdomains for the split equivalence check
  std::size_t cap = enumeration_cap();
  std::size_t search_nodes = 1'000'000;
};

struct ReportEntry {
  std::string id;
  std::string side;  // "x", "y" or "common"
  Constraint c;
  Verdict verdict;
  bool removed = false;
};

struct RedundancyReport {
  std::vector<ReportEntry> entries;
  std::vector<std::string> kept;
  std::vector<std::pair<std::string, std::vector<std::string>>> splits;  // original id → halves

  [[nodiscard]] const ReportEntry* find(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return &e;
    return nullptr;
  }

  [[nodiscard]] std::vector<std::string> removed() const {
    std::vector<std::string> out;
    for (const auto& e : entries)
      if (e.removed) out.push_back(e.id);
    return out;
  }

  /// `<id> <status> <method> [witnesses...]`, one line per constraint.
  [[nodiscard]] std::string lines() const {
    std::ostringstream os;
    for (const auto& e : entries) {
      os << e.id << ' ' << status_name(e.verdict.status) << ' '
         << (e.verdict.method ? method_name(*e.verdict.method) : "-");
      for (const auto& w : e.verdict.witness_ids) os << ' ' << w;
      os << '\n';
    }
    return os.str();
  }

  [[nodiscard]] std::string table() const {
    std::size_t w = 10;
    for (const auto& e : entries) w = std::max(w, e.id.size());
    std::ostringstream os;
    auto pad = [](std::string s, std::size_t n) {
      if (s.size() < n) s.append(n - s.size(), ' ');
      return s;
    };
    os << pad("constraint", w) << "  side    status          method            witnesses\n";
    for (const auto& e : entries) {
      os << pad(e.id, w) << "  " << pad(e.side, 6) << "  " << pad(status_name(e.verdict.status), 14) << "  "
         << pad(e.verdict.method ? method_name(*e.verdict.method) : "-", 16) << "  ";
      std::size_t shown = 0;
      for (const auto& id : e.verdict.witness_ids) {
        if (shown++ == 6) {
          os << " ...";
          break;
        }
        os << (shown > 1 ? " " : "") << id;
      }
      os << '\n';
    }
    os << "kept " << kept.size() << " of " << entries.size() << " constraints\n";
    return os.str();
  }
};

namespace detail {

struct Item {
  NamedConstraint nc;
  std::string side;
  Verdict verdict;
  bool removed = false;
};

inline bool is_linear_eq(const Constraint& c) {
  return c.kind() == ConstraintKind::Linear && c.data().op == RelOp::Eq && !c.data().vars.empty();
}

inline std::pair<Constraint, Constraint> linear_halves(const Constraint& c) {
  const ConstraintData& d = c.data();
  return {cons::linear(d.coeffs, d.vars, RelOp::Leq, d.constant),
          cons::linear(d.coeffs, d.vars, RelOp::Geq, d.constant)};
}

class Ladder {
 public:
  Ladder(const CombinedModel& cm, const AnalysisBudget& b) : ctx_(cm.d_init(), cm.channels, b.cap), b_(b) {}

  RedundancyContext& ctx() { return ctx_; }

  Verdict run(const Constraint& c, const std::vector<NamedConstraint>& same, const std::vector<NamedConstraint>& opp) {
    if (Verdict v = implication(c, same); v.redundant()) return v;
    if (Verdict v = unrestrictive(c, opp); v.redundant()) return v;
    std::vector<NamedConstraint> rel = relevant_to_rules(c, opp);
    if (rel.empty()) return {};
    for (const auto& cx : rel)
      if (Verdict v = constraint_redundant_via_channel(c, cx, ctx_); v.redundant()) return v;
    MultiOptions mo;
    mo.pairs = b_.pairs;
    return constraint_redundant_multi(c, opp, ctx_, mo);
  }

 private:
  Verdict implication(const Constraint& c, const std::vector<NamedConstraint>& same) {
    for (const auto& c1 : same) {
      if (c1.c == c) continue;
      if (!std::includes(c1.c.scope().begin(), c1.c.scope().end(), c.scope().begin(), c.scope().end())) continue;
      try {
        if (is_logically_redundant(c, c1.c, ctx_.d_init(), b_.cap)) return Verdict::proven(Method::Implication, {c1.id});
      } catch (const CapExceeded&) {
      }
    }
    return {};
  }

  Verdict unrestrictive(const Constraint& c, const std::vector<NamedConstraint>& opp) {
    if (ctx_.channels().empty() || restrictive_towards(c, ctx_.channels(), ctx_.d_init())) return {};
    std::vector<VarId> pre = vars_of(ctx_.channel_props(c.scope()));
    pre = merge_vars(std::move(pre), c.scope());
    for (const auto& cx : opp) {
      const auto& sc = cx.c.scope();
      bool touches = std::any_of(sc.begin(), sc.end(), [&](VarId v) { return std::binary_search(pre.begin(), pre.end(), v); });
      if (!touches) continue;
      if (Verdict v = redundant_unrestrictive(c, cx, ctx_, b_.search_nodes); v.redundant()) return v;
    }
    return {};
  }

  std::vector<NamedConstraint> relevant_to_rules(const Constraint& c, const std::vector<NamedConstraint>& opp) {
    std::vector<VarId> mapped;
    try {
      for (const auto& r : ctx_.rules(c)) {
        for (const Atom& a : r.lhs) mapped.push_back(ctx_.channels().map(a).var);
        mapped.push_back(ctx_.channels().map(r.rhs).var);
      }
    } catch (const AtomOutOfUniverse&) {
      return {};
    } catch (const CapExceeded&) {
      return {};
    }
    mapped = merge_vars(std::move(mapped), {});
    std::vector<NamedConstraint> out;
    for (const auto& cx : opp) {
      const auto& sc = cx.c.scope();
      if (std::any_of(sc.begin(), sc.end(), [&](VarId v) { return std::binary_search(mapped.begin(), mapped.end(), v); }))
        out.push_back(cx);
    }
    return out;
  }

  RedundancyContext ctx_;
  AnalysisBudget b_;
};

}  // namespace detail

/// The removal ladder over a combined model. Constraints absorbed by the
/// channels go first; the rest are tried side by side starting with
/// cm.analyze_first, each against what is still kept.
inline RedundancyReport analyze_model(const CombinedModel& cm, const AnalysisBudget& budget = {}) {
  std::vector<detail::Item> items;
  for (const auto& nc : cm.common) items.push_back({nc, "common", {}, false});
  for (const auto& nc : cm.x.constraints) items.push_back({nc, "x", {}, false});
  for (const auto& nc : cm.y.constraints) items.push_back({nc, "y", {}, false});

  for (auto& it : items) {
    if (it.side == "common") continue;
    it.verdict = builtin_channel_redundancy(it.nc.c, cm.channels);
    it.removed = it.verdict.redundant();
  }

  detail::Ladder ladder(cm, budget);
  auto kept_on = [&](const std::string& side, const detail::Item* self) {
    std::vector<NamedConstraint> out;
    for (const auto& it : items)
      if (!it.removed && &it != self && (it.side == side || it.side == "common")) out.push_back(it.nc);
    return out;
  };

  RedundancyReport rep;
  std::string first = cm.analyze_first == Side::X ? "x" : "y";
  std::string second = first == "x" ? "y" : "x";
  for (const std::string& side : {first, second}) {
    const std::string other = side == "x" ? "y" : "x";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].side != side || items[i].removed) continue;
      Verdict v = ladder.run(items[i].nc.c, kept_on(side, &items[i]), kept_on(other, nullptr));
      if (!v.redundant() && budget.split_equalities && detail::is_linear_eq(items[i].nc.c) &&
          count_subdomains(items[i].nc.c.scope(), cm.d_init()) <= budget.split_check_cap) {
        auto [le, ge] = detail::linear_halves(items[i].nc.c);
        auto& ctx = ladder.ctx();
        if (equivalent_to_dsb(items[i].nc.c, {ctx.prop(le), ctx.prop(ge)}, cm.d_init())) {
          std::string id = items[i].nc.id;
          rep.splits.push_back({id, {id + ".le", id + ".ge"}});
          detail::Item a{{id + ".le", le}, side, {}, false};
          detail::Item b{{id + ".ge", ge}, side, {}, false};
          items[i] = a;
          items.insert(items.begin() + static_cast<long>(i) + 1, b);
          --i;  // analyze the halves in place
          continue;
        }
      }
      items[i].verdict = std::move(v);
      items[i].removed = items[i].verdict.redundant();
    }
  }

  for (auto& it : items) {
    if (!it.removed) rep.kept.push_back(it.nc.id);
    rep.entries.push_back({it.nc.id, it.side, it.nc.c, std::move(it.verdict), it.removed});
  }
  return rep;
}

/// The combined model restricted to the constraints the report keeps.
inline Model optimized_model(const CombinedModel& cm, const RedundancyReport& rep, const std::string& variant = "opt") {
  Model m = cm.flatten(variant);
  m.constraints.clear();
  for (const auto& e : rep.entries)
    if (!e.removed) m.constraints.push_back({e.id, e.c});
  return m;
}

}  // namespace redprop
