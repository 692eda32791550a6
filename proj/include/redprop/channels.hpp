#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "redprop/dispatch.hpp"
#include "redprop/enumerate.hpp"
#include "redprop/rules.hpp"

namespace redprop {

enum class ChannelKind { Permutation, Boolean, Set, Set2Bool };

/// A bijection between the atoms of two variable groups. Values and set
/// elements are 1-based.
///   Permutation: x_i = j ⇔ y_j = i            (n × n)
///   Boolean:     x_i = j ⇔ z_ij = 1           (xs: n, ys: n·k row-major)
///   Set:         x_i = j ⇔ i ∈ S_j            (xs: n, ys: k)
///   Set2Bool:    j ∈ S_i ⇔ z_ij = 1           (xs: k sets, ys: k·n row-major)
struct Channel {
  ChannelKind kind = ChannelKind::Permutation;
  std::vector<VarId> xs;
  std::vector<VarId> ys;
  int n = 0;
  int k = 0;
  bool inverted = false;

  [[nodiscard]] std::optional<int> xpos(VarId v) const { return pos(xs, v); }
  [[nodiscard]] std::optional<int> ypos(VarId v) const { return pos(ys, v); }
  [[nodiscard]] bool owns(VarId v) const { return xpos(v) || ypos(v); }

 private:
  static std::optional<int> pos(const std::vector<VarId>& vs, VarId v) {
    // variables of one side are allocated contiguously, so try the direct offset first
    if (!vs.empty() && vs.front().kind == v.kind) {
      int off = v.index - vs.front().index;
      if (off >= 0 && off < static_cast<int>(vs.size()) && vs[static_cast<std::size_t>(off)] == v) return off;
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (vs[i] == v) return static_cast<int>(i);
    return std::nullopt;
  }
};

namespace channel {

inline Channel permutation(std::vector<VarId> xs, std::vector<VarId> ys) {
  if (xs.size() != ys.size()) throw InvalidParams("permutation channel: sides differ in size");
  int n = static_cast<int>(xs.size());
  return {ChannelKind::Permutation, std::move(xs), std::move(ys), n, n};
}

inline Channel boolean(std::vector<VarId> xs, std::vector<VarId> zs, int k) {
  int n = static_cast<int>(xs.size());
  if (static_cast<int>(zs.size()) != n * k) throw InvalidParams("boolean channel: expected n*k Booleans");
  return {ChannelKind::Boolean, std::move(xs), std::move(zs), n, k};
}

inline Channel set(std::vector<VarId> xs, std::vector<VarId> ss) {
  int n = static_cast<int>(xs.size());
  int k = static_cast<int>(ss.size());
  return {ChannelKind::Set, std::move(xs), std::move(ss), n, k};
}

inline Channel set2bool(std::vector<VarId> ss, std::vector<VarId> zs, int n) {
  int k = static_cast<int>(ss.size());
  if (static_cast<int>(zs.size()) != n * k) throw InvalidParams("set2bool channel: expected k*n Booleans");
  return {ChannelKind::Set2Bool, std::move(ss), std::move(zs), n, k};
}

}  // namespace channel

inline Channel inverse(Channel ch) {
  ch.inverted = !ch.inverted;
  return ch;
}

namespace detail {

[[noreturn]] inline void out_of_universe(const Atom& a) {
  throw AtomOutOfUniverse("atom " + format_atom(a) + " is not in the channel's universe");
}

/// Booleans only carry equations; z≠1 is z=0 and z≠0 is z=1.
inline Atom normalize_bool(const Atom& a) {
  if (a.kind == AtomKind::Neq && (a.value == 0 || a.value == 1)) return eq(a.var, 1 - a.value);
  return a;
}

inline Atom forward(const Channel& ch, const Atom& a) {
  auto p = ch.xpos(a.var);
  if (!p) out_of_universe(a);
  int i = *p + 1;
  int j = a.value;
  switch (ch.kind) {
    case ChannelKind::Permutation:
      if (j < 1 || j > ch.n) out_of_universe(a);
      if (a.kind == AtomKind::Eq) return eq(ch.ys[static_cast<std::size_t>(j - 1)], i);
      if (a.kind == AtomKind::Neq) return neq(ch.ys[static_cast<std::size_t>(j - 1)], i);
      break;
    case ChannelKind::Boolean: {
      if (j < 1 || j > ch.k) out_of_universe(a);
      VarId z = ch.ys[static_cast<std::size_t>((i - 1) * ch.k + (j - 1))];
      if (a.kind == AtomKind::Eq) return eq(z, 1);
      if (a.kind == AtomKind::Neq) return eq(z, 0);
      break;
    }
    case ChannelKind::Set:
      if (j < 1 || j > ch.k) out_of_universe(a);
      if (a.kind == AtomKind::Eq) return in(i, ch.ys[static_cast<std::size_t>(j - 1)]);
      if (a.kind == AtomKind::Neq) return not_in(i, ch.ys[static_cast<std::size_t>(j - 1)]);
      break;
    case ChannelKind::Set2Bool: {
      if (j < 1 || j > ch.n) out_of_universe(a);
      VarId z = ch.ys[static_cast<std::size_t>((i - 1) * ch.n + (j - 1))];
      if (a.kind == AtomKind::In) return eq(z, 1);
      if (a.kind == AtomKind::NotIn) return eq(z, 0);
      break;
    }
  }
  out_of_universe(a);
}

inline Atom backward(const Channel& ch, const Atom& atom) {
  auto p = ch.ypos(atom.var);
  if (!p) out_of_universe(atom);
  int q = *p;
  switch (ch.kind) {
    case ChannelKind::Permutation: {
      int j = q + 1;
      int i = atom.value;
      if (i < 1 || i > ch.n) out_of_universe(atom);
      if (atom.kind == AtomKind::Eq) return eq(ch.xs[static_cast<std::size_t>(i - 1)], j);
      if (atom.kind == AtomKind::Neq) return neq(ch.xs[static_cast<std::size_t>(i - 1)], j);
      break;
    }
    case ChannelKind::Boolean:
    case ChannelKind::Set2Bool: {
      Atom a = normalize_bool(atom);
      if (a.kind != AtomKind::Eq || (a.value != 0 && a.value != 1)) out_of_universe(atom);
      int width = ch.kind == ChannelKind::Boolean ? ch.k : ch.n;
      VarId src = ch.xs[static_cast<std::size_t>(q / width)];
      int j = q % width + 1;
      if (ch.kind == ChannelKind::Boolean) return a.value == 1 ? eq(src, j) : neq(src, j);
      return a.value == 1 ? in(j, src) : not_in(j, src);
    }
    case ChannelKind::Set: {
      int j = q + 1;
      int i = atom.value;
      if (i < 1 || i > ch.n) out_of_universe(atom);
      if (atom.kind == AtomKind::In) return eq(ch.xs[static_cast<std::size_t>(i - 1)], j);
      if (atom.kind == AtomKind::NotIn) return neq(ch.xs[static_cast<std::size_t>(i - 1)], j);
      break;
    }
  }
  out_of_universe(atom);
}

}  // namespace detail

/// ⋄(a); for an inverted channel, ⋄⁻¹(a).
inline Atom map_atom(const Channel& ch, const Atom& a) {
  return ch.inverted ? detail::backward(ch, a) : detail::forward(ch, a);
}

/// A_X of the channel's source side (the Y side when inverted).
inline std::vector<Atom> channel_atoms(const Channel& ch) {
  Channel base = ch;
  base.inverted = false;
  std::vector<Atom> xs_atoms;
  int width = ch.kind == ChannelKind::Permutation ? ch.n : ch.kind == ChannelKind::Set2Bool ? ch.n : ch.k;
  for (VarId v : base.xs)
    for (int j = 1; j <= width; ++j) {
      if (ch.kind == ChannelKind::Set2Bool) {
        xs_atoms.push_back(in(j, v));
        xs_atoms.push_back(not_in(j, v));
      } else {
        xs_atoms.push_back(eq(v, j));
        xs_atoms.push_back(neq(v, j));
      }
    }
  if (!ch.inverted) return xs_atoms;
  std::vector<Atom> out;
  for (const Atom& a : xs_atoms) out.push_back(detail::forward(base, a));
  return out;
}

/// F_⋄ = ∪ {a ↦ ⋄(a), ⋄(a) ↦ a}.
inline RuleSet channel_propagators(const Channel& ch) {
  RuleSet out;
  for (const Atom& a : channel_atoms(ch)) {
    Atom b = map_atom(ch, a);
    out.emplace_back(std::vector<Atom>{a}, b);
    out.emplace_back(std::vector<Atom>{b}, a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// a ⇔ b as the four rules a ↦ b, b ↦ a, ¬a ↦ ¬b, ¬b ↦ ¬a.
class AtomPairProp final : public Propagator {
 public:
  AtomPairProp(Atom a, Atom b) : Propagator(a.var < b.var ? std::vector<VarId>{a.var, b.var} : std::vector<VarId>{b.var, a.var}),
                                 a_(a), b_(b) {}

  bool propagate(Space& s) const override {
    int ta = truth(s, a_), tb = truth(s, b_);
    if (ta == tb) return true;
    if (ta >= 0 && tb >= 0) return s.fail();
    const Atom& target = ta < 0 ? a_ : b_;
    return s.restrict(std::max(ta, tb) ? target : negate(target));
  }
  [[nodiscard]] std::string describe() const override { return format_atom(a_) + " <-> " + format_atom(b_); }

 private:
  // 1 entailed, 0 disentailed, -1 open; a and b are positive atoms
  static int truth(const Space& s, const Atom& a) {
    if (a.var.is_int()) {
      const ValueSet& d = s.ints(a.var);
      if (!d.contains(a.value)) return 0;
      return d.singleton() ? 1 : -1;
    }
    const SetBounds& d = s.sets(a.var);
    if (d.lb.contains(a.value)) return d.ub.contains(a.value) ? 1 : 0;
    return d.ub.contains(a.value) ? -1 : 0;
  }

  Atom a_, b_;
};

/// Runtime form of F_⋄: one AtomPairProp per positive atom pair.
inline std::vector<PropagatorPtr> channel_runtime(const Channel& ch) {
  Channel base = ch;
  base.inverted = false;
  std::vector<PropagatorPtr> out;
  for (const Atom& a : channel_atoms(base)) {
    if (a.kind == AtomKind::Neq || a.kind == AtomKind::NotIn) continue;
    out.push_back(std::make_shared<AtomPairProp>(a, map_atom(base, a)));
  }
  return out;
}

/// Several channels plus identity on shared variables.
class ChannelSet {
 public:
  ChannelSet() = default;
  explicit ChannelSet(std::vector<Channel> chs) : chs_(std::move(chs)) {}

  void add(Channel ch) { chs_.push_back(std::move(ch)); }
  [[nodiscard]] const std::vector<Channel>& channels() const { return chs_; }
  [[nodiscard]] bool empty() const { return chs_.empty(); }

  /// Maps an atom to the other side; atoms on shared variables map to themselves.
  [[nodiscard]] Atom map(const Atom& a) const {
    for (const auto& ch : chs_) {
      Channel base = ch;
      base.inverted = false;
      if (ch.xpos(a.var)) return detail::forward(base, a);
      if (ch.ypos(a.var)) return detail::backward(base, a);
    }
    return a;
  }

  [[nodiscard]] bool owns(VarId v) const {
    return std::any_of(chs_.begin(), chs_.end(), [&](const Channel& c) { return c.owns(v); });
  }

  [[nodiscard]] RuleSet rules() const {
    RuleSet out;
    for (const auto& ch : chs_) {
      RuleSet r = channel_propagators(ch);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }

  [[nodiscard]] std::vector<PropagatorPtr> propagators() const {
    std::vector<PropagatorPtr> out;
    for (const auto& ch : chs_) {
      auto ps = channel_runtime(ch);
      out.insert(out.end(), ps.begin(), ps.end());
    }
    return out;
  }

 private:
  std::vector<Channel> chs_;
};

enum class Side { X, Y };

/// Closed-form restrictiveness of the four channel kinds over their standard D_init.
inline bool restrictive_closed_form(ChannelKind kind, Side side) {
  switch (kind) {
    case ChannelKind::Permutation: return true;
    case ChannelKind::Boolean: return side == Side::Y;
    case ChannelKind::Set: return side == Side::Y;
    case ChannelKind::Set2Bool: return false;
  }
  return true;
}

/// Brute force: does every valuation of the side's variables in d_init extend
/// to a solution of C_⋄?
inline bool restrictive_brute_force(const Channel& ch, const Domain& d_init, Side side,
                                    std::size_t cap = enumeration_cap()) {
  Channel base = ch;
  base.inverted = false;
  const std::vector<VarId>& vars = side == Side::X ? base.xs : base.ys;
  std::vector<Atom> atoms = channel_atoms(side == Side::X ? base : inverse(base));
  bool restrictive = false;
  Assignment asg(d_init);
  for_each_valuation(vars, d_init, asg, [&](const Assignment& a) {
    if (restrictive) return;
    Domain img = d_init;
    for (const Atom& at : atoms) {
      if (!atom_holds(at, a)) continue;
      Atom mapped = side == Side::X ? detail::forward(base, at) : detail::backward(base, at);
      restrict_atom(img, mapped);
    }
    if (img.is_false()) restrictive = true;
  }, cap);
  return restrictive;
}

/// Restrictiveness of ⋄ (side X) or ⋄⁻¹ (side Y).
inline bool classify_restrictive(const Channel& ch, const Domain& d_init, Side side, bool brute_force = false) {
  if (brute_force) return restrictive_brute_force(ch, d_init, side);
  return restrictive_closed_form(ch.kind, side);
}

inline bool classify_restrictive(const ChannelSet& cs, const Domain& d_init, Side side, bool brute_force = false) {
  return std::any_of(cs.channels().begin(), cs.channels().end(),
                     [&](const Channel& c) { return classify_restrictive(c, d_init, side, brute_force); });
}

/// ≃(c) for the set-constraint forms of the set/Boolean mapping table.
inline std::vector<Constraint> bool_decompose(const Constraint& c, const Channel& ch) {
  if (ch.kind != ChannelKind::Set2Bool) throw InvalidParams("bool_decompose: needs a set2bool channel");
  const ConstraintData& d = c.data();
  auto z = [&](VarId s, int j) {
    auto p = ch.xpos(s);
    if (!p) throw UnsupportedSetForm("bool_decompose: set variable outside the channel");
    return ch.ys[static_cast<std::size_t>(*p * ch.n + (j - 1))];
  };
  auto le = [](VarId a, VarId b) { return cons::linear({1, -1}, {a, b}, RelOp::Leq, 0); };
  std::vector<Constraint> out;
  for (int j = 1; j <= ch.n; ++j) {
    switch (d.kind) {
      case ConstraintKind::SetEmpty: out.push_back(cons::atom(eq(z(d.vars[0], j), 0))); break;
      case ConstraintKind::SetSubset: out.push_back(le(z(d.vars[0], j), z(d.vars[1], j))); break;
      case ConstraintKind::SetDisjoint:
        out.push_back(cons::linear({1, 1}, {z(d.vars[0], j), z(d.vars[1], j)}, RelOp::Leq, 1));
        break;
      case ConstraintKind::SetUnion: {
        VarId a = z(d.vars[0], j), b = z(d.vars[1], j), cc = z(d.vars[2], j);
        out.push_back(le(b, a));
        out.push_back(le(cc, a));
        out.push_back(cons::linear({1, -1, -1}, {a, b, cc}, RelOp::Leq, 0));
        break;
      }
      case ConstraintKind::SetInter: {
        VarId a = z(d.vars[0], j), b = z(d.vars[1], j), cc = z(d.vars[2], j);
        out.push_back(le(a, b));
        out.push_back(le(a, cc));
        out.push_back(cons::linear({1, 1, -1}, {b, cc, a}, RelOp::Leq, 1));
        break;
      }
      case ConstraintKind::SetDiff: {
        VarId a = z(d.vars[0], j), b = z(d.vars[1], j), cc = z(d.vars[2], j);
        out.push_back(le(a, b));
        out.push_back(cons::linear({1, 1}, {a, cc}, RelOp::Leq, 1));
        out.push_back(cons::linear({1, -1, -1}, {b, cc, a}, RelOp::Leq, 0));
        break;
      }
      case ConstraintKind::SetCard: break;
      default: throw UnsupportedSetForm("bool_decompose: unsupported form " + c.key());
    }
  }
  if (d.kind == ConstraintKind::SetCard) {
    std::vector<VarId> zs;
    for (int j = 1; j <= ch.n; ++j) zs.push_back(z(d.vars[0], j));
    if (d.has_target) {
      std::vector<int> coeffs(zs.size(), 1);
      zs.push_back(d.vars[1]);
      coeffs.push_back(-1);
      out.push_back(cons::linear(coeffs, zs, RelOp::Eq, 0));
    } else {
      out.push_back(cons::sum_of(zs, RelOp::Eq, d.constant));
    }
  }
  return out;
}

}  // namespace redprop
