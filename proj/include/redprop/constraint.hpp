#pragma once

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "redprop/core.hpp"

namespace redprop {

/// Dense total assignment indexed by variable index. Only the entries for the
/// variables a constraint mentions are read.
struct Assignment {
  std::vector<int> ints;
  std::vector<ValueSet> sets;

  Assignment() = default;
  Assignment(std::size_t ni, std::size_t ns) : ints(ni, 0), sets(ns) {}
  explicit Assignment(const Domain& d) : Assignment(d.num_ints(), d.num_sets()) {}

  /// The valuation of a fixed domain (sets take their lower bound).
  static Assignment of_fixed(const Domain& d) {
    Assignment a(d);
    for (std::size_t i = 0; i < d.num_ints(); ++i) {
      const ValueSet& v = d.ints(static_cast<int>(i));
      if (!v.empty()) a.ints[i] = v.min();
    }
    for (std::size_t i = 0; i < d.num_sets(); ++i) a.sets[i] = d.sets(static_cast<int>(i)).lb;
    return a;
  }

  [[nodiscard]] int value(VarId v) const { return ints[static_cast<std::size_t>(v.index)]; }
  [[nodiscard]] const ValueSet& set(VarId v) const { return sets[static_cast<std::size_t>(v.index)]; }

  [[nodiscard]] Value get(VarId v) const {
    if (v.is_int()) return value(v);
    return set(v);
  }
  void put(VarId v, const Value& val) {
    if (v.is_int()) ints[static_cast<std::size_t>(v.index)] = std::get<int>(val);
    else sets[static_cast<std::size_t>(v.index)] = std::get<ValueSet>(val);
  }
};

// ---------------------------------------------------------------------------
// Integer expressions (intensional constraints)
// ---------------------------------------------------------------------------

struct Expr {
  enum class Kind : std::uint8_t { Var, Const, Sum, Abs, Min, Max };

  Kind kind = Kind::Const;
  VarId var;
  int value = 0;
  std::vector<int> coeffs;  // Sum only, parallel to args
  std::vector<Expr> args;

  [[nodiscard]] int eval(const Assignment& a) const {
    switch (kind) {
      case Kind::Var: return a.value(var);
      case Kind::Const: return value;
      case Kind::Sum: {
        int s = value;
        for (std::size_t i = 0; i < args.size(); ++i) s += coeffs[i] * args[i].eval(a);
        return s;
      }
      case Kind::Abs: return std::abs(args[0].eval(a));
      case Kind::Min: {
        int m = args[0].eval(a);
        for (std::size_t i = 1; i < args.size(); ++i) m = std::min(m, args[i].eval(a));
        return m;
      }
      case Kind::Max: {
        int m = args[0].eval(a);
        for (std::size_t i = 1; i < args.size(); ++i) m = std::max(m, args[i].eval(a));
        return m;
      }
    }
    return 0;
  }

  void collect(std::vector<VarId>& out) const {
    if (kind == Kind::Var) out.push_back(var);
    for (const auto& e : args) e.collect(out);
  }

  [[nodiscard]] std::string str(const VarNamer& name) const {
    switch (kind) {
      case Kind::Var: return name(var);
      case Kind::Const: return std::to_string(value);
      case Kind::Sum: {
        std::string s;
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (coeffs[i] < 0) s += "-";
          else if (i > 0) s += "+";
          if (std::abs(coeffs[i]) != 1) s += std::to_string(std::abs(coeffs[i])) + "*";
          s += args[i].str(name);
        }
        if (value != 0) s += (value > 0 ? "+" : "") + std::to_string(value);
        return "(" + s + ")";
      }
      case Kind::Abs: return "|" + args[0].str(name) + "|";
      case Kind::Min:
      case Kind::Max: {
        std::string s = kind == Kind::Min ? "min(" : "max(";
        for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i].str(name);
        return s + ")";
      }
    }
    return {};
  }
};

namespace expr {
inline Expr var(VarId v) { return {Expr::Kind::Var, v, 0, {}, {}}; }
inline Expr cst(int c) { return {Expr::Kind::Const, {}, c, {}, {}}; }
inline Expr sum(std::vector<int> coeffs, std::vector<Expr> args, int offset = 0) {
  return {Expr::Kind::Sum, {}, offset, std::move(coeffs), std::move(args)};
}
inline Expr diff(Expr a, Expr b) { return sum({1, -1}, {std::move(a), std::move(b)}); }
inline Expr abs(Expr a) { return {Expr::Kind::Abs, {}, 0, {}, {std::move(a)}}; }
inline Expr min(Expr a, Expr b) { return {Expr::Kind::Min, {}, 0, {}, {std::move(a), std::move(b)}}; }
inline Expr max(std::vector<Expr> args) { return {Expr::Kind::Max, {}, 0, {}, std::move(args)}; }
}  // namespace expr

enum class RelOp : std::uint8_t { Eq, Neq, Leq, Lt, Geq, Gt };

inline bool compare(int l, RelOp op, int r) {
  switch (op) {
    case RelOp::Eq: return l == r;
    case RelOp::Neq: return l != r;
    case RelOp::Leq: return l <= r;
    case RelOp::Lt: return l < r;
    case RelOp::Geq: return l >= r;
    case RelOp::Gt: return l > r;
  }
  return false;
}

inline const char* op_str(RelOp op) {
  switch (op) {
    case RelOp::Eq: return "=";
    case RelOp::Neq: return "!=";
    case RelOp::Leq: return "<=";
    case RelOp::Lt: return "<";
    case RelOp::Geq: return ">=";
    case RelOp::Gt: return ">";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Constraint AST
// ---------------------------------------------------------------------------

enum class ConstraintKind : std::uint8_t {
  True,
  Table,            // vars, tuples
  Linear,           // Σ coeffs·vars op constant
  Diseq,            // vars[0] ≠ vars[1] + constant
  AbsDiff,          // vars[0] = |vars[1] − vars[2]|
  ReifSum,          // Σ coeffs[i]·(vars[i] = value) = target (last var, or constant)
  BiImpl,           // vars[0] = ints[0] ⇔ vars[1] = ints[1]
  AllDifferent,     // vars
  AtomC,            // a single atomic constraint
  Rel,              // lhs op rhs over expressions
  SetEmpty,         // vars[0] = ∅
  SetSubset,        // vars[0] ⊆ vars[1]
  SetDisjoint,      // vars[0] ∩ vars[1] = ∅
  SetUnion,         // vars[0] = vars[1] ∪ vars[2]
  SetInter,         // vars[0] = vars[1] ∩ vars[2]
  SetDiff,          // vars[0] = vars[1] − vars[2]
  SetCard,          // |vars[0]| = vars[1] (or constant)
  SetInterCardLeq,  // |vars[0] ∩ vars[1]| ≤ constant
  SetWeightedSum,   // Σ_{e ∈ vars[0]} weight(e) = vars[1]
  Max,              // vars[0] = max(vars[1..])
  Implication,      // children[0] ⇒ children[1]
  Negation,         // ¬children[0]
  Conjunction,      // ∧ children
};

class Constraint;

struct ConstraintData {
  ConstraintKind kind = ConstraintKind::True;
  std::vector<VarId> vars;
  std::vector<int> coeffs;
  std::vector<int> ints;
  int constant = 0;
  int value = 0;
  bool has_target = false;
  RelOp op = RelOp::Eq;
  std::vector<std::vector<Value>> tuples;
  std::vector<std::pair<int, int>> weights;  // (element, weight), sorted by element
  Atom atom;
  Expr lhs, rhs;
  std::vector<Constraint> children;
};

/// Immutable constraint: shared AST plus its sorted scope.
class Constraint {
 public:
  Constraint() : Constraint(ConstraintData{}) {}
  explicit Constraint(ConstraintData data) : d_(std::make_shared<const ConstraintData>(std::move(data))) {
    std::vector<VarId> s;
    collect(s);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    scope_ = std::move(s);
  }

  [[nodiscard]] ConstraintKind kind() const { return d_->kind; }
  [[nodiscard]] const ConstraintData& data() const { return *d_; }
  [[nodiscard]] const std::vector<VarId>& scope() const { return scope_; }

  [[nodiscard]] bool mentions(VarId v) const { return std::binary_search(scope_.begin(), scope_.end(), v); }

  [[nodiscard]] bool eval(const Assignment& a) const {
    const auto& d = *d_;
    switch (d.kind) {
      case ConstraintKind::True: return true;
      case ConstraintKind::Table: {
        for (const auto& t : d.tuples) {
          bool ok = true;
          for (std::size_t i = 0; i < d.vars.size() && ok; ++i) ok = a.get(d.vars[i]) == t[i];
          if (ok) return true;
        }
        return false;
      }
      case ConstraintKind::Linear: {
        long s = 0;
        for (std::size_t i = 0; i < d.vars.size(); ++i) s += static_cast<long>(d.coeffs[i]) * a.value(d.vars[i]);
        return compare(static_cast<int>(s), d.op, d.constant);
      }
      case ConstraintKind::Diseq: return a.value(d.vars[0]) != a.value(d.vars[1]) + d.constant;
      case ConstraintKind::AbsDiff: return a.value(d.vars[0]) == std::abs(a.value(d.vars[1]) - a.value(d.vars[2]));
      case ConstraintKind::ReifSum: {
        std::size_t n = d.coeffs.size();
        int s = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (a.value(d.vars[i]) == d.value) s += d.coeffs[i];
        return s == (d.has_target ? a.value(d.vars[n]) : d.constant);
      }
      case ConstraintKind::BiImpl:
        return (a.value(d.vars[0]) == d.ints[0]) == (a.value(d.vars[1]) == d.ints[1]);
      case ConstraintKind::AllDifferent: {
        for (std::size_t i = 0; i < d.vars.size(); ++i)
          for (std::size_t j = i + 1; j < d.vars.size(); ++j)
            if (a.value(d.vars[i]) == a.value(d.vars[j])) return false;
        return true;
      }
      case ConstraintKind::AtomC: return holds(d.atom, a.get(d.atom.var));
      case ConstraintKind::Rel: return compare(d.lhs.eval(a), d.op, d.rhs.eval(a));
      case ConstraintKind::SetEmpty: return a.set(d.vars[0]).empty();
      case ConstraintKind::SetSubset: return a.set(d.vars[0]).subset_of(a.set(d.vars[1]));
      case ConstraintKind::SetDisjoint: return !a.set(d.vars[0]).intersects(a.set(d.vars[1]));
      case ConstraintKind::SetUnion: return a.set(d.vars[0]) == (a.set(d.vars[1]) | a.set(d.vars[2]));
      case ConstraintKind::SetInter: return a.set(d.vars[0]) == (a.set(d.vars[1]) & a.set(d.vars[2]));
      case ConstraintKind::SetDiff: return a.set(d.vars[0]) == (a.set(d.vars[1]) - a.set(d.vars[2]));
      case ConstraintKind::SetCard: {
        int card = static_cast<int>(a.set(d.vars[0]).size());
        return card == (d.has_target ? a.value(d.vars[1]) : d.constant);
      }
      case ConstraintKind::SetInterCardLeq:
        return static_cast<int>((a.set(d.vars[0]) & a.set(d.vars[1])).size()) <= d.constant;
      case ConstraintKind::SetWeightedSum: {
        const ValueSet& s = a.set(d.vars[0]);
        int total = 0;
        for (auto [e, w] : d.weights)
          if (s.contains(e)) total += w;
        // elements without a weight make the sum undefined
        for (int e : s.values())
          if (!std::any_of(d.weights.begin(), d.weights.end(), [e](auto p) { return p.first == e; })) return false;
        return total == a.value(d.vars[1]);
      }
      case ConstraintKind::Max: {
        int m = a.value(d.vars[1]);
        for (std::size_t i = 2; i < d.vars.size(); ++i) m = std::max(m, a.value(d.vars[i]));
        return a.value(d.vars[0]) == m;
      }
      case ConstraintKind::Implication: return !d.children[0].eval(a) || d.children[1].eval(a);
      case ConstraintKind::Negation: return !d.children[0].eval(a);
      case ConstraintKind::Conjunction:
        return std::all_of(d.children.begin(), d.children.end(), [&](const Constraint& c) { return c.eval(a); });
    }
    return false;
  }

  /// Canonical structural rendering; equal keys mean equal constraints.
  [[nodiscard]] std::string key() const { return str(default_name); }

  [[nodiscard]] std::string str(const VarNamer& name) const {
    const auto& d = *d_;
    std::ostringstream os;
    auto list = [&](const std::vector<VarId>& vs, std::size_t from, std::size_t to) {
      for (std::size_t i = from; i < to; ++i) os << (i > from ? "," : "") << name(vs[i]);
    };
    switch (d.kind) {
      case ConstraintKind::True: os << "true"; break;
      case ConstraintKind::Table: {
        os << "table(";
        list(d.vars, 0, d.vars.size());
        os << ";";
        for (std::size_t t = 0; t < d.tuples.size(); ++t) {
          os << (t ? " " : "") << "(";
          for (std::size_t i = 0; i < d.tuples[t].size(); ++i) {
            if (i) os << ",";
            const Value& v = d.tuples[t][i];
            if (std::holds_alternative<int>(v)) os << std::get<int>(v);
            else os << std::get<ValueSet>(v).str();
          }
          os << ")";
        }
        os << ")";
        break;
      }
      case ConstraintKind::Linear:
        for (std::size_t i = 0; i < d.vars.size(); ++i) {
          int c = d.coeffs[i];
          if (c < 0) os << "-";
          else if (i) os << "+";
          if (std::abs(c) != 1) os << std::abs(c) << "*";
          os << name(d.vars[i]);
        }
        os << op_str(d.op) << d.constant;
        break;
      case ConstraintKind::Diseq:
        os << name(d.vars[0]) << "!=" << name(d.vars[1]);
        if (d.constant) os << (d.constant > 0 ? "+" : "") << d.constant;
        break;
      case ConstraintKind::AbsDiff:
        os << name(d.vars[0]) << "=|" << name(d.vars[1]) << "-" << name(d.vars[2]) << "|";
        break;
      case ConstraintKind::ReifSum: {
        std::size_t n = d.coeffs.size();
        os << "sum(";
        for (std::size_t i = 0; i < n; ++i) {
          if (i) os << "+";
          if (d.coeffs[i] != 1) os << d.coeffs[i] << "*";
          os << "(" << name(d.vars[i]) << "=" << d.value << ")";
        }
        os << ")=";
        if (d.has_target) os << name(d.vars[n]);
        else os << d.constant;
        break;
      }
      case ConstraintKind::BiImpl:
        os << name(d.vars[0]) << "=" << d.ints[0] << "<=>" << name(d.vars[1]) << "=" << d.ints[1];
        break;
      case ConstraintKind::AllDifferent:
        os << "alldifferent(";
        list(d.vars, 0, d.vars.size());
        os << ")";
        break;
      case ConstraintKind::AtomC: os << format_atom(d.atom, name); break;
      case ConstraintKind::Rel: os << d.lhs.str(name) << op_str(d.op) << d.rhs.str(name); break;
      case ConstraintKind::SetEmpty: os << name(d.vars[0]) << " = {}"; break;
      case ConstraintKind::SetSubset: os << name(d.vars[0]) << " subseteq " << name(d.vars[1]); break;
      case ConstraintKind::SetDisjoint: os << name(d.vars[0]) << " disjoint " << name(d.vars[1]); break;
      case ConstraintKind::SetUnion:
        os << name(d.vars[0]) << "=" << name(d.vars[1]) << " union " << name(d.vars[2]);
        break;
      case ConstraintKind::SetInter:
        os << name(d.vars[0]) << "=" << name(d.vars[1]) << " inter " << name(d.vars[2]);
        break;
      case ConstraintKind::SetDiff:
        os << name(d.vars[0]) << "=" << name(d.vars[1]) << " minus " << name(d.vars[2]);
        break;
      case ConstraintKind::SetCard:
        os << "|" << name(d.vars[0]) << "|=";
        if (d.has_target) os << name(d.vars[1]);
        else os << d.constant;
        break;
      case ConstraintKind::SetInterCardLeq:
        os << "|" << name(d.vars[0]) << " inter " << name(d.vars[1]) << "|<=" << d.constant;
        break;
      case ConstraintKind::SetWeightedSum:
        os << "wsum(" << name(d.vars[0]) << ";";
        for (std::size_t i = 0; i < d.weights.size(); ++i)
          os << (i ? "," : "") << d.weights[i].first << ":" << d.weights[i].second;
        os << ")=" << name(d.vars[1]);
        break;
      case ConstraintKind::Max:
        os << name(d.vars[0]) << "=max(";
        list(d.vars, 1, d.vars.size());
        os << ")";
        break;
      case ConstraintKind::Implication:
        os << "(" << d.children[0].str(name) << ")=>(" << d.children[1].str(name) << ")";
        break;
      case ConstraintKind::Negation: os << "not(" << d.children[0].str(name) << ")"; break;
      case ConstraintKind::Conjunction:
        for (std::size_t i = 0; i < d.children.size(); ++i)
          os << (i ? " /\\ " : "") << "(" << d.children[i].str(name) << ")";
        break;
    }
    return os.str();
  }

  friend bool operator==(const Constraint& a, const Constraint& b) { return a.key() == b.key(); }

 private:
  void collect(std::vector<VarId>& out) const {
    const auto& d = *d_;
    out.insert(out.end(), d.vars.begin(), d.vars.end());
    if (d.kind == ConstraintKind::AtomC) out.push_back(d.atom.var);
    if (d.kind == ConstraintKind::Rel) {
      d.lhs.collect(out);
      d.rhs.collect(out);
    }
    for (const auto& c : d.children) c.collect(out);
  }

  std::shared_ptr<const ConstraintData> d_;
  std::vector<VarId> scope_;
};

// ---------------------------------------------------------------------------
// Factories (normalized forms)
// ---------------------------------------------------------------------------

namespace cons {

inline Constraint truth() { return Constraint{}; }

inline Constraint table(std::vector<VarId> vars, std::vector<std::vector<Value>> tuples) {
  for (const auto& t : tuples)
    if (t.size() != vars.size()) throw InvalidParams("table: tuple arity differs from the scope");
  ConstraintData d;
  d.kind = ConstraintKind::Table;
  d.vars = std::move(vars);
  d.tuples = std::move(tuples);
  return Constraint(std::move(d));
}

/// Σ coeffs·vars op k with terms sorted by variable and zero terms dropped.
inline Constraint linear(std::vector<int> coeffs, std::vector<VarId> vars, RelOp op, int k) {
  std::vector<std::pair<VarId, int>> terms;
  for (std::size_t i = 0; i < vars.size(); ++i) terms.emplace_back(vars[i], coeffs[i]);
  std::sort(terms.begin(), terms.end());
  std::vector<std::pair<VarId, int>> merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().first == t.first) merged.back().second += t.second;
    else merged.push_back(t);
  }
  std::erase_if(merged, [](auto& t) { return t.second == 0; });
  if (op == RelOp::Lt) {
    op = RelOp::Leq;
    k -= 1;
  } else if (op == RelOp::Gt) {
    op = RelOp::Geq;
    k += 1;
  }
  if (op == RelOp::Geq) {
    for (auto& t : merged) t.second = -t.second;
    op = RelOp::Leq;
    k = -k;
  }
  ConstraintData d;
  d.kind = ConstraintKind::Linear;
  for (auto& [v, c] : merged) {
    d.vars.push_back(v);
    d.coeffs.push_back(c);
  }
  d.op = op;
  d.constant = k;
  return Constraint(std::move(d));
}

inline Constraint sum_of(const std::vector<VarId>& vars, RelOp op, int k) {
  return linear(std::vector<int>(vars.size(), 1), vars, op, k);
}

/// x ≠ y + offset, stored with the smaller variable first.
inline Constraint diseq(VarId x, VarId y, int offset = 0) {
  if (y < x) {
    std::swap(x, y);
    offset = -offset;
  }
  ConstraintData d;
  d.kind = ConstraintKind::Diseq;
  d.vars = {x, y};
  d.constant = offset;
  return Constraint(std::move(d));
}

/// u = |x − y|.
inline Constraint abs_diff(VarId u, VarId x, VarId y) {
  if (y < x) std::swap(x, y);
  ConstraintData d;
  d.kind = ConstraintKind::AbsDiff;
  d.vars = {u, x, y};
  return Constraint(std::move(d));
}

/// Σ w_i·(x_i = value) = target.
inline Constraint reif_sum(std::vector<VarId> xs, std::vector<int> weights, int value, VarId target) {
  ConstraintData d;
  d.kind = ConstraintKind::ReifSum;
  d.vars = std::move(xs);
  d.vars.push_back(target);
  d.coeffs = std::move(weights);
  d.value = value;
  d.has_target = true;
  return Constraint(std::move(d));
}

inline Constraint reif_sum(std::vector<VarId> xs, std::vector<int> weights, int value, int target) {
  ConstraintData d;
  d.kind = ConstraintKind::ReifSum;
  d.vars = std::move(xs);
  d.coeffs = std::move(weights);
  d.value = value;
  d.constant = target;
  return Constraint(std::move(d));
}

/// x = a ⇔ y = b.
inline Constraint bi_impl(VarId x, int a, VarId y, int b) {
  if (y < x) {
    std::swap(x, y);
    std::swap(a, b);
  }
  ConstraintData d;
  d.kind = ConstraintKind::BiImpl;
  d.vars = {x, y};
  d.ints = {a, b};
  return Constraint(std::move(d));
}

inline Constraint all_different(std::vector<VarId> vars) {
  std::sort(vars.begin(), vars.end());
  ConstraintData d;
  d.kind = ConstraintKind::AllDifferent;
  d.vars = std::move(vars);
  return Constraint(std::move(d));
}

inline Constraint atom(const Atom& a) {
  ConstraintData d;
  d.kind = ConstraintKind::AtomC;
  d.atom = a;
  return Constraint(std::move(d));
}

inline Constraint rel(Expr lhs, RelOp op, Expr rhs) {
  ConstraintData d;
  d.kind = ConstraintKind::Rel;
  d.lhs = std::move(lhs);
  d.op = op;
  d.rhs = std::move(rhs);
  return Constraint(std::move(d));
}

inline Constraint set_binary(ConstraintKind k, VarId a, VarId b) {
  ConstraintData d;
  d.kind = k;
  d.vars = {a, b};
  return Constraint(std::move(d));
}

inline Constraint empty_set(VarId s) {
  ConstraintData d;
  d.kind = ConstraintKind::SetEmpty;
  d.vars = {s};
  return Constraint(std::move(d));
}

inline Constraint subset(VarId a, VarId b) { return set_binary(ConstraintKind::SetSubset, a, b); }
inline Constraint disjoint(VarId a, VarId b) {
  if (b < a) std::swap(a, b);
  return set_binary(ConstraintKind::SetDisjoint, a, b);
}

inline Constraint set_ternary(ConstraintKind k, VarId a, VarId b, VarId c) {
  ConstraintData d;
  d.kind = k;
  d.vars = {a, b, c};
  return Constraint(std::move(d));
}

inline Constraint set_union(VarId a, VarId b, VarId c) {
  if (c < b) std::swap(b, c);
  return set_ternary(ConstraintKind::SetUnion, a, b, c);
}
inline Constraint set_inter(VarId a, VarId b, VarId c) {
  if (c < b) std::swap(b, c);
  return set_ternary(ConstraintKind::SetInter, a, b, c);
}
inline Constraint set_diff(VarId a, VarId b, VarId c) { return set_ternary(ConstraintKind::SetDiff, a, b, c); }

inline Constraint card(VarId s, VarId x) {
  ConstraintData d;
  d.kind = ConstraintKind::SetCard;
  d.vars = {s, x};
  d.has_target = true;
  return Constraint(std::move(d));
}

inline Constraint card(VarId s, int m) {
  ConstraintData d;
  d.kind = ConstraintKind::SetCard;
  d.vars = {s};
  d.constant = m;
  return Constraint(std::move(d));
}

inline Constraint inter_card_leq(VarId a, VarId b, int bound) {
  if (b < a) std::swap(a, b);
  ConstraintData d;
  d.kind = ConstraintKind::SetInterCardLeq;
  d.vars = {a, b};
  d.constant = bound;
  return Constraint(std::move(d));
}

/// Σ_{e ∈ S} weight(e) = l.
inline Constraint weighted_sum(VarId s, std::vector<std::pair<int, int>> weights, VarId l) {
  std::sort(weights.begin(), weights.end());
  ConstraintData d;
  d.kind = ConstraintKind::SetWeightedSum;
  d.vars = {s, l};
  d.weights = std::move(weights);
  return Constraint(std::move(d));
}

/// u = max(ls).
inline Constraint max_of(VarId u, const std::vector<VarId>& ls) {
  ConstraintData d;
  d.kind = ConstraintKind::Max;
  d.vars.push_back(u);
  d.vars.insert(d.vars.end(), ls.begin(), ls.end());
  return Constraint(std::move(d));
}

inline Constraint implies(Constraint a, Constraint b) {
  ConstraintData d;
  d.kind = ConstraintKind::Implication;
  d.children = {std::move(a), std::move(b)};
  return Constraint(std::move(d));
}

inline Constraint negation(Constraint a) {
  ConstraintData d;
  d.kind = ConstraintKind::Negation;
  d.children = {std::move(a)};
  return Constraint(std::move(d));
}

inline Constraint conjunction(std::vector<Constraint> cs) {
  ConstraintData d;
  d.kind = ConstraintKind::Conjunction;
  d.children = std::move(cs);
  return Constraint(std::move(d));
}

}  // namespace cons

/// c1 ∧ c2 as a single constraint node.
inline Constraint conjoin(const Constraint& a, const Constraint& b) { return cons::conjunction({a, b}); }

}  // namespace redprop
