#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "redprop/enumerate.hpp"
#include "redprop/space.hpp"

namespace redprop {

/// C ↦ c with C a conjunction of atoms (kept sorted).
struct PropRule {
  std::vector<Atom> lhs;
  Atom rhs;

  PropRule() = default;
  PropRule(std::vector<Atom> l, Atom r) : lhs(std::move(l)), rhs(r) {
    std::sort(lhs.begin(), lhs.end());
    lhs.erase(std::unique(lhs.begin(), lhs.end()), lhs.end());
  }

  [[nodiscard]] std::vector<VarId> vars() const {
    std::vector<VarId> out;
    for (const Atom& a : lhs) out.push_back(a.var);
    out.push_back(rhs.var);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  friend bool operator==(const PropRule&, const PropRule&) = default;
  /// Enumeration order: |lhs|, then lhs lexicographically, then rhs.
  friend bool operator<(const PropRule& a, const PropRule& b) {
    if (a.lhs.size() != b.lhs.size()) return a.lhs.size() < b.lhs.size();
    if (a.lhs != b.lhs) return a.lhs < b.lhs;
    return a.rhs < b.rhs;
  }
};

using RuleSet = std::vector<PropRule>;

inline bool atom_holds(const Atom& a, const Assignment& asg) { return holds(a, asg.get(a.var)); }

/// The propagator defined by a rule.
inline Domain rule_propagate(const PropRule& r, const Domain& d) {
  for (const Atom& a : r.lhs)
    if (!entails_atom(d, a)) return d;
  return apply_atom(d, r.rhs);
}

class RuleProp final : public Propagator {
 public:
  explicit RuleProp(PropRule r) : Propagator(r.vars()), r_(std::move(r)) {}

  bool propagate(Space& s) const override {
    for (const Atom& a : r_.lhs)
      if (!s.entails(a)) return true;
    return s.restrict(r_.rhs);
  }
  [[nodiscard]] std::string describe() const override;
  [[nodiscard]] const PropRule& rule() const { return r_; }

 private:
  PropRule r_;
};

inline std::vector<PropagatorPtr> rule_propagators(const RuleSet& rs) {
  std::vector<PropagatorPtr> out;
  out.reserve(rs.size());
  for (const auto& r : rs) out.push_back(std::make_shared<RuleProp>(r));
  return out;
}

/// D_init restricted by every atom of a conjunction.
inline Domain restrict_all(Domain d, const std::vector<Atom>& atoms) {
  for (const Atom& a : atoms) restrict_atom(d, a);
  return d;
}

/// ⊨ (D_init ∧ c) → (lhs → rhs), by enumerating vars(c) ∪ vars(r) inside D_init ∧ lhs.
inline bool implements(const Constraint& c, const PropRule& r, const Domain& d_init,
                       std::size_t cap = enumeration_cap()) {
  Domain d = restrict_all(d_init, r.lhs);
  if (d.is_false()) return true;
  std::vector<VarId> vars = c.scope();
  for (VarId v : r.vars()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  bool ok = true;
  Assignment a(d);
  for_each_valuation(vars, d, a, [&](const Assignment& asg) {
    if (ok && c.eval(asg) && !atom_holds(r.rhs, asg)) ok = false;
  }, cap);
  return ok;
}

/// ⊨ (D_init ∧ lhs2) → lhs1 and ⊨ (D_init ∧ rhs1) → rhs2.
inline bool directly_subsumes(const PropRule& r1, const PropRule& r2, const Domain& d_init) {
  Domain l2 = restrict_all(d_init, r2.lhs);
  if (!l2.is_false()) {
    for (const Atom& a : r1.lhs)
      if (!entails_atom(l2, a)) return false;
  }
  Domain c1 = apply_atom(d_init, r1.rhs);
  return c1.is_false() || entails_atom(c1, r2.rhs);
}

// -- text form ---------------------------------------------------------------

inline std::string format_rule(const PropRule& r, const VarNamer& name = default_name) {
  std::string out;
  if (r.lhs.empty()) out = "true";
  for (std::size_t i = 0; i < r.lhs.size(); ++i) {
    if (i) out += " & ";
    out += format_atom(r.lhs[i], name);
  }
  return out + " -> " + format_atom(r.rhs, name);
}

inline std::string RuleProp::describe() const { return format_rule(r_); }

using VarResolver = std::function<std::optional<VarId>(const std::string&)>;

/// x<i> / S<i>, mirroring default_name.
inline std::optional<VarId> default_resolve(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'x' && s[0] != 'S')) return std::nullopt;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  int idx = std::stoi(s.substr(1));
  return s[0] == 'x' ? int_var(idx) : set_var(idx);
}

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

inline int parse_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + s + "'");
  }
  if (pos != s.size()) throw ParseError("bad integer '" + s + "'");
  return v;
}

}  // namespace detail

inline Atom parse_atom(const std::string& text, const VarResolver& resolve = default_resolve) {
  std::string s = detail::trim(text);
  auto var = [&](const std::string& n) {
    auto v = resolve(detail::trim(n));
    if (!v) throw ParseError("unknown variable '" + detail::trim(n) + "'");
    return *v;
  };
  if (auto p = s.find(" notin "); p != std::string::npos)
    return not_in(detail::parse_int(detail::trim(s.substr(0, p))), var(s.substr(p + 7)));
  if (auto p = s.find(" in "); p != std::string::npos)
    return in(detail::parse_int(detail::trim(s.substr(0, p))), var(s.substr(p + 4)));
  for (const auto& [op, kind] : {std::pair{"!=", AtomKind::Neq}, std::pair{"<=", AtomKind::Leq},
                                 std::pair{">=", AtomKind::Geq}, std::pair{"=", AtomKind::Eq}}) {
    std::string o = op;
    if (auto p = s.find(o); p != std::string::npos) {
      return Atom{kind, var(s.substr(0, p)), detail::parse_int(detail::trim(s.substr(p + o.size())))};
    }
  }
  throw ParseError("cannot parse atom '" + s + "'");
}

inline PropRule parse_rule(const std::string& line, const VarResolver& resolve = default_resolve) {
  auto arrow = line.find("->");
  if (arrow == std::string::npos) throw ParseError("missing '->' in rule '" + line + "'");
  std::string lhs = detail::trim(line.substr(0, arrow));
  std::vector<Atom> atoms;
  if (lhs != "true" && !lhs.empty()) {
    std::stringstream ss(lhs);
    std::string part;
    while (std::getline(ss, part, '&')) atoms.push_back(parse_atom(part, resolve));
  }
  return PropRule(std::move(atoms), parse_atom(line.substr(arrow + 2), resolve));
}

/// Groups atom rules sharing a lhs, i.e. C ↦ c1, ..., ck.
inline std::vector<std::pair<std::vector<Atom>, std::vector<Atom>>> group_by_lhs(const RuleSet& rs) {
  std::vector<std::pair<std::vector<Atom>, std::vector<Atom>>> out;
  for (const auto& r : rs) {
    auto it = std::find_if(out.begin(), out.end(), [&](auto& g) { return g.first == r.lhs; });
    if (it == out.end()) out.push_back({r.lhs, {r.rhs}});
    else it->second.push_back(r.rhs);
  }
  return out;
}

}  // namespace redprop
