#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "redprop/model.hpp"

namespace redprop {

struct BacpInstance {
  int m = 0, n = 0;  // courses, periods
  int a = 0, b = 0;  // load bounds per period
  int c = 0, d = 0;  // course-count bounds per period
  std::vector<int> t;                   // credits per course
  std::vector<std::pair<int, int>> R;  // prerequisites (i before j), 1-based
};

/// Text format: `m n a b c d`, then `t_1 … t_m`, then one `i j` pair per line.
inline BacpInstance parse_bacp(std::istream& in) {
  BacpInstance inst;
  if (!(in >> inst.m >> inst.n >> inst.a >> inst.b >> inst.c >> inst.d)) throw ParseError("bacp: bad header line");
  inst.t.resize(static_cast<std::size_t>(std::max(inst.m, 0)));
  for (int& x : inst.t)
    if (!(in >> x)) throw ParseError("bacp: expected " + std::to_string(inst.m) + " credit values");
  int i = 0, j = 0;
  while (in >> i) {
    if (!(in >> j)) throw ParseError("bacp: dangling prerequisite");
    inst.R.emplace_back(i, j);
  }
  return inst;
}

inline BacpInstance load_bacp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("bacp: cannot open " + path);
  return parse_bacp(f);
}

/// Six unit-credit courses over three periods with the chain 1 → 2 → 3.
inline BacpInstance bacp_desk() { return {6, 3, 1, 6, 1, 6, {1, 1, 1, 1, 1, 1}, {{1, 2}, {2, 3}}}; }

struct ProblemSpec {
  std::string problem;      // langford, all_interval, queens, golfers, bacp
  std::vector<int> params;  // langford (m, n); all_interval (n); queens (n); golfers (g, s, w)
  std::optional<BacpInstance> bacp;

  [[nodiscard]] std::string params_str() const {
    if (problem == "bacp") {
      const BacpInstance& b = bacp ? *bacp : bacp_desk();
      return "m" + std::to_string(b.m) + "n" + std::to_string(b.n);
    }
    std::string sep = problem == "langford" ? "x" : problem == "golfers" ? "-" : ",";
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) out += (i ? sep : "") + std::to_string(params[i]);
    return out;
  }
};

namespace detail {

class Builder {
 public:
  VarId add_int(std::string name, ValueSet dom) {
    ints_.push_back(std::move(dom));
    int_names_.push_back(std::move(name));
    return int_var(static_cast<int>(ints_.size()) - 1);
  }
  VarId add_set(std::string name, SetBounds b) {
    sets_.push_back(std::move(b));
    set_names_.push_back(std::move(name));
    return set_var(static_cast<int>(sets_.size()) - 1);
  }

  /// Fills the universe of both sides of cm.
  void finish(CombinedModel& cm, const std::string& problem, const std::string& params) const {
    Domain d(ints_.size(), sets_.size());
    for (std::size_t i = 0; i < ints_.size(); ++i) d.ints(static_cast<int>(i)) = ints_[i];
    for (std::size_t i = 0; i < sets_.size(); ++i) d.sets(static_cast<int>(i)) = sets_[i];
    for (Model* m : {&cm.x, &cm.y}) {
      m->problem = problem;
      m->params = params;
      m->d_init = d;
      m->int_names = int_names_;
      m->set_names = set_names_;
    }
  }

 private:
  std::vector<ValueSet> ints_;
  std::vector<SetBounds> sets_;
  std::vector<std::string> int_names_, set_names_;
};

inline std::string idx(std::initializer_list<int> is) {
  std::string s = "(";
  bool first = true;
  for (int i : is) {
    s += (first ? "" : ",") + std::to_string(i);
    first = false;
  }
  return s + ")";
}

inline std::string sub(const std::string& base, std::initializer_list<int> is) {
  std::string s = base;
  for (int i : is) s += "_" + std::to_string(i);
  return s;
}

inline std::string family(const std::string& id) { return id.substr(0, id.find('(')); }

inline void need(bool ok, const std::string& what) {
  if (!ok) throw InvalidParams(what);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Langford: m copies of each digit 1..n, copies of i separated by i numbers.
// ---------------------------------------------------------------------------

inline CombinedModel langford_model(int m, int n) {
  detail::need(m >= 2 && n >= 1, "langford: need m >= 2 and n >= 1");
  const int N = m * n;
  detail::Builder b;
  CombinedModel cm;
  std::vector<VarId> xs, ys;
  for (int i = 1; i <= N; ++i) xs.push_back(b.add_int("x" + std::to_string(i), ValueSet::range(1, N)));
  for (int i = 1; i <= N; ++i) ys.push_back(b.add_int("y" + std::to_string(i), ValueSet::range(1, N)));
  auto X = [&](int i) { return xs[static_cast<std::size_t>(i - 1)]; };
  auto Y = [&](int j) { return ys[static_cast<std::size_t>(j - 1)]; };
  auto first = [&](int i) { return m * (i - 1) + 1; };  // x index of the first copy of digit i

  auto& cx = cm.x.constraints;
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) cx.push_back({"LX1" + detail::idx({i, j}), cons::diseq(X(i), X(j))});
  for (int c = 1; c < m; ++c)
    for (int i = 1; i <= n; ++i)
      cx.push_back({"LX2." + std::to_string(c) + detail::idx({i}),
                    cons::linear({1, -1}, {X(first(i) + c), X(first(i) + c - 1)}, RelOp::Eq, i + 1)});

  auto& cy = cm.y.constraints;
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) cy.push_back({"LY1" + detail::idx({i, j}), cons::diseq(Y(i), Y(j))});
  for (int c = 1; c < m; ++c)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= N - (m - 1) * (i + 1); ++j)
        cy.push_back({"LY2." + std::to_string(c) + detail::idx({i, j}),
                      cons::bi_impl(Y(j), first(i), Y(j + c * (i + 1)), first(i) + c)});
  for (int i = 1; i <= n; ++i)
    for (int j = N + 1 - (m - 1) * (i + 1); j <= N; ++j)
      if (j >= 1) cy.push_back({"LY3" + detail::idx({i, j}), cons::atom(neq(Y(j), first(i)))});

  cm.x.vars = xs;
  cm.y.vars = ys;
  cm.x.groups["x"] = xs;
  cm.y.groups["y"] = ys;
  cm.channels.add(channel::permutation(xs, ys));
  cm.analyze_first = Side::Y;
  b.finish(cm, "langford", std::to_string(m) + "x" + std::to_string(n));
  return cm;
}

// ---------------------------------------------------------------------------
// All-interval series
// ---------------------------------------------------------------------------

struct AisOptions {
  bool pr = false;   // alldifferent instead of the disequality cliques on the X side
  bool iy4 = false;  // the combined interval constraint on the Y side
};

inline CombinedModel ais_model(int n, AisOptions opt = {}) {
  using namespace expr;
  detail::need(n >= 3, "all_interval: need n >= 3");
  detail::Builder b;
  CombinedModel cm;
  std::vector<VarId> xs, us, ys, vs;
  for (int i = 1; i <= n; ++i) xs.push_back(b.add_int("x" + std::to_string(i), ValueSet::range(1, n)));
  for (int i = 1; i < n; ++i) us.push_back(b.add_int("u" + std::to_string(i), ValueSet::range(1, n - 1)));
  for (int i = 1; i <= n; ++i) ys.push_back(b.add_int("y" + std::to_string(i), ValueSet::range(1, n)));
  for (int i = 1; i < n; ++i) vs.push_back(b.add_int("v" + std::to_string(i), ValueSet::range(1, n - 1)));
  auto at = [](const std::vector<VarId>& v, int i) { return v[static_cast<std::size_t>(i - 1)]; };

  auto& cx = cm.x.constraints;
  if (opt.pr) {
    cx.push_back({"IX1.1'", cons::all_different(xs)});
    cx.push_back({"IX1.2'", cons::all_different(us)});
  } else {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) cx.push_back({"IX1.1" + detail::idx({i, j}), cons::diseq(at(xs, i), at(xs, j))});
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j < n; ++j) cx.push_back({"IX1.2" + detail::idx({i, j}), cons::diseq(at(us, i), at(us, j))});
  }
  for (int i = 1; i < n; ++i)
    cx.push_back({"IX2" + detail::idx({i}), cons::abs_diff(at(us, i), at(xs, i), at(xs, i + 1))});

  auto& cy = cm.y.constraints;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) cy.push_back({"IY1.1" + detail::idx({i, j}), cons::diseq(at(ys, i), at(ys, j))});
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cy.push_back({"IY1.2" + detail::idx({i, j}), cons::diseq(at(vs, i), at(vs, j))});
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      VarId yi = at(ys, i), yj = at(ys, j), v = at(vs, j - i);
      if (opt.iy4) {
        cy.push_back({"IY4" + detail::idx({i, j}),
                      cons::implies(cons::rel(abs(diff(var(yi), var(yj))), RelOp::Eq, cst(1)),
                                    cons::rel(var(v), RelOp::Eq, min(var(yi), var(yj))))});
        continue;
      }
      cy.push_back({"IY2.1" + detail::idx({i, j}),
                    cons::implies(cons::linear({1, -1}, {yi, yj}, RelOp::Eq, 1), cons::rel(var(v), RelOp::Eq, var(yj)))});
    }
  }
  if (!opt.iy4)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        VarId yi = at(ys, i), yj = at(ys, j), v = at(vs, j - i);
        cy.push_back({"IY2.2" + detail::idx({i, j}),
                      cons::implies(cons::linear({1, -1}, {yj, yi}, RelOp::Eq, 1), cons::rel(var(v), RelOp::Eq, var(yi)))});
      }
  VarId y1 = at(ys, 1), yn = at(ys, n);
  cy.push_back({"IY3", cons::conjunction({cons::rel(abs(diff(var(y1), var(yn))), RelOp::Eq, cst(1)),
                                          cons::rel(var(at(vs, n - 1)), RelOp::Eq, min(var(y1), var(yn)))})});

  cm.x.vars = xs;
  cm.x.vars.insert(cm.x.vars.end(), us.begin(), us.end());
  cm.y.vars = ys;
  cm.y.vars.insert(cm.y.vars.end(), vs.begin(), vs.end());
  cm.x.groups["x"] = xs;
  cm.y.groups["y"] = ys;
  cm.channels.add(channel::permutation(xs, ys));
  cm.channels.add(channel::permutation(us, vs));
  cm.analyze_first = Side::Y;
  b.finish(cm, "all_interval", std::to_string(n));
  return cm;
}

// ---------------------------------------------------------------------------
// n-queens: integer rows and a Boolean board
// ---------------------------------------------------------------------------

inline CombinedModel queens_model(int n) {
  detail::need(n >= 1, "queens: need n >= 1");
  detail::Builder b;
  CombinedModel cm;
  std::vector<VarId> xs, zs;
  for (int i = 1; i <= n; ++i) xs.push_back(b.add_int("x" + std::to_string(i), ValueSet::range(1, n)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) zs.push_back(b.add_int(detail::sub("z", {i, j}), ValueSet{0, 1}));
  auto X = [&](int i) { return xs[static_cast<std::size_t>(i - 1)]; };
  auto Z = [&](int i, int j) { return zs[static_cast<std::size_t>((i - 1) * n + (j - 1))]; };

  auto& cx = cm.x.constraints;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) cx.push_back({"QX1" + detail::idx({i, j}), cons::diseq(X(i), X(j))});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) cx.push_back({"QX2.1" + detail::idx({i, j}), cons::diseq(X(i), X(j), i - j)});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) cx.push_back({"QX2.2" + detail::idx({i, j}), cons::diseq(X(i), X(j), j - i)});

  auto& cz = cm.y.constraints;
  auto sum = [&](const std::vector<VarId>& vs, RelOp op) { return cons::sum_of(vs, op, 1); };
  for (int i = 1; i <= n; ++i) {
    std::vector<VarId> row;
    for (int j = 1; j <= n; ++j) row.push_back(Z(i, j));
    cz.push_back({"QZ1" + detail::idx({i}), sum(row, RelOp::Eq)});
  }
  for (int j = 1; j <= n; ++j) {
    std::vector<VarId> col;
    for (int i = 1; i <= n; ++i) col.push_back(Z(i, j));
    cz.push_back({"QZ2" + detail::idx({j}), sum(col, RelOp::Eq)});
  }
  std::vector<VarId> d1, d2;
  for (int i = 1; i <= n; ++i) {
    d1.push_back(Z(i, i));
    d2.push_back(Z(i, n - i + 1));
  }
  cz.push_back({"QZ3.1", sum(d1, RelOp::Leq)});
  cz.push_back({"QZ3.2", sum(d2, RelOp::Leq)});
  for (int f = 1; f <= 4; ++f)
    for (int k = 1; k <= n - 1; ++k) {
      std::vector<VarId> diag;
      for (int j = 1; j <= n - k; ++j) {
        if (f == 1) diag.push_back(Z(j, j + k));
        if (f == 2) diag.push_back(Z(j + k, j));
        if (f == 3) diag.push_back(Z(j, n - j - k + 1));
        if (f == 4) diag.push_back(Z(j + k, n - j + 1));
      }
      cz.push_back({"QZ4." + std::to_string(f) + detail::idx({k}), sum(diag, RelOp::Leq)});
    }

  cm.x.vars = xs;
  cm.y.vars = zs;
  cm.x.groups["x"] = xs;
  cm.y.groups["y"] = zs;
  cm.channels.add(channel::boolean(xs, zs, n));
  cm.analyze_first = Side::Y;
  b.finish(cm, "queens", std::to_string(n));
  return cm;
}

// ---------------------------------------------------------------------------
// Social golfers: integer group-of-player model and set group model
// ---------------------------------------------------------------------------

inline CombinedModel golfers_model(int g, int s, int w) {
  detail::need(g >= 1 && s >= 1 && w >= 1, "golfers: need g, s, w >= 1");
  const int n = g * s;
  detail::Builder b;
  CombinedModel cm;
  std::vector<VarId> xs, ss;
  // players by weeks, then weeks by groups
  for (int l = 1; l <= n; ++l)
    for (int k = 1; k <= w; ++k) xs.push_back(b.add_int(detail::sub("x", {l, k}), ValueSet::range(1, g)));
  for (int k = 1; k <= w; ++k)
    for (int i = 1; i <= g; ++i)
      ss.push_back(b.add_set(detail::sub("S", {i, k}), SetBounds{ValueSet{}, ValueSet::range(1, n)}));
  auto X = [&](int l, int k) { return xs[static_cast<std::size_t>((l - 1) * w + (k - 1))]; };
  auto S = [&](int i, int k) { return ss[static_cast<std::size_t>((k - 1) * g + (i - 1))]; };

  auto& cx = cm.x.constraints;
  for (int i = 1; i <= g; ++i)
    for (int k = 1; k <= w; ++k) {
      std::vector<VarId> week;
      for (int l = 1; l <= n; ++l) week.push_back(X(l, k));
      cx.push_back({"GX1" + detail::idx({i, k}), cons::reif_sum(week, std::vector<int>(week.size(), 1), i, s)});
    }
  for (int k1 = 1; k1 <= w; ++k1)
    for (int k2 = k1 + 1; k2 <= w; ++k2)
      for (int l1 = 1; l1 <= n; ++l1)
        for (int l2 = l1 + 1; l2 <= n; ++l2)
          cx.push_back({"GX2" + detail::idx({l1, l2, k1, k2}),
                        cons::negation(cons::conjunction({cons::linear({1, -1}, {X(l1, k1), X(l2, k1)}, RelOp::Eq, 0),
                                                          cons::linear({1, -1}, {X(l1, k2), X(l2, k2)}, RelOp::Eq, 0)}))});

  auto& cs = cm.y.constraints;
  for (int k = 1; k <= w; ++k)
    for (int i1 = 1; i1 <= g; ++i1)
      for (int i2 = i1 + 1; i2 <= g; ++i2) cs.push_back({"GS1" + detail::idx({i1, i2, k}), cons::disjoint(S(i1, k), S(i2, k))});
  for (int i = 1; i <= g; ++i)
    for (int k = 1; k <= w; ++k) cs.push_back({"GS2" + detail::idx({i, k}), cons::card(S(i, k), s)});
  for (int k1 = 1; k1 <= w; ++k1)
    for (int k2 = k1 + 1; k2 <= w; ++k2)
      for (int i1 = 1; i1 <= g; ++i1)
        for (int i2 = 1; i2 <= g; ++i2)
          if (i1 != i2) cs.push_back({"GS3" + detail::idx({i1, i2, k1, k2}), cons::inter_card_leq(S(i1, k1), S(i2, k2), 1)});

  cm.x.vars = xs;
  cm.y.vars = ss;
  cm.x.groups["x"] = xs;
  cm.y.groups["y"] = ss;
  cm.x.order = cm.y.order = VarOrder::InputOrder;
  for (int k = 1; k <= w; ++k) {
    std::vector<VarId> wx, ws;
    for (int l = 1; l <= n; ++l) wx.push_back(X(l, k));
    for (int i = 1; i <= g; ++i) ws.push_back(S(i, k));
    cm.channels.add(channel::set(wx, ws));
  }
  cm.analyze_first = Side::Y;
  b.finish(cm, "golfers", std::to_string(g) + "-" + std::to_string(s) + "-" + std::to_string(w));
  return cm;
}

// ---------------------------------------------------------------------------
// Balanced academic curriculum
// ---------------------------------------------------------------------------

inline CombinedModel bacp_model(const BacpInstance& in) {
  detail::need(in.m >= 1 && in.n >= 1 && static_cast<int>(in.t.size()) == in.m, "bacp: malformed instance");
  for (auto [i, j] : in.R)
    detail::need(i >= 1 && i <= in.m && j >= 1 && j <= in.m && i != j, "bacp: prerequisite out of range");
  const int total = std::accumulate(in.t.begin(), in.t.end(), 0);
  detail::Builder b;
  CombinedModel cm;
  std::vector<VarId> xs, ss, ls, qs;
  for (int i = 1; i <= in.m; ++i) xs.push_back(b.add_int("x" + std::to_string(i), ValueSet::range(1, in.n)));
  for (int j = 1; j <= in.n; ++j) ls.push_back(b.add_int("l" + std::to_string(j), ValueSet::range(0, total)));
  for (int j = 1; j <= in.n; ++j) qs.push_back(b.add_int("q" + std::to_string(j), ValueSet::range(1, in.m)));
  VarId u = b.add_int("u", ValueSet::range(0, total));
  for (int j = 1; j <= in.n; ++j)
    ss.push_back(b.add_set("S" + std::to_string(j), SetBounds{ValueSet{}, ValueSet::range(1, in.m)}));
  auto at = [](const std::vector<VarId>& v, int i) { return v[static_cast<std::size_t>(i - 1)]; };
  auto range_table = [](VarId v, int lo, int hi) {
    std::vector<std::vector<Value>> tuples;
    for (int k = lo; k <= hi; ++k) tuples.push_back({Value{k}});
    return cons::table({v}, tuples);
  };

  for (int j = 1; j <= in.n; ++j) cm.common.push_back({"B1.1" + detail::idx({j}), range_table(at(ls, j), in.a, in.b)});
  for (int j = 1; j <= in.n; ++j) cm.common.push_back({"B1.2" + detail::idx({j}), range_table(at(qs, j), in.c, in.d)});
  cm.common.push_back({"B2.1", cons::sum_of(ls, RelOp::Eq, total)});
  cm.common.push_back({"B2.2", cons::sum_of(qs, RelOp::Eq, in.m)});
  cm.common.push_back({"BU", cons::max_of(u, ls)});

  auto& cx = cm.x.constraints;
  for (int j = 1; j <= in.n; ++j) cx.push_back({"BX1" + detail::idx({j}), cons::reif_sum(xs, in.t, j, at(ls, j))});
  for (int j = 1; j <= in.n; ++j)
    cx.push_back({"BX2" + detail::idx({j}), cons::reif_sum(xs, std::vector<int>(xs.size(), 1), j, at(qs, j))});
  for (auto [i, j] : in.R) cx.push_back({"BX3" + detail::idx({i, j}), cons::linear({1, -1}, {at(xs, i), at(xs, j)}, RelOp::Lt, 0)});

  auto& cs = cm.y.constraints;
  for (int i = 1; i <= in.n; ++i)
    for (int j = i + 1; j <= in.n; ++j) cs.push_back({"BS1" + detail::idx({i, j}), cons::disjoint(at(ss, i), at(ss, j))});
  std::vector<std::pair<int, int>> weights;
  for (int i = 1; i <= in.m; ++i) weights.emplace_back(i, in.t[static_cast<std::size_t>(i - 1)]);
  for (int j = 1; j <= in.n; ++j) cs.push_back({"BS2" + detail::idx({j}), cons::weighted_sum(at(ss, j), weights, at(ls, j))});
  for (int j = 1; j <= in.n; ++j) cs.push_back({"BS3" + detail::idx({j}), cons::card(at(ss, j), at(qs, j))});
  for (auto [i, j] : in.R)
    for (int k = 1; k <= in.n - 1; ++k)
      for (int k2 = 1; k2 <= k; ++k2)
        cs.push_back({"BS4" + detail::idx({i, j, k, k2}),
                      cons::implies(cons::atom(redprop::in(i, at(ss, k))), cons::atom(not_in(j, at(ss, k2))))});

  cm.shared = ls;
  cm.shared.insert(cm.shared.end(), qs.begin(), qs.end());
  cm.shared.push_back(u);
  cm.x.vars = xs;
  cm.x.vars.insert(cm.x.vars.end(), cm.shared.begin(), cm.shared.end());
  cm.y.vars = ss;
  cm.y.vars.insert(cm.y.vars.end(), cm.shared.begin(), cm.shared.end());
  cm.x.groups["x"] = xs;
  cm.y.groups["y"] = ss;
  cm.x.objective = cm.y.objective = u;
  cm.channels.add(channel::set(xs, ss));
  cm.analyze_first = Side::X;
  b.finish(cm, "bacp", "m" + std::to_string(in.m) + "n" + std::to_string(in.n));
  return cm;
}

// ---------------------------------------------------------------------------
// Variant selection
// ---------------------------------------------------------------------------

inline CombinedModel combined(const ProblemSpec& spec, bool pr = false, bool iy4 = false) {
  const auto& p = spec.params;
  auto arity = [&](std::size_t k) {
    detail::need(p.size() == k, spec.problem + ": expected " + std::to_string(k) + " parameter(s)");
  };
  CombinedModel cm;
  if (spec.problem == "langford") {
    arity(2);
    cm = langford_model(p[0], p[1]);
  } else if (spec.problem == "all_interval") {
    arity(1);
    cm = ais_model(p[0], {pr, iy4});
  } else if (spec.problem == "queens") {
    arity(1);
    cm = queens_model(p[0]);
  } else if (spec.problem == "golfers") {
    arity(3);
    cm = golfers_model(p[0], p[1], p[2]);
  } else if (spec.problem == "bacp") {
    cm = bacp_model(spec.bacp ? *spec.bacp : bacp_desk());
  } else {
    throw InvalidParams("unknown problem '" + spec.problem + "'");
  }
  cm.x.params = cm.y.params = spec.params_str();
  return cm;
}

namespace detail {

/// One side alone: the other side's variables are pinned so search never
/// branches on them.
inline Model single(const CombinedModel& cm, bool x_side, const std::string& variant) {
  Model m = x_side ? cm.x : cm.y;
  m.variant = variant;
  std::vector<NamedConstraint> cs = cm.common;
  cs.insert(cs.end(), m.constraints.begin(), m.constraints.end());
  m.constraints = std::move(cs);
  m.channels = ChannelSet{};
  const auto& mine = m.vars;
  auto pin = [&](VarId v) {
    if (std::find(mine.begin(), mine.end(), v) != mine.end()) return;
    if (v.is_int()) {
      ValueSet& d = m.d_init.ints(v.index);
      if (!d.empty()) d = ValueSet{d.min()};
    } else {
      SetBounds& d = m.d_init.sets(v.index);
      d.ub = d.lb;
    }
  };
  for (std::size_t i = 0; i < m.d_init.num_ints(); ++i) pin(int_var(static_cast<int>(i)));
  for (std::size_t i = 0; i < m.d_init.num_sets(); ++i) pin(set_var(static_cast<int>(i)));
  return m;
}

inline Model keep_families(const CombinedModel& cm, const std::string& variant, const std::vector<std::string>& fams) {
  Model full = cm.flatten(variant);
  std::vector<NamedConstraint> kept = cm.common;
  for (const auto* side : {&cm.x.constraints, &cm.y.constraints})
    for (const auto& nc : *side)
      if (std::find(fams.begin(), fams.end(), family(nc.id)) != fams.end()) kept.push_back(nc);
  full.constraints = std::move(kept);
  return full;
}

}  // namespace detail

/// Builds one variant: mx, my (single models), full (both plus channels),
/// opt (the optimized combined model), and per-problem extras
/// (all_interval: pr, pr_full, pr_opt, iy4; queens: part).
inline Model build(const ProblemSpec& spec, const std::string& variant) {
  const std::string& pb = spec.problem;
  bool ais = pb == "all_interval";
  if (variant == "mx" || variant == "my" || variant == "full" || variant == "opt") {
    CombinedModel cm = combined(spec);
    if (variant == "mx") return detail::single(cm, true, variant);
    if (variant == "my") return detail::single(cm, false, variant);
    if (variant == "full") return cm.flatten(variant);
    if (pb == "langford") {
      std::vector<std::string> fams;
      for (int c = 1; c < spec.params.at(0); ++c) fams.push_back("LX2." + std::to_string(c));
      return detail::keep_families(cm, variant, fams);
    }
    if (ais) return detail::keep_families(cm, variant, {"IX2", "IY3"});
    if (pb == "queens") return detail::keep_families(cm, variant, {"QX1", "QX2.1", "QX2.2", "QZ2"});
    if (pb == "golfers") return detail::keep_families(cm, variant, {"GX1", "GX2"});
    return detail::keep_families(cm, variant, {"BX3", "BS2", "BS3"});
  }
  if (ais && (variant == "pr" || variant == "pr_full" || variant == "pr_opt")) {
    CombinedModel cm = combined(spec, true);
    if (variant == "pr") return detail::single(cm, true, variant);
    if (variant == "pr_full") return cm.flatten(variant);
    return detail::keep_families(cm, variant, {"IX2", "IY3"});
  }
  if (ais && variant == "iy4") return combined(spec, false, true).flatten(variant);
  if (pb == "queens" && variant == "part") {
    CombinedModel cm = combined(spec);
    Model m = detail::keep_families(cm, variant, {"QX1", "QX2.1", "QX2.2"});
    const int n = spec.params.at(0);
    for (int j = 1; j <= n; ++j) {
      std::vector<VarId> col;
      for (int i = 1; i <= n; ++i) col.push_back(cm.y.vars[static_cast<std::size_t>((i - 1) * n + (j - 1))]);
      m.constraints.push_back({"QZ2" + detail::idx({j}) + ".ge", cons::sum_of(col, RelOp::Geq, 1)});
    }
    return m;
  }
  throw InvalidParams("unknown variant '" + variant + "' for " + pb);
}

inline std::vector<std::string> variants_of(const std::string& problem) {
  std::vector<std::string> v{"mx", "my", "full", "opt"};
  if (problem == "all_interval") v.insert(v.end(), {"pr", "pr_full", "pr_opt", "iy4"});
  if (problem == "queens") v.push_back("part");
  return v;
}

// ---------------------------------------------------------------------------
// Brute-force reference enumeration
// ---------------------------------------------------------------------------

/// Every solution over model.vars, by plain DFS that evaluates each
/// constraint and channel equivalence once its variables are assigned. Uses
/// no propagator. `cap` bounds the number of visited nodes.
inline std::vector<Valuation> enumerate_brute(const Model& model, std::size_t cap = 10'000'000) {
  const Domain& d = model.d_init;
  Assignment a(d);
  const auto& order = model.vars;
  std::map<VarId, int> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos.emplace(order[i], static_cast<int>(i));
  // everything outside model.vars must be fixed already
  auto depth_of = [&](VarId v) -> int {
    auto it = pos.find(v);
    if (it != pos.end()) return it->second;
    if (!d.fixed(v)) throw InvalidParams("enumerate_brute: variable " + model.name(v) + " is neither searched nor fixed");
    return -1;
  };
  for (std::size_t i = 0; i < d.num_ints(); ++i)
    if (!d.ints(static_cast<int>(i)).empty()) a.ints[i] = d.ints(static_cast<int>(i)).min();
  for (std::size_t i = 0; i < d.num_sets(); ++i) a.sets[i] = d.sets(static_cast<int>(i)).lb;

  const std::size_t levels = order.size() + 1;  // level 0: before any assignment
  std::vector<std::vector<const Constraint*>> checks(levels);
  for (const auto& nc : model.constraints) {
    int dep = -1;
    for (VarId v : nc.c.scope()) dep = std::max(dep, depth_of(v));
    checks[static_cast<std::size_t>(dep + 1)].push_back(&nc.c);
  }
  std::vector<std::vector<std::pair<Atom, Atom>>> links(levels);
  for (const auto& ch : model.channels.channels()) {
    for (const Atom& at : channel_atoms(ch)) {
      if (at.kind == AtomKind::Neq || at.kind == AtomKind::NotIn) continue;
      Atom img = model.channels.map(at);
      int dep = std::max(depth_of(at.var), depth_of(img.var));
      links[static_cast<std::size_t>(dep + 1)].emplace_back(at, img);
    }
  }
  auto ok_at = [&](std::size_t level) {
    for (const Constraint* c : checks[level])
      if (!c->eval(a)) return false;
    for (const auto& [p, q] : links[level])
      if (holds(p, a.get(p.var)) != holds(q, a.get(q.var))) return false;
    return true;
  };

  std::vector<Valuation> out;
  std::size_t nodes = 0;
  std::vector<std::vector<Value>> vals;
  for (VarId v : order) vals.push_back(values_of(v, d));
  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    if (++nodes > cap) throw CapExceeded("enumerate_brute: node cap exceeded");
    if (!ok_at(k)) return;
    if (k == order.size()) {
      Valuation theta;
      for (VarId v : order) theta.emplace(v, a.get(v));
      out.push_back(std::move(theta));
      return;
    }
    for (const Value& val : vals[k]) {
      a.put(order[k], val);
      dfs(k + 1);
    }
  };
  dfs(0);
  return out;
}

}  // namespace redprop
