// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "redprop/redprop.hpp"

using namespace redprop;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failed checks with a short note each.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failed_.push_back(what);
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

  [[nodiscard]] Outcome outcome() const {
    Outcome o;
    o.pass = failed_.empty();
    std::ostringstream os;
    os << total_ - failed_.size() << "/" << total_ << " checks";
    if (!notes_.empty()) os << "; " << notes_;
    for (std::size_t i = 0; i < failed_.size() && i < 5; ++i) os << "; failed: " << failed_[i];
    if (failed_.size() > 5) os << "; ... " << failed_.size() - 5 << " more";
    o.detail = os.str();
    return o;
  }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failed_;
  std::string notes_;
};

int failures = 0;

void criterion(int n, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  (" << static_cast<long>(ms_since(t0))
            << " ms) " << o.detail << std::endl;
}

VarId x(int i) { return int_var(i); }
VarId S(int i) { return set_var(i); }

// -- independent dsb by enumeration ----------------------------------------------

// Every valuation of `vars` inside d, as full assignments.
void each_valuation(const std::vector<VarId>& vars, const Domain& d, const std::function<void(const Assignment&)>& f) {
  Assignment a(d);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      f(a);
      return;
    }
    VarId v = vars[i];
    if (v.is_int()) {
      for (int val : d.ints(v.index).values()) {
        a.ints[static_cast<std::size_t>(v.index)] = val;
        rec(i + 1);
      }
    } else {
      const SetBounds& b = d.sets(v.index);
      std::vector<int> free = (b.ub - b.lb).values();
      for (std::size_t m = 0; m < (std::size_t{1} << free.size()); ++m) {
        ValueSet s = b.lb;
        for (std::size_t j = 0; j < free.size(); ++j)
          if (m >> j & 1u) s.insert(free[j]);
        a.sets[static_cast<std::size_t>(v.index)] = s;
        rec(i + 1);
      }
    }
  };
  rec(0);
}

// dsb(c)(d): integer projections of the solutions, set bounds by intersection and union.
Domain brute_dsb(const Constraint& c, const Domain& d) {
  std::vector<VarId> vars = c.scope();
  std::map<VarId, ValueSet> ints;
  std::map<VarId, SetBounds> sets;
  bool any = false;
  each_valuation(vars, d, [&](const Assignment& a) {
    if (!c.eval(a)) return;
    for (VarId v : vars) {
      if (v.is_int()) {
        ints[v].insert(a.ints[static_cast<std::size_t>(v.index)]);
      } else {
        const ValueSet& s = a.sets[static_cast<std::size_t>(v.index)];
        if (!any) sets[v] = {s, s};
        else sets[v] = {sets[v].lb & s, sets[v].ub | s};
      }
    }
    any = true;
  });
  Domain out = d;
  if (!any) {
    make_false(out);
    return out;
  }
  for (auto& [v, s] : ints) out.ints(v.index) = s;
  for (auto& [v, b] : sets) out.sets(v.index) = b;
  return out;
}

// Chaotic iteration of brute_dsb over several constraints.
Domain brute_fixpoint(const std::vector<Constraint>& cs, Domain d) {
  for (bool changed = true; changed && !d.is_false();) {
    changed = false;
    for (const auto& c : cs) {
      Domain nd = brute_dsb(c, d);
      if (nd.is_false()) return nd;
      if (!(nd == d)) {
        d = std::move(nd);
        changed = true;
      }
    }
  }
  return d;
}

// -- paper examples --------------------------------------------------------------

Outcome c1_linear_example() {
  Checks ck;
  Domain d(3, 0);
  d.ints(0) = ValueSet::range(2, 7);
  d.ints(1) = ValueSet::range(0, 2);
  d.ints(2) = ValueSet::range(-1, 2);
  Constraint c = cons::linear({1, -3, -5}, {x(0), x(1), x(2)}, RelOp::Eq, 0);
  dom_propagate(c, d);  // warm up
  auto t0 = Clock::now();
  Domain out = dom_propagate(c, d);
  double ms = ms_since(t0);
  ck.expect(out.ints(0) == ValueSet({3, 5, 6}), "D'(x1)");
  ck.expect(out.ints(1) == ValueSet({0, 1, 2}), "D'(x2)");
  ck.expect(out.ints(2) == ValueSet({0, 1}), "D'(x3)");
  ck.expect(ms < 1.0, "runtime " + std::to_string(ms) + " ms");
  ck.note("dom_propagate " + std::to_string(ms) + " ms");
  return ck.outcome();
}

Outcome c2_set_examples() {
  Checks ck;
  Domain d(0, 2);
  d.sets(0) = {ValueSet{1}, ValueSet{1, 2, 3, 4}};
  d.sets(1) = {ValueSet{}, ValueSet{1, 2, 3}};
  Domain out = sb_propagate(cons::subset(S(0), S(1)), d);
  SetBounds want{ValueSet{1}, ValueSet{1, 2, 3}};
  ck.expect(out.sets(0) == want, "S1 bounds");
  ck.expect(out.sets(1) == want, "S2 bounds");

  Domain e(1, 1);
  e.ints(0) = ValueSet{2};
  e.sets(0) = {ValueSet{}, ValueSet{1, 5, 8}};
  ck.expect(dsb_propagate(cons::card(S(0), x(0)), e) == e, "card dsb unchanged");
  ck.expect(solutions(cons::card(S(0), x(0)), e).size() == 3, "three 2-subsets");
  return ck.outcome();
}

Outcome c3_boolean_sum_rules() {
  Checks ck;
  Domain d(3, 0);
  for (int i = 0; i < 3; ++i) d.ints(i) = {0, 1};
  RuleSet rs = extract_rules(cons::sum_of({x(0), x(1), x(2)}, RelOp::Eq, 1), d);
  // z12 = 1 -> z13 = 0, z14 = 0 etc. written out as atomic rules
  RuleSet want;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j)
      if (j != i) want.push_back(PropRule({eq(x(i), 1)}, eq(x(j), 0)));
    std::vector<Atom> zeros;
    for (int j = 0; j < 3; ++j)
      if (j != i) zeros.push_back(eq(x(j), 0));
    want.push_back(PropRule(zeros, eq(x(i), 1)));
  }
  std::set<PropRule> got(rs.begin(), rs.end()), expect(want.begin(), want.end());
  ck.expect(got == expect, "rule set");
  ck.expect(group_by_lhs(rs).size() == 6, "six rules by body");
  ck.note(std::to_string(rs.size()) + " atomic rules");
  return ck.outcome();
}

Outcome c4_restrictiveness() {
  Checks ck;
  auto ints = [](int first, int n) {
    std::vector<VarId> v;
    for (int i = 0; i < n; ++i) v.push_back(int_var(first + i));
    return v;
  };
  auto sets = [](int n) {
    std::vector<VarId> v;
    for (int i = 0; i < n; ++i) v.push_back(set_var(i));
    return v;
  };
  struct Case {
    std::string name;
    Channel ch;
    Domain d;
    bool x_restrictive, y_restrictive;
  };
  std::vector<Case> cases;
  {
    Domain d(6, 0);
    for (int i = 0; i < 6; ++i) d.ints(i) = ValueSet::range(1, 3);
    cases.push_back({"permutation", channel::permutation(ints(0, 3), ints(3, 3)), d, true, true});
  }
  {
    Domain d(2 + 4, 0);
    for (int i = 0; i < 2; ++i) d.ints(i) = ValueSet::range(1, 2);
    for (int i = 2; i < 6; ++i) d.ints(i) = {0, 1};
    cases.push_back({"boolean", channel::boolean(ints(0, 2), ints(2, 4), 2), d, false, true});
  }
  {
    Domain d(3, 2);
    for (int i = 0; i < 3; ++i) d.ints(i) = ValueSet::range(1, 2);
    for (int i = 0; i < 2; ++i) d.sets(i) = {ValueSet{}, ValueSet::range(1, 3)};
    cases.push_back({"set", channel::set(ints(0, 3), sets(2)), d, false, true});
  }
  {
    Domain d(6, 2);
    for (int i = 0; i < 6; ++i) d.ints(i) = {0, 1};
    for (int i = 0; i < 2; ++i) d.sets(i) = {ValueSet{}, ValueSet::range(1, 3)};
    cases.push_back({"set2bool", channel::set2bool(sets(2), ints(0, 6), 3), d, false, false});
  }
  for (const auto& c : cases)
    for (bool brute : {false, true}) {
      std::string tag = c.name + (brute ? " (enumerated)" : "");
      ck.expect(classify_restrictive(c.ch, c.d, Side::X, brute) == c.x_restrictive, tag + " X");
      ck.expect(classify_restrictive(c.ch, c.d, Side::Y, brute) == c.y_restrictive, tag + " Y");
    }
  return ck.outcome();
}

Outcome c6_no_propagation() {
  Checks ck;
  Domain d(0, 2);
  d.sets(0) = d.sets(1) = {ValueSet{}, ValueSet{1, 2, 3}};
  std::vector<Constraint> cs{cons::subset(S(0), S(1)), cons::card(S(0), 2), cons::card(S(1), 1)};
  std::vector<PropagatorPtr> ps;
  for (const auto& c : cs) {
    ps.push_back(make_propagator(c, d));
    ck.expect(ps.back()->apply(d) == d, "propagator " + c.key());
    ck.expect(brute_dsb(c, d) == d, "enumerated " + c.key());
  }
  ck.expect(fixpoint(ps, d) == d, "joint fixpoint");
  ck.expect(brute_dsb(cons::conjunction(cs), d).is_false(), "conjunction unsatisfiable");
  return ck.outcome();
}

// -- desk-size analysis ----------------------------------------------------------

struct Desk {
  ProblemSpec spec;
  CombinedModel cm;
  RedundancyReport rep;
  double millis = 0;
  SearchMode mode = SearchMode::All;
};

std::vector<Desk>& desks() {
  static std::vector<Desk> all = [] {
    std::vector<std::pair<ProblemSpec, SearchMode>> specs{
        {{"langford", {3, 9}, {}}, SearchMode::All},    {{"all_interval", {8}, {}}, SearchMode::All},
        {{"queens", {8}, {}}, SearchMode::All},         {{"golfers", {3, 2, 3}, {}}, SearchMode::All},
        {{"bacp", {}, bacp_desk()}, SearchMode::Optimize}};
    std::vector<Desk> out;
    for (auto& [spec, mode] : specs) {
      Desk d{spec, combined(spec), {}, 0, mode};
      auto t0 = Clock::now();
      d.rep = analyze_model(d.cm);
      d.millis = ms_since(t0);
      out.push_back(std::move(d));
    }
    return out;
  }();
  return all;
}

const Desk& desk(const std::string& problem) {
  for (const auto& d : desks())
    if (d.spec.problem == problem) return d;
  throw InvalidParams("no desk run for " + problem);
}

// Every entry of the family has the given removal state; the family must be non-empty.
void expect_family(Checks& ck, const Desk& d, const std::string& fam, bool removed) {
  std::size_t n = 0, bad = 0;
  for (const auto& e : d.rep.entries) {
    if (detail::family(e.id) != fam) continue;
    ++n;
    if (e.removed != removed || e.verdict.redundant() != removed) ++bad;
  }
  ck.expect(n > 0 && bad == 0, d.spec.problem + " " + fam + (removed ? " redundant" : " kept") + " (" +
                                   std::to_string(bad) + " of " + std::to_string(n) + " differ)");
}

Outcome c5_analyzer_examples() {
  Checks ck;
  double total = 0;
  for (const auto& d : desks()) total += d.millis;

  const Desk& lf = desk("langford");
  for (std::string f : {"LY2.1", "LY2.2", "LY3", "LX1", "LY1"}) expect_family(ck, lf, f, true);

  const Desk& ais = desk("all_interval");
  for (std::string f : {"IY2.1", "IY2.2", "IX1.1", "IX1.2", "IY1.1", "IY1.2"}) expect_family(ck, ais, f, true);
  expect_family(ck, ais, "IY3", false);

  const Desk& q = desk("queens");
  for (std::string f : {"QZ1", "QZ3.1"}) expect_family(ck, q, f, true);
  {
    // every column constraint keeps exactly one half
    int n = q.spec.params[0];
    for (int j = 1; j <= n; ++j) {
      std::string id = "QZ2(" + std::to_string(j) + ")";
      const ReportEntry* ge = q.rep.find(id + ".ge");
      const ReportEntry* le = q.rep.find(id + ".le");
      ck.expect(ge && le && !ge->removed && !ge->verdict.redundant() && le->removed, id + " split");
    }
    std::vector<std::string> kept = q.rep.kept, part;
    for (const auto& nc : build(q.spec, "part").constraints) part.push_back(nc.id);
    std::sort(kept.begin(), kept.end());
    std::sort(part.begin(), part.end());
    ck.expect(kept == part, "queens kept set equals the part model");
    RedundancyContext ctx(q.cm.d_init(), q.cm.channels);
    bool none = true;
    for (const auto& nc : q.cm.x.constraints)
      if (redundant_unrestrictive(q.cm.y.find("QZ2(1)")->c, nc, ctx).redundant()) none = false;
    ck.expect(none, "QZ2(1) not implied by any single X constraint");
  }

  const Desk& g = desk("golfers");
  for (std::string f : {"GS1", "GS2", "GS3"}) expect_family(ck, g, f, true);

  const Desk& b = desk("bacp");
  for (std::string f : {"BX1", "BX2", "BS1", "BS4"}) expect_family(ck, b, f, true);

  {
    // the combined interval constraint is not covered by any single X constraint
    CombinedModel cm = ais_model(8, {false, true});
    const Constraint& iy4 = cm.y.find("IY4(3,7)")->c;
    RedundancyContext ctx(cm.d_init(), cm.channels);
    bool none = true;
    for (const auto& nc : cm.x.constraints)
      if (constraint_redundant_via_channel(iy4, nc, ctx).redundant()) none = false;
    ck.expect(none, "IY4(3,7) not proven by a single X constraint");
    Domain d = cm.d_init();
    VarId y3 = cm.y.vars[2], y7 = cm.y.vars[6];
    d.ints(y3.index) = ValueSet{5};
    d.ints(y7.index) = ValueSet{4, 6};
    std::vector<PropagatorPtr> f1 = cm.channels.propagators();
    for (const auto& nc : cm.x.constraints) f1.push_back(make_propagator(nc.c, cm.d_init()));
    Verdict v = oracle_at(f1, {make_propagator(iy4, cm.d_init())}, d);
    ck.expect(v.status == Status::Counterexample, "counterexample at D(y3)={5}, D(y7)={4,6}");
  }

  ck.expect(total < 5 * 60 * 1000.0, "analyzer total " + std::to_string(total / 1000) + " s");
  std::ostringstream os;
  os.precision(1);
  os << std::fixed << "analyzer";
  for (const auto& d : desks()) os << " " << d.spec.problem << "=" << d.millis / 1000 << "s";
  os << " total=" << total / 1000 << "s";
  ck.note(os.str());
  return ck.outcome();
}

// -- full versus optimized ----------------------------------------------------------

Outcome c7_full_vs_opt() {
  Checks ck;
  double slowest = 0;
  std::size_t runs = 0;
  for (const auto& d : desks()) {
    Model full = build(d.spec, "full");
    std::vector<Model> opts{optimized_model(d.cm, d.rep), build(d.spec, "opt")};
    for (const std::string sel : {"x", "y", "both"}) {
      auto t0 = Clock::now();
      SearchResult a = solve(full, sel, d.mode, 0, true);
      slowest = std::max(slowest, ms_since(t0));
      for (const auto& opt : opts) {
        t0 = Clock::now();
        SearchResult b = solve(opt, sel, d.mode, 0, true);
        double ms = ms_since(t0);
        slowest = std::max(slowest, ms);
        ++runs;
        std::string tag = d.spec.problem + " " + opt.variant + " " + sel;
        ck.expect(a.stats.fails == b.stats.fails, tag + " fails " + std::to_string(a.stats.fails) + " vs " +
                                                      std::to_string(b.stats.fails));
        ck.expect(a.stats.nodes == b.stats.nodes, tag + " nodes");
        ck.expect(a.stats.solutions == b.stats.solutions, tag + " solutions");
        ck.expect(a.stats.best_objective == b.stats.best_objective, tag + " objective");
        ck.expect(a.solutions == b.solutions, tag + " solution sequence");
        ck.expect(ms < 60'000, tag + " took " + std::to_string(ms) + " ms");
      }
    }
  }
  ck.note(std::to_string(runs) + " comparisons, slowest run " + std::to_string(static_cast<long>(slowest)) + " ms");
  return ck.outcome();
}

double median_ms(const Model& m, const std::string& sel, int reps) {
  std::vector<double> t;
  for (int i = 0; i < reps; ++i) {
    auto t0 = Clock::now();
    solve(m, sel, SearchMode::All);
    t.push_back(ms_since(t0));
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

Outcome c8_opt_not_slower() {
  Checks ck;
  for (const ProblemSpec& spec : {ProblemSpec{"langford", {3, 10}, {}}, ProblemSpec{"all_interval", {10}, {}}}) {
    Model full = build(spec, "full"), opt = build(spec, "opt");
    for (const std::string sel : {"x", "y", "both"}) {
      double a = median_ms(full, sel, 5), b = median_ms(opt, sel, 5);
      std::ostringstream os;
      os.precision(1);
      os << std::fixed << spec.problem << " " << sel << " full " << a << " opt " << b << " ms";
      ck.expect(b <= a, os.str());
      ck.note(os.str());
    }
  }
  return ck.outcome();
}

// -- random constraints ---------------------------------------------------------

struct Scoped {
  Constraint c;
  Domain d;  // D_init over the whole universe
};

// Integer variables get 2..3 values out of 0..3, set variables an upper bound of 1..ub_max elements.
Domain random_domain(std::size_t ni, std::size_t ns, int ub_max, std::mt19937& rng) {
  Domain d(ni, ns);
  std::uniform_int_distribution<int> size(2, 3), val(0, 3);
  for (std::size_t i = 0; i < ni; ++i) {
    ValueSet s;
    int want = size(rng);
    while (static_cast<int>(s.size()) < want) s.insert(val(rng));
    d.ints(static_cast<int>(i)) = s;
  }
  std::uniform_int_distribution<int> ub(1, ub_max);
  for (std::size_t i = 0; i < ns; ++i) d.sets(static_cast<int>(i)) = {ValueSet{}, ValueSet::range(1, ub(rng))};
  return d;
}

// A table keeping each valuation of `vars` with probability p.
Constraint random_table(const std::vector<VarId>& vars, const Domain& d, double p, std::mt19937& rng) {
  std::bernoulli_distribution keep(p);
  std::vector<std::vector<Value>> tuples;
  each_valuation(vars, d, [&](const Assignment& a) {
    if (!keep(rng)) return;
    std::vector<Value> t;
    for (VarId v : vars) {
      if (v.is_int()) t.emplace_back(a.ints[static_cast<std::size_t>(v.index)]);
      else t.emplace_back(a.sets[static_cast<std::size_t>(v.index)]);
    }
    tuples.push_back(std::move(t));
  });
  return cons::table(vars, tuples);
}

// Structured or tabular constraint over `vars`.
Constraint random_constraint(const std::vector<VarId>& vars, const Domain& d, std::mt19937& rng) {
  std::vector<VarId> is, ss;
  for (VarId v : vars) (v.is_int() ? is : ss).push_back(v);
  std::uniform_int_distribution<int> pick(0, 5);
  switch (pick(rng)) {
    case 0:
      if (is.size() >= 2) {
        std::vector<int> w;
        std::uniform_int_distribution<int> coef(-2, 2), k(-1, 3);
        for (std::size_t i = 0; i < is.size(); ++i) w.push_back(coef(rng) == 0 ? 1 : coef(rng));
        return cons::linear(w, is, std::bernoulli_distribution(0.5)(rng) ? RelOp::Eq : RelOp::Leq, k(rng));
      }
      break;
    case 1:
      if (is.size() >= 2) return cons::diseq(is[0], is[1], std::uniform_int_distribution<int>(-1, 1)(rng));
      break;
    case 2:
      if (ss.size() >= 2) return std::bernoulli_distribution(0.5)(rng) ? cons::subset(ss[0], ss[1]) : cons::disjoint(ss[0], ss[1]);
      break;
    case 3:
      if (!ss.empty() && !is.empty()) return cons::card(ss[0], is[0]);
      break;
    default: break;
  }
  std::uniform_real_distribution<double> p(0.2, 0.8);
  return random_table(vars, d, p(rng), rng);
}

std::string describe(const Constraint& c) {
  std::string k = c.key();
  return k.size() > 60 ? k.substr(0, 57) + "..." : k;
}

Outcome c9_rules_match_dsb() {
  Checks ck;
  std::mt19937 rng(9);
  std::size_t subdomains = 0, mixed = 0;
  const int corpus = 40;
  for (int t = 0; t < corpus; ++t) {
    std::size_t nv = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::size_t ns = std::uniform_int_distribution<std::size_t>(0, nv)(rng);
    if (t % 4 == 0) ns = nv;       // some set-only
    if (t % 4 == 1) ns = 0;        // some integer-only
    if (t % 4 == 2 && nv >= 2) ns = 1;
    std::size_t ni = nv - ns;
    if (ni > 0 && ns > 0) ++mixed;
    Domain d = random_domain(ni, ns, 3, rng);
    std::vector<VarId> vars;
    for (std::size_t i = 0; i < ni; ++i) vars.push_back(x(static_cast<int>(i)));
    for (std::size_t i = 0; i < ns; ++i) vars.push_back(S(static_cast<int>(i)));
    Constraint c = random_constraint(vars, d, rng);
    auto rules = rule_propagators(extract_rules(c, d));
    std::size_t bad = 0;
    for_each_subdomain(c.scope(), d, [&](const Domain& sub) {
      ++subdomains;
      if (!same_outcome(fixpoint(rules, sub), brute_dsb(c, sub))) ++bad;
    });
    ck.expect(bad == 0, describe(c) + " differs on " + std::to_string(bad) + " subdomains");
  }
  ck.note(std::to_string(corpus) + " constraints (" + std::to_string(mixed) + " mixed), " + std::to_string(subdomains) +
          " subdomains");
  return ck.outcome();
}

Outcome c10_pairs_decompose() {
  Checks ck;
  std::mt19937 rng(10);
  std::size_t subdomains = 0;
  const int corpus = 30;
  for (int t = 0; t < corpus; ++t) {
    // c1 and c2 each get one or two private variables, plus one shared integer in most pairs
    bool share = t % 3 != 0;
    std::size_t n1 = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    std::size_t n2 = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    std::bernoulli_distribution is_set(0.35);
    std::vector<bool> kinds;
    std::size_t ni = 0, ns = 0;
    for (std::size_t i = 0; i < n1 + n2; ++i) {
      bool set = ns < 2 && is_set(rng);
      kinds.push_back(set);
      (set ? ns : ni) += 1;
    }
    Domain d = random_domain(ni + 1, ns, 2, rng);
    std::vector<VarId> own;
    int next_int = 0, next_set = 0;
    for (bool set : kinds) own.push_back(set ? S(next_set++) : x(next_int++));
    VarId shared = x(next_int);
    std::vector<VarId> v1(own.begin(), own.begin() + static_cast<long>(n1)), v2(own.begin() + static_cast<long>(n1), own.end());
    if (share) {
      v1.push_back(shared);
      v2.push_back(shared);
    }
    Constraint c1 = random_constraint(v1, d, rng), c2 = random_constraint(v2, d, rng);
    std::vector<VarId> common;
    std::set_intersection(c1.scope().begin(), c1.scope().end(), c2.scope().begin(), c2.scope().end(),
                          std::back_inserter(common));
    ck.expect(common.size() <= 1 && std::all_of(common.begin(), common.end(), [](VarId v) { return v.is_int(); }),
              "generator shares too much");
    std::vector<PropagatorPtr> f{make_propagator(c1, d), make_propagator(c2, d)};
    Constraint both = conjoin(c1, c2);
    std::vector<VarId> all = detail::merge_vars(c1.scope(), c2.scope());
    std::size_t bad = 0;
    for_each_subdomain(all, d, [&](const Domain& sub) {
      ++subdomains;
      if (!same_outcome(fixpoint(f, sub), brute_dsb(both, sub))) ++bad;
    });
    ck.expect(bad == 0, describe(c1) + " & " + describe(c2) + " differ on " + std::to_string(bad) + " subdomains");
  }

  // a shared set variable breaks it
  Domain d(0, 1);
  d.sets(0) = {ValueSet{}, ValueSet{1, 2, 3}};
  Constraint c1 = cons::table({S(0)}, {{Value{ValueSet{1}}}, {Value{ValueSet{2, 3}}}});
  Constraint c2 = cons::table({S(0)}, {{Value{ValueSet{2}}}, {Value{ValueSet{1, 3}}}});
  std::vector<PropagatorPtr> sep{make_propagator(c1, d), make_propagator(c2, d)}, joint{make_propagator(conjoin(c1, c2), d)};
  Verdict v = oracle_stronger(sep, joint, d);
  ck.expect(v.status == Status::Counterexample && v.counterexample && *v.counterexample == d,
            "shared set variable counterexample at [{}..{1,2,3}]");
  ck.expect(brute_fixpoint({c1, c2}, d) == d && brute_dsb(conjoin(c1, c2), d).is_false(), "enumerated check");
  ck.note(std::to_string(corpus) + " pairs, " + std::to_string(subdomains) + " subdomains");
  return ck.outcome();
}

// {dsb(c)} ∪ F and {dsb(c') | c' in the Boolean form} ∪ F, compared in both directions.
std::size_t set_bool_mismatches(const Constraint& c, int num_sets, int universe, std::size_t& checked) {
  std::vector<VarId> ss, zs;
  for (int i = 0; i < num_sets; ++i) ss.push_back(S(i));
  for (int i = 0; i < num_sets * universe; ++i) zs.push_back(x(i));
  Channel ch = channel::set2bool(ss, zs, universe);
  Domain d(zs.size(), ss.size());
  for (VarId z : zs) d.ints(z.index) = {0, 1};
  for (VarId s : ss) d.sets(s.index) = {ValueSet{}, ValueSet::range(1, universe)};
  std::vector<PropagatorPtr> f = channel_runtime(ch);
  std::vector<PropagatorPtr> set_side = f, bool_side = f;
  set_side.push_back(make_propagator(c, d));
  for (const auto& cb : bool_decompose(c, ch)) bool_side.push_back(make_propagator(cb, d));
  std::vector<VarId> all = ss;
  all.insert(all.end(), zs.begin(), zs.end());
  std::size_t bad = 0;
  for_each_subdomain(all, d, [&](const Domain& sub) {
    ++checked;
    Domain a = fixpoint(set_side, sub), b = fixpoint(bool_side, sub);
    if (!refines(a, b) || !refines(b, a)) ++bad;
  });
  return bad;
}

Outcome c11_set_bool_forms() {
  Checks ck;
  std::size_t checked = 0;
  for (int u = 1; u <= 3; ++u) {
    std::string tag = " universe " + std::to_string(u);
    ck.expect(set_bool_mismatches(cons::empty_set(S(0)), 1, u, checked) == 0, "empty" + tag);
    for (int m = 0; m <= u; ++m)
      ck.expect(set_bool_mismatches(cons::card(S(0), m), 1, u, checked) == 0, "card " + std::to_string(m) + tag);
    ck.expect(set_bool_mismatches(cons::subset(S(0), S(1)), 2, u, checked) == 0, "subset" + tag);
    ck.expect(set_bool_mismatches(cons::disjoint(S(0), S(1)), 2, u, checked) == 0, "disjoint" + tag);
  }
  // the three-set forms, at the universe sizes that stay exhaustive
  for (int u = 1; u <= 2; ++u) {
    std::string tag = " universe " + std::to_string(u);
    ck.expect(set_bool_mismatches(cons::set_union(S(0), S(1), S(2)), 3, u, checked) == 0, "union" + tag);
    ck.expect(set_bool_mismatches(cons::set_inter(S(0), S(1), S(2)), 3, u, checked) == 0, "intersection" + tag);
    ck.expect(set_bool_mismatches(cons::set_diff(S(0), S(1), S(2)), 3, u, checked) == 0, "difference" + tag);
  }
  ck.note(std::to_string(checked) + " subdomains");
  return ck.outcome();
}

// -- ground truth counts --------------------------------------------------------------

Outcome c12_counts() {
  Checks ck;
  std::vector<ProblemSpec> specs{{"queens", {4}, {}},       {"queens", {5}, {}},       {"queens", {6}, {}},
                                 {"langford", {2, 3}, {}},  {"langford", {2, 4}, {}},  {"all_interval", {4}, {}},
                                 {"all_interval", {5}, {}}, {"all_interval", {6}, {}}, {"golfers", {2, 2, 2}, {}}};
  std::ostringstream counts;
  for (const auto& spec : specs) {
    counts << (counts.tellp() > 0 ? " " : "") << spec.problem << "(" << build(spec, "mx").params << ")=";
    for (const std::string v : {"mx", "my", "full", "opt"}) {
      Model m = build(spec, v);
      std::size_t brute = enumerate_brute(m).size();
      if (v == "mx") counts << brute;
      for (const auto& [sel, vars] : m.groups) {
        std::size_t found = solve(m, sel, SearchMode::All).stats.solutions;
        ck.expect(found == brute, spec.problem + " " + v + " " + sel + ": " + std::to_string(found) + " vs " +
                                      std::to_string(brute));
      }
    }
  }
  ck.note(counts.str());
  return ck.outcome();
}

// -- soundness audit ------------------------------------------------------------------

// Identifies a constraint up to its index: family plus any split suffix.
std::string shape(const std::string& id) {
  auto close = id.rfind(')');
  return detail::family(id) + (close == std::string::npos ? "" : id.substr(close + 1));
}

Outcome c13_soundness() {
  Checks ck;
  const std::size_t cap = 60'000;
  std::vector<std::pair<std::string, ProblemSpec>> small{
      {"langford", {"langford", {3, 2}, {}}},
      {"all_interval", {"all_interval", {5}, {}}},
      {"queens", {"queens", {4}, {}}},
      {"golfers", {"golfers", {2, 2, 2}, {}}},
      {"bacp", {"bacp", {}, BacpInstance{3, 2, 1, 3, 1, 3, {1, 1, 1}, {{1, 2}}}}}};
  std::size_t audited = 0, sweeps = 0;
  for (const auto& [problem, spec] : small) {
    const Desk& big = desk(problem);
    std::set<std::string> removed_shapes, seen;
    for (const auto& e : big.rep.entries)
      if (e.removed) removed_shapes.insert(shape(e.id));

    // the small instance, analyzed, so split constraints exist; then the desk verdicts per shape
    CombinedModel cm = combined(spec);
    RedundancyReport rep = analyze_model(cm);
    std::vector<PropagatorPtr> kept = cm.channels.propagators();
    std::vector<const ReportEntry*> removed;
    for (const auto& e : rep.entries) {
      if (removed_shapes.count(shape(e.id))) removed.push_back(&e);
      else kept.push_back(make_propagator(e.c, cm.d_init()));
    }
    FixpointRunner kept_fix(cm.d_init(), kept);
    for (const ReportEntry* e : removed) {
      seen.insert(shape(e->id));
      // Narrowing variables outside vars(c) only strengthens the kept side, so
      // sweeping the subdomains over vars(c) covers every D below D_init.
      std::vector<VarId> scope = e->c.scope();
      if (count_subdomains(scope, cm.d_init()) > cap) {
        ck.expect(false, problem + " " + e->id + " too large to sweep");
        continue;
      }
      auto single = make_propagator(e->c, cm.d_init());
      std::size_t bad = 0;
      for_each_subdomain(scope, cm.d_init(), [&](const Domain& d) {
        ++sweeps;
        if (!refines(kept_fix(d), single->apply(d))) ++bad;
      });
      ++audited;
      ck.expect(bad == 0, problem + " " + e->id + " fails on " + std::to_string(bad) + " subdomains");
    }
    for (const auto& sh : removed_shapes) ck.expect(seen.count(sh) > 0, problem + " " + sh + " has no small instance");
  }
  ck.note(std::to_string(audited) + " removed constraints audited over " + std::to_string(sweeps) + " subdomains");
  return ck.outcome();
}

// -- channel sampling -----------------------------------------------------------------

Outcome c14_channel_sampling() {
  Checks ck;
  auto ints = [](int first, int n) {
    std::vector<VarId> v;
    for (int i = 0; i < n; ++i) v.push_back(int_var(first + i));
    return v;
  };
  auto sets = [](int n) {
    std::vector<VarId> v;
    for (int i = 0; i < n; ++i) v.push_back(set_var(i));
    return v;
  };
  std::vector<std::pair<std::string, Channel>> chans{
      {"permutation", channel::permutation(ints(0, 8), ints(8, 8))},
      {"boolean", channel::boolean(ints(0, 6), ints(6, 30), 5)},
      {"set", channel::set(ints(0, 7), sets(4))},
      {"set2bool", channel::set2bool(sets(3), ints(0, 18), 6)}};
  std::mt19937 rng(14);
  const int samples = 10'000;
  for (const auto& [name, ch] : chans) {
    Channel inv = inverse(ch);
    std::vector<Atom> xs = channel_atoms(ch), ys = channel_atoms(inv);
    RuleSet f = channel_propagators(ch), g = channel_propagators(inv);
    std::set<PropRule> fs(f.begin(), f.end()), gs(g.begin(), g.end());
    ck.expect(fs == gs, name + " rule sets of both directions");
    std::set<Atom> yset(ys.begin(), ys.end());
    std::size_t bad = 0;
    for (int t = 0; t < samples; ++t) {
      bool from_x = t % 2 == 0;
      const auto& pool = from_x ? xs : ys;
      const Atom a = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      const Channel& fwd = from_x ? ch : inv;
      const Channel& back = from_x ? inv : ch;
      Atom b = map_atom(fwd, a);
      bool ok = map_atom(back, b) == a;
      ok = ok && (from_x ? yset.count(b) > 0 : std::find(xs.begin(), xs.end(), b) != xs.end());
      ok = ok && fs.count(PropRule({a}, b)) && fs.count(PropRule({b}, a));
      if (!ok) ++bad;
    }
    ck.expect(bad == 0, name + ": " + std::to_string(bad) + " of " + std::to_string(samples) + " samples");
    ck.expect(xs.size() == ys.size(), name + " atom universes of equal size");
  }
  ck.note(std::to_string(samples) + " atoms per channel kind");
  return ck.outcome();
}

}  // namespace

int main() {
  criterion(1, c1_linear_example);
  criterion(2, c2_set_examples);
  criterion(3, c3_boolean_sum_rules);
  criterion(4, c4_restrictiveness);
  criterion(5, c5_analyzer_examples);
  criterion(6, c6_no_propagation);
  criterion(7, c7_full_vs_opt);
  criterion(8, c8_opt_not_slower);
  criterion(9, c9_rules_match_dsb);
  criterion(10, c10_pairs_decompose);
  criterion(11, c11_set_bool_forms);
  criterion(12, c12_counts);
  criterion(13, c13_soundness);
  criterion(14, c14_channel_sampling);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
