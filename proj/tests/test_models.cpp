#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "redprop/models.hpp"
#include "redprop/report.hpp"

using namespace redprop;

namespace {

std::size_t count_family(const std::vector<NamedConstraint>& cs, const std::string& fam) {
  return static_cast<std::size_t>(
      std::count_if(cs.begin(), cs.end(), [&](const NamedConstraint& nc) { return detail::family(nc.id) == fam; }));
}

int as_int(const Value& v) { return std::get<int>(v); }

// Maps a valuation of one side across the channels, keeping only the image variables.
Valuation through(const ChannelSet& chs, const Valuation& theta, const std::vector<VarId>& image) {
  Valuation out;
  for (VarId v : image) out[v] = v.is_int() ? Value{0} : Value{ValueSet{}};
  for (const auto& [v, val] : theta) {
    if (!v.is_int()) continue;
    Atom a = chs.map(eq(v, as_int(val)));
    if (a.kind == AtomKind::Eq) out[a.var] = a.value;
    else std::get<ValueSet>(out[a.var]).insert(a.value);
  }
  return out;
}

std::set<Valuation> restrict_to(const std::vector<Valuation>& sols, const std::vector<VarId>& vars) {
  std::set<Valuation> out;
  for (const auto& s : sols) {
    Valuation t;
    for (VarId v : vars) t[v] = s.at(v);
    out.insert(t);
  }
  return out;
}

}  // namespace

TEST(Models, LangfordShape) {
  CombinedModel cm = langford_model(3, 9);
  EXPECT_EQ(cm.x.vars.size(), 27u);
  for (VarId v : cm.x.vars) EXPECT_EQ(cm.d_init().ints(v.index), ValueSet::range(1, 27));
  EXPECT_EQ(count_family(cm.x.constraints, "LX1"), 351u);
  EXPECT_EQ(count_family(cm.x.constraints, "LX2.1") + count_family(cm.x.constraints, "LX2.2"), 18u);
  EXPECT_EQ(count_family(cm.y.constraints, "LY1"), 351u);
  // j ranges over 1 .. 27 - 2(i+1)
  std::size_t ly21 = 0;
  for (int i = 1; i <= 9; ++i) ly21 += static_cast<std::size_t>(27 - 2 * (i + 1));
  EXPECT_EQ(count_family(cm.y.constraints, "LY2.1"), ly21);
  // the last 2(i+1) positions cannot hold the first copy of digit i
  std::size_t ly3 = 0;
  for (int i = 1; i <= 9; ++i) ly3 += static_cast<std::size_t>(2 * (i + 1));
  EXPECT_EQ(count_family(cm.y.constraints, "LY3"), ly3);
}

TEST(Models, QueensShape) {
  const int n = 6;
  CombinedModel cm = queens_model(n);
  EXPECT_EQ(cm.y.vars.size(), static_cast<std::size_t>(n * n));
  for (VarId z : cm.y.vars) EXPECT_EQ(cm.d_init().ints(z.index), (ValueSet{0, 1}));
  EXPECT_EQ(count_family(cm.y.constraints, "QZ1"), 6u);
  EXPECT_EQ(count_family(cm.y.constraints, "QZ2"), 6u);
  EXPECT_EQ(count_family(cm.y.constraints, "QZ3.1"), 1u);
  EXPECT_EQ(count_family(cm.y.constraints, "QZ3.2"), 1u);
  for (std::string f : {"QZ4.1", "QZ4.2", "QZ4.3", "QZ4.4"}) EXPECT_EQ(count_family(cm.y.constraints, f), 5u) << f;
  EXPECT_EQ(count_family(cm.x.constraints, "QX1"), 15u);
  EXPECT_EQ(count_family(cm.x.constraints, "QX2.1"), 15u);
}

TEST(Models, CurriculumTotalsInEveryVariant) {
  ProblemSpec spec{"bacp", {}, std::nullopt};
  for (const auto& v : variants_of("bacp")) {
    Model m = build(spec, v);
    EXPECT_NE(m.find("B2.1"), nullptr) << v;
    EXPECT_NE(m.find("B2.2"), nullptr) << v;
    EXPECT_TRUE(m.objective.has_value()) << v;
  }
}

TEST(Models, LangfordSeparationGap) {
  // x_{3i-1} = x_{3i-2} + (i+1)
  CombinedModel cm = langford_model(3, 4);
  const Constraint& c = cm.x.find("LX2.1(2)")->c;
  Assignment a(cm.d_init());
  a.ints[3] = 5;
  a.ints[4] = 8;
  EXPECT_TRUE(c.eval(a));
  a.ints[4] = 7;
  EXPECT_FALSE(c.eval(a));
}

TEST(Models, EveryVariantBuilds) {
  std::vector<ProblemSpec> specs{{"langford", {2, 3}, {}}, {"all_interval", {5}, {}}, {"queens", {4}, {}},
                                 {"golfers", {2, 2, 2}, {}}, {"bacp", {}, {}}};
  for (const auto& spec : specs)
    for (const auto& v : variants_of(spec.problem)) {
      Model m = build(spec, v);
      EXPECT_EQ(m.variant, v);
      EXPECT_FALSE(m.constraints.empty()) << spec.problem << " " << v;
      EXPECT_FALSE(m.groups.empty());
    }
}

TEST(Models, InvalidParams) {
  EXPECT_THROW(build({"langford", {1, 3}, {}}, "mx"), InvalidParams);
  EXPECT_THROW(build({"queens", {4}, {}}, "pr"), InvalidParams);
  EXPECT_THROW(build({"chess", {4}, {}}, "mx"), InvalidParams);
  EXPECT_THROW(build({"golfers", {2, 2}, {}}, "mx"), InvalidParams);
  EXPECT_THROW(build({"all_interval", {2}, {}}, "mx"), InvalidParams);
}

TEST(Models, SingleModelsPinTheOtherSide) {
  Model mx = build({"queens", {4}, {}}, "mx");
  for (std::size_t i = 4; i < mx.d_init.num_ints(); ++i) EXPECT_EQ(mx.d_init.ints(static_cast<int>(i)).size(), 1u);
  EXPECT_TRUE(mx.channels.empty());
  EXPECT_THROW(search_group(mx, "y"), InvalidParams);
}

// -- brute force ----------------------------------------------------------------

TEST(Brute, QueensFour) { EXPECT_EQ(enumerate_brute(build({"queens", {4}, {}}, "mx")).size(), 2u); }

TEST(Brute, LangfordTwoThree) {
  Model my = build({"langford", {2, 3}, {}}, "my");
  std::set<std::string> seqs;
  for (const auto& s : enumerate_brute(my)) {
    std::string digits;
    for (VarId y : my.vars) digits += std::to_string((as_int(s.at(y)) + 1) / 2);
    seqs.insert(digits);
  }
  EXPECT_EQ(seqs, (std::set<std::string>{"231213", "312132"}));
}

TEST(Brute, ContradictionIsEmpty) {
  Model m = build({"queens", {4}, {}}, "mx");
  m.constraints.push_back({"bad", cons::linear({1}, {m.vars[0]}, RelOp::Geq, 9)});
  EXPECT_TRUE(enumerate_brute(m).empty());
}

TEST(Brute, CapThrows) { EXPECT_THROW(enumerate_brute(build({"queens", {8}, {}}, "mx"), 1000), CapExceeded); }

TEST(Brute, SearchCountsMatch) {
  std::vector<std::pair<ProblemSpec, std::string>> cases{
      {{"queens", {4}, {}}, "mx"},       {{"queens", {5}, {}}, "mx"},       {{"queens", {6}, {}}, "my"},
      {{"langford", {2, 3}, {}}, "mx"},  {{"langford", {2, 4}, {}}, "my"},  {{"all_interval", {4}, {}}, "mx"},
      {{"all_interval", {5}, {}}, "my"}, {{"all_interval", {6}, {}}, "pr"}, {{"golfers", {2, 2, 2}, {}}, "mx"},
      {{"golfers", {2, 2, 2}, {}}, "my"}};
  for (const auto& [spec, v] : cases) {
    Model m = build(spec, v);
    std::string sel = m.groups.begin()->first;
    EXPECT_EQ(solve(m, sel, SearchMode::All).stats.solutions, enumerate_brute(m).size()) << spec.problem << " " << v;
  }
}

TEST(Brute, ViewpointsAgree) {
  for (ProblemSpec spec : {ProblemSpec{"queens", {5}, {}}, ProblemSpec{"langford", {2, 4}, {}},
                           ProblemSpec{"all_interval", {5}, {}}}) {
    CombinedModel cm = combined(spec);
    Model mx = build(spec, "mx"), my = build(spec, "my"), full = build(spec, "full");
    auto sx = enumerate_brute(mx), sy = enumerate_brute(my), sf = enumerate_brute(full);
    std::set<Valuation> mapped;
    for (const auto& s : sx) mapped.insert(through(cm.channels, s, cm.y.vars));
    EXPECT_EQ(mapped, restrict_to(sy, cm.y.vars)) << spec.problem;
    EXPECT_EQ(restrict_to(sf, cm.x.vars), restrict_to(sx, cm.x.vars)) << spec.problem;
    EXPECT_EQ(sf.size(), sx.size()) << spec.problem;
  }
}

TEST(Brute, SetModelsAdmitMoreThanIntegerModels) {
  // the set models as stated constrain less than the integer ones
  ProblemSpec g{"golfers", {2, 2, 2}, {}};
  EXPECT_EQ(enumerate_brute(build(g, "full")).size(), enumerate_brute(build(g, "mx")).size());
  EXPECT_GT(enumerate_brute(build(g, "my")).size(), enumerate_brute(build(g, "mx")).size());
  ProblemSpec b{"bacp", {}, BacpInstance{4, 2, 1, 4, 1, 4, {1, 1, 1, 1}, {{1, 2}}}};
  EXPECT_EQ(enumerate_brute(build(b, "full")).size(), enumerate_brute(build(b, "mx")).size());
  EXPECT_GT(enumerate_brute(build(b, "my")).size(), enumerate_brute(build(b, "mx")).size());
}

// -- curriculum instances -------------------------------------------------------

TEST(Curriculum, ParseAndOptimum) {
  std::istringstream in("6 3 1 6 1 6\n1 1 1 1 1 1\n1 2\n2 3\n");
  BacpInstance b = parse_bacp(in);
  EXPECT_EQ(b.m, 6);
  EXPECT_EQ(b.t.size(), 6u);
  EXPECT_EQ(b.R, (std::vector<std::pair<int, int>>{{1, 2}, {2, 3}}));
  for (const auto& v : {"mx", "my", "full", "opt"}) {
    Model m = build({"bacp", {}, b}, v);
    std::string sel = m.groups.count("both") ? "both" : m.groups.begin()->first;
    SearchResult r = solve(m, sel, SearchMode::Optimize);
    ASSERT_TRUE(r.stats.best_objective) << v;
    EXPECT_EQ(*r.stats.best_objective, 2) << v;
  }
}

TEST(Curriculum, BundledFileMatchesDesk) {
  BacpInstance f = load_bacp(REDPROP_DATA_DIR "/bacp_desk.txt");
  BacpInstance d = bacp_desk();
  EXPECT_EQ(f.m, d.m);
  EXPECT_EQ(f.n, d.n);
  EXPECT_EQ(f.t, d.t);
  EXPECT_EQ(f.R, d.R);
}

TEST(Curriculum, ParseErrors) {
  std::istringstream bad("6 3 1 6\n");
  EXPECT_THROW(parse_bacp(bad), ParseError);
  std::istringstream dangling("2 1 0 2 0 2\n1 1\n1\n");
  EXPECT_THROW(parse_bacp(dangling), ParseError);
  EXPECT_THROW(load_bacp("/nonexistent/file"), ParseError);
  EXPECT_THROW(bacp_model(BacpInstance{2, 1, 0, 2, 0, 2, {1, 1}, {{1, 3}}}), InvalidParams);
}
