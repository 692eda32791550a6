#include <gtest/gtest.h>

#include <algorithm>

#include "redprop/report.hpp"

using namespace redprop;

namespace {

RunRow strip(RunRow r) {
  r.millis = 0;
  return r;
}

}  // namespace

TEST(Report, CsvRoundTrip) {
  std::vector<RunRow> rows{{"queens", "6", "mx", "x", 3, 17, 4, std::nullopt, 1.25},
                           {"bacp", "m6n3", "opt", "both", 0, 9, 2, 2, 0.001},
                           {"odd,name", "a\"b", "full", "y", 1, 2, 3, -4, 1e-3}};
  std::string csv = rows_to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), csv_header());
  EXPECT_EQ(parse_csv(csv), rows);
}

TEST(Report, CsvErrors) {
  EXPECT_THROW(parse_csv("nope\n"), ParseError);
  EXPECT_THROW(parse_csv(std::string(csv_header()) + "\nqueens,6,mx,x,1,2\n"), ParseError);
  EXPECT_THROW(parse_csv(std::string(csv_header()) + "\nqueens,6,mx,x,a,2,3,,0\n"), ParseError);
  EXPECT_THROW(parse_csv(std::string(csv_header()) + "\n\"queens,6,mx,x,1,2,3,,0\n"), ParseError);
}

TEST(Report, QueensSixExample) {
  RunRow r = run({"queens", {6}, {}}, "mx", "x", SearchMode::All);
  EXPECT_EQ(r.solutions, 4u);
  EXPECT_EQ(r.problem, "queens");
  EXPECT_EQ(r.params, "6");
  EXPECT_FALSE(r.best);
}

TEST(Report, RunsAreDeterministic) {
  for (const auto& sel : {"x", "y", "both"}) {
    RunRow a = run({"langford", {2, 4}, {}}, "full", sel, SearchMode::All);
    RunRow b = run({"langford", {2, 4}, {}}, "full", sel, SearchMode::All);
    EXPECT_EQ(strip(a), strip(b)) << sel;
  }
}

TEST(Report, MissingSelectorOrObjective) {
  EXPECT_THROW(run({"queens", {5}, {}}, "mx", "y", SearchMode::All), InvalidParams);
  EXPECT_THROW(run({"queens", {5}, {}}, "full", "z", SearchMode::All), InvalidParams);
  EXPECT_THROW(run({"queens", {5}, {}}, "full", "x", SearchMode::Optimize), InvalidParams);
  EXPECT_THROW(parse_mode("some"), InvalidParams);
}

TEST(Report, CurriculumOptimum) {
  RunRow r = run({"bacp", {}, bacp_desk()}, "full", "x", SearchMode::Optimize);
  ASSERT_TRUE(r.best);
  EXPECT_EQ(*r.best, 2);
}

TEST(Report, NodeLimitStopsEarly) {
  RunRow full = run({"queens", {8}, {}}, "mx", "x", SearchMode::All);
  RunRow cut = run({"queens", {8}, {}}, "mx", "x", SearchMode::All, 10);
  EXPECT_EQ(full.solutions, 92u);
  EXPECT_LE(cut.nodes, 10u);
  EXPECT_LT(cut.solutions, 92u);
}

TEST(Report, TableHasOneLinePerRow) {
  std::vector<RunRow> rows{run({"queens", {5}, {}}, "mx", "x", SearchMode::All),
                           run({"queens", {5}, {}}, "opt", "both", SearchMode::All)};
  std::string t = rows_to_table(rows);
  EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 3);
  EXPECT_NE(t.find("opt"), std::string::npos);
}
