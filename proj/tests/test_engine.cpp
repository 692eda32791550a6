#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "redprop/dispatch.hpp"
#include "redprop/engine.hpp"

using namespace redprop;

namespace {

struct Queens {
  Domain d;
  std::vector<Constraint> cs;
  std::vector<PropagatorPtr> props;
  std::vector<VarId> vars;
};

Queens queens(int n) {
  Queens q;
  q.d = Domain(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    q.d.ints(i) = ValueSet::range(1, n);
    q.vars.push_back(int_var(i));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      q.cs.push_back(cons::diseq(int_var(i), int_var(j), 0));
      q.cs.push_back(cons::diseq(int_var(i), int_var(j), j - i));
      q.cs.push_back(cons::diseq(int_var(i), int_var(j), i - j));
    }
  for (const auto& c : q.cs) q.props.push_back(make_propagator(c, q.d));
  return q;
}

// Independent count: plain nested enumeration of n^n placements.
std::size_t brute_queens(int n) {
  std::vector<int> col(static_cast<std::size_t>(n), 1);
  std::size_t count = 0;
  while (true) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) {
        int a = col[static_cast<std::size_t>(i)];
        int b = col[static_cast<std::size_t>(j)];
        if (a == b || a - b == j - i || b - a == j - i) ok = false;
      }
    if (ok) ++count;
    int k = n - 1;
    while (k >= 0 && col[static_cast<std::size_t>(k)] == n) col[static_cast<std::size_t>(k--)] = 1;
    if (k < 0) break;
    ++col[static_cast<std::size_t>(k)];
  }
  return count;
}

}  // namespace

TEST(Engine, EmptyPropagatorSetIsIdentity) {
  Domain d(2, 0);
  d.ints(0) = {1, 2};
  d.ints(1) = {3};
  EXPECT_EQ(fixpoint({}, d), d);
}

TEST(Engine, QueensTwoHasNoSolution) {
  Queens q = queens(2);
  SearchConfig cfg;
  cfg.search_vars = q.vars;
  auto r = search(q.d, q.props, cfg);
  EXPECT_EQ(r.stats.solutions, 0u);
  EXPECT_GE(r.stats.fails, 1u);
  EXPECT_LE(r.stats.fails, r.stats.nodes);
}

TEST(Engine, QueensSixMatchesBruteForce) {
  Queens q = queens(6);
  SearchConfig cfg;
  cfg.search_vars = q.vars;
  auto r = search(q.d, q.props, cfg);
  EXPECT_EQ(r.stats.solutions, brute_queens(6));
  EXPECT_EQ(r.solutions.size(), r.stats.solutions);
  for (const auto& s : r.solutions) {
    Assignment a = Assignment::of_fixed(s);
    for (const auto& c : q.cs) EXPECT_TRUE(c.eval(a));
  }
}

TEST(Engine, SearchIsDeterministic) {
  Queens q = queens(7);
  SearchConfig cfg;
  cfg.search_vars = q.vars;
  auto a = search(q.d, q.props, cfg);
  auto b = search(q.d, q.props, cfg);
  EXPECT_EQ(a.stats.nodes, b.stats.nodes);
  EXPECT_EQ(a.stats.fails, b.stats.fails);
  EXPECT_EQ(a.solutions, b.solutions);
  cfg.var_order = VarOrder::InputOrder;
  auto c = search(q.d, q.props, cfg);
  EXPECT_EQ(c.stats.solutions, a.stats.solutions);
}

TEST(Engine, FirstModeStops) {
  Queens q = queens(8);
  SearchConfig cfg;
  cfg.search_vars = q.vars;
  cfg.mode = SearchMode::First;
  auto r = search(q.d, q.props, cfg);
  EXPECT_EQ(r.stats.solutions, 1u);
}

TEST(Engine, NoSearchVarsThrows) {
  Queens q = queens(4);
  SearchConfig cfg;
  EXPECT_THROW(search(q.d, q.props, cfg), NoSearchVars);
}

TEST(Engine, FixpointOrderIndependent) {
  Queens q = queens(6);
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    Domain d = q.d;
    for (int i = 0; i < 6; ++i) {
      std::uniform_int_distribution<int> pick(1, 6);
      if (t % 2) d.ints(i).erase(pick(rng));
      if (i == t % 6) d.ints(i) = ValueSet{pick(rng)};
    }
    auto shuffled = q.props;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Domain a = fixpoint(q.props, d);
    Domain b = fixpoint(shuffled, d);
    EXPECT_TRUE(same_outcome(a, b));
    EXPECT_TRUE(same_outcome(fixpoint(q.props, a), a));
    std::vector<PropagatorPtr> half(q.props.begin(), q.props.begin() + static_cast<long>(q.props.size() / 2));
    EXPECT_TRUE(refines(a, fixpoint(half, d)));
  }
}

TEST(Engine, BranchAndBoundTrivial) {
  Domain d(1, 0);
  d.ints(0) = {3, 4, 5};
  std::vector<PropagatorPtr> ps{make_propagator(cons::atom(geq(int_var(0), 4)), d)};
  SearchConfig cfg;
  cfg.search_vars = {int_var(0)};
  cfg.objective = int_var(0);
  auto r = branch_and_bound(d, ps, cfg);
  ASSERT_TRUE(r.stats.best_objective.has_value());
  EXPECT_EQ(*r.stats.best_objective, 4);
}

TEST(Engine, BranchAndBoundInfeasible) {
  Domain d(1, 0);
  d.ints(0) = {1, 2};
  std::vector<PropagatorPtr> ps{make_propagator(cons::atom(geq(int_var(0), 3)), d)};
  SearchConfig cfg;
  cfg.search_vars = {int_var(0)};
  cfg.objective = int_var(0);
  auto r = branch_and_bound(d, ps, cfg);
  EXPECT_EQ(r.stats.solutions, 0u);
  EXPECT_FALSE(r.stats.best_objective.has_value());
}

TEST(Engine, SetBranchingEnumeratesAllSubsets) {
  Domain d(1, 1);
  d.ints(0) = ValueSet::range(0, 4);
  d.sets(0) = {ValueSet{}, ValueSet::range(1, 4)};
  std::vector<PropagatorPtr> ps{make_propagator(cons::card(set_var(0), int_var(0)), d)};
  SearchConfig cfg;
  cfg.search_vars = {set_var(0)};
  auto r = search(d, ps, cfg);
  EXPECT_EQ(r.stats.solutions, 16u);
  // inclusion is tried first
  EXPECT_EQ(r.solutions.front().sets(0).lb, (ValueSet{1, 2, 3, 4}));
}
