#pragma once

#include <chrono>
#include <deque>
#include <optional>
#include <vector>

#include "redprop/space.hpp"

namespace redprop {

/// Propagators plus the variable → propagator subscription index.
class PropagatorSet {
 public:
  PropagatorSet() = default;
  PropagatorSet(std::size_t num_ints, std::size_t num_sets) : int_watch_(num_ints), set_watch_(num_sets) {}
  PropagatorSet(const Domain& d, const std::vector<PropagatorPtr>& ps) : PropagatorSet(d.num_ints(), d.num_sets()) {
    for (const auto& p : ps) add(p);
  }

  void add(PropagatorPtr p) {
    std::size_t id = props_.size();
    for (VarId v : p->vars()) {
      auto& w = watch(v);
      if (w.empty() || w.back() != id) w.push_back(id);
    }
    props_.push_back(std::move(p));
  }

  [[nodiscard]] std::size_t size() const { return props_.size(); }
  [[nodiscard]] const Propagator& operator[](std::size_t i) const { return *props_[i]; }
  [[nodiscard]] const std::vector<PropagatorPtr>& all() const { return props_; }

  [[nodiscard]] const std::vector<std::size_t>& watchers(VarId v) const {
    return v.is_int() ? int_watch_[static_cast<std::size_t>(v.index)] : set_watch_[static_cast<std::size_t>(v.index)];
  }

 private:
  std::vector<std::size_t>& watch(VarId v) {
    return v.is_int() ? int_watch_[static_cast<std::size_t>(v.index)] : set_watch_[static_cast<std::size_t>(v.index)];
  }

  std::vector<PropagatorPtr> props_;
  std::vector<std::vector<std::size_t>> int_watch_;
  std::vector<std::vector<std::size_t>> set_watch_;
};

/// FIFO propagation engine over a trailed Space.
class Solver {
 public:
  Solver(Domain d, const std::vector<PropagatorPtr>& props) : space_(std::move(d)), set_(space_.domain(), props) {
    in_queue_.assign(set_.size(), 0);
  }

  [[nodiscard]] Space& space() { return space_; }
  [[nodiscard]] const Space& space() const { return space_; }
  [[nodiscard]] const PropagatorSet& propagators() const { return set_; }

  void schedule_all() {
    for (std::size_t i = 0; i < set_.size(); ++i) push(i);
  }

  /// Runs to the greatest common fixpoint; false when the domain is false.
  bool fixpoint() {
    if (space_.failed()) return drain_fail();
    wake(space_.changes(), nullptr);
    while (!queue_.empty()) {
      std::size_t p = queue_.front();
      queue_.pop_front();
      in_queue_[p] = 0;
      const Propagator& prop = set_[p];
      bool ok = prop.propagate(space_);
      if (!ok || space_.failed()) return drain_fail();
      wake(space_.changes(), prop.idempotent() ? &p : nullptr);
    }
    return true;
  }

 private:
  void push(std::size_t p) {
    if (in_queue_[p]) return;
    in_queue_[p] = 1;
    queue_.push_back(p);
  }

  void wake(std::vector<VarId>& changes, const std::size_t* self) {
    for (VarId v : changes)
      for (std::size_t q : set_.watchers(v))
        if (!self || q != *self) push(q);
    changes.clear();
  }

  bool drain_fail() {
    for (std::size_t p : queue_) in_queue_[p] = 0;
    queue_.clear();
    space_.changes().clear();
    space_.fail();
    return false;
  }

  Space space_;
  PropagatorSet set_;
  std::deque<std::size_t> queue_;
  std::vector<char> in_queue_;
};

/// solv(F, ·) for many domains of one shape, reusing the subscription index.
class FixpointRunner {
 public:
  FixpointRunner(const Domain& shape, const std::vector<PropagatorPtr>& props) : solver_(shape, props) {
    solver_.space().set_trailing(false);
  }

  Domain operator()(const Domain& d) {
    if (d.is_false()) return d;
    solver_.space().reset(d);
    solver_.schedule_all();
    if (!solver_.fixpoint()) {
      Domain out = solver_.space().domain();
      if (!out.is_false()) make_false(out);
      return out;
    }
    return solver_.space().domain();
  }

 private:
  Solver solver_;
};

/// solv(F, D): the greatest common fixpoint of F below D.
inline Domain fixpoint(const std::vector<PropagatorPtr>& props, const Domain& d) {
  if (d.is_false()) return d;
  Solver s(d, props);
  s.space().set_trailing(false);
  s.schedule_all();
  if (!s.fixpoint()) {
    Domain out = s.space().domain();
    if (!out.is_false()) make_false(out);
    return out;
  }
  return s.space().domain();
}

enum class VarOrder { FirstFail, InputOrder };
enum class SearchMode { First, All, Optimize };

struct SearchConfig {
  std::vector<VarId> search_vars;
  VarOrder var_order = VarOrder::FirstFail;
  SearchMode mode = SearchMode::All;
  std::optional<VarId> objective;
  bool minimize = true;
  bool record_solutions = true;
  std::size_t node_limit = 0;  // 0 = unlimited
};

struct SearchStats {
  std::size_t fails = 0;
  std::size_t nodes = 0;
  std::size_t solutions = 0;
  std::optional<int> best_objective;
  double millis = 0;
  bool complete = true;
};

struct SearchResult {
  SearchStats stats;
  std::vector<Domain> solutions;  // fixed domains in discovery order
};

/// Complete depth-first search with binary branching.
class Search {
 public:
  Search(const Domain& d_init, const std::vector<PropagatorPtr>& props, SearchConfig cfg)
      : solver_(d_init, props), cfg_(std::move(cfg)) {
    if (cfg_.search_vars.empty()) throw NoSearchVars("search: no search variables");
    if ((cfg_.mode == SearchMode::Optimize) != cfg_.objective.has_value())
      throw InvalidParams("search: objective required exactly in optimize mode");
    if (cfg_.objective && !cfg_.objective->is_int()) throw InvalidParams("search: objective must be an integer variable");
  }

  SearchResult run() {
    auto t0 = std::chrono::steady_clock::now();
    solver_.schedule_all();
    node();
    res_.stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return std::move(res_);
  }

 private:
  struct Branch {
    Atom left;
    bool any = false;
  };

  void node() {
    if (stop_) return;
    if (cfg_.node_limit && res_.stats.nodes >= cfg_.node_limit) {
      stop_ = true;
      res_.stats.complete = false;
      return;
    }
    Space& s = solver_.space();
    ++res_.stats.nodes;
    std::size_t m = s.mark();
    if (bound_) s.restrict(cfg_.minimize ? leq(*cfg_.objective, *bound_) : geq(*cfg_.objective, *bound_));
    if (!solver_.fixpoint()) {
      ++res_.stats.fails;
      s.undo_to(m);
      return;
    }
    Branch b = choose();
    if (!b.any) {
      solution();
      s.undo_to(m);
      return;
    }
    std::size_t m1 = s.mark();
    s.restrict(b.left);
    node();
    s.undo_to(m1);
    if (!stop_) {
      s.restrict(negate(b.left));
      node();
      s.undo_to(m1);
    }
    s.undo_to(m);
  }

  void solution() {
    const Domain& d = solver_.space().domain();
    ++res_.stats.solutions;
    if (cfg_.record_solutions) res_.solutions.push_back(d);
    if (cfg_.mode == SearchMode::First) stop_ = true;
    if (cfg_.mode == SearchMode::Optimize) {
      int val = d.ints(cfg_.objective->index).min();
      res_.stats.best_objective = val;
      bound_ = cfg_.minimize ? val - 1 : val + 1;
    }
  }

  Branch choose() const {
    const Domain& d = solver_.space().domain();
    auto int_branch = [&](VarId v) { return Branch{eq(v, d.ints(v.index).min()), true}; };
    auto set_branch = [&](VarId v) {
      const SetBounds& b = d.sets(v.index);
      return Branch{in((b.ub - b.lb).min(), v), true};
    };
    // integer search variables
    std::optional<VarId> best;
    std::size_t best_size = 0;
    for (VarId v : cfg_.search_vars) {
      if (!v.is_int()) continue;
      std::size_t sz = d.ints(v.index).size();
      if (sz <= 1) continue;
      if (cfg_.var_order == VarOrder::InputOrder) return int_branch(v);
      if (!best || sz < best_size) {
        best = v;
        best_size = sz;
      }
    }
    if (best) return int_branch(*best);
    for (VarId v : cfg_.search_vars)
      if (v.is_set() && !d.sets(v.index).fixed()) return set_branch(v);
    // anything left unfixed
    for (std::size_t i = 0; i < d.num_ints(); ++i)
      if (d.ints(static_cast<int>(i)).size() > 1) return int_branch(int_var(static_cast<int>(i)));
    for (std::size_t i = 0; i < d.num_sets(); ++i)
      if (!d.sets(static_cast<int>(i)).fixed()) return set_branch(set_var(static_cast<int>(i)));
    return {};
  }

  Solver solver_;
  SearchConfig cfg_;
  SearchResult res_;
  std::optional<int> bound_;
  bool stop_ = false;
};

inline SearchResult search(const Domain& d_init, const std::vector<PropagatorPtr>& props, SearchConfig cfg) {
  return Search(d_init, props, std::move(cfg)).run();
}

/// Minimizes (or maximizes) the objective, proving optimality.
inline SearchResult branch_and_bound(const Domain& d_init, const std::vector<PropagatorPtr>& props, SearchConfig cfg) {
  if (!cfg.objective) throw InvalidParams("branch_and_bound: objective required");
  cfg.mode = SearchMode::Optimize;
  return Search(d_init, props, std::move(cfg)).run();
}

}  // namespace redprop
