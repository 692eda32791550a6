#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "redprop/space.hpp"

namespace redprop {

/// Domain-consistent alldifferent via maximum matching and strongly
/// connected components of the residual graph.
class AllDifferentProp final : public Propagator {
 public:
  explicit AllDifferentProp(std::vector<VarId> xs) : Propagator(xs), xs_(std::move(xs)) {}

  bool propagate(Space& s) const override {
    const std::size_t n = xs_.size();
    std::vector<int> vals;
    for (VarId x : xs_) {
      if (s.ints(x).empty()) return s.fail();
      s.ints(x).for_each([&](int v) { vals.push_back(v); });
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    const std::size_t m = vals.size();
    if (m < n) return s.fail();
    auto vidx = [&](int v) { return static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), v) - vals.begin()); };

    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) s.ints(xs_[i]).for_each([&](int v) { adj[i].push_back(vidx(v)); });

    // maximum matching by augmenting paths
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> var_of(m, kNone), val_of(n, kNone);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t i) {
      for (std::size_t j : adj[i]) {
        if (seen[j]) continue;
        seen[j] = 1;
        if (var_of[j] == kNone || augment(var_of[j])) {
          var_of[j] = i;
          val_of[i] = j;
          return true;
        }
      }
      return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
      seen.assign(m, 0);
      if (!augment(i)) return s.narrow(xs_[i], ValueSet{}) && s.fail();
    }

    // nodes: vars 0..n-1, values n..n+m-1; matched edges var→value, others value→var
    const std::size_t nodes = n + m;
    std::vector<std::vector<std::size_t>> g(nodes);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j : adj[i]) {
        if (val_of[i] == j) g[i].push_back(n + j);
        else g[n + j].push_back(i);
      }

    // values reachable from a free value lie on even alternating paths
    std::vector<char> reach(nodes, 0);
    std::vector<std::size_t> stack;
    for (std::size_t j = 0; j < m; ++j)
      if (var_of[j] == kNone) {
        reach[n + j] = 1;
        stack.push_back(n + j);
      }
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : g[u])
        if (!reach[w]) {
          reach[w] = 1;
          stack.push_back(w);
        }
    }

    // Tarjan SCC
    std::vector<std::size_t> index(nodes, kNone), low(nodes, 0), comp(nodes, kNone);
    std::vector<char> on(nodes, 0);
    std::vector<std::size_t> st;
    std::size_t counter = 0;
    std::size_t ncomp = 0;
    std::function<void(std::size_t)> strong = [&](std::size_t u) {
      index[u] = low[u] = counter++;
      st.push_back(u);
      on[u] = 1;
      for (std::size_t w : g[u]) {
        if (index[w] == kNone) {
          strong(w);
          low[u] = std::min(low[u], low[w]);
        } else if (on[w]) {
          low[u] = std::min(low[u], index[w]);
        }
      }
      if (low[u] == index[u]) {
        while (true) {
          std::size_t w = st.back();
          st.pop_back();
          on[w] = 0;
          comp[w] = ncomp;
          if (w == u) break;
        }
        ++ncomp;
      }
    };
    for (std::size_t u = 0; u < nodes; ++u)
      if (index[u] == kNone) strong(u);

    for (std::size_t i = 0; i < n; ++i) {
      ValueSet keep;
      for (std::size_t j : adj[i]) {
        if (val_of[i] == j || comp[i] == comp[n + j] || reach[n + j]) keep.insert(vals[j]);
      }
      if (!s.narrow(xs_[i], keep)) return false;
    }
    return true;
  }

  [[nodiscard]] std::string describe() const override { return "alldifferent"; }

 private:
  std::vector<VarId> xs_;
};

}  // namespace redprop
