#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "cacsa/constraint.hpp"

namespace cacsa::oracle {

/// Does some simple cycle of `edges` (from, to, weight) have positive total
/// weight? Enumerates simple paths from each start vertex.
inline bool has_positive_simple_cycle(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, long>>& edges) {
  std::vector<std::vector<std::pair<std::size_t, long>>> out(n);
  for (const auto& [a, b, w] : edges) out[a].push_back({b, w});
  std::vector<bool> on_path(n, false);
  bool found = false;
  std::function<void(std::size_t, std::size_t, long)> go = [&](std::size_t start, std::size_t v, long cost) {
    for (const auto& [w, c] : out[v]) {
      if (found) return;
      if (w == start && cost + c > 0) {
        found = true;
        return;
      }
      if (w > start && !on_path[w]) {
        on_path[w] = true;
        go(start, w, cost + c);
        on_path[w] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n && !found; ++s) {
    on_path[s] = true;
    go(s, s, 0);
    on_path[s] = false;
  }
  return found;
}

/// Pointwise-least z in {0..bound}^n with z_j + p <= z_k + q for every
/// linear `s^p a_j <= s^q a_k`, found by enumeration; nullopt if the box has
/// no solution. Also checks that the least element is unique.
inline std::optional<std::map<SizeVar, std::int64_t>> least_exponents(const std::set<Inequation>& linear, int bound) {
  std::vector<SizeVar> vars;
  for (const auto& e : linear)
    for (const auto* s : {&e.lhs, &e.rhs})
      if (std::find(vars.begin(), vars.end(), s->base()) == vars.end()) vars.push_back(s->base());
  auto idx = [&](const SizeVar& v) { return std::size_t(std::find(vars.begin(), vars.end(), v) - vars.begin()); };
  std::vector<std::int64_t> z(vars.size(), 0);
  std::vector<std::vector<std::int64_t>> sols;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == vars.size()) {
      for (const auto& e : linear)
        if (z[idx(e.lhs.base())] + e.lhs.shift() > z[idx(e.rhs.base())] + e.rhs.shift()) return;
      sols.push_back(z);
      return;
    }
    for (int k = 0; k <= bound; ++k) {
      z[i] = k;
      go(i + 1);
    }
  };
  go(0);
  if (sols.empty()) return std::nullopt;
  for (const auto& cand : sols) {
    bool least = true;
    for (const auto& other : sols)
      for (std::size_t i = 0; i < vars.size() && least; ++i)
        if (cand[i] > other[i]) least = false;
    if (least) {
      std::map<SizeVar, std::int64_t> out;
      for (std::size_t i = 0; i < vars.size(); ++i) out[vars[i]] = cand[i];
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace cacsa::oracle
