#include "cacsa/solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cacsa {

EqualityState EqualityState::from(const ConstraintProblem& c) {
  EqualityState st;
  if (c.is_bottom()) {
    st.bottom = true;
    return st;
  }
  st.pending = c.equations();
  st.ineqs = c.inequations();
  return st;
}

ConstraintProblem EqualityState::as_problem() const {
  if (bottom) return ConstraintProblem::bottom();
  ConstraintProblem c;
  for (const auto& e : pending) c.add_equal(e.lhs, e.rhs);
  for (const auto& [v, e] : solved.bindings()) c.add_equal(SizeExpr::var(v), e);
  for (const auto& e : ineqs) c.add_leq(e.lhs, e.rhs);
  return c;
}

namespace {

EqualityState bottom_state() {
  EqualityState st;
  st.bottom = true;
  return st;
}

EqualityState eliminate(const EqualityState& st, const Equation& eq, const SizeVar& alpha, const SizeExpr& a) {
  SizeSubst one{{alpha, a}};
  EqualityState next;
  for (const auto& e : st.pending)
    if (!(e == eq)) next.pending.insert(Equation(apply(one, e.lhs), apply(one, e.rhs)));
  next.solved = compose(st.solved, one);
  next.solved.bind(alpha, a);
  for (const auto& e : st.ineqs) next.ineqs.insert(Inequation{apply(one, e.lhs), apply(one, e.rhs)});
  return next;
}

}  // namespace

std::optional<EqualityStep> equality_step(const EqualityState& st) {
  if (st.bottom || st.pending.empty()) return std::nullopt;
  const Equation& eq = *st.pending.begin();
  const SizeExpr& a = eq.lhs;
  const SizeExpr& b = eq.rhs;

  if (a == b) {
    EqualityState next = st;
    next.pending.erase(next.pending.begin());
    return EqualityStep{2, std::move(next)};
  }
  if (!a.is_infinite() && !b.is_infinite() && a.shift() > 0 && b.shift() > 0) {
    EqualityState next = st;
    next.pending.erase(next.pending.begin());
    next.pending.insert(Equation(SizeExpr::var(a.base(), a.shift() - 1), SizeExpr::var(b.base(), b.shift() - 1)));
    return EqualityStep{1, std::move(next)};
  }
  if (!a.is_infinite() && !b.is_infinite() && a.base() == b.base()) return EqualityStep{3, bottom_state()};
  // Orientation puts oo last, so only b can be infinite here.
  if (b.is_infinite()) {
    if (a.shift() > 0) return EqualityStep{4, bottom_state()};
    return EqualityStep{5, eliminate(st, eq, a.base(), b)};
  }
  if (a.shift() == 0) return EqualityStep{5, eliminate(st, eq, a.base(), b)};
  return EqualityStep{5, eliminate(st, eq, b.base(), a)};
}

EqualityState simplify_equalities(EqualityState st) {
  while (auto s = equality_step(st)) st = std::move(s->next);
  return st;
}

std::pair<std::size_t, std::size_t> equality_measure(const EqualityState& st) {
  if (st.bottom) return {0, 0};
  std::size_t symbols = 0;
  for (const auto& e : st.pending) symbols += e.lhs.symbol_count() + e.rhs.symbol_count();
  return {st.pending.size(), symbols};
}

bool is_linear(const Inequation& e) { return !e.lhs.is_infinite() && !e.rhs.is_infinite(); }

bool is_infinity_ineq(const Inequation& e) { return e.lhs.is_infinite() && e.rhs.is_variable(); }

DependencyGraph::DependencyGraph(const std::set<Inequation>& ineqs) {
  std::set<SizeVar> vs;
  for (const auto& e : ineqs) {
    if (!is_linear(e)) continue;
    vs.insert(e.lhs.base());
    vs.insert(e.rhs.base());
    edges_.push_back({e.lhs.base(), e.rhs.base(), std::int64_t(e.lhs.shift()) - std::int64_t(e.rhs.shift()), e});
  }
  vertices_.assign(vs.begin(), vs.end());
}

DependencyGraph::DependencyGraph(std::vector<SizeVar> vertices, std::vector<DependencyEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::set<SizeVar> vs(vertices_.begin(), vertices_.end());
  for (const auto& e : edges_) {
    vs.insert(e.from);
    vs.insert(e.to);
  }
  vertices_.assign(vs.begin(), vs.end());
}

namespace {

// Integer view of a dependency graph.
struct IntGraph {
  std::size_t n = 0;
  struct Edge {
    std::size_t from, to;
    std::int64_t w;
  };
  std::vector<Edge> edges;
};

IntGraph index_graph(const DependencyGraph& g) {
  IntGraph ig;
  std::map<SizeVar, std::size_t> idx;
  for (const auto& v : g.vertices()) idx.emplace(v, idx.size());
  ig.n = idx.size();
  for (const auto& e : g.edges()) ig.edges.push_back({idx.at(e.from), idx.at(e.to), e.weight});
  return ig;
}

// Longest-path relaxation from an all-zero start. Returns a positive cycle
// (edge indices) as soon as the predecessor graph closes one.
std::optional<std::vector<std::size_t>> positive_cycle(const IntGraph& g, std::vector<std::int64_t>* dist = nullptr) {
  const std::size_t none = std::size_t(-1);
  std::vector<std::int64_t> d(g.n, 0);
  std::vector<std::size_t> pred(g.n, none);
  std::vector<std::size_t> mark(g.n, 0);
  std::size_t stamp = 0;

  auto parent_cycle = [&]() -> std::optional<std::vector<std::size_t>> {
    for (std::size_t start = 0; start < g.n; ++start) {
      if (mark[start]) continue;
      ++stamp;
      std::size_t walk_id = stamp;
      std::size_t v = start;
      while (v != none && !mark[v]) {
        mark[v] = walk_id;
        v = pred[v] == none ? none : g.edges[pred[v]].from;
      }
      if (v == none || mark[v] != walk_id) continue;
      std::vector<std::size_t> cyc;
      std::int64_t cost = 0;
      std::size_t u = v;
      do {
        std::size_t e = pred[u];
        cyc.push_back(e);
        cost += g.edges[e].w;
        u = g.edges[e].from;
      } while (u != v);
      if (cost <= 0) continue;
      std::reverse(cyc.begin(), cyc.end());
      return cyc;
    }
    std::fill(mark.begin(), mark.end(), 0);
    return std::nullopt;
  };

  const std::size_t cap = (g.n + 1) * (g.n + 1) + 8;
  for (std::size_t round = 0; round < cap; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const auto& e = g.edges[i];
      if (d[e.from] + e.w > d[e.to]) {
        d[e.to] = d[e.from] + e.w;
        pred[e.to] = i;
        changed = true;
      }
    }
    if (!changed) {
      if (dist) *dist = std::move(d);
      return std::nullopt;
    }
    std::fill(mark.begin(), mark.end(), 0);
    if (auto c = parent_cycle()) return c;
  }
  throw std::logic_error("longest-path relaxation did not settle");
}

}  // namespace

std::optional<std::vector<std::size_t>> find_increasing_cycle(const DependencyGraph& g) {
  return positive_cycle(index_graph(g));
}

std::optional<InequalityStep> inequality_step(const std::set<Inequation>& c) {
  for (auto it = c.begin(); it != c.end(); ++it) {
    if (it->rhs.is_infinite()) {
      std::set<Inequation> next = c;
      next.erase(*it);
      return InequalityStep{1, std::move(next)};
    }
  }
  for (auto it = c.begin(); it != c.end(); ++it) {
    if (!it->lhs.is_infinite()) continue;
    const SizeVar& alpha = it->rhs.base();
    bool elsewhere = false;
    for (auto jt = c.begin(); jt != c.end() && !elsewhere; ++jt) {
      if (jt == it) continue;
      elsewhere = (!jt->lhs.is_infinite() && jt->lhs.base() == alpha) ||
                  (!jt->rhs.is_infinite() && jt->rhs.base() == alpha);
    }
    if (!elsewhere && it->rhs.shift() == 0) continue;
    SizeSubst to_inf{{alpha, SizeExpr::infinity()}};
    std::set<Inequation> next;
    for (auto jt = c.begin(); jt != c.end(); ++jt)
      if (jt != it) next.insert(Inequation{apply(to_inf, jt->lhs), apply(to_inf, jt->rhs)});
    next.insert(Inequation{SizeExpr::infinity(), SizeExpr::var(alpha)});
    return InequalityStep{3, std::move(next)};
  }
  DependencyGraph g(c);
  if (auto cyc = find_increasing_cycle(g)) {
    std::set<Inequation> next = c;
    for (std::size_t e : *cyc) next.erase(g.edges()[e].source);
    for (std::size_t e : *cyc) next.insert(Inequation{SizeExpr::infinity(), SizeExpr::var(g.edges()[e].from)});
    return InequalityStep{2, std::move(next)};
  }
  return std::nullopt;
}

InequalityMeasure inequality_measure(const std::set<Inequation>& c) {
  InequalityMeasure m;
  std::map<SizeVar, std::size_t> occ;
  for (const auto& e : c) {
    m.symbols += e.lhs.symbol_count() + e.rhs.symbol_count();
    if (!e.lhs.is_infinite()) ++occ[e.lhs.base()];
    if (!e.rhs.is_infinite()) ++occ[e.rhs.base()];
  }
  for (const auto& [v, n] : occ) m.occurrences.push_back(n);
  std::sort(m.occurrences.rbegin(), m.occurrences.rend());
  return m;
}

std::set<Inequation> ReducedForm::as_set() const {
  std::set<Inequation> out = linear;
  for (const auto& v : infinite) out.insert(Inequation{SizeExpr::infinity(), SizeExpr::var(v)});
  return out;
}

ReducedForm simplify_inequalities(const std::set<Inequation>& c) {
  // Variables are numbered; linear inequations become edges.
  std::map<SizeVar, std::size_t> idx;
  std::vector<SizeVar> names;
  auto id = [&](const SizeVar& v) {
    auto [it, inserted] = idx.emplace(v, names.size());
    if (inserted) names.push_back(v);
    return it->second;
  };
  struct Lin {
    std::size_t from, to;
    std::int64_t w;
    const Inequation* src;
  };
  std::vector<Lin> lin;
  std::vector<std::size_t> seeds;
  for (const auto& e : c) {
    if (e.rhs.is_infinite()) continue;
    if (e.lhs.is_infinite()) {
      seeds.push_back(id(e.rhs.base()));
      continue;
    }
    lin.push_back({id(e.lhs.base()), id(e.rhs.base()), std::int64_t(e.lhs.shift()) - std::int64_t(e.rhs.shift()), &e});
  }
  const std::size_t n = names.size();
  std::vector<std::vector<std::size_t>> out_edges(n);
  for (std::size_t i = 0; i < lin.size(); ++i) out_edges[lin[i].from].push_back(i);

  std::vector<char> inf(n, 0);
  std::vector<char> alive(lin.size(), 1);
  std::vector<std::size_t> work;
  auto mark = [&](std::size_t v) {
    if (!inf[v]) {
      inf[v] = 1;
      work.push_back(v);
    }
  };
  auto propagate = [&]() {
    while (!work.empty()) {
      std::size_t v = work.back();
      work.pop_back();
      for (std::size_t e : out_edges[v]) mark(lin[e].to);
    }
  };
  for (std::size_t v : seeds) mark(v);

  for (;;) {
    propagate();
    // Remaining linear part, re-indexed densely.
    std::vector<std::size_t> local(n, std::size_t(-1));
    std::vector<std::size_t> back;
    IntGraph g;
    std::vector<std::size_t> edge_src;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      if (!alive[i]) continue;
      if (inf[lin[i].from] || inf[lin[i].to]) {
        alive[i] = 0;
        continue;
      }
      for (std::size_t v : {lin[i].from, lin[i].to})
        if (local[v] == std::size_t(-1)) {
          local[v] = back.size();
          back.push_back(v);
        }
      g.edges.push_back({local[lin[i].from], local[lin[i].to], lin[i].w});
      edge_src.push_back(i);
    }
    g.n = back.size();
    auto cyc = positive_cycle(g);
    if (!cyc) break;
    for (std::size_t e : *cyc) mark(back[g.edges[e].from]);
  }

  ReducedForm r;
  for (std::size_t v = 0; v < n; ++v)
    if (inf[v]) r.infinite.insert(names[v]);
  for (std::size_t i = 0; i < lin.size(); ++i)
    if (alive[i]) r.linear.insert(*lin[i].src);
  return r;
}

LinearSolution minimal_linear_vector(const std::set<Inequation>& linear) {
  DependencyGraph dg(linear);
  IntGraph g = index_graph(dg);
  LinearSolution sol;
  sol.vars = dg.vertices();
  std::vector<std::int64_t> d;
  if (positive_cycle(g, &d)) throw std::invalid_argument("linear part has an increasing cycle");
  if (d.empty()) d.assign(g.n, 0);
  sol.z = std::move(d);

  std::vector<std::size_t> parent(g.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(e.from)] = find(e.to);
  std::map<std::size_t, std::size_t> comp_id;
  for (std::size_t v = 0; v < g.n; ++v) {
    auto [it, inserted] = comp_id.emplace(find(v), comp_id.size());
    sol.component.push_back(it->second);
  }
  return sol;
}

SizeSubst minimal_linear_solution(const std::set<Inequation>& linear, FreshSizeVars& fresh) {
  for (const auto& e : linear) {
    if (!e.lhs.is_infinite()) fresh.reserve(e.lhs.base());
    if (!e.rhs.is_infinite()) fresh.reserve(e.rhs.base());
  }
  LinearSolution sol = minimal_linear_vector(linear);
  std::vector<SizeVar> bases;
  SizeSubst phi;
  for (std::size_t i = 0; i < sol.vars.size(); ++i) {
    while (bases.size() <= sol.component[i]) bases.push_back(fresh.fresh());
    phi.bind(sol.vars[i], SizeExpr::var(bases[sol.component[i]], std::uint32_t(sol.z[i])));
  }
  return phi;
}

SolveTrace solve_traced(const ConstraintProblem& c, FreshSizeVars& fresh) {
  fresh.reserve(c.vars());
  SolveTrace tr;
  tr.input = c;
  tr.after_equalities = simplify_equalities(EqualityState::from(c));
  if (tr.after_equalities.bottom) return tr;
  tr.reduced = simplify_inequalities(tr.after_equalities.ineqs);
  SizeSubst rest = minimal_linear_solution(tr.reduced->linear, fresh);
  for (const auto& v : tr.reduced->infinite) rest.bind(v, SizeExpr::infinity());
  tr.mgs = compose(tr.after_equalities.solved, rest);
  return tr;
}

std::optional<SizeSubst> solve(const ConstraintProblem& c, FreshSizeVars& fresh) { return solve_traced(c, fresh).mgs; }

std::optional<SizeSubst> solve(const ConstraintProblem& c) {
  FreshSizeVars fresh;
  return solve(c, fresh);
}

std::string to_string(const EqualityState& st) {
  if (st.bottom) return "false";
  std::ostringstream os;
  os << "pending:";
  for (const auto& e : st.pending) os << ' ' << to_string(e) << ';';
  os << " solved: " << st.solved << "; inequations:";
  for (const auto& e : st.ineqs) os << ' ' << to_string(e) << ';';
  return os.str();
}

std::string to_string(const ReducedForm& r) {
  std::ostringstream os;
  os << "infinite: {";
  bool first = true;
  for (const auto& v : r.infinite) {
    os << (first ? "" : ", ") << v;
    first = false;
  }
  os << "}; linear:";
  for (const auto& e : r.linear) os << ' ' << to_string(e) << ';';
  return os.str();
}

}  // namespace cacsa
