#include "markovdim/dimension.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace markovdim {

namespace {

Interval int64_ratio(std::int64_t num, std::int64_t den) {
  // |num|, |den| stay far below 2^53 for supported m, so the conversions are
  // exact; the division is still widened outward.
  return Interval::point(static_cast<double>(num)) /
         Interval::point(static_cast<double>(den));
}

// Certified enclosure of the target block's cylinder hull
// [p_m/q_m, (p_m+p_{m-1})/(q_m+q_{m-1})] from its continuants.
Interval cylinder_hull(const std::vector<std::uint8_t>& block) {
  std::int64_t p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1;
  for (auto a : block) {
    std::int64_t p_next = a * p_cur + p_prev;
    std::int64_t q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    p_cur = p_next;
    q_prev = q_cur;
    q_cur = q_next;
  }
  return hull(int64_ratio(p_cur, q_cur),
              int64_ratio(p_cur + p_prev, q_cur + q_prev));
}

}  // namespace

TransitionGraph build_graph(const ForbiddenSet& forbidden, int m) {
  if (m < 1 || m > 24) throw std::invalid_argument("build_graph: m out of range");
  if (forbidden.max_len() > static_cast<std::size_t>(m) + 1)
    throw std::invalid_argument(
        "build_graph: forbidden word longer than m+1 digits");

  // Enumerate admissible m-blocks.
  std::vector<std::vector<std::uint8_t>> blocks;
  std::vector<std::uint8_t> cur;
  auto gen = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == m) {
      blocks.push_back(cur);
      return;
    }
    for (std::uint8_t d = 1; d <= 2; ++d) {
      cur.push_back(d);
      if (!forbidden.matches_suffix(cur)) self(self);
      cur.pop_back();
    }
  };
  gen(gen);
  std::sort(blocks.begin(), blocks.end());

  auto index_of = [&](const std::vector<std::uint8_t>& b) -> int {
    auto it = std::lower_bound(blocks.begin(), blocks.end(), b);
    if (it == blocks.end() || *it != b) return -1;
    return static_cast<int>(it - blocks.begin());
  };

  // Overlap edges u -> v (v = u[1..] + d) whose (m+1)-word is admissible.
  std::vector<std::pair<int, int>> adj;
  for (int ui = 0; ui < static_cast<int>(blocks.size()); ++ui) {
    std::vector<std::uint8_t> ext = blocks[ui];
    for (std::uint8_t d = 1; d <= 2; ++d) {
      ext.push_back(d);
      if (!forbidden.matches_suffix(ext)) {
        std::vector<std::uint8_t> v(ext.begin() + 1, ext.end());
        int vi = index_of(v);
        if (vi >= 0) adj.emplace_back(ui, vi);
      }
      ext.pop_back();
    }
  }

  // Prune vertices that cannot lie on a bi-infinite admissible path.
  std::vector<char> keep(blocks.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> indeg(blocks.size(), 0), outdeg(blocks.size(), 0);
    for (auto [u, v] : adj)
      if (keep[u] && keep[v]) {
        ++outdeg[u];
        ++indeg[v];
      }
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (keep[i] && (indeg[i] == 0 || outdeg[i] == 0)) {
        keep[i] = 0;
        changed = true;
      }
  }

  TransitionGraph g;
  g.m = m;
  std::vector<int> remap(blocks.size(), -1);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (keep[i]) {
      remap[i] = static_cast<int>(g.vertices.size());
      g.vertices.push_back(blocks[i]);
    }
  g.out.resize(g.vertices.size());
  for (auto [u, v] : adj) {
    if (!keep[u] || !keep[v]) continue;
    Interval x = cylinder_hull(blocks[v]);
    Interval t = static_cast<double>(blocks[u][0]) + x;
    TransitionGraph::Edge e{remap[u], remap[v], reciprocal(t * t)};
    g.out[e.from].push_back(static_cast<int>(g.edges.size()));
    g.edges.push_back(e);
  }
  return g;
}

namespace {

// Iterative Tarjan SCC.
std::vector<std::vector<int>> strongly_connected_components(
    const TransitionGraph& g) {
  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> sccs;
  int counter = 0;

  struct Frame {
    int v;
    std::size_t ei;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.ei < g.out[f.v].size()) {
        int w = g.edges[g.out[f.v][f.ei++]].to;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<int> comp;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
            if (w == v) break;
          }
          sccs.push_back(std::move(comp));
        }
      }
    }
  }
  return sccs;
}

struct SCCMatrix {
  int n = 0;
  struct Entry {
    int from, to;
    Interval w;  // one-step weight enclosure
  };
  std::vector<Entry> entries;
};

// Certified Collatz-Wielandt bracket of the Perron roots of the entrywise
// min and max matrices of the sigma-th power of the weights: returns
// (lower bound of lambda(A_lo), upper bound of lambda(A_hi)).
std::pair<double, double> perron_bracket(const SCCMatrix& A, double sigma) {
  const int n = A.n;
  struct PowEntry {
    int from, to;
    double lo, hi, mid;
  };
  std::vector<PowEntry> pw;
  pw.reserve(A.entries.size());
  for (const auto& e : A.entries) {
    Interval p = pow_outward(e.w, sigma);
    pw.push_back({e.from, e.to, p.lo, p.hi, 0.5 * (p.lo + p.hi)});
  }

  std::vector<double> v(n, 1.0), y(n), ylo(n), yhi(n);
  double best_lo = 0.0, best_hi = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 3000; ++it) {
    std::fill(y.begin(), y.end(), 0.0);
    std::fill(ylo.begin(), ylo.end(), 0.0);
    std::fill(yhi.begin(), yhi.end(), 0.0);
    for (const auto& e : pw) {
      y[e.to] += e.mid * v[e.from];
      ylo[e.to] = step_down(ylo[e.to] + step_down(e.lo * v[e.from]));
      yhi[e.to] = step_up(yhi[e.to] + step_up(e.hi * v[e.from]));
    }
    double cw_lo = std::numeric_limits<double>::infinity(), cw_hi = 0.0;
    for (int i = 0; i < n; ++i) {
      cw_lo = std::min(cw_lo, step_down(ylo[i] / v[i]));
      cw_hi = std::max(cw_hi, step_up(yhi[i] / v[i]));
    }
    best_lo = std::max(best_lo, cw_lo);
    best_hi = std::min(best_hi, cw_hi);
    if (best_hi - best_lo < 1e-10 * std::max(1.0, best_lo)) break;
    double norm = 0.0;
    for (double x : y) norm += x;
    if (!(norm > 0.0)) break;
    for (int i = 0; i < n; ++i) v[i] = std::max(y[i] / norm, 1e-300);
  }
  return {best_lo, best_hi};
}

std::pair<double, double> scc_dimension(const SCCMatrix& A, double tol) {
  // lambda is strictly decreasing in sigma (all weights < 1), so bisect the
  // certified bracket from both sides.
  auto lower_pred = [&](double sigma) {  // certified lambda(A_lo) >= 1
    return perron_bracket(A, sigma).first >= 1.0;
  };
  auto upper_pred = [&](double sigma) {  // certified lambda(A_hi) <= 1
    return perron_bracket(A, sigma).second <= 1.0;
  };
  double dim_lo = 0.0;
  if (lower_pred(0.0)) {
    double a = 0.0, b = 1.0;
    if (lower_pred(1.0)) {
      dim_lo = 1.0;
    } else {
      while (b - a > tol) {
        double mid = 0.5 * (a + b);
        (lower_pred(mid) ? a : b) = mid;
      }
      dim_lo = a;
    }
  }
  double dim_hi = 1.0;
  if (upper_pred(0.0)) {
    dim_hi = 0.0;
  } else if (upper_pred(1.0)) {
    double a = 0.0, b = 1.0;
    while (b - a > tol) {
      double mid = 0.5 * (a + b);
      (upper_pred(mid) ? b : a) = mid;
    }
    dim_hi = b;
  }
  return {dim_lo, dim_hi};
}

}  // namespace

DimEnclosure dim_enclosure(const TransitionGraph& g, double tol) {
  DimEnclosure enc;
  enc.m = g.m;
  if (g.empty()) return enc;
  auto sccs = strongly_connected_components(g);
  std::vector<int> comp(g.vertices.size(), -1);
  for (std::size_t ci = 0; ci < sccs.size(); ++ci)
    for (int v : sccs[ci]) comp[v] = static_cast<int>(ci);

  for (std::size_t ci = 0; ci < sccs.size(); ++ci) {
    SCCMatrix A;
    A.n = static_cast<int>(sccs[ci].size());
    std::vector<int> local(g.vertices.size(), -1);
    for (int i = 0; i < A.n; ++i) local[sccs[ci][i]] = i;
    for (const auto& e : g.edges)
      if (comp[e.from] == static_cast<int>(ci) &&
          comp[e.to] == static_cast<int>(ci))
        A.entries.push_back({local[e.from], local[e.to], e.weight});
    if (A.entries.empty()) continue;
    ++enc.components;
    auto [lo, hi] = scc_dimension(A, tol);
    enc.lo = std::max(enc.lo, lo);
    enc.hi = std::max(enc.hi, hi);
  }
  return enc;
}

DimEnclosure dim_enclosure(const ForbiddenSet& forbidden, int m, double tol) {
  return dim_enclosure(build_graph(forbidden, m), tol);
}

DimensionDrop dimension_drop(const ForbiddenSet& forbidden, const Word& extra,
                             int m, double tol) {
  for (const auto& w : forbidden.words)
    if (contains_factor(extra.digits, w.digits))
      throw std::invalid_argument(
          "dimension_drop: extra word is already implied by the forbidden set");
  DimensionDrop dd;
  dd.before = dim_enclosure(forbidden, m, tol);
  ForbiddenSet with = forbidden;
  with.add(extra);
  dd.after = dim_enclosure(with, m, tol);
  dd.separated = dd.after.hi < dd.before.lo;
  return dd;
}

std::string enclosure_to_json(const DimEnclosure& e) {
  nlohmann::json j;
  j["lo"] = e.lo;
  j["hi"] = e.hi;
  j["m"] = e.m;
  j["components"] = e.components;
  return j.dump(2);
}

}  // namespace markovdim
