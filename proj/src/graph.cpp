#include "swarmsim/graph.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace swarmsim {

DirectedGraph build_knn_graph(const PointSet& ps, std::size_t k, bool parallel) {
  const std::size_t n = ps.n();
  if (k == 0 || k >= n) throw std::invalid_argument("build_knn_graph: require 1 <= k <= n-1");

  DirectedGraph g;
  g.n = n;
  g.out_edges.resize(n);

  const bool run_parallel = parallel && !omp_in_parallel();
#pragma omp parallel if (run_parallel)
  {
    std::vector<Neighbour> scratch, row;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      detail::knn_row(ps, static_cast<std::size_t>(i), k, scratch, row);
      auto& edges = g.out_edges[static_cast<std::size_t>(i)];
      edges.resize(row.size());
      for (std::size_t j = 0; j < row.size(); ++j) edges[j] = {row[j].index, row[j].dist};
    }
  }
  return g;
}

SccDecomposition scc(const DirectedGraph& g) {
  const std::size_t n = g.n;
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

  SccDecomposition dec;
  dec.component_id.assign(n, kUnset);

  // Iterative Tarjan.  Components are emitted in reverse topological order
  // of the condensation: whenever comp(u) -> comp(v) with distinct labels,
  // label(v) < label(u).  in_component_sizes relies on this ordering.
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  stack.reserve(n);

  struct Frame {
    std::size_t v;
    std::size_t edge;
  };
  std::vector<Frame> call;
  std::size_t next_index = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      Frame& f = call.back();
      const std::size_t v = f.v;
      if (f.edge == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (f.edge < g.out_edges[v].size()) {
        const std::size_t w = g.out_edges[v][f.edge++].target;
        if (index[w] == kUnset) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        const std::size_t label = dec.component_sizes.size();
        std::size_t size = 0;
        for (;;) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          dec.component_id[w] = label;
          ++size;
          if (w == v) break;
        }
        dec.component_sizes.push_back(size);
      }
      call.pop_back();
      if (!call.empty()) {
        Frame& parent = call.back();
        low[parent.v] = std::min(low[parent.v], low[v]);
      }
    }
  }

  dec.lscc_id = 0;
  for (std::size_t c = 1; c < dec.component_sizes.size(); ++c)
    if (dec.component_sizes[c] > dec.component_sizes[dec.lscc_id]) dec.lscc_id = c;
  return dec;
}

std::vector<std::size_t> in_component_sizes(const DirectedGraph& g) {
  const std::size_t n = g.n;
  if (n == 0) return {};
  const SccDecomposition dec = scc(g);
  const std::size_t comps = dec.component_sizes.size();
  const std::size_t words = (n + 63) / 64;

  // source_bits[c] accumulates the vertex set that can reach component c.
  std::vector<std::uint64_t> source_bits(comps * words, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t c = dec.component_id[v];
    source_bits[c * words + v / 64] |= std::uint64_t{1} << (v % 64);
  }

  // Vertices grouped by component, for a cache-friendly edge sweep.
  std::vector<std::size_t> offset(comps + 1, 0);
  for (std::size_t v = 0; v < n; ++v) ++offset[dec.component_id[v] + 1];
  for (std::size_t c = 0; c < comps; ++c) offset[c + 1] += offset[c];
  std::vector<std::size_t> members(n);
  {
    std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
    for (std::size_t v = 0; v < n; ++v) members[cursor[dec.component_id[v]]++] = v;
  }

  // Descending label order is a topological order of the condensation, so
  // each component's source set is final before it is pushed downstream.
  for (std::size_t c = comps; c-- > 0;) {
    const std::uint64_t* src = &source_bits[c * words];
    for (std::size_t m = offset[c]; m < offset[c + 1]; ++m) {
      for (const Edge& e : g.out_edges[members[m]]) {
        const std::size_t tc = dec.component_id[e.target];
        if (tc == c) continue;
        std::uint64_t* dst = &source_bits[tc * words];
        for (std::size_t w = 0; w < words; ++w) dst[w] |= src[w];
      }
    }
  }

  std::vector<std::size_t> comp_count(comps, 0);
  for (std::size_t c = 0; c < comps; ++c) {
    std::size_t count = 0;
    for (std::size_t w = 0; w < words; ++w) count += std::popcount(source_bits[c * words + w]);
    comp_count[c] = count;
  }
  std::vector<std::size_t> sizes(n);
  for (std::size_t v = 0; v < n; ++v) sizes[v] = comp_count[dec.component_id[v]];
  return sizes;
}

namespace {

// BFS over an adjacency-index list from a seed set; returns the sorted
// reachable set, seeds included.
std::vector<std::size_t> reach_from(const std::vector<std::vector<std::size_t>>& adj,
                                    const std::vector<std::size_t>& seeds, std::size_t n) {
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> queue = seeds;
  for (std::size_t s : seeds) seen[s] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t w : adj[queue[head]]) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  std::vector<std::size_t> out;
  out.reserve(queue.size());
  for (std::size_t v = 0; v < n; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

}  // namespace

SwarmClassification classify(const DirectedGraph& g) {
  const std::size_t n = g.n;
  if (n == 0) throw std::invalid_argument("classify: graph must have >= 1 vertex");

  SwarmClassification cls;
  cls.in_size = in_component_sizes(g);

  // Mode of the in-size values; frequency ties resolve toward the larger
  // value (the bigger, better-connected class).
  std::vector<std::size_t> freq(n + 1, 0);
  for (std::size_t s : cls.in_size) ++freq[s];
  std::size_t mode = 1, best = 0;
  for (std::size_t value = 1; value <= n; ++value) {
    if (freq[value] >= best && freq[value] > 0) {
      best = freq[value];
      mode = value;
    }
  }
  cls.mode_in_size = mode;

  cls.type.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (cls.in_size[v] == mode)
      cls.type[v] = 1;
    else if (cls.in_size[v] > mode)
      cls.type[v] = 2;
    else
      cls.type[v] = 3;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (cls.type[v] == 1) cls.lscc.push_back(v);

  std::vector<std::vector<std::size_t>> fwd(n), rev(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (const Edge& e : g.out_edges[v]) {
      fwd[v].push_back(e.target);
      rev[e.target].push_back(v);
    }
  }
  cls.out_comp = reach_from(fwd, cls.lscc, n);
  cls.in_comp = reach_from(rev, cls.lscc, n);
  cls.eta_plus = static_cast<double>(cls.out_comp.size()) / static_cast<double>(n);
  cls.eta_minus = static_cast<double>(cls.in_comp.size()) / static_cast<double>(n);
  return cls;
}

double lscc_fraction(const DirectedGraph& g) {
  if (g.n == 0) throw std::invalid_argument("lscc_fraction: graph must have >= 1 vertex");
  const SccDecomposition dec = scc(g);
  return static_cast<double>(dec.component_sizes[dec.lscc_id]) / static_cast<double>(g.n);
}

bool mode_is_unique(const std::vector<std::size_t>& in_sizes) {
  if (in_sizes.empty()) return false;
  const std::size_t top = *std::max_element(in_sizes.begin(), in_sizes.end());
  std::vector<std::size_t> freq(top + 1, 0);
  for (std::size_t s : in_sizes) ++freq[s];
  std::size_t best = *std::max_element(freq.begin(), freq.end());
  std::size_t winners = 0;
  for (std::size_t value = 0; value <= top; ++value)
    if (freq[value] == best) ++winners;
  return winners == 1;
}

bool classification_matches_scc(const SwarmClassification& cls, const SccDecomposition& dec) {
  std::vector<std::size_t> reference;
  for (std::size_t v = 0; v < dec.component_id.size(); ++v)
    if (dec.component_id[v] == dec.lscc_id) reference.push_back(v);
  return cls.lscc == reference;
}

}  // namespace swarmsim
