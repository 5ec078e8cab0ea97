#include "ising/graph.hpp"

#include <algorithm>
#include <cmath>

#include "ising/errors.hpp"

namespace ising {

MultiGraph MultiGraph::from_edges(
    std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  MultiGraph g;
  g.n = n;
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw Error("edge endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  g.edges = std::move(edges);
  g.degree.assign(n, 0);
  for (auto [u, v] : g.edges) {
    g.degree[u] += 1;
    g.degree[v] += 1;  // loop (u == v) contributes 2, as intended
    if (u == v) g.loops += 1;
  }
  g.adj_offset.assign(n + 1, 0);
  for (std::uint32_t v = 0; v < n; ++v)
    g.adj_offset[v + 1] = g.adj_offset[v] + g.degree[v];
  g.adj.resize(g.adj_offset[n]);
  std::vector<std::size_t> cursor(g.adj_offset.begin(), g.adj_offset.end() - 1);
  for (auto [u, v] : g.edges) {
    g.adj[cursor[u]++] = v;
    g.adj[cursor[v]++] = u;
  }
  return g;
}

MultiGraph configuration_model(std::vector<std::uint32_t> degrees, Rng& rng) {
  std::uint64_t total = 0;
  for (auto d : degrees) total += d;
  if (total % 2 == 1) {
    if (degrees.empty()) throw Error("configuration_model: empty degree sequence");
    degrees.back() += 1;
    total += 1;
  }
  std::vector<std::uint32_t> stubs;
  stubs.reserve(total);
  for (std::uint32_t v = 0; v < degrees.size(); ++v)
    stubs.insert(stubs.end(), degrees[v], v);
  shuffle_inplace(stubs, rng);  // uniform matching = pair consecutive stubs
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(total / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
    edges.emplace_back(stubs[i], stubs[i + 1]);
  return MultiGraph::from_edges(static_cast<std::uint32_t>(degrees.size()),
                                std::move(edges));
}

MultiGraph configuration_model(const DegreeLaw& law, std::uint32_t n, Rng& rng) {
  return configuration_model(law.sample(rng, n), rng);
}

MultiGraph erdos_renyi(std::uint32_t n, double mean_degree, Rng& rng) {
  if (n == 0) throw Error("erdos_renyi: n must be >= 1");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  if (n == 1 || mean_degree == 0.0)
    return MultiGraph::from_edges(n, std::move(edges));
  const double p = mean_degree / static_cast<double>(n - 1);
  if (p > 1.0)
    throw InvalidProbabilityError("erdos_renyi: mean_degree/(n-1) exceeds 1");
  // geometric skipping over the n(n-1)/2 pairs in lexicographic order
  const double log_q = std::log1p(-p);  // -inf at p == 1 => gap always 0
  const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t pos = 0;
  std::uint32_t u = 0;
  std::uint64_t row_start = 0;      // pair index of (u, u+1)
  std::uint64_t row_len = n - 1;    // pairs in row u
  while (pos < total_pairs) {
    const double gap = std::floor(std::log(rng.uniform_pos()) / log_q);
    if (!(gap < static_cast<double>(total_pairs))) break;
    pos += static_cast<std::uint64_t>(gap);
    if (pos >= total_pairs) break;
    while (pos >= row_start + row_len) {  // monotone row advance: O(n) total
      row_start += row_len;
      row_len -= 1;
      u += 1;
    }
    const std::uint32_t v = u + 1 + static_cast<std::uint32_t>(pos - row_start);
    edges.emplace_back(u, v);
    pos += 1;
  }
  return MultiGraph::from_edges(n, std::move(edges));
}

double sparsity_profile(const MultiGraph& g, std::uint32_t ell) {
  if (g.n == 0) return 0.0;
  double acc = 0.0;
  for (auto d : g.degree)
    if (ell == 0 || d >= ell) acc += static_cast<double>(d);
  return acc / static_cast<double>(g.n);
}

double edge_density(const MultiGraph& g) {
  return g.n ? static_cast<double>(g.edges.size()) / static_cast<double>(g.n)
             : 0.0;
}

std::string rooted_tree_code(std::span<const std::uint32_t> parent) {
  const std::size_t n = parent.size();
  std::vector<std::vector<std::string>> child_codes(n);
  std::string result;
  for (std::size_t v = n; v-- > 0;) {
    auto& codes = child_codes[v];
    std::sort(codes.begin(), codes.end());
    std::string code;
    code.reserve(2 + 16 * codes.size());
    code.push_back('(');
    for (const auto& c : codes) code += c;
    code.push_back(')');
    if (v == 0) {
      result = std::move(code);
    } else {
      if (parent[v] >= v) throw Error("rooted_tree_code: parent[v] must be < v");
      child_codes[parent[v]].push_back(std::move(code));
    }
    child_codes[v].clear();
  }
  return result;
}

namespace {

// BFS ball with a reusable distance scratch (kUnseen = sentinel).
constexpr std::uint32_t kUnseen = 0xffffffffu;

NeighborhoodBall ball_with_scratch(const MultiGraph& g, std::uint32_t center,
                                   std::uint32_t t,
                                   std::vector<std::uint32_t>& dist) {
  NeighborhoodBall ball;
  ball.center = center;
  ball.radius = t;
  ball.order.push_back(center);
  ball.parent.push_back(0);
  dist[center] = 0;
  std::size_t head = 0;
  while (head < ball.order.size()) {
    std::uint32_t v = ball.order[head];
    std::uint32_t dv = dist[v];
    ++head;
    if (dv == t) continue;
    for (std::uint32_t w : g.neighbors(v)) {
      if (dist[w] == kUnseen) {
        dist[w] = dv + 1;
        ball.parent.push_back(static_cast<std::uint32_t>(head - 1));
        ball.order.push_back(w);
      }
    }
  }
  ball.vertex_count = static_cast<std::uint32_t>(ball.order.size());
  // induced edge count: incidences internal to the ball, halved (a loop's
  // two incidences make it count once, like any other edge)
  std::size_t incidences = 0;
  for (std::uint32_t v : ball.order)
    for (std::uint32_t w : g.neighbors(v))
      if (dist[w] != kUnseen) ++incidences;
  ball.induced_edges = incidences / 2;
  ball.is_tree = (ball.induced_edges + 1 == ball.vertex_count);
  std::uint32_t max_gen = 0;
  for (std::uint32_t v : ball.order) max_gen = std::max(max_gen, dist[v]);
  ball.generation_sizes.assign(max_gen + 1, 0);
  for (std::uint32_t v : ball.order) ball.generation_sizes[dist[v]] += 1;
  if (ball.is_tree) ball.canonical_code = rooted_tree_code(ball.parent);
  for (std::uint32_t v : ball.order) dist[v] = kUnseen;  // reset scratch
  return ball;
}

}  // namespace

NeighborhoodBall sample_ball(const MultiGraph& g, std::uint32_t center,
                             std::uint32_t t) {
  if (center >= g.n) throw Error("sample_ball: center out of range");
  std::vector<std::uint32_t> dist(g.n, kUnseen);
  return ball_with_scratch(g, center, t, dist);
}

LocalLaw local_law_estimate(const MultiGraph& g, std::uint32_t t,
                            std::size_t samples, Rng& rng) {
  if (g.n == 0 || samples == 0) throw Error("local_law_estimate: empty input");
  LocalLaw law;
  law.samples = samples;
  std::vector<std::uint32_t> dist(g.n, kUnseen);
  std::map<std::string, std::size_t> counts;
  std::size_t non_tree = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::uint32_t center = static_cast<std::uint32_t>(rng.below(g.n));
    NeighborhoodBall ball = ball_with_scratch(g, center, t, dist);
    if (ball.is_tree)
      counts[ball.canonical_code] += 1;
    else
      non_tree += 1;
  }
  law.non_tree_fraction =
      static_cast<double>(non_tree) / static_cast<double>(samples);
  for (const auto& [code, cnt] : counts)
    law.shape_freq[code] =
        static_cast<double>(cnt) / static_cast<double>(samples);
  return law;
}

}  // namespace ising
