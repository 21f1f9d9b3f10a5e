#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace netboundary {

inline constexpr std::uint32_t kInvalidNode = 0xffffffffu;

struct BuildReport {
  std::uint64_t input_edges = 0;
  std::uint64_t duplicate_edges_dropped = 0;
  std::uint64_t self_loops_dropped = 0;
};

// Immutable undirected simple graph. Adjacency is CSR (offsets + flat
// neighbor array) with neighbors sorted per node; node ids are dense
// 0..N-1 and the original labels are kept so induced subgraphs compose
// back to the input identifiers.
class Graph {
 public:
  Graph() = default;

  std::uint32_t node_count() const { return static_cast<std::uint32_t>(offsets_.size()) - 1; }
  std::uint64_t edge_count() const { return adj_.size() / 2; }

  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(std::uint32_t v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  const std::string& label(std::uint32_t v) const { return labels_[v]; }

  double mean_degree() const {
    return node_count() == 0 ? 0.0 : 2.0 * static_cast<double>(edge_count()) / node_count();
  }

  bool has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // edges: deduplicated canonical (u < v) pairs. labels map dense id to
  // original identifier; pass empty to use decimal ids.
  static Graph from_canonical_edges(std::uint32_t n,
                                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                    std::vector<std::string> labels = {}) {
    Graph g;
    g.offsets_.assign(std::size_t{n} + 1, 0);
    for (const auto& [u, v] : edges) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    for (std::uint32_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adj_.resize(g.offsets_[n]);
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
      g.adj_[cursor[u]++] = v;
      g.adj_[cursor[v]++] = u;
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
                g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
    }
    if (labels.empty()) {
      labels.reserve(n);
      for (std::uint32_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    } else if (labels.size() != n) {
      throw std::invalid_argument("Graph: label table size does not match node count");
    }
    g.labels_ = std::move(labels);
    return g;
  }

 private:
  std::vector<std::uint64_t> offsets_{0};
  std::vector<std::uint32_t> adj_;
  std::vector<std::string> labels_;
};

namespace detail {

// Canonicalizes raw integer pairs in place: self-loops and duplicates out,
// u < v ordering in. Counts go to the report.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> canonicalize_edges(
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges, BuildReport& report) {
  report.input_edges += edges.size();
  std::size_t kept = 0;
  for (auto& e : edges) {
    if (e.first == e.second) {
      ++report.self_loops_dropped;
      continue;
    }
    if (e.first > e.second) std::swap(e.first, e.second);
    edges[kept++] = e;
  }
  edges.resize(kept);
  std::sort(edges.begin(), edges.end());
  const auto last = std::unique(edges.begin(), edges.end());
  report.duplicate_edges_dropped += static_cast<std::uint64_t>(edges.end() - last);
  edges.erase(last, edges.end());
  return edges;
}

}  // namespace detail

// Builds a simple graph from labeled edge pairs. Labels are interned in
// first-appearance order, so dense ids are deterministic for a fixed input.
inline Graph build_graph(const std::vector<std::pair<std::string, std::string>>& edges,
                         BuildReport* report = nullptr) {
  if (edges.empty()) throw std::invalid_argument("build_graph: empty edge list");
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::string> labels;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> raw;
  raw.reserve(edges.size());
  auto intern = [&](const std::string& s) {
    auto [it, inserted] = index.try_emplace(s, static_cast<std::uint32_t>(labels.size()));
    if (inserted) labels.push_back(s);
    return it->second;
  };
  for (const auto& [a, b] : edges) {
    const auto ia = intern(a);  // sequenced: first appearance defines the id
    const auto ib = intern(b);
    raw.emplace_back(ia, ib);
  }
  BuildReport local;
  auto canon = detail::canonicalize_edges(std::move(raw), local);
  if (report) *report = local;
  const auto n = static_cast<std::uint32_t>(labels.size());
  return Graph::from_canonical_edges(n, canon, std::move(labels));
}

// Streaming edge-list reader. One edge per line, two whitespace-separated
// tokens; '#' lines and blank lines are ignored. Anything else is an error
// with its line number.
inline Graph read_edge_list(const std::string& path, BuildReport* report = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::string> labels;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> raw;
  auto intern = [&](std::string&& s) {
    auto [it, inserted] = index.try_emplace(std::move(s), static_cast<std::uint32_t>(labels.size()));
    if (inserted) labels.push_back(it->first);
    return it->second;
  };
  std::string line;
  std::uint64_t lineno = 0;
  std::string a, b, extra;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    a.clear();
    b.clear();
    extra.clear();
    ls >> a >> b;
    if (a.empty()) continue;  // whitespace-only line
    if (b.empty() || (ls >> extra, !extra.empty())) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": malformed edge line (expected two tokens)");
    }
    const auto ia = intern(std::move(a));
    const auto ib = intern(std::move(b));
    raw.emplace_back(ia, ib);
  }
  if (raw.empty()) throw std::runtime_error(path + ": no edges found");
  BuildReport local;
  auto canon = detail::canonicalize_edges(std::move(raw), local);
  if (report) *report = local;
  const auto n = static_cast<std::uint32_t>(labels.size());
  return Graph::from_canonical_edges(n, canon, std::move(labels));
}

inline void write_edge_list(const std::string& path, const Graph& g,
                            const std::vector<std::string>& header_lines = {}) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& h : header_lines) out << "# " << h << '\n';
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    for (std::uint32_t v : g.neighbors(u)) {
      if (u < v) out << g.label(u) << ' ' << g.label(v) << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

struct ComponentLabeling {
  std::vector<std::uint32_t> label;  // node -> component id, ids in discovery order
  std::vector<std::uint64_t> sizes;  // component id -> size
  std::uint32_t giant_id = 0;        // largest component; ties go to the smaller id
};

inline ComponentLabeling connected_components(const Graph& g) {
  const std::uint32_t n = g.node_count();
  ComponentLabeling cl;
  cl.label.assign(n, kInvalidNode);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (cl.label[s] != kInvalidNode) continue;
    const auto id = static_cast<std::uint32_t>(cl.sizes.size());
    std::uint64_t size = 0;
    cl.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      ++size;
      for (std::uint32_t w : g.neighbors(v)) {
        if (cl.label[w] == kInvalidNode) {
          cl.label[w] = id;
          stack.push_back(w);
        }
      }
    }
    cl.sizes.push_back(size);
  }
  cl.giant_id = static_cast<std::uint32_t>(
      std::max_element(cl.sizes.begin(), cl.sizes.end()) - cl.sizes.begin());
  return cl;
}

// Induced subgraph on the largest component, reindexed densely in old-id
// order. Labels carry over, so the mapping composes with the original input.
inline Graph giant_component(const Graph& g) {
  const auto cl = connected_components(g);
  const std::uint32_t n = g.node_count();
  std::vector<std::uint32_t> remap(n, kInvalidNode);
  std::vector<std::string> labels;
  labels.reserve(cl.sizes[cl.giant_id]);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (cl.label[v] == cl.giant_id) {
      remap[v] = static_cast<std::uint32_t>(labels.size());
      labels.push_back(g.label(v));
    }
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(g.edge_count());
  for (std::uint32_t u = 0; u < n; ++u) {
    if (remap[u] == kInvalidNode) continue;
    for (std::uint32_t v : g.neighbors(u)) {
      if (u < v && remap[v] != kInvalidNode) edges.emplace_back(remap[u], remap[v]);
    }
  }
  const auto giant_n = static_cast<std::uint32_t>(labels.size());
  return Graph::from_canonical_edges(giant_n, edges, std::move(labels));
}

// Empirical degree distribution q(k) with its first two moments.
class DegreeDistribution {
 public:
  static DegreeDistribution from_graph(const Graph& g) {
    std::vector<double> pmf;
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
      const std::uint32_t k = g.degree(v);
      if (k >= pmf.size()) pmf.resize(k + 1, 0.0);
      pmf[k] += 1.0;
    }
    const double n = g.node_count();
    for (double& p : pmf) p /= n;
    return DegreeDistribution(std::move(pmf), /*validate=*/false);
  }

  // pmf[k] = q(k). Must be non-negative and sum to 1 within 1e-12.
  static DegreeDistribution from_pmf(std::vector<double> pmf) {
    return DegreeDistribution(std::move(pmf), /*validate=*/true);
  }

  double q(std::uint32_t k) const { return k < pmf_.size() ? pmf_[k] : 0.0; }
  const std::vector<double>& pmf() const { return pmf_; }
  std::uint32_t k_min() const { return k_min_; }
  std::uint32_t k_max() const { return k_max_; }
  double mean() const { return mean_; }
  double second_moment() const { return second_; }

 private:
  DegreeDistribution(std::vector<double> pmf, bool validate) : pmf_(std::move(pmf)) {
    if (pmf_.empty()) throw std::invalid_argument("DegreeDistribution: empty pmf");
    double sum = 0.0;
    for (std::size_t k = 0; k < pmf_.size(); ++k) {
      if (pmf_[k] < 0.0) throw std::invalid_argument("DegreeDistribution: negative probability");
      sum += pmf_[k];
      mean_ += static_cast<double>(k) * pmf_[k];
      second_ += static_cast<double>(k) * static_cast<double>(k) * pmf_[k];
    }
    if (validate && std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("DegreeDistribution: pmf does not sum to 1");
    k_min_ = 0;
    while (k_min_ + 1 < pmf_.size() && pmf_[k_min_] == 0.0) ++k_min_;
    k_max_ = static_cast<std::uint32_t>(pmf_.size()) - 1;
    while (k_max_ > 0 && pmf_[k_max_] == 0.0) --k_max_;
  }

  std::vector<double> pmf_;
  std::uint32_t k_min_ = 0;
  std::uint32_t k_max_ = 0;
  double mean_ = 0.0;
  double second_ = 0.0;
};

inline DegreeDistribution degree_distribution(const Graph& g) {
  return DegreeDistribution::from_graph(g);
}

// ktilde = <k^2>/<k> - 1, the expected excess degree of a node reached
// along a random edge.
inline double branching_factor(const DegreeDistribution& dd) {
  if (dd.mean() <= 0.0)
    throw std::invalid_argument("branching_factor: mean degree is zero");
  return dd.second_moment() / dd.mean() - 1.0;
}

}  // namespace netboundary
