#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "netboundary/graph.hpp"
#include "netboundary/random.hpp"
#include "netboundary/shells.hpp"

namespace netboundary {

struct BoundaryCluster {
  std::vector<std::uint32_t> members;  // node ids of the parent graph
  std::uint32_t size = 0;
  double internal_mean_distance = 0.0;  // over pairs, within the cluster only
  bool largest = false;
};

// Clusters left after removing every node with shell index < cut. Nodes
// the profile never reached are not part of any cluster.
struct BoundaryClusterSet {
  std::uint32_t origin = 0;
  std::uint32_t shell_cut = 0;
  std::uint64_t boundary_node_count = 0;  // nodes with shell >= cut
  std::vector<BoundaryCluster> clusters;
};

struct BoundaryOptions {
  // Clusters up to this size get exact all-pairs internal distances; the
  // flagged largest cluster falls back to sampled BFS sources above it.
  std::uint32_t exact_distance_limit = 2000;
  std::uint32_t sampled_sources = 64;
  std::uint64_t seed = 0;
  bool keep_members = false;
  bool compute_distances = true;
};

namespace detail {

// Mean pairwise distance inside one cluster of the induced subgraph,
// BFS restricted to `local` adjacency. Sources may be a subset for the
// sampled estimate. `dist` is caller-owned scratch, all-kInvalidNode on
// entry and restored on exit, so many clusters can share one buffer.
inline double cluster_distance_mean(const std::vector<std::vector<std::uint32_t>>& local_adj,
                                    std::span<const std::uint32_t> cluster,
                                    std::span<const std::uint32_t> sources,
                                    std::vector<std::uint32_t>& dist) {
  dist.resize(local_adj.size(), kInvalidNode);
  std::vector<std::uint32_t> queue;
  queue.reserve(cluster.size());
  long double total = 0.0;
  std::uint64_t pairs = 0;
  for (std::uint32_t s : sources) {
    queue.clear();
    dist[s] = 0;
    queue.push_back(s);
    std::size_t head = 0;
    while (head < queue.size()) {
      const std::uint32_t v = queue[head++];
      for (std::uint32_t w : local_adj[v]) {
        if (dist[w] == kInvalidNode) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    if (queue.size() != cluster.size())
      throw std::runtime_error("cluster distance: member set is not connected");
    for (std::uint32_t v : queue) {
      if (v != s) {
        total += dist[v];
        ++pairs;
      }
    }
    for (std::uint32_t v : queue) dist[v] = kInvalidNode;
  }
  return pairs == 0 ? 0.0 : static_cast<double>(total / pairs);
}

}  // namespace detail

// Keeps exactly the reached nodes with shell_of >= cut and splits them
// into connected components of the induced subgraph. A cut beyond the
// deepest shell yields an empty set.
inline BoundaryClusterSet boundary_clusters(const Graph& g, const ShellProfile& p,
                                            std::uint32_t cut,
                                            const BoundaryOptions& opt = {}) {
  if (cut < 1) throw std::invalid_argument("boundary_clusters: cut must be >= 1");
  if (p.shell_of.size() != g.node_count())
    throw std::invalid_argument("boundary_clusters: profile does not match graph");
  const std::uint32_t n = g.node_count();

  BoundaryClusterSet set;
  set.origin = p.origin;
  set.shell_cut = cut;

  std::vector<std::uint32_t> kept;  // parent-graph ids, ascending
  std::vector<std::uint32_t> local_id(n, kInvalidNode);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (p.shell_of[v] != kInvalidNode && p.shell_of[v] >= cut) {
      local_id[v] = static_cast<std::uint32_t>(kept.size());
      kept.push_back(v);
    }
  }
  set.boundary_node_count = kept.size();
  if (kept.empty()) return set;

  std::vector<std::vector<std::uint32_t>> local_adj(kept.size());
  for (std::uint32_t v : kept) {
    for (std::uint32_t w : g.neighbors(v)) {
      if (local_id[w] != kInvalidNode) local_adj[local_id[v]].push_back(local_id[w]);
    }
  }

  // Components of the induced subgraph by BFS over local ids.
  std::vector<std::uint32_t> comp(kept.size(), kInvalidNode);
  std::vector<std::vector<std::uint32_t>> comp_members;  // local ids
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < kept.size(); ++s) {
    if (comp[s] != kInvalidNode) continue;
    const auto id = static_cast<std::uint32_t>(comp_members.size());
    comp_members.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      comp_members[id].push_back(v);
      for (std::uint32_t w : local_adj[v]) {
        if (comp[w] == kInvalidNode) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
  }

  std::size_t largest_idx = 0;
  for (std::size_t c = 1; c < comp_members.size(); ++c) {
    if (comp_members[c].size() > comp_members[largest_idx].size()) largest_idx = c;
  }

  Rng rng(derive_seed(opt.seed, p.origin));
  std::vector<std::uint32_t> dist_scratch(kept.size(), kInvalidNode);
  set.clusters.reserve(comp_members.size());
  for (std::size_t c = 0; c < comp_members.size(); ++c) {
    auto& locals = comp_members[c];
    std::sort(locals.begin(), locals.end());
    BoundaryCluster cl;
    cl.size = static_cast<std::uint32_t>(locals.size());
    cl.largest = (c == largest_idx);
    if (opt.compute_distances && locals.size() >= 2) {
      if (locals.size() <= opt.exact_distance_limit) {
        cl.internal_mean_distance =
            detail::cluster_distance_mean(local_adj, locals, locals, dist_scratch);
      } else {
        auto picks = rng.sample_without_replacement(
            static_cast<std::uint32_t>(locals.size()),
            std::min<std::uint32_t>(opt.sampled_sources, static_cast<std::uint32_t>(locals.size())));
        std::vector<std::uint32_t> sources;
        sources.reserve(picks.size());
        for (std::uint32_t idx : picks) sources.push_back(locals[idx]);
        cl.internal_mean_distance =
            detail::cluster_distance_mean(local_adj, locals, sources, dist_scratch);
      }
    }
    if (opt.keep_members) {
      cl.members.reserve(locals.size());
      for (std::uint32_t l : locals) cl.members.push_back(kept[l]);
    }
    set.clusters.push_back(std::move(cl));
  }
  return set;
}

// Exact mean pairwise distance of a connected member set, BFS confined to
// the members. Singleton sets have distance 0 by convention.
inline double cluster_mean_distance(const Graph& g, std::span<const std::uint32_t> members) {
  if (members.empty()) throw std::invalid_argument("cluster_mean_distance: empty member set");
  if (members.size() == 1) return 0.0;
  std::vector<std::uint32_t> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<std::uint32_t>> local_adj(sorted.size());
  auto local_of = [&](std::uint32_t v) -> std::uint32_t {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) return kInvalidNode;
    return static_cast<std::uint32_t>(it - sorted.begin());
  };
  for (std::uint32_t i = 0; i < sorted.size(); ++i) {
    for (std::uint32_t w : g.neighbors(sorted[i])) {
      const std::uint32_t lw = local_of(w);
      if (lw != kInvalidNode) local_adj[i].push_back(lw);
    }
  }
  std::vector<std::uint32_t> all(sorted.size());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::uint32_t> dist(sorted.size(), kInvalidNode);
  return detail::cluster_distance_mean(local_adj, all, all, dist);
}

struct SizeDistancePoint {
  std::uint32_t size = 0;
  double internal_mean_distance = 0.0;
  bool largest = false;  // largest cluster of its origin's set
};

// (s, d_internal) pairs for clusters of size >= 2, with the per-origin
// largest clusters flagged so fractal fits can drop them.
inline std::vector<SizeDistancePoint> size_vs_distance(
    std::span<const BoundaryClusterSet> sets) {
  std::vector<SizeDistancePoint> out;
  for (const auto& set : sets) {
    for (const auto& cl : set.clusters) {
      if (cl.size >= 2) out.push_back({cl.size, cl.internal_mean_distance, cl.largest});
    }
  }
  return out;
}

// n(s): number of clusters of size s, aggregated over the given sets.
inline std::map<std::uint64_t, std::uint64_t> cluster_size_histogram(
    std::span<const BoundaryClusterSet> sets) {
  if (sets.empty()) throw std::invalid_argument("cluster_size_histogram: no cluster sets");
  std::map<std::uint64_t, std::uint64_t> hist;
  for (const auto& set : sets)
    for (const auto& cl : set.clusters) ++hist[cl.size];
  return hist;
}

}  // namespace netboundary
