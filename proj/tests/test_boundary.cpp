#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "netboundary/boundary.hpp"
#include "netboundary/generators.hpp"
#include "netboundary/graph.hpp"
#include "netboundary/shells.hpp"

namespace nb = netboundary;

namespace {

nb::Graph path_graph(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return nb::Graph::from_canonical_edges(n, edges);
}

nb::Graph star_graph(std::uint32_t leaves) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return nb::Graph::from_canonical_edges(leaves + 1, edges);
}

// Independent oracle: keep nodes with shell >= cut by brute force, find
// clusters by repeated sweeps over the full edge set, and measure
// distances by Floyd-Warshall on the induced subgraph.
struct NaiveCluster {
  std::set<std::uint32_t> members;
  double mean_distance = 0.0;
};

std::vector<NaiveCluster> naive_boundary_clusters(const nb::Graph& g, const nb::ShellProfile& p,
                                                  std::uint32_t cut) {
  const std::uint32_t n = g.node_count();
  std::vector<std::uint32_t> kept;
  for (std::uint32_t v = 0; v < n; ++v)
    if (p.shell_of[v] != nb::kInvalidNode && p.shell_of[v] >= cut) kept.push_back(v);

  constexpr double kInf = 1e18;
  std::vector<std::vector<double>> dist(kept.size(), std::vector<double>(kept.size(), kInf));
  for (std::size_t i = 0; i < kept.size(); ++i) dist[i][i] = 0.0;
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (i != j && g.has_edge(kept[i], kept[j])) dist[i][j] = 1.0;
  for (std::size_t k = 0; k < kept.size(); ++k)
    for (std::size_t i = 0; i < kept.size(); ++i)
      for (std::size_t j = 0; j < kept.size(); ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);

  std::vector<bool> assigned(kept.size(), false);
  std::vector<NaiveCluster> clusters;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (assigned[i]) continue;
    NaiveCluster c;
    double sum = 0.0;
    std::uint64_t pairs = 0;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (dist[i][j] < kInf) {
        c.members.insert(kept[j]);
        assigned[j] = true;
      }
    }
    std::vector<std::uint32_t> ms(c.members.begin(), c.members.end());
    for (std::size_t a = 0; a < ms.size(); ++a)
      for (std::size_t b = a + 1; b < ms.size(); ++b) {
        std::size_t ia = 0, ib = 0;
        for (std::size_t t = 0; t < kept.size(); ++t) {
          if (kept[t] == ms[a]) ia = t;
          if (kept[t] == ms[b]) ib = t;
        }
        sum += dist[ia][ib];
        ++pairs;
      }
    c.mean_distance = pairs ? sum / pairs : 0.0;
    clusters.push_back(std::move(c));
  }
  return clusters;
}

}  // namespace

TEST(BoundaryClusters, PathCutTwo) {
  const auto g = path_graph(5);
  const auto p = nb::bfs_shells(g, 0);
  const auto set = nb::boundary_clusters(g, p, 2, {.keep_members = true});
  ASSERT_EQ(set.clusters.size(), 1u);
  EXPECT_EQ(set.clusters[0].size, 3u);
  EXPECT_EQ(set.clusters[0].members, (std::vector<std::uint32_t>{2, 3, 4}));
  EXPECT_TRUE(set.clusters[0].largest);
  EXPECT_EQ(set.boundary_node_count, 3u);
  EXPECT_DOUBLE_EQ(set.clusters[0].internal_mean_distance, 4.0 / 3.0);
}

TEST(BoundaryClusters, StarLeavesBecomeSingletons) {
  const auto g = star_graph(9);
  const auto p = nb::bfs_shells(g, 0);
  const auto set = nb::boundary_clusters(g, p, 1);
  EXPECT_EQ(set.clusters.size(), 9u);
  for (const auto& c : set.clusters) EXPECT_EQ(c.size, 1u);
  const auto hist = nb::cluster_size_histogram(std::vector<nb::BoundaryClusterSet>{set});
  EXPECT_EQ(hist.at(1), 9u);
}

TEST(BoundaryClusters, CutBeyondMaxShellIsEmpty) {
  const auto g = path_graph(4);
  const auto p = nb::bfs_shells(g, 0);
  const auto set = nb::boundary_clusters(g, p, 10);
  EXPECT_TRUE(set.clusters.empty());
  EXPECT_EQ(set.boundary_node_count, 0u);
}

TEST(BoundaryClusters, AgreesWithNaiveOracleOnSmallGraphs) {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    const auto g = nb::giant_component(nb::generate_er(50, 2.5, seed));
    const auto p = nb::bfs_shells(g, 0);
    for (std::uint32_t cut = 1; cut <= 4; ++cut) {
      const auto set = nb::boundary_clusters(g, p, cut, {.keep_members = true});
      const auto naive = naive_boundary_clusters(g, p, cut);
      ASSERT_EQ(set.clusters.size(), naive.size()) << "seed " << seed << " cut " << cut;
      // match cluster member sets and distances
      for (const auto& c : set.clusters) {
        const std::set<std::uint32_t> members(c.members.begin(), c.members.end());
        bool found = false;
        for (const auto& nc : naive) {
          if (nc.members == members) {
            EXPECT_NEAR(c.internal_mean_distance, nc.mean_distance, 1e-12);
            found = true;
            break;
          }
        }
        EXPECT_TRUE(found) << "seed " << seed << " cut " << cut;
      }
    }
  }
}

TEST(BoundaryClusters, MassConservationAndSingletonRule) {
  const auto g = nb::giant_component(nb::generate_er(3000, 6.0, 17));
  const auto p = nb::bfs_shells(g, 3);
  const std::uint32_t cut = 4;
  const auto set = nb::boundary_clusters(g, p, cut, {.keep_members = true});

  std::uint64_t kept = 0, mass = 0;
  for (std::uint32_t v = 0; v < g.node_count(); ++v)
    if (p.shell_of[v] != nb::kInvalidNode && p.shell_of[v] >= cut) ++kept;
  const auto hist = nb::cluster_size_histogram(std::vector<nb::BoundaryClusterSet>{set});
  for (const auto& [s, count] : hist) mass += s * count;
  EXPECT_EQ(mass, kept);
  EXPECT_EQ(set.boundary_node_count, kept);

  // n(1) counts exactly the kept nodes whose neighbors all lie inside
  std::uint64_t isolated = 0;
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    if (p.shell_of[v] == nb::kInvalidNode || p.shell_of[v] < cut) continue;
    bool has_kept_neighbor = false;
    for (std::uint32_t w : g.neighbors(v))
      if (p.shell_of[w] != nb::kInvalidNode && p.shell_of[w] >= cut) has_kept_neighbor = true;
    if (!has_kept_neighbor) ++isolated;
  }
  const auto it = hist.find(1);
  EXPECT_EQ(it == hist.end() ? 0 : it->second, isolated);

  // no edge joins two different clusters
  std::vector<std::uint32_t> cluster_of(g.node_count(), nb::kInvalidNode);
  for (std::uint32_t c = 0; c < set.clusters.size(); ++c)
    for (std::uint32_t v : set.clusters[c].members) cluster_of[v] = c;
  for (std::uint32_t u = 0; u < g.node_count(); ++u)
    for (std::uint32_t v : g.neighbors(u))
      if (cluster_of[u] != nb::kInvalidNode && cluster_of[v] != nb::kInvalidNode)
        EXPECT_EQ(cluster_of[u], cluster_of[v]);
}

TEST(ClusterMeanDistance, TrivialCasesAndErrors) {
  const auto g = path_graph(5);
  EXPECT_DOUBLE_EQ(nb::cluster_mean_distance(g, std::vector<std::uint32_t>{2}), 0.0);
  EXPECT_DOUBLE_EQ(nb::cluster_mean_distance(g, std::vector<std::uint32_t>{2, 3}), 1.0);
  EXPECT_DOUBLE_EQ(nb::cluster_mean_distance(g, std::vector<std::uint32_t>{0, 1, 2}), 4.0 / 3.0);
  // {0, 2} is disconnected once node 1 is excluded
  EXPECT_THROW(nb::cluster_mean_distance(g, std::vector<std::uint32_t>{0, 2}), std::runtime_error);
}

TEST(SizeVsDistance, PairClusterAndLargestFlag) {
  const auto g = path_graph(5);
  const auto p = nb::bfs_shells(g, 0);
  const auto set = nb::boundary_clusters(g, p, 2);
  const auto pts = nb::size_vs_distance(std::vector<nb::BoundaryClusterSet>{set});
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].size, 3u);
  EXPECT_TRUE(pts[0].largest);

  // two-node cluster reports (2, 1)
  const auto g2 = path_graph(4);
  const auto p2 = nb::bfs_shells(g2, 0);
  const auto set2 = nb::boundary_clusters(g2, p2, 2);
  const auto pts2 = nb::size_vs_distance(std::vector<nb::BoundaryClusterSet>{set2});
  ASSERT_EQ(pts2.size(), 1u);
  EXPECT_EQ(pts2[0].size, 2u);
  EXPECT_DOUBLE_EQ(pts2[0].internal_mean_distance, 1.0);
}

TEST(ClusterSizeHistogram, AggregatesAcrossSets) {
  const auto g = path_graph(5);
  const auto p = nb::bfs_shells(g, 0);
  const auto set = nb::boundary_clusters(g, p, 2);  // one cluster of size 3
  const auto hist = nb::cluster_size_histogram(std::vector<nb::BoundaryClusterSet>{set, set});
  EXPECT_EQ(hist.at(3), 2u);
  EXPECT_THROW(nb::cluster_size_histogram(std::vector<nb::BoundaryClusterSet>{}),
               std::invalid_argument);
}
