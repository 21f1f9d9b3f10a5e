#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "netboundary/generators.hpp"
#include "netboundary/gf.hpp"
#include "netboundary/graph.hpp"
#include "netboundary/random.hpp"

namespace nb = netboundary;

namespace {

nb::Graph path_graph(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return nb::Graph::from_canonical_edges(n, edges);
}

}  // namespace

TEST(BuildGraph, PathFromLabels) {
  const auto g = nb::build_graph({{"a", "b"}, {"b", "c"}});
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.degree(0), 1u);  // "a"
  EXPECT_EQ(g.degree(1), 2u);  // "b"
  EXPECT_EQ(g.degree(2), 1u);  // "c"
  EXPECT_EQ(g.label(0), "a");
  EXPECT_EQ(g.label(2), "c");
}

TEST(BuildGraph, DropsDuplicatesAndSelfLoops) {
  nb::BuildReport report;
  const auto g = nb::build_graph({{"0", "1"}, {"1", "0"}, {"2", "2"}}, &report);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(report.duplicate_edges_dropped, 1u);
  EXPECT_EQ(report.self_loops_dropped, 1u);
  EXPECT_EQ(g.degree(2), 0u);  // isolated node kept
}

TEST(BuildGraph, EmptyInputIsAnError) {
  EXPECT_THROW(nb::build_graph({}), std::invalid_argument);
}

TEST(BuildGraph, AdjacencyIsSymmetric) {
  const auto g = nb::generate_er(500, 4.0, 7);
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    for (std::uint32_t v : g.neighbors(u)) {
      EXPECT_NE(u, v);
      EXPECT_TRUE(g.has_edge(v, u));
    }
  }
  std::uint64_t degree_sum = 0;
  for (std::uint32_t u = 0; u < g.node_count(); ++u) degree_sum += g.degree(u);
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
}

TEST(EdgeListIo, RoundTripWithCommentsAndErrors) {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "nb_graph_io_test";
  fs::create_directories(dir);
  const auto path = (dir / "g.edges").string();
  {
    std::ofstream out(path);
    out << "# header line\n\na b\nb c\n";
  }
  const auto g = nb::read_edge_list(path);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);

  const auto bad = (dir / "bad.edges").string();
  {
    std::ofstream out(bad);
    out << "a b\nc\n";
  }
  try {
    nb::read_edge_list(bad);
    FAIL() << "expected malformed-line error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(nb::read_edge_list((dir / "missing.edges").string()), std::runtime_error);

  const auto copy = (dir / "copy.edges").string();
  nb::write_edge_list(copy, g, {"written by test"});
  const auto g2 = nb::read_edge_list(copy);
  EXPECT_EQ(g2.node_count(), g.node_count());
  EXPECT_EQ(g2.edge_count(), g.edge_count());
  fs::remove_all(dir);
}

TEST(Components, PathAndDisjointEdges) {
  const auto cl1 = nb::connected_components(path_graph(3));
  EXPECT_EQ(cl1.sizes.size(), 1u);
  EXPECT_EQ(cl1.sizes[0], 3u);

  const auto g = nb::build_graph({{"0", "1"}, {"2", "3"}});
  const auto cl2 = nb::connected_components(g);
  ASSERT_EQ(cl2.sizes.size(), 2u);
  EXPECT_EQ(cl2.sizes[0], 2u);
  EXPECT_EQ(cl2.sizes[1], 2u);
  EXPECT_EQ(cl2.giant_id, 0u);  // size tie -> smaller id
  std::uint64_t total = 0;
  for (auto s : cl2.sizes) total += s;
  EXPECT_EQ(total, g.node_count());
}

TEST(Components, GiantComponentTieAndComposition) {
  const auto g = nb::build_graph({{"x", "y"}, {"p", "q"}});
  const auto giant = nb::giant_component(g);
  EXPECT_EQ(giant.node_count(), 2u);
  EXPECT_EQ(giant.label(0), "x");  // tie broken toward the first component
  EXPECT_EQ(giant.label(1), "y");

  const auto h = nb::build_graph({{"a", "b"}, {"b", "c"}, {"z", "z"}});
  const auto gh = nb::giant_component(h);
  EXPECT_EQ(gh.node_count(), 3u);
}

TEST(Components, SubcriticalErHasNoGiant) {
  const auto g = nb::generate_er(10000, 0.5, 11);
  const auto cl = nb::connected_components(g);
  EXPECT_LT(cl.sizes[cl.giant_id], g.node_count() / 20);
}

TEST(Components, GiantFractionMatchesGfPrediction) {
  const auto g = nb::generate_er(10000, 6.0, 13);
  const auto cl = nb::connected_components(g);
  const double frac = static_cast<double>(cl.sizes[cl.giant_id]) / g.node_count();
  const auto model = nb::GFModel::poisson(6.0);
  const double r_inf = model.g0(nb::fixed_point_f_inf(model).f_inf);
  EXPECT_NEAR(frac, 1.0 - r_inf, 0.01);
}

TEST(DegreeDistribution, PathAndRegular) {
  const auto dd = nb::degree_distribution(path_graph(3));
  EXPECT_DOUBLE_EQ(dd.q(1), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(dd.q(2), 1.0 / 3.0);
  EXPECT_EQ(dd.k_min(), 1u);
  EXPECT_EQ(dd.k_max(), 2u);

  // small 3-regular graph: K4
  const auto k4 = nb::build_graph(
      {{"0", "1"}, {"0", "2"}, {"0", "3"}, {"1", "2"}, {"1", "3"}, {"2", "3"}});
  const auto dd4 = nb::degree_distribution(k4);
  EXPECT_DOUBLE_EQ(dd4.q(3), 1.0);
  EXPECT_DOUBLE_EQ(nb::branching_factor(dd4), 2.0);
}

TEST(DegreeDistribution, RoundTripMassAndEdges) {
  const auto g = nb::generate_er(2000, 5.0, 3);
  const auto dd = nb::degree_distribution(g);
  double mass = 0.0, mean = 0.0;
  for (std::uint32_t k = 0; k <= dd.k_max(); ++k) {
    mass += dd.q(k);
    mean += k * dd.q(k);
  }
  EXPECT_NEAR(mass, 1.0, 1e-12);
  EXPECT_NEAR(mean * g.node_count(), 2.0 * g.edge_count(), 1e-6);
}

TEST(BranchingFactor, HandComputedCases) {
  const auto dd = nb::DegreeDistribution::from_pmf({0.0, 0.5, 0.0, 0.5});
  // <k> = 2, <k^2> = 5
  EXPECT_DOUBLE_EQ(nb::branching_factor(dd), 1.5);
  EXPECT_THROW(nb::branching_factor(nb::DegreeDistribution::from_pmf({1.0})),
               std::invalid_argument);
}

TEST(BranchingFactor, PoissonIdentityOnEr) {
  // Poisson(6): <k^2> = <k>^2 + <k>, so ktilde = <k>.
  const auto g = nb::generate_er(100000, 6.0, 17);
  EXPECT_NEAR(nb::branching_factor(nb::degree_distribution(g)), 6.0, 0.1);
}

TEST(BranchingFactor, InvariantUnderRelabeling) {
  const auto g = nb::generate_er(300, 4.0, 5);
  std::vector<std::uint32_t> perm(g.node_count());
  for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
  nb::Rng rng(99);
  rng.shuffle(perm);
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::uint32_t u = 0; u < g.node_count(); ++u)
    for (std::uint32_t v : g.neighbors(u))
      if (u < v) edges.emplace_back(std::to_string(perm[u]), std::to_string(perm[v]));
  const auto h = nb::build_graph(edges);
  EXPECT_NEAR(nb::branching_factor(nb::degree_distribution(g)),
              nb::branching_factor(nb::degree_distribution(h)), 1e-12);
}
