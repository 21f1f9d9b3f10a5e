#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "netboundary/graph.hpp"
#include "netboundary/random.hpp"

namespace netboundary {

// Shell decomposition of one origin: b[l] is the number of nodes at BFS
// distance exactly l (b[0] = 1), shell_of maps nodes to their shell with
// kInvalidNode for unreached nodes.
struct ShellProfile {
  std::uint32_t origin = 0;
  std::vector<std::uint32_t> b;
  std::vector<std::uint32_t> shell_of;
  std::uint32_t reachable = 0;
};

namespace detail {

// Reusable BFS scratch. Each run clears only the entries the previous run
// touched, so repeated per-origin BFS avoids an O(N) reset.
struct BfsScratch {
  std::vector<std::uint32_t> shell_of;
  std::vector<std::uint32_t> queue;  // visited nodes of the last run, BFS order

  void begin(std::uint32_t n) {
    if (shell_of.size() != n) {
      shell_of.assign(n, kInvalidNode);
      queue.clear();
    } else {
      for (std::uint32_t v : queue) shell_of[v] = kInvalidNode;
      queue.clear();
    }
  }
};

// max_depth 0 means unlimited. Shell counts land in out_b; visited nodes
// stay in scratch.queue with distances in scratch.shell_of until the next
// run begins.
inline void bfs_into(const Graph& g, std::uint32_t origin, std::uint32_t max_depth,
                     BfsScratch& scratch, std::vector<std::uint32_t>& out_b) {
  scratch.begin(g.node_count());
  auto& dist = scratch.shell_of;
  auto& queue = scratch.queue;
  dist[origin] = 0;
  queue.push_back(origin);
  std::size_t head = 0;
  while (head < queue.size()) {
    const std::uint32_t v = queue[head++];
    if (max_depth != 0 && dist[v] >= max_depth) break;  // BFS order: rest are as deep
    const std::uint32_t next = dist[v] + 1;
    for (std::uint32_t w : g.neighbors(v)) {
      if (dist[w] == kInvalidNode) {
        dist[w] = next;
        queue.push_back(w);
      }
    }
  }
  out_b.assign(1, 0);
  for (std::uint32_t v : queue) {
    const std::uint32_t l = dist[v];
    if (l >= out_b.size()) out_b.resize(l + 1, 0);
    ++out_b[l];
  }
}

}  // namespace detail

// Exact BFS shells from one origin. max_depth 0 explores everything;
// otherwise nodes beyond max_depth stay unreached.
inline ShellProfile bfs_shells(const Graph& g, std::uint32_t origin, std::uint32_t max_depth = 0) {
  if (origin >= g.node_count()) throw std::invalid_argument("bfs_shells: origin out of range");
  ShellProfile p;
  p.origin = origin;
  detail::BfsScratch scratch;
  detail::bfs_into(g, origin, max_depth, scratch, p.b);
  p.shell_of = std::move(scratch.shell_of);
  p.reachable = 0;
  for (std::uint32_t c : p.b) p.reachable += c;
  return p;
}

// r[m] = 1 - (sum of b[0..m]) / n: the fraction of the n nodes strictly
// outside shell m, origin included in the removed set.
inline std::vector<double> residual_fractions(const ShellProfile& p, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("residual_fractions: n must be positive");
  std::vector<double> r(p.b.size());
  std::uint64_t cum = 0;
  for (std::size_t m = 0; m < p.b.size(); ++m) {
    cum += p.b[m];
    r[m] = 1.0 - static_cast<double>(cum) / static_cast<double>(n);
  }
  return r;
}

struct MeanDistance {
  double value = 0.0;
  double std_error = 0.0;   // 0 when exact
  bool exact = false;
  std::uint64_t pairs = 0;
};

// Average shortest-path distance. Exact all-pairs up to n = 2000, sampled
// above: sqrt(pair_samples) origins with BFS, sqrt(pair_samples) partners
// each; the standard error comes from the spread of per-origin means,
// which is robust to the pairs sharing origins.
inline MeanDistance mean_distance(const Graph& g, std::uint64_t pair_samples = 100000,
                                  std::uint64_t seed = 0) {
  const std::uint32_t n = g.node_count();
  if (n < 2) throw std::invalid_argument("mean_distance: need at least 2 nodes");
  if (pair_samples < 1) throw std::invalid_argument("mean_distance: pair_samples must be >= 1");
  detail::BfsScratch scratch;
  std::vector<std::uint32_t> b;
  detail::bfs_into(g, 0, 0, scratch, b);
  if (scratch.queue.size() != n)
    throw std::runtime_error(
        "mean_distance: graph is disconnected; extract the giant component first");

  MeanDistance result;
  if (n <= 2000) {
    long double total = 0.0;
    for (std::uint32_t s = 0; s < n; ++s) {
      detail::bfs_into(g, s, 0, scratch, b);
      for (std::uint32_t v : scratch.queue) total += scratch.shell_of[v];
    }
    result.value = static_cast<double>(total / (static_cast<long double>(n) * (n - 1)));
    result.exact = true;
    result.pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    return result;
  }

  const auto origins = static_cast<std::uint32_t>(
      std::max<std::uint64_t>(8, std::llround(std::sqrt(static_cast<double>(pair_samples)))));
  const std::uint64_t partners = (pair_samples + origins - 1) / origins;
  Rng rng(derive_seed(seed, 0x6d64));
  std::vector<double> origin_means;
  origin_means.reserve(origins);
  for (std::uint32_t i = 0; i < origins; ++i) {
    const auto s = static_cast<std::uint32_t>(rng.below(n));
    detail::bfs_into(g, s, 0, scratch, b);
    double sum = 0.0;
    for (std::uint64_t j = 0; j < partners; ++j) {
      auto v = static_cast<std::uint32_t>(rng.below(n));
      while (v == s) v = static_cast<std::uint32_t>(rng.below(n));
      sum += scratch.shell_of[v];
    }
    origin_means.push_back(sum / static_cast<double>(partners));
  }
  double mean = 0.0;
  for (double m : origin_means) mean += m;
  mean /= origins;
  double var = 0.0;
  for (double m : origin_means) var += (m - mean) * (m - mean);
  var /= (origins > 1 ? origins - 1 : 1);
  result.value = mean;
  result.std_error = std::sqrt(var / origins);
  result.pairs = static_cast<std::uint64_t>(origins) * partners;
  return result;
}

struct ShellMoments {
  std::uint64_t members = 0;  // nodes seen in this shell across origins
  double sum_k = 0.0;
  double sum_k2 = 0.0;
};

// Aggregated shell statistics over sampled origins of one graph.
struct ShellEnsemble {
  std::uint32_t node_count = 0;
  double mean_degree = 0.0;
  std::uint32_t origin_count = 0;
  MeanDistance distance;
  std::vector<std::uint32_t> origins;               // sampled origin nodes
  std::vector<std::vector<std::uint32_t>> b_per_origin;
  std::vector<std::vector<std::uint32_t>> samples;  // per shell, B > 0 values over origins
  std::vector<ShellMoments> moments;                // per shell

  std::uint32_t max_shell() const {
    return samples.empty() ? 0 : static_cast<std::uint32_t>(samples.size()) - 1;
  }
  // Mean of B_l over all origins; origins whose BFS ended before l
  // contribute zero.
  double mean_b(std::uint32_t shell) const {
    if (shell >= samples.size()) return 0.0;
    double sum = 0.0;
    for (std::uint32_t v : samples[shell]) sum += v;
    return sum / origin_count;
  }
};

struct EnsembleOptions {
  std::uint32_t max_depth = 0;         // 0 = full BFS
  unsigned threads = 0;                // 0 = hardware concurrency
  bool compute_mean_distance = true;
  std::uint64_t distance_pairs = 100000;
};

// Profiles `origins` distinct origins (uniform, without replacement) and
// aggregates shell sizes and per-shell degree moments. Work is split
// across threads; every per-origin quantity is deterministic and the
// reduction runs in origin order, so results do not depend on the thread
// count.
inline ShellEnsemble shell_ensemble(const Graph& g, std::uint32_t origins, std::uint64_t seed,
                                    const EnsembleOptions& opt = {}) {
  const std::uint32_t n = g.node_count();
  if (origins < 1) throw std::invalid_argument("shell_ensemble: need at least one origin");
  if (origins > n) throw std::invalid_argument("shell_ensemble: more origins than nodes");
  {
    detail::BfsScratch probe;
    std::vector<std::uint32_t> b;
    detail::bfs_into(g, 0, 0, probe, b);
    if (probe.queue.size() != n)
      throw std::runtime_error("shell_ensemble: graph must be connected (use giant_component)");
  }

  ShellEnsemble e;
  e.node_count = n;
  e.mean_degree = g.mean_degree();
  e.origin_count = origins;
  Rng pick(derive_seed(seed, 0x0a11));
  e.origins = pick.sample_without_replacement(n, origins);
  e.b_per_origin.resize(origins);

  // Per-origin degree-moment rows, reduced in origin order afterwards.
  std::vector<std::vector<ShellMoments>> rows(origins);

  unsigned workers = opt.threads ? opt.threads : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, origins);
  auto run_chunk = [&](std::uint32_t begin, std::uint32_t end) {
    detail::BfsScratch scratch;
    for (std::uint32_t i = begin; i < end; ++i) {
      auto& b = e.b_per_origin[i];
      detail::bfs_into(g, e.origins[i], opt.max_depth, scratch, b);
      auto& row = rows[i];
      row.resize(b.size());
      for (std::uint32_t v : scratch.queue) {
        auto& m = row[scratch.shell_of[v]];
        const double k = g.degree(v);
        ++m.members;
        m.sum_k += k;
        m.sum_k2 += k * k;
      }
    }
  };
  if (workers <= 1) {
    run_chunk(0, origins);
  } else {
    std::vector<std::thread> pool;
    const std::uint32_t chunk = (origins + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint32_t begin = w * chunk;
      const std::uint32_t end = std::min<std::uint32_t>(origins, begin + chunk);
      if (begin < end) pool.emplace_back(run_chunk, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  std::size_t max_shells = 0;
  for (const auto& b : e.b_per_origin) max_shells = std::max(max_shells, b.size());
  e.samples.resize(max_shells);
  e.moments.resize(max_shells);
  for (std::uint32_t i = 0; i < origins; ++i) {
    const auto& b = e.b_per_origin[i];
    for (std::size_t l = 0; l < b.size(); ++l) {
      if (b[l] > 0) e.samples[l].push_back(b[l]);
      e.moments[l].members += rows[i][l].members;
      e.moments[l].sum_k += rows[i][l].sum_k;
      e.moments[l].sum_k2 += rows[i][l].sum_k2;
    }
  }

  if (opt.compute_mean_distance)
    e.distance = mean_distance(g, opt.distance_pairs, derive_seed(seed, 0xd157));
  return e;
}

struct ShellBranching {
  std::uint32_t shell = 0;
  double ktilde = 0.0;     // <k_l^2>/<k_l> - 1 over member nodes
  std::uint64_t members = 0;
};

// Per-shell branching factor; shells with no members are omitted.
inline std::vector<ShellBranching> shell_branching(const ShellEnsemble& e) {
  std::vector<ShellBranching> out;
  for (std::uint32_t l = 0; l < e.moments.size(); ++l) {
    const auto& m = e.moments[l];
    if (m.members == 0 || m.sum_k <= 0.0) continue;
    out.push_back({l, m.sum_k2 / m.sum_k - 1.0, m.members});
  }
  return out;
}

}  // namespace netboundary
