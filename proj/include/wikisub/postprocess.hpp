#pragma once
// Embedding-prep transforms: single-shot low-degree node filtering and a
// seeded train/test split over the edge list.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wikisub/dataset.hpp"

namespace wikisub {

enum class DegreeMode : std::uint8_t { incidences, distinct_neighbors };

struct SplitSpec {
  double train_fraction = 0.8;  // must be in (0, 1)
  std::uint64_t seed = 0;
};

struct EmptyInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Identifier written into split manifests; splits are portable across
// implementations that follow the same permutation recipe.
inline constexpr std::string_view kSplitAlgorithmId =
    "fisher-yates/std::mt19937_64/v1";

// Single-shot filter: compute each node's undirected degree over the edge
// list (head and tail occurrences both count; a self-loop counts twice in
// incidences mode), drop nodes below min_degree, keep only edges whose
// both endpoints survive. Not iterated to a fixed point.
inline std::vector<IndexedFact> filter_min_degree(
    const std::vector<IndexedFact>& edges, std::uint64_t min_degree,
    DegreeMode mode = DegreeMode::incidences) {
  if (min_degree == 0) return edges;

  std::unordered_map<std::uint32_t, std::uint64_t> degree;
  if (mode == DegreeMode::incidences) {
    for (const IndexedFact& e : edges) {
      ++degree[e.head];
      ++degree[e.tail];
    }
  } else {
    std::unordered_map<std::uint32_t, std::unordered_set<std::uint32_t>> nbrs;
    for (const IndexedFact& e : edges) {
      nbrs[e.head].insert(e.tail);
      nbrs[e.tail].insert(e.head);
    }
    for (const auto& [node, set] : nbrs) degree[node] = set.size();
  }

  std::vector<IndexedFact> kept;
  for (const IndexedFact& e : edges) {
    auto h = degree.find(e.head);
    auto t = degree.find(e.tail);
    if (h != degree.end() && h->second >= min_degree && t != degree.end() &&
        t->second >= min_degree)
      kept.push_back(e);
  }
  return kept;
}

struct EdgeSplit {
  std::vector<IndexedFact> train;
  std::vector<IndexedFact> test;
};

// Deterministic given the seed: Fisher-Yates over edge positions driven
// by std::mt19937_64, first round(train_fraction * n) positions go to
// train. Both halves are re-sorted into the canonical edge order.
inline EdgeSplit split_edges(const std::vector<IndexedFact>& edges,
                             const SplitSpec& spec) {
  if (edges.empty()) throw EmptyInputError("split_edges: no edges to split");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw std::invalid_argument("train fraction must be in (0, 1)");

  const std::size_t n = edges.size();
  const auto train_size = static_cast<std::size_t>(
      std::llround(spec.train_fraction * static_cast<double>(n)));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = rng() % (i + 1);
    std::swap(order[i], order[j]);
  }

  EdgeSplit split;
  split.train.reserve(train_size);
  split.test.reserve(n - train_size);
  for (std::size_t i = 0; i < n; ++i)
    (i < train_size ? split.train : split.test).push_back(edges[order[i]]);

  auto canonical = [](const IndexedFact& a, const IndexedFact& b) {
    return std::tie(a.head, a.relation, a.tail) <
           std::tie(b.head, b.relation, b.tail);
  };
  std::sort(split.train.begin(), split.train.end(), canonical);
  std::sort(split.test.begin(), split.test.end(), canonical);
  return split;
}

// FNV-1a over raw bytes; used as the input digest in split manifests.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace wikisub
