#include "convexforest/generators.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

namespace convexforest {

std::vector<std::string> DefaultLabels(int n) {
  std::vector<std::string> labels;
  const int width = n < 100 ? 2 : static_cast<int>(std::to_string(n).size());
  for (int i = 0; i < n; ++i) {
    if (n <= 26) {
      labels.emplace_back(1, static_cast<char>('a' + i));
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "t%0*d", width, i + 1);
      labels.emplace_back(buf);
    }
  }
  return labels;
}

PhyloTree RandomTree(int n, std::uint64_t seed) {
  if (n < 2) throw DomainError("random tree needs at least 2 taxa");
  std::mt19937_64 rng(seed);
  std::vector<std::string> labels = DefaultLabels(n);
  std::shuffle(labels.begin(), labels.end(), rng);
  std::vector<std::string> node_labels;
  std::vector<Edge> edges;
  if (n == 2) {
    return PhyloTree({labels[0], labels[1]}, {{0, 1}});
  }
  node_labels = {"", labels[0], labels[1], labels[2]};
  edges = {{0, 1}, {0, 2}, {0, 3}};
  for (int i = 3; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    const std::size_t e = pick(rng);
    const NodeId mid = static_cast<NodeId>(node_labels.size());
    const NodeId leaf = mid + 1;
    node_labels.emplace_back();
    node_labels.push_back(labels[i]);
    const NodeId v = edges[e].v;
    edges[e].v = mid;
    edges.push_back({mid, v});
    edges.push_back({mid, leaf});
  }
  return PhyloTree(std::move(node_labels), std::move(edges));
}

PhyloTree RandomRootedTree(int n, std::uint64_t seed) {
  PhyloTree tree = RandomTree(n, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> pick(0, tree.edge_count() - 1);
  return RootBySubdivision(tree, pick(rng));
}

PhyloTree Caterpillar(int n) {
  if (n < 2) throw DomainError("caterpillar needs at least 2 taxa");
  const std::vector<std::string> labels = DefaultLabels(n);
  std::string text = labels[0];
  for (int i = 1; i < n; ++i) text = "(" + text + "," + labels[i] + ")";
  return ParseNewick(text + ";", NewickMode::kUnrooted);
}

CoreTree RandomDegree3Tree(int nodes, std::uint64_t seed) {
  if (nodes < 1) throw DomainError("tree needs at least one node");
  std::mt19937_64 rng(seed);
  std::vector<int> degree(nodes, 0);
  std::vector<Edge> edges;
  std::vector<NodeId> open{0};
  for (NodeId v = 1; v < nodes; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    const std::size_t i = pick(rng);
    const NodeId u = open[i];
    edges.push_back({u, v});
    if (++degree[u] == 3) {
      open[i] = open.back();
      open.pop_back();
    }
    ++degree[v];
    open.push_back(v);
  }
  return CoreTree(nodes, std::move(edges));
}

CoreTree CombTree(int k) {
  if (k < 1) throw DomainError("comb needs at least one tooth");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1});
  for (int i = 0; i < k; ++i) {
    edges.push_back({i, k + 2 * i});
    edges.push_back({k + 2 * i, k + 2 * i + 1});
  }
  return CoreTree(3 * k, std::move(edges));
}

namespace {

// Appends the piece to `edges` hanging off `old_root`; node ids start at
// `next`. Returns the new root.
NodeId AppendPiece(std::vector<Edge>& edges, NodeId old_root, NodeId& next) {
  auto fresh = [&] { return next++; };
  NodeId shaft[6];  // s8, s7, s6, s5, s4, s3
  for (NodeId& s : shaft) s = fresh();
  edges.push_back({old_root, shaft[0]});
  for (int i = 0; i + 1 < 6; ++i) edges.push_back({shaft[i], shaft[i + 1]});
  auto tooth = [&](NodeId v) {
    NodeId a = fresh(), b = fresh();
    edges.push_back({v, a});
    edges.push_back({a, b});
  };
  // v - y1 - y2, y2 forking into two 2-node paths.
  auto y_tooth = [&](NodeId v) {
    NodeId y1 = fresh(), y2 = fresh();
    edges.push_back({v, y1});
    edges.push_back({y1, y2});
    tooth(y2);
    tooth(y2);
  };
  tooth(shaft[0]);
  tooth(shaft[1]);
  y_tooth(shaft[3]);
  y_tooth(shaft[4]);
  return shaft[5];
}

}  // namespace

LowerBoundTree MakeLowerBoundTree(int k) {
  if (k < 0) throw DomainError("repetition count must be nonnegative");
  std::vector<Edge> edges;
  NodeId next = 1;
  NodeId root = 0;
  for (int i = 0; i < k; ++i) root = AppendPiece(edges, root, next);
  return {CoreTree(next, std::move(edges)), root};
}

LowerBoundPiece MakeLowerBoundPiece() {
  std::vector<Edge> edges;
  NodeId next = 1;
  NodeId root = AppendPiece(edges, 0, next);
  return {CoreTree(next, std::move(edges)), 0, root};
}

Family ParseFamily(const std::string& name) {
  if (name == "random") return Family::kRandom;
  if (name == "random-rooted") return Family::kRandomRooted;
  if (name == "caterpillar") return Family::kCaterpillar;
  if (name == "comb") return Family::kComb;
  if (name == "degree3") return Family::kDegree3;
  if (name == "lower-bound") return Family::kLowerBound;
  throw DomainError("unknown tree family '" + name + "'");
}

Generated Generate(Family family, int size, std::uint64_t seed) {
  switch (family) {
    case Family::kRandom: return RandomTree(size, seed);
    case Family::kRandomRooted: return RandomRootedTree(size, seed);
    case Family::kCaterpillar: return Caterpillar(size);
    case Family::kComb: return CombTree(size);
    case Family::kDegree3: return RandomDegree3Tree(size, seed);
    case Family::kLowerBound: return MakeLowerBoundTree(size).tree;
  }
  throw DomainError("unknown tree family");
}

}  // namespace convexforest
