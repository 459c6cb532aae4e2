#pragma once

#include <cassert>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mcplan/policy.hpp"

namespace mcplan {

// Forecaster identity: (state, depth d), so steps-to-go is horizon - d.
struct NodeKey {
  StateId state;
  int depth;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    return static_cast<std::size_t>(
        hash_combine(k.state, static_cast<std::uint64_t>(k.depth)));
  }
};

// Per-action visit count and running mean return.
struct ActionStats {
  std::uint64_t n = 0;
  double q = 0.0;

  bool visited() const { return n > 0; }

  void add(double r) {
    n += 1;
    q += (r - q) / static_cast<double>(n);
  }
};

// Per-policy statistics of a candidate node's pool: running mean and sample
// variance of the observed returns (variance is 0 while n <= 1).
struct PolicyStats {
  LazyPolicy policy;
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations
  bool active = true;

  explicit PolicyStats(LazyPolicy p) : policy(std::move(p)) {}

  double variance() const {
    return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  }
};

// One reward observation; Welford update, equivalent to
// Var <- (Var*(n-2) + delta*(r - mean_new)) / (n-1).
void update_policy_stats(PolicyStats& ps, double r);

enum class NodeType { Candidate, Internal };

struct SearchNode {
  NodeKey key;
  NodeType type;
  std::vector<ActionStats> actions;  // aligned with A(state)
  std::uint64_t total = 0;           // sum of action visit counts

  // Candidate-only policy pool; frozen (and kept) after conversion.
  std::vector<PolicyStats> pool;
  std::vector<std::uint32_t> active;  // indices into pool

  SearchNode(NodeKey k, std::size_t n_actions, NodeType t)
      : key(k), type(t), actions(n_actions) {}

  bool is_candidate() const { return type == NodeType::Candidate; }
};

// Transposition map over (state, depth) keys; nodes associated with the same
// state at the same depth are shared, so the "tree" is a DAG.
class SearchTree {
 public:
  SearchNode* find(NodeKey k) {
    auto it = nodes_.find(k);
    return it == nodes_.end() ? nullptr : &it->second;
  }
  const SearchNode* find(NodeKey k) const {
    auto it = nodes_.find(k);
    return it == nodes_.end() ? nullptr : &it->second;
  }

  SearchNode& at(NodeKey k) {
    auto it = nodes_.find(k);
    assert(it != nodes_.end());
    return it->second;
  }

  SearchNode& insert(NodeKey k, std::size_t n_actions, NodeType t) {
    auto [it, fresh] = nodes_.try_emplace(k, k, n_actions, t);
    assert(fresh);
    (void)fresh;
    return it->second;
  }

  SearchNode& find_or_insert(NodeKey k, std::size_t n_actions, NodeType t,
                             bool* inserted = nullptr) {
    auto [it, fresh] = nodes_.try_emplace(k, k, n_actions, t);
    if (inserted) *inserted = fresh;
    return it->second;
  }

  std::size_t size() const { return nodes_.size(); }

  const std::unordered_map<NodeKey, SearchNode, NodeKeyHash>& nodes() const {
    return nodes_;
  }

 private:
  std::unordered_map<NodeKey, SearchNode, NodeKeyHash> nodes_;
};

}  // namespace mcplan
