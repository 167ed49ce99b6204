// Correlated functional digraph: lifted edges of g1's side, arcs e -> pi(e),
// merged with the truth's matched pairs. After merging, every node has in- and
// out-degree at most one, so components are simple paths and cycles; the
// cycle/path structure is what the cumulant chain bound consumes.
#pragma once

#include <string>
#include <vector>

#include "model.hpp"

namespace palign {

struct EdgeId {
  int u = 0, v = 0;  // canonical: u < v
  friend bool operator==(const EdgeId&, const EdgeId&) = default;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

EdgeId make_edge(int a, int b);

// Image of edge {u,v} under pi; both endpoints must lie in pi's domain.
EdgeId lift_edge(const InjectiveMapping& pi, EdgeId e);

// All lifted pairs (e, pi(e)) over C(domain,2), sorted by source edge.
std::vector<std::pair<EdgeId, EdgeId>> lift_to_edges(const InjectiveMapping& pi);

enum class ComponentKind { Path, Cycle };

struct Component {
  ComponentKind kind = ComponentKind::Path;
  std::vector<EdgeId> edges;  // g1-side edges in traversal order
};

struct DigraphDecomposition {
  std::vector<Component> components;
  int self_loop_count = 0;
  int total_edges = 0;
};

// Decompose the digraph with arcs e -> pi(e) for e in edge_set, merged with
// (e', truth(e')) for every e' in C(truth domain, 2). Every edge of edge_set
// lands in exactly one component.
DigraphDecomposition build_decomposition(const InjectiveMapping& pi, const InjectiveMapping& truth,
                                         const std::vector<EdgeId>& edge_set);

struct RestrictedDecomposition {
  DigraphDecomposition decomp;
  std::vector<int> fixed_vertices;  // F: common correctly-mapped vertices
  std::vector<EdgeId> edge_set;     // E = C(S,2) \ C(F,2)
  int distance_k = 0;               // m - |F|
};

// Decomposition over the edges that are not pinned by agreement with the
// truth; |edge_set| equals N_k = C(m,2) - C(m-k,2).
RestrictedDecomposition restricted_decomposition(const InjectiveMapping& pi,
                                                 const InjectiveMapping& truth);

std::string decomposition_to_json(const DigraphDecomposition& d);

}  // namespace palign
