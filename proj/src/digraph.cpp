#include "digraph.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "common.hpp"

namespace palign {

EdgeId make_edge(int a, int b) {
  if (a == b) fail(ErrorCode::InvalidArgument, "self-edges are not part of the edge space");
  if (a > b) std::swap(a, b);
  return EdgeId{a, b};
}

EdgeId lift_edge(const InjectiveMapping& pi, EdgeId e) {
  const int tu = pi.target_of(e.u), tv = pi.target_of(e.v);
  if (tu < 0 || tv < 0)
    fail(ErrorCode::InvalidArgument,
         strprintf("edge {%d,%d} has an endpoint outside the mapping domain", e.u, e.v));
  return make_edge(tu, tv);
}

std::vector<std::pair<EdgeId, EdgeId>> lift_to_edges(const InjectiveMapping& pi) {
  std::vector<std::pair<EdgeId, EdgeId>> out;
  const int m = pi.size();
  out.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      EdgeId e = make_edge(pi.pairs[i].first, pi.pairs[j].first);
      out.emplace_back(e, make_edge(pi.pairs[i].second, pi.pairs[j].second));
    }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Node of the merged digraph. Side 0 = edge over g1's vertices, side 1 = edge
// over g2's vertices; a merged class holds one node of each side.
struct Node {
  int side;
  EdgeId e;
  friend auto operator<=>(const Node&, const Node&) = default;
};

struct ClassInfo {
  int out_arc = -1;  // index into arcs, at most one: classes hold one g1 node
  int in_arc = -1;   // at most one: lifted edges are distinct g2 nodes
};

}  // namespace

DigraphDecomposition build_decomposition(const InjectiveMapping& pi, const InjectiveMapping& truth,
                                         const std::vector<EdgeId>& edge_set) {
  pi.validate();
  truth.validate();

  // Class id per node; a g1 edge in the truth's domain pair set is identified
  // with its truth image on the g2 side.
  std::map<Node, int> cls;
  int next_cls = 0;
  auto class_of = [&](const Node& nd) {
    auto it = cls.find(nd);
    if (it != cls.end()) return it->second;
    cls.emplace(nd, next_cls);
    return next_cls++;
  };

  for (const auto& [e, te] : lift_to_edges(truth)) {
    const int c = class_of(Node{0, e});
    cls.emplace(Node{1, te}, c);
  }

  struct Arc {
    EdgeId src_edge;
    int from, to;
  };
  std::vector<Arc> arcs;
  arcs.reserve(edge_set.size());
  for (EdgeId e : edge_set) {
    if (e.u >= e.v) fail(ErrorCode::InvalidArgument, "edge ids must be canonical (u < v)");
    const EdgeId img = lift_edge(pi, e);  // rejects edges outside C(domain,2)
    const int from = class_of(Node{0, e});
    const int to = class_of(Node{1, img});
    arcs.push_back(Arc{e, from, to});
  }

  std::vector<ClassInfo> info(next_cls);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (info[arcs[i].from].out_arc != -1)
      fail(ErrorCode::InvalidArgument, "duplicate edge in edge_set");
    info[arcs[i].from].out_arc = static_cast<int>(i);
    if (info[arcs[i].to].in_arc != -1)
      fail(ErrorCode::Internal, "two arcs landed on one lifted edge; pi is not injective");
    info[arcs[i].to].in_arc = static_cast<int>(i);
  }

  DigraphDecomposition out;
  out.total_edges = static_cast<int>(arcs.size());
  std::vector<char> used(arcs.size(), 0);

  // Paths first: start from every class that emits an arc but receives none,
  // then whatever remains closes into cycles.
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const int start_cls = arcs[i].from;
    if (info[start_cls].in_arc != -1 || used[i]) continue;
    Component comp;
    comp.kind = ComponentKind::Path;
    int a = static_cast<int>(i);
    while (a != -1 && !used[a]) {
      used[a] = 1;
      comp.edges.push_back(arcs[a].src_edge);
      a = info[arcs[a].to].out_arc;
    }
    out.components.push_back(std::move(comp));
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (used[i]) continue;
    Component comp;
    comp.kind = ComponentKind::Cycle;
    int a = static_cast<int>(i);
    while (!used[a]) {
      used[a] = 1;
      comp.edges.push_back(arcs[a].src_edge);
      a = info[arcs[a].to].out_arc;
    }
    // Canonical rotation: cycles start at their smallest edge id.
    auto mn = std::min_element(comp.edges.begin(), comp.edges.end());
    std::rotate(comp.edges.begin(), mn, comp.edges.end());
    if (comp.edges.size() == 1) ++out.self_loop_count;
    out.components.push_back(std::move(comp));
  }

  std::sort(out.components.begin(), out.components.end(),
            [](const Component& a, const Component& b) { return a.edges.front() < b.edges.front(); });
  return out;
}

RestrictedDecomposition restricted_decomposition(const InjectiveMapping& pi,
                                                 const InjectiveMapping& truth) {
  pi.validate();
  truth.validate();
  if (pi.size() != truth.size())
    fail(ErrorCode::InvalidArgument, "restricted decomposition needs |pi| = |truth|");
  RestrictedDecomposition out;
  for (const auto& [v, tv] : truth.pairs)
    if (pi.target_of(v) == tv) out.fixed_vertices.push_back(v);
  out.distance_k = truth.size() - static_cast<int>(out.fixed_vertices.size());

  std::vector<char> fixed_lookup;
  int max_v = 0;
  for (const auto& pr : pi.pairs) max_v = std::max(max_v, pr.first);
  fixed_lookup.assign(max_v + 1, 0);
  for (int v : out.fixed_vertices) fixed_lookup[v] = 1;

  const int m = pi.size();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const int a = pi.pairs[i].first, b = pi.pairs[j].first;
      if (fixed_lookup[a] && fixed_lookup[b]) continue;  // pinned by agreement
      out.edge_set.push_back(make_edge(a, b));
    }
  std::sort(out.edge_set.begin(), out.edge_set.end());
  out.decomp = build_decomposition(pi, truth, out.edge_set);
  return out;
}

std::string decomposition_to_json(const DigraphDecomposition& d) {
  std::string out = "{\"components\":[";
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    if (i) out += ',';
    const Component& c = d.components[i];
    out += "{\"kind\":\"";
    out += c.kind == ComponentKind::Path ? "path" : "cycle";
    out += "\",\"edges\":[";
    for (std::size_t j = 0; j < c.edges.size(); ++j) {
      if (j) out += ',';
      out += strprintf("[%d,%d]", c.edges[j].u, c.edges[j].v);
    }
    out += "]}";
  }
  out += strprintf("],\"self_loops\":%d,\"total\":%d}", d.self_loop_count, d.total_edges);
  return out;
}

}  // namespace palign
