#pragma once

#include <string>
#include <vector>

#include "ymlab/errors.hpp"

namespace ymlab {
namespace diagrams {

// Vertex catalog of the perturbative expansion: coupling powers come from the
// exponent weights 1/g, g, g^2, g.
enum class VertexTag { Gamma1, Gamma3, Gamma4, Omega3 };

struct VertexKind {
  VertexTag tag;
  int gluon_legs;
  int ghost_out;
  int ghost_in;
  int g_power;
};

const VertexKind& vertex_kind(VertexTag tag);
std::string vertex_name(VertexTag tag);

enum class EdgeType { gluon, ghost };

struct Edge {
  EdgeType type;
  int a;  // gluon: endpoint; ghost: tail (out side)
  int b;  // gluon: endpoint; ghost: head (in side)
};

enum class Connectivity { disconnected, weakly_connected, strongly_connected };
std::string connectivity_name(Connectivity c);

// Typed multigraph: self-loops and parallel edges allowed. external_vertex
// marks the vertex carrying the single external gluon stub (-1 for closed
// vacuum graphs).
struct VacuumGraph {
  std::vector<VertexTag> vertices;
  std::vector<Edge> edges;
  int external_vertex = -1;
  Connectivity connectivity = Connectivity::disconnected;

  int loop_number() const {  // E - V + 1 for connected graphs
    return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + 1;
  }
  int g_power() const;
  bool has_external() const { return external_vertex >= 0; }
};

// Throws invalid_graph unless every gluon leg is matched exactly once (the
// external stub counts as matched) and ghost in/out legs pair up.
void validate_graph(const VacuumGraph& g);

// strongly connected = connected and bridgeless on the internal lines;
// validates first.
Connectivity classify_connectivity(const VacuumGraph& g);

// Canonical encoding under type-preserving vertex relabeling (iterated
// refinement by invariants, then backtracking within the residual classes).
std::string canonical_key(const VacuumGraph& g);

bool graphs_isomorphic(const VacuumGraph& a, const VacuumGraph& b);

// All isomorphism classes of closed connected graphs over {Gamma3, Gamma4,
// Omega3} with 1..max_loops loops. The default keeps the strongly connected
// classes (the ones the expansion sums); include_weakly adds the one-line
// reducible ones, classified.
std::vector<VacuumGraph> enumerate_vacuum_graphs(int max_loops, bool include_weakly = false);

// Strongly connected one-external-gluon-line graphs up to max_loops, ordered
// by coupling power. The order-zero entry is the bare Gamma1 term.
std::vector<VacuumGraph> eom_expansion(int max_loops);

// Text-art adjacency summary.
std::string describe(const VacuumGraph& g);

}  // namespace diagrams
}  // namespace ymlab
