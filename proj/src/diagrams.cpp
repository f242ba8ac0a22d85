#include "ymlab/diagrams.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ymlab {
namespace diagrams {

const VertexKind& vertex_kind(VertexTag tag) {
  static const VertexKind table[] = {
      {VertexTag::Gamma1, 1, 0, 0, -1},
      {VertexTag::Gamma3, 3, 0, 0, +1},
      {VertexTag::Gamma4, 4, 0, 0, +2},
      {VertexTag::Omega3, 1, 1, 1, +1},
  };
  return table[static_cast<int>(tag)];
}

std::string vertex_name(VertexTag tag) {
  switch (tag) {
    case VertexTag::Gamma1: return "Gamma1";
    case VertexTag::Gamma3: return "Gamma3";
    case VertexTag::Gamma4: return "Gamma4";
    case VertexTag::Omega3: return "Omega3";
  }
  return "?";
}

std::string connectivity_name(Connectivity c) {
  switch (c) {
    case Connectivity::disconnected: return "disconnected";
    case Connectivity::weakly_connected: return "weakly_connected";
    case Connectivity::strongly_connected: return "strongly_connected";
  }
  return "?";
}

int VacuumGraph::g_power() const {
  int p = 0;
  for (VertexTag t : vertices) p += vertex_kind(t).g_power;
  return p;
}

void validate_graph(const VacuumGraph& g) {
  const int v = static_cast<int>(g.vertices.size());
  if (v == 0) throw invalid_graph("empty graph");
  if (g.external_vertex >= v) throw invalid_graph("external vertex out of range");
  std::vector<int> gluon(v, 0), gout(v, 0), gin(v, 0);
  for (const Edge& e : g.edges) {
    if (e.a < 0 || e.a >= v || e.b < 0 || e.b >= v) throw invalid_graph("edge endpoint out of range");
    if (e.type == EdgeType::gluon) {
      gluon[e.a] += 1;
      gluon[e.b] += 1;
    } else {
      gout[e.a] += 1;
      gin[e.b] += 1;
    }
  }
  if (g.external_vertex >= 0) gluon[g.external_vertex] += 1;
  for (int i = 0; i < v; ++i) {
    const VertexKind& k = vertex_kind(g.vertices[static_cast<size_t>(i)]);
    if (gluon[i] != k.gluon_legs)
      throw invalid_graph("unmatched gluon leg at vertex " + std::to_string(i));
    if (gout[i] != k.ghost_out || gin[i] != k.ghost_in)
      throw invalid_graph("unmatched ghost leg at vertex " + std::to_string(i));
  }
}

namespace {

bool is_connected(const VacuumGraph& g) {
  const int v = static_cast<int>(g.vertices.size());
  std::vector<std::vector<int>> adj(static_cast<size_t>(v));
  for (const Edge& e : g.edges)
    if (e.a != e.b) {
      adj[static_cast<size_t>(e.a)].push_back(e.b);
      adj[static_cast<size_t>(e.b)].push_back(e.a);
    }
  std::vector<bool> seen(static_cast<size_t>(v), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[static_cast<size_t>(x)])
      if (!seen[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = true;
        ++count;
        stack.push_back(y);
      }
  }
  return count == v;
}

// bridge = internal line whose removal disconnects; parallel edges and
// self-loops are never bridges
bool has_bridge(const VacuumGraph& g) {
  const int v = static_cast<int>(g.vertices.size());
  // collapse to pair multiplicities
  std::map<std::pair<int, int>, int> mult;
  for (const Edge& e : g.edges) {
    if (e.a == e.b) continue;
    auto key = std::minmax(e.a, e.b);
    mult[{key.first, key.second}] += 1;
  }
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(v));  // (neighbor, edge id)
  std::vector<std::pair<int, int>> simple;
  for (const auto& [key, m] : mult) {
    if (m > 1) continue;  // parallel edges cannot be bridges; skip as candidates
    simple.push_back(key);
  }
  // Tarjan on the simple skeleton, multi-edges contracted: run DFS with all
  // pair-edges, marking candidate bridges only among multiplicity-1 pairs.
  int eid = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> candidate;
  for (const auto& [key, m] : mult) {
    pairs.push_back(key);
    candidate.push_back(m == 1);
    adj[static_cast<size_t>(key.first)].push_back({key.second, eid});
    adj[static_cast<size_t>(key.second)].push_back({key.first, eid});
    ++eid;
  }
  std::vector<int> disc(static_cast<size_t>(v), -1), low(static_cast<size_t>(v), 0);
  int timer = 0;
  bool bridge = false;
  // iterative DFS
  struct Frame {
    int node, parent_edge;
    size_t next;
  };
  for (int root = 0; root < v && !bridge; ++root) {
    if (disc[static_cast<size_t>(root)] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = timer++;
    while (!stack.empty() && !bridge) {
      Frame& f = stack.back();
      if (f.next < adj[static_cast<size_t>(f.node)].size()) {
        auto [to, id] = adj[static_cast<size_t>(f.node)][f.next++];
        if (id == f.parent_edge) continue;
        if (disc[static_cast<size_t>(to)] == -1) {
          disc[static_cast<size_t>(to)] = low[static_cast<size_t>(to)] = timer++;
          stack.push_back({to, id, 0});
        } else {
          low[static_cast<size_t>(f.node)] =
              std::min(low[static_cast<size_t>(f.node)], disc[static_cast<size_t>(to)]);
        }
      } else {
        if (stack.size() > 1) {
          Frame& parent = stack[stack.size() - 2];
          low[static_cast<size_t>(parent.node)] =
              std::min(low[static_cast<size_t>(parent.node)], low[static_cast<size_t>(f.node)]);
          if (low[static_cast<size_t>(f.node)] > disc[static_cast<size_t>(parent.node)] &&
              candidate[static_cast<size_t>(f.parent_edge)])
            bridge = true;
        }
        stack.pop_back();
      }
    }
  }
  return bridge;
}

}  // namespace

Connectivity classify_connectivity(const VacuumGraph& g) {
  validate_graph(g);
  if (!is_connected(g)) return Connectivity::disconnected;
  if (g.vertices.size() == 1) return Connectivity::strongly_connected;
  return has_bridge(g) ? Connectivity::weakly_connected : Connectivity::strongly_connected;
}

namespace {

// encoding of the graph under a given relabeling permutation
std::string encode(const VacuumGraph& g, const std::vector<int>& perm) {
  const int v = static_cast<int>(g.vertices.size());
  // perm[i] = new label of old vertex i
  std::vector<std::vector<int>> gl(static_cast<size_t>(v), std::vector<int>(static_cast<size_t>(v), 0));
  std::vector<std::vector<int>> gh(static_cast<size_t>(v), std::vector<int>(static_cast<size_t>(v), 0));
  for (const Edge& e : g.edges) {
    int a = perm[static_cast<size_t>(e.a)];
    int b = perm[static_cast<size_t>(e.b)];
    if (e.type == EdgeType::gluon) {
      gl[static_cast<size_t>(std::min(a, b))][static_cast<size_t>(std::max(a, b))] += 1;
    } else {
      gh[static_cast<size_t>(a)][static_cast<size_t>(b)] += 1;
    }
  }
  std::ostringstream os;
  for (int i = 0; i < v; ++i) {
    // types are constant within permutation classes; include for safety
    int old_i = -1;
    for (int j = 0; j < v; ++j)
      if (perm[static_cast<size_t>(j)] == i) old_i = j;
    os << static_cast<int>(g.vertices[static_cast<size_t>(old_i)]);
    os << (g.external_vertex == old_i ? "*" : ".");
  }
  os << "|";
  for (int i = 0; i < v; ++i)
    for (int j = i; j < v; ++j) os << gl[static_cast<size_t>(i)][static_cast<size_t>(j)] << ",";
  os << "|";
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j) os << gh[static_cast<size_t>(i)][static_cast<size_t>(j)] << ",";
  return os.str();
}

// invariant used to pre-refine permutation classes
std::string vertex_invariant(const VacuumGraph& g, int i) {
  int self_gl = 0, deg_gl = 0, ghost_self = 0, gin = 0, gout = 0;
  for (const Edge& e : g.edges) {
    if (e.type == EdgeType::gluon) {
      if (e.a == i && e.b == i) self_gl += 1;
      if (e.a == i) deg_gl += 1;
      if (e.b == i) deg_gl += 1;
    } else {
      if (e.a == i && e.b == i) ghost_self += 1;
      if (e.a == i) gout += 1;
      if (e.b == i) gin += 1;
    }
  }
  std::ostringstream os;
  os << static_cast<int>(g.vertices[static_cast<size_t>(i)]) << ":" << (g.external_vertex == i)
     << ":" << self_gl << ":" << deg_gl << ":" << ghost_self << ":" << gin << ":" << gout;
  return os.str();
}

void permutations_within_classes(const std::vector<std::vector<int>>& classes, size_t ci,
                                 std::vector<int>& perm, int& next_label,
                                 const VacuumGraph& g, std::string& best) {
  if (ci == classes.size()) {
    std::string enc = encode(g, perm);
    if (best.empty() || enc < best) best = enc;
    return;
  }
  std::vector<int> members = classes[ci];
  std::sort(members.begin(), members.end());
  do {
    int save = next_label;
    for (int m : members) perm[static_cast<size_t>(m)] = next_label++;
    permutations_within_classes(classes, ci + 1, perm, next_label, g, best);
    next_label = save;
  } while (std::next_permutation(members.begin(), members.end()));
}

}  // namespace

std::string canonical_key(const VacuumGraph& g) {
  const int v = static_cast<int>(g.vertices.size());
  // group vertices by invariant
  std::map<std::string, std::vector<int>> groups;
  for (int i = 0; i < v; ++i) groups[vertex_invariant(g, i)].push_back(i);
  std::vector<std::vector<int>> classes;
  for (auto& [key, members] : groups) classes.push_back(members);

  std::vector<int> perm(static_cast<size_t>(v), -1);
  int next_label = 0;
  std::string best;
  permutations_within_classes(classes, 0, perm, next_label, g, best);
  return best;
}

bool graphs_isomorphic(const VacuumGraph& a, const VacuumGraph& b) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
  return canonical_key(a) == canonical_key(b);
}

namespace {

struct LegState {
  std::vector<int> remaining;  // unmatched gluon slots per vertex
};

void match_gluons(const std::vector<VertexTag>& verts, std::vector<int>& remaining,
                  std::vector<Edge>& edges, int external_vertex,
                  const std::function<void(const std::vector<Edge>&)>& emit) {
  const int v = static_cast<int>(verts.size());
  int first = -1;
  for (int i = 0; i < v; ++i)
    if (remaining[static_cast<size_t>(i)] > 0) {
      first = i;
      break;
    }
  if (first == -1) {
    emit(edges);
    return;
  }
  remaining[static_cast<size_t>(first)] -= 1;
  // candidate partners: one unmatched slot per vertex; same-type vertices with
  // identical partial adjacency tried once
  std::set<std::string> tried;
  for (int j = first; j < v; ++j) {
    if (remaining[static_cast<size_t>(j)] <= 0) continue;
    std::ostringstream profile;
    profile << static_cast<int>(verts[static_cast<size_t>(j)]) << ";"
            << (j == external_vertex) << ";" << (j == first) << ";"
            << remaining[static_cast<size_t>(j)] << ";";
    std::vector<int> row(static_cast<size_t>(v), 0);
    int self = 0;
    for (const Edge& e : edges) {
      if (e.a == j && e.b == j) self += 1;
      else if (e.a == j) row[static_cast<size_t>(e.b)] += 1;
      else if (e.b == j) row[static_cast<size_t>(e.a)] += 1;
    }
    profile << self << ";";
    for (int x : row) profile << x << ",";
    if (!tried.insert(profile.str()).second) continue;
    remaining[static_cast<size_t>(j)] -= 1;
    edges.push_back({EdgeType::gluon, first, j});
    match_gluons(verts, remaining, edges, external_vertex, emit);
    edges.pop_back();
    remaining[static_cast<size_t>(j)] += 1;
  }
  remaining[static_cast<size_t>(first)] += 1;
}

void for_each_ghost_assignment(const std::vector<int>& omegas,
                               const std::function<void(const std::vector<Edge>&)>& emit) {
  // bijection ghost-out -> ghost-in over the Omega3 vertices
  std::vector<int> heads = omegas;
  std::sort(heads.begin(), heads.end());
  std::vector<Edge> ghost;
  do {
    ghost.clear();
    for (size_t i = 0; i < omegas.size(); ++i)
      ghost.push_back({EdgeType::ghost, omegas[i], heads[i]});
    emit(ghost);
  } while (std::next_permutation(heads.begin(), heads.end()));
}

struct Multiset {
  int n3, n4, nO;
};

std::vector<Multiset> multisets_for_power(int gpow) {
  std::vector<Multiset> out;
  for (int n4 = 0; 2 * n4 <= gpow; ++n4)
    for (int nO = 0; 2 * n4 + nO <= gpow; ++nO) {
      int n3 = gpow - 2 * n4 - nO;
      out.push_back({n3, n4, nO});
    }
  return out;
}

std::vector<VertexTag> build_vertices(const Multiset& m) {
  std::vector<VertexTag> v;
  for (int i = 0; i < m.n3; ++i) v.push_back(VertexTag::Gamma3);
  for (int i = 0; i < m.n4; ++i) v.push_back(VertexTag::Gamma4);
  for (int i = 0; i < m.nO; ++i) v.push_back(VertexTag::Omega3);
  return v;
}

}  // namespace

std::vector<VacuumGraph> enumerate_vacuum_graphs(int max_loops, bool include_weakly) {
  if (max_loops > 5) throw size_error("vacuum enumeration budget is max_loops <= 5");
  std::vector<VacuumGraph> out;
  std::set<std::string> seen;

  for (int loops = 2; loops <= max_loops; ++loops) {
    const int gpow = 2 * (loops - 1);
    for (const Multiset& m : multisets_for_power(gpow)) {
      std::vector<VertexTag> verts = build_vertices(m);
      if (verts.empty()) continue;
      const int glegs = 3 * m.n3 + 4 * m.n4 + m.nO;
      if (glegs % 2 != 0) continue;
      std::vector<int> omegas;
      for (size_t i = 0; i < verts.size(); ++i)
        if (verts[i] == VertexTag::Omega3) omegas.push_back(static_cast<int>(i));

      std::vector<int> remaining;
      for (VertexTag t : verts) remaining.push_back(vertex_kind(t).gluon_legs);
      std::vector<Edge> edges;
      auto emit_with_ghosts = [&](const std::vector<Edge>& gluon_edges) {
        auto finish = [&](const std::vector<Edge>& ghost_edges) {
          VacuumGraph g;
          g.vertices = verts;
          g.edges = gluon_edges;
          g.edges.insert(g.edges.end(), ghost_edges.begin(), ghost_edges.end());
          if (!is_connected(g)) return;
          if (g.loop_number() != loops) return;
          g.connectivity = classify_connectivity(g);
          if (!include_weakly && g.connectivity != Connectivity::strongly_connected) return;
          std::string key = canonical_key(g);
          if (seen.insert(key).second) out.push_back(g);
        };
        if (omegas.empty()) {
          finish({});
        } else {
          for_each_ghost_assignment(omegas, finish);
        }
      };
      match_gluons(verts, remaining, edges, -1, emit_with_ghosts);
    }
  }

  std::sort(out.begin(), out.end(), [](const VacuumGraph& a, const VacuumGraph& b) {
    if (a.loop_number() != b.loop_number()) return a.loop_number() < b.loop_number();
    if (a.g_power() != b.g_power()) return a.g_power() < b.g_power();
    return canonical_key(a) < canonical_key(b);
  });
  return out;
}

std::vector<VacuumGraph> eom_expansion(int max_loops) {
  if (max_loops > 4) throw size_error("equation-of-motion enumeration budget is max_loops <= 4");
  std::vector<VacuumGraph> out;

  // order zero: the bare classical term
  VacuumGraph bare;
  bare.vertices = {VertexTag::Gamma1};
  bare.external_vertex = 0;
  bare.connectivity = Connectivity::strongly_connected;
  out.push_back(bare);

  std::set<std::string> seen;
  for (int loops = 1; loops <= max_loops; ++loops) {
    // with one external gluon stub, E = (3n3+4n4+nO-1)/2 + nO and
    // L = E - V + 1 reduce to n3 + 2 n4 + nO = 2 loops - 1
    const int weight = 2 * loops - 1;
    for (int n4 = 0; 2 * n4 <= weight; ++n4)
      for (int nO = 0; 2 * n4 + nO <= weight; ++nO) {
        {
          const int n3 = weight - 2 * n4 - nO;
          const int v = n3 + n4 + nO;
          if (v == 0) continue;

          Multiset m{n3, n4, nO};
          std::vector<VertexTag> verts = build_vertices(m);
          std::vector<int> omegas;
          for (size_t i = 0; i < verts.size(); ++i)
            if (verts[i] == VertexTag::Omega3) omegas.push_back(static_cast<int>(i));

          // external stub host: first vertex of each distinct type with a
          // gluon leg (relabeling covers the rest)
          std::set<VertexTag> hosted;
          for (size_t h = 0; h < verts.size(); ++h) {
            if (vertex_kind(verts[h]).gluon_legs == 0) continue;
            if (!hosted.insert(verts[h]).second) continue;
            std::vector<int> remaining;
            for (VertexTag t : verts) remaining.push_back(vertex_kind(t).gluon_legs);
            remaining[h] -= 1;  // external stub
            std::vector<Edge> edges;
            auto emit_with_ghosts = [&](const std::vector<Edge>& gluon_edges) {
              auto finish = [&](const std::vector<Edge>& ghost_edges) {
                VacuumGraph g;
                g.vertices = verts;
                g.external_vertex = static_cast<int>(h);
                g.edges = gluon_edges;
                g.edges.insert(g.edges.end(), ghost_edges.begin(), ghost_edges.end());
                if (!is_connected(g)) return;
                if (g.loop_number() != loops) return;
                g.connectivity = classify_connectivity(g);
                if (g.connectivity != Connectivity::strongly_connected) return;
                std::string key = canonical_key(g);
                if (seen.insert(key).second) out.push_back(g);
              };
              if (omegas.empty()) {
                finish({});
              } else {
                for_each_ghost_assignment(omegas, finish);
              }
            };
            match_gluons(verts, remaining, edges, static_cast<int>(h), emit_with_ghosts);
          }
        }
      }
  }

  std::sort(out.begin(), out.end(), [](const VacuumGraph& a, const VacuumGraph& b) {
    if (a.g_power() != b.g_power()) return a.g_power() < b.g_power();
    if (a.loop_number() != b.loop_number()) return a.loop_number() < b.loop_number();
    return canonical_key(a) < canonical_key(b);
  });
  return out;
}

std::string describe(const VacuumGraph& g) {
  std::ostringstream os;
  os << "vertices:";
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    os << " " << i << "=" << vertex_name(g.vertices[i]);
    if (static_cast<int>(i) == g.external_vertex) os << "(ext)";
  }
  os << "  edges:";
  for (const Edge& e : g.edges) {
    if (e.type == EdgeType::gluon)
      os << " g(" << e.a << "-" << e.b << ")";
    else
      os << " c(" << e.a << "->" << e.b << ")";
  }
  os << "  L=" << g.loop_number() << " g^" << g.g_power() << " "
     << connectivity_name(g.connectivity);
  return os.str();
}

}  // namespace diagrams
}  // namespace ymlab
