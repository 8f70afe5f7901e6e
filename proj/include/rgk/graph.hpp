#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rgk/rational.hpp"

namespace rgk {

// Underlying graphs: finite vertex set, edges with up to two vertex
// endpoints (a missing endpoint is a free/noncompact end) and a bounded
// rational coordinate interval.  Loops are rejected at validation; since
// there are none, a half-edge is named by (edge id, end slot) and slot is
// recoverable from the vertex.

struct Edge {
    std::string id;
    std::optional<std::string> end[2];  // end[0] at interval lo, end[1] at hi
    Rat lo = 0, hi = 1;

    bool compact() const { return end[0] && end[1]; }
    bool isolated() const { return !end[0] && !end[1]; }
    bool operator==(const Edge& o) const {
        return id == o.id && end[0] == o.end[0] && end[1] == o.end[1] && lo == o.lo && hi == o.hi;
    }
};

struct HalfEdge {
    std::string edge;
    int slot = 0;
    bool operator==(const HalfEdge& o) const = default;
    auto operator<=>(const HalfEdge& o) const = default;
};

class Graph {
  public:
    Graph() = default;
    Graph(std::set<std::string> vertices, std::vector<Edge> edges);

    // Full validation; returns diagnostics (empty means valid).
    static std::vector<std::string> diagnose(const std::set<std::string>& vertices,
                                             const std::vector<Edge>& edges);

    const std::set<std::string>& vertices() const { return verts_; }
    const std::vector<Edge>& edges() const { return edges_; }  // sorted by id
    const Edge& edge(const std::string& id) const;
    bool has_edge(const std::string& id) const;

    std::size_t degree(const std::string& v) const;
    std::vector<HalfEdge> half_edges_at(const std::string& v) const;
    // Incident edge ids (an edge with both ends at v cannot occur: no loops).
    std::vector<std::string> incident(const std::string& v) const;

    bool connected() const;
    bool acyclic() const;
    bool is_tree() const { return connected() && acyclic(); }
    bool compact() const;

    // Connected components as vertex sets (isolated edges excluded).
    std::vector<std::set<std::string>> components() const;

    // Open subgraph consisting of v and all incident edges, far ends freed.
    Graph star(const std::string& v) const;

    // Insert a fresh bivalent vertex in the middle of an edge.
    Graph subdivide(const std::string& edge_id, const std::string& new_vertex,
                    const std::string& id_a, const std::string& id_b) const;

    bool operator==(const Graph& o) const { return verts_ == o.verts_ && edges_ == o.edges_; }

  private:
    std::set<std::string> verts_;
    std::vector<Edge> edges_;
    std::map<std::string, std::size_t> by_id_;
};

// Morphisms carry vertices to vertices and either collapse an edge to a
// vertex or map it onto a target edge by x_f = a*x_e + b with a != 0.
struct EdgeAction {
    bool collapse = false;
    std::string target;  // vertex if collapse, else edge
    Rat a = 1, b = 0;
    bool operator==(const EdgeAction& o) const {
        return collapse == o.collapse && target == o.target && (collapse || (a == o.a && b == o.b));
    }
};

struct GraphMorphism {
    Graph source, target;
    std::map<std::string, std::string> vertex_map;
    std::map<std::string, EdgeAction> edge_action;

    static GraphMorphism identity(const Graph& g);
    std::vector<std::string> diagnose() const;
    bool valid() const { return diagnose().empty(); }

    // Image of a half-edge under a non-collapsing action.
    HalfEdge map_half_edge(const HalfEdge& h) const;

    bool operator==(const GraphMorphism& o) const {
        return source == o.source && target == o.target && vertex_map == o.vertex_map &&
               edge_action == o.edge_action;
    }
};

GraphMorphism compose(const GraphMorphism& g, const GraphMorphism& f);  // g after f

// Open subgraphs in the combinatorial sense: a vertex subset plus, per kept
// edge, which endpoint attachments survive.  An attachment may only survive
// if its vertex is kept, and every edge at a kept vertex must be kept with
// that attachment (openness).  Edges keep their full coordinate interval;
// severed ends just become free.
struct OpenSubgraph {
    std::set<std::string> vertices;
    // edge id -> (keep attachment at slot 0, slot 1); absence = edge dropped
    std::map<std::string, std::pair<bool, bool>> edge_parts;

    static OpenSubgraph full(const Graph& g);
    static OpenSubgraph star_of(const Graph& g, const std::string& v);

    std::vector<std::string> diagnose(const Graph& g) const;
    Graph realize(const Graph& g) const;  // the subgraph as a Graph
    OpenSubgraph intersect(const OpenSubgraph& o) const;
    bool contains(const OpenSubgraph& o) const;
    // Inclusion morphism realize() -> g.
    GraphMorphism inclusion(const Graph& g) const;

    bool operator==(const OpenSubgraph& o) const = default;
};

// Preimage of an open subgraph of f.target under f.
OpenSubgraph preimage(const GraphMorphism& f, const OpenSubgraph& v);

}  // namespace rgk
