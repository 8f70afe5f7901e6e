#pragma once

#include "rgk/cyclic.hpp"
#include "rgk/graph.hpp"

namespace rgk {

// Ribbon graphs: every vertex has degree >= 2 and carries a cyclic order on
// its incident half-edges.  Half-edges are named by edge id (loops are
// banned, so the id is unambiguous at a fixed vertex).
struct RibbonGraph {
    Graph graph;
    std::map<std::string, CyclicOrder> orders;

    std::vector<std::string> diagnose() const;
    bool valid() const { return diagnose().empty(); }

    bool operator==(const RibbonGraph& o) const {
        return graph == o.graph && orders == o.orders;
    }
};

// A closed boundary walk.  For compact walks the edge list is cyclic and
// witnesses[i] joins edges[i] and edges[i+1 mod r]; for noncompact walks the
// list is linear with r-1 witnesses and the first and last edges noncompact.
struct Walk {
    std::vector<std::string> edges;
    std::vector<std::string> witnesses;
    bool compact = true;
    bool isolated = false;  // one of the two oriented copies of an isolated edge

    bool simple(const Graph& g) const;
    bool operator==(const Walk& o) const = default;
};

// All boundary components by face tracing: arriving at v along half-edge h,
// the walk continues along succ(h) in the cyclic order at v.  Every directed
// edge side lies in exactly one component; isolated edges contribute their
// two oriented copies, flagged.
std::vector<Walk> boundary_components(const RibbonGraph& r);

// Genus of a compact connected ribbon graph via v - e + b = 2 - 2g.
std::size_t genus(const RibbonGraph& r);

// The cyclic order on the leaves of a ribbon tree: succ(e) = f when a
// noncompact boundary component starts at e and ends at f.
CyclicOrder leaf_cyclic_order(const RibbonGraph& tree);

// Restriction of a ribbon graph to an open subgraph (kept vertices keep
// their full half-edge star, so orders carry over unchanged).
RibbonGraph restrict_ribbon(const RibbonGraph& r, const OpenSubgraph& open);

// The closed subgraph spanned by an edge subset, with induced cyclic orders.
// Every vertex met must keep degree >= 2.
RibbonGraph closed_subgraph(const RibbonGraph& r, const std::set<std::string>& edge_ids);

// --- Chordal structures ------------------------------------------------------

struct ChordalStructure {
    RibbonGraph ribbon;
    std::set<std::string> zero_section;  // edge ids forming Z

    // Z-half-edges at v in (forward, backward) order are meaningful only
    // relative to an orientation; raw accessor returns them sorted.
    std::vector<std::string> z_edges_at(const std::string& v) const;
};

// Validates the chordal clauses: Z bivalent and closed through every vertex,
// and at most one half-edge strictly on each side of Z at every vertex.
std::vector<std::string> validate_chordal(const RibbonGraph& r, const std::set<std::string>& z);

// Connected components of the zero section, keyed by least vertex.
std::map<std::string, std::set<std::string>> zero_section_components(const ChordalStructure& c);

// Forward/backward zero-section half-edge per vertex: each component is
// walked from its least vertex along its least zero-section edge, flipped for
// components listed (by their key) in `flip`.
std::map<std::string, std::pair<std::string, std::string>> orient_zero_section(
    const ChordalStructure& c, const std::set<std::string>& flip = {});

// --- Contractions ------------------------------------------------------------

// Checks that `map` (a morphism of underlying graphs from r to s) is a simple
// contraction: each star preimage is a ribbon tree whose leaf cyclic order
// maps isomorphically onto the star's.  Returns diagnostics.
std::vector<std::string> validate_simple_contraction(const RibbonGraph& r, const RibbonGraph& s,
                                                     const GraphMorphism& map);

// A partial contraction X <- U -> Y: an open subgraph of X together with a
// simple contraction of its realization onto Y.
struct PartialContraction {
    RibbonGraph source;   // X
    OpenSubgraph open;    // U as a subgraph of X
    RibbonGraph target;   // Y
    GraphMorphism contraction;  // realize(U) -> Y

    RibbonGraph middle() const { return restrict_ribbon(source, open); }
    static PartialContraction identity(const RibbonGraph& x);
    // Open inclusion U -> X seen as a partial contraction X ~> realize(U).
    static PartialContraction open_inclusion(const RibbonGraph& x, const OpenSubgraph& u);
    // Plain contraction (open part = all of X).
    static PartialContraction full_contraction(const RibbonGraph& x, const RibbonGraph& y,
                                               const GraphMorphism& map);

    std::vector<std::string> diagnose() const;
    bool operator==(const PartialContraction& o) const = default;
};

// Composite of f: X ~> Y and then g: Y ~> Z, with the middle open subgraph
// pulled back through f's contraction.
PartialContraction compose_partial(const PartialContraction& g, const PartialContraction& f);

// Test helper: contract a set of compact edges of r onto a fresh graph,
// assigning the join cyclic orders at merged vertices.  Returns the
// contraction morphism (whose target is built here).
struct BuiltContraction {
    RibbonGraph target;
    GraphMorphism map;
};
BuiltContraction contract_edges(const RibbonGraph& r, const std::set<std::string>& edge_ids);

}  // namespace rgk
