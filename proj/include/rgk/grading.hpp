#pragma once

#include <optional>

#include "rgk/cyclic.hpp"
#include "rgk/ribbon.hpp"

namespace rgk {

// Z/2- and Z-gradings on ribbon graphs.  Z-torsors are labeled copies of the
// integers, so torsor maps are plain integer offsets; the Z/2 layer is
// recorded as a parity class per edge.

struct Z2Grading {
    std::pair<std::string, std::string> tau_labels{"+", "-"};
    std::map<std::string, int> edge_sign;  // parity of the section map per edge
};

struct ZGrading {
    RibbonGraph ribbon;
    Z2Grading z2;
    // Per vertex, an unwinding whose base is the cyclic order at the vertex.
    std::map<std::string, Unwinding> vertex_unwinding;
    // Per vertex and incident edge, the offset of theta: q^{-1}(eps) -> tau~_e.
    std::map<std::string, std::map<std::string, long long>> theta;

    std::vector<std::string> diagnose() const;
    bool valid() const { return diagnose().empty(); }
};

// The compass grading of a chordal ribbon graph.  Per component the
// orientation defaults to walking from its least vertex along its least
// zero-section edge; explicit overrides flip a component (keyed by its least
// vertex).
struct ChordalGradingResult {
    ZGrading grading;
    // Compass letter per vertex and incident edge id (E/N/W/S).
    std::map<std::string, std::map<std::string, char>> labels;
};
ChordalGradingResult chordal_grading(const ChordalStructure& c,
                                     const std::set<std::string>& flip_components = {});

// Monodromy offset along a walk whose consecutive steps satisfy the
// minimal-pair condition: apply R once at each witness vertex, transported
// through the theta identifications.
long long boundary_monodromy(const ZGrading& g, const Walk& walk);

// Leaf unwinding of a graded ribbon tree: fibers are the leaf-edge torsors,
// R is the boundary monodromy corrected by one unit per interior edge
// traversal (the ray direction reverses along every full edge pass; with the
// correction the total around the tree is S^2, as the torsor axioms demand).
struct LeafUnwinding {
    CyclicOrder leaves;
    std::map<Label, long long> rmono;  // offset tau~_l -> tau~_{R l}
    long long total() const;
};
LeafUnwinding leaf_unwinding(const ZGrading& tree);

// A graded simple contraction: the underlying contraction plus the torsor
// identifications (an offset per surviving edge and a global parity per the
// tau identification).
struct GradedContractionData {
    std::map<std::string, long long> edge_offset;
    int tau_sign = 0;
};

// Accepts iff the supplied offsets intertwine the leaf unwinding of each
// star preimage with the star's own leaf unwinding.
std::vector<std::string> validate_graded_contraction(const ZGrading& x, const ZGrading& y,
                                                     const GraphMorphism& map,
                                                     const GradedContractionData& data);

// Solves for compatible offsets when they exist (anchoring one edge per
// constraint component at zero).
std::optional<GradedContractionData> induced_contraction_data(const ZGrading& x,
                                                              const ZGrading& y,
                                                              const GraphMorphism& map);

// Restriction of a grading to an open subgraph, or to a closed subgraph
// (vertex unwindings induced on the surviving half-edge subsets).
ZGrading induced_grading_open(const ZGrading& g, const OpenSubgraph& open);
ZGrading induced_grading_closed(const ZGrading& g, const std::set<std::string>& edge_ids);

// Push a grading forward along a renaming of vertices and edges.
ZGrading relabel_grading(const ZGrading& g, const std::map<std::string, std::string>& vmap,
                         const std::map<std::string, std::string>& emap);

// Searches ribbon-graph relabelings (brute force, desk scale) for one that
// carries a onto b up to torsor offsets.
bool graded_isomorphic(const ZGrading& a, const ZGrading& b);

}  // namespace rgk
