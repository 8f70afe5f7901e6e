#pragma once

#include "rgk/quiver.hpp"
#include "rgk/ribbon.hpp"

namespace rgk {

// Dualizability, the base graph, the wheel cover, glued objects of the
// constructible plumbing model, the glued Hom computation, and the sieve
// machinery for partial contractions.

enum class BaseShape { PATH, CYCLE, OTHER };

// A base edge is a class of X-edges attached along the same pair of
// zero-section component sides; noncompact X-edges on one side form a
// noncompact base edge.
struct BaseEdgeInfo {
    std::string id;  // least member chord
    std::vector<std::pair<std::string, int>> ends;  // (component key, side 0/1)
    std::vector<std::string> chords;                // sorted member X-edges
    bool compact() const { return ends.size() == 2; }
};

struct BaseGraphInfo {
    std::map<std::string, std::set<std::string>> components;  // key = least vertex
    std::vector<BaseEdgeInfo> edges;
    BaseShape shape = BaseShape::OTHER;
    bool has_loop = false;  // a chord joins a component to itself
    std::vector<std::string> notes;
};

BaseGraphInfo base_graph(const ChordalStructure& c);

struct DualizableResult {
    bool ok = false;
    std::string offender;  // component key when not dualizable
    BaseShape shape = BaseShape::OTHER;
    std::vector<long long> indices;              // a_1..a_n along the base
    std::vector<std::string> base_edge_order;    // base edge ids in that order
    std::vector<std::string> component_order;    // wheel order (n-1 or n keys)
};

DualizableResult dualizable(const ChordalStructure& c);

// One wheel chart: the zero-section component plus its chord stubs, read as a
// conic Lagrangian over the circle (or line, for noncompact components).
struct WheelChart {
    std::string component;
    ConicLagrangian lagrangian;
    Quiver quiver;
    std::vector<std::string> vertex_cycle;            // orientation order
    std::map<std::string, std::size_t> chord_arrow;   // X-chord -> arrow index
    std::map<std::string, Rat> chord_pos;             // X-chord -> position
};

struct OverlapInfo {
    std::string base_edge;
    std::size_t left = 0, right = 0;  // wheel indices
    std::vector<std::string> chords;
};

struct WheelCover {
    BaseShape shape = BaseShape::OTHER;
    std::vector<long long> indices;
    std::vector<WheelChart> wheels;
    std::vector<OverlapInfo> overlaps;
};

WheelCover wheel_cover(const ChordalStructure& c);

// Objects of CPM(X): a representation per wheel plus, for every overlap
// chord, invertible identifications of the graded microlocal stalks taken in
// the canonical kernel/cokernel bases (reference side = left wheel).
struct GluePair {
    Mat g_minus1, g0;
};

struct GluedObject {
    std::vector<Rep> reps;
    std::map<std::string, GluePair> glue;  // keyed by overlap chord
};

std::vector<std::string> validate_glued(const WheelCover& cover, const GluedObject& obj);

// The structure-sheaf-type object: on each wheel the extension-by-zero of
// the rank-one constant sheaf on the open arc between the two distinguished
// chords (least ids per side), glued by identity on the distinguished
// microlocal stalks.
GluedObject structure_sheaf(const WheelCover& cover);

GluedObject direct_sum(const WheelCover& cover, const GluedObject& a, const GluedObject& b);

struct CpmHom {
    std::size_t h_minus1 = 0, h0 = 0, h1 = 0;
    long long euler() const {
        return static_cast<long long>(h0) - static_cast<long long>(h_minus1) -
               static_cast<long long>(h1);
    }
    bool operator==(const CpmHom& o) const = default;
};

// Cohomology of the homotopy fiber of (wheel Homs) -> (overlap graded Homs).
CpmHom cpm_hom(const WheelCover& cover, const GluedObject& a, const GluedObject& b);

// Builders for the desk-scale corpus: a dualizable graph with the given
// shape and indices (wheel j carries a_j chords on its previous side and
// a_{j+1} on its next side, one chord per vertex).
ChordalStructure make_balloon_graph(BaseShape shape, const std::vector<long long>& indices);

// Subdivide every zero-section edge once (cover refinement for the
// independence checks).
ChordalStructure subdivide_zero_section(const ChordalStructure& c);

// --- Sieves ------------------------------------------------------------------
//
// A sieve on X is a precomposition-closed set of partial contractions out of
// X.  Sieves here are explicit member lists saturated within a finite
// universe of morphisms, which keeps membership decidable.

struct Sieve {
    std::vector<PartialContraction> members;
    bool contains(const PartialContraction& f) const;
};

// Generated sieve: close `generators` under precomposition with morphisms
// whose source matches a member's target, up to the given depth.
Sieve generate_sieve(const std::vector<PartialContraction>& generators,
                     const std::vector<PartialContraction>& universe, int depth = 3);

// Standard morphism universe on x: identity, star inclusions, plus any
// supplied extras (e.g. contractions).
std::vector<PartialContraction> standard_morphisms(const RibbonGraph& x,
                                                   const std::vector<PartialContraction>& extra = {});

// g is in f*U iff f then g lies in U.
Sieve pullback_sieve(const PartialContraction& f, const Sieve& u,
                     const std::vector<PartialContraction>& candidates_on_target);

// Every vertex of x lies in the image of some member's open part.
bool is_covering(const RibbonGraph& x, const Sieve& u);

}  // namespace rgk
