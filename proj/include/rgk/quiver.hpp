#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rgk/linalg.hpp"
#include "rgk/rational.hpp"

namespace rgk {

// Conic Lagrangians over a line or a circle, their cell partitions, the
// associated quivers, and finite-dimensional representations over exact
// rationals.  Circle coordinates live in [0,1).

enum class BaseKind { LINE, CIRCLE };
enum class SpokeDir { UP, DOWN };

struct Spoke {
    Rat at;
    SpokeDir dir;
    bool operator==(const Spoke& o) const = default;
};

struct ConicLagrangian {
    BaseKind base = BaseKind::LINE;
    std::vector<Spoke> spokes;  // sorted by (position, UP first)

    static ConicLagrangian make(BaseKind base, std::vector<Spoke> spokes);
    std::vector<Rat> points() const;  // distinct marked positions, increasing
    bool has(const Rat& at, SpokeDir d) const;
    bool operator==(const ConicLagrangian& o) const = default;
};

// One cell of the partition P: either a marked point carrying both an upward
// and a downward spoke, or an interval with explicit closure flags.  LINE end
// cells are unbounded on one side; CIRCLE intervals may wrap (hi = lo + 1 for
// a full loop back to the same point).
struct Cell {
    bool point = false;
    Rat lo, hi;
    bool lo_closed = false, hi_closed = false;
    bool lo_unbounded = false, hi_unbounded = false;
    std::string label() const;
    bool operator==(const Cell& o) const = default;
};

std::vector<Cell> partition(const ConicLagrangian& lag);

struct Arrow {
    std::size_t src = 0, dst = 0;
    Spoke spoke;  // the spoke this arrow realizes
    bool operator==(const Arrow& o) const = default;
};

struct Quiver {
    BaseKind base = BaseKind::LINE;
    std::vector<Cell> cells;
    std::vector<Arrow> arrows;

    bool acyclic() const;
    bool is_sink(std::size_t v) const;
    bool is_source(std::size_t v) const;
    std::optional<std::size_t> arrow_at(const Rat& at, SpokeDir d) const;
    // Shape string such as "1->0 2->1 2->3 3->4" (arrows in order).
    std::string shape() const;
    bool operator==(const Quiver& o) const = default;
};

// Vertices are the partition cells; an upward spoke gives a left-pointing
// arrow and a downward spoke a right-pointing one, i.e. an arrow from I to J
// whenever the closure of J meets I.
Quiver quiver_from_lagrangian(const ConicLagrangian& lag);

// Abstract quiver builders (test and harness helpers).
Quiver type_a_quiver(const std::vector<bool>& arrow_points_left);

struct Rep {
    std::vector<std::size_t> dims;  // per cell
    std::vector<Mat> maps;          // per arrow: dims[dst] x dims[src]

    static Rep zero(const Quiver& q);
    static Rep simple(const Quiver& q, std::size_t v);
    // All spaces one-dimensional, all maps identity.
    static Rep constant(const Quiver& q);
    std::vector<std::string> diagnose(const Quiver& q) const;
    bool operator==(const Rep& o) const = default;
};

// The two-term Hom complex  (+)_v Hom(M_v, N_v) -> (+)_a Hom(M_s(a), N_t(a)),
// phi |-> N_a phi_s - phi_t M_a.  Returns the differential together with the
// coordinate offsets of each vertex / arrow block.
struct HomComplex {
    std::size_t dim0 = 0, dim1 = 0;
    Mat delta;
    std::vector<std::size_t> vertex_offset;  // into degree 0
    std::vector<std::size_t> arrow_offset;   // into degree 1
};
HomComplex hom_complex(const Quiver& q, const Rep& m, const Rep& n);

// (dim Hom, dim Ext^1) as kernel and cokernel of the Hom complex.
std::pair<std::size_t, std::size_t> hom_ext(const Quiver& q, const Rep& m, const Rep& n);

// Euler form <d,e> = sum_v d_v e_v - sum_a d_s(a) e_t(a).
long long euler_form(const Quiver& q, const std::vector<long long>& d,
                     const std::vector<long long>& e);
std::vector<long long> reflect_dim_vector(const Quiver& q, std::size_t x,
                                          const std::vector<long long>& d);

// Microlocal stalk at an arrow: cohomology of Cone(M_a) in degrees (-1, 0),
// i.e. (dim ker M_a, dim coker M_a), with the canonical bases used for
// gluing.
struct Stalk {
    std::size_t h_minus1 = 0, h0 = 0;
    Mat ker_basis;        // dims[src] x h_minus1
    Mat ker_retraction;   // h_minus1 x dims[src]
    Mat coker_proj;       // h0 x dims[dst]
    Mat coker_sec;        // dims[dst] x h0, right inverse of coker_proj
};
Stalk microlocal_stalk(const Quiver& q, const Rep& m, std::size_t arrow);

// BGP reflection at a sink or source; throws otherwise.
struct Reflected {
    Quiver quiver;
    Rep rep;
};
Reflected bgp_reflect(const Quiver& q, std::size_t x, const Rep& m);

// Canonical repositioning: the combinatorial pattern of spokes is kept and
// coordinates are replaced by equally spaced canonical ones (least rotation
// first on the circle).
ConicLagrangian normalize_spokes(const ConicLagrangian& lag);

// Indecomposable projective at v for an acyclic quiver: paths out of v.
Rep projective(const Quiver& q, std::size_t v);

}  // namespace rgk
