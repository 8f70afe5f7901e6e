#pragma once

#include <map>

#include "rgk/cpm.hpp"
#include "rgk/linalg.hpp"

namespace rgk {

// Balloons are weighted projective lines described by their bigraded section
// rings: on the balloon with weights (a, b), sections of O(i*s1 + j*s2) are
// monomials x^m y^n with m = i + k a >= 0 and n = j - k b >= 0, one for each
// admissible k; x vanishes at the first pole, y at the second, and the twist
// pairs (i, j) and (i + a, j - b) name the same bundle.

struct Twist {
    long long i = 0, j = 0;
    bool operator==(const Twist& o) const = default;
    auto operator<=>(const Twist& o) const = default;
};

Twist canonical_twist(long long a, long long b, Twist t);  // representative with 0 <= i < a

// dim Hom(O(L), O(M)) = h^0 of the difference; exact monomial count.
long long balloon_hom(long long a, long long b, Twist l, Twist m);
// dim Ext^1(O(L), O(M)) = h^1 of the difference (negative-quadrant count).
long long balloon_ext1(long long a, long long b, Twist l, Twist m);

// The canonical tilting collection O, s1, 2 s1, ..., (a-1) s1, s2, ...,
// (b-1) s2, a s1: a + b line bundles.
std::vector<Twist> tilting_collection(long long a, long long b);

// Dimension of the degree-<= d part of the equalizer of the two evaluation
// maps C[x] x C[y] => C (pairs agreeing at the node); equals 2d + 1.
long long nodal_end_ring(long long d);

// --- Descent data on balloon chains and rings ---------------------------------

struct BalloonShape {
    BaseShape shape = BaseShape::PATH;  // PATH = chain C(A), CYCLE = ring R(A)
    std::vector<long long> indices;     // A = (a_1..a_n), n >= 2, a_i >= 1

    std::size_t balloon_count() const;
    std::size_t node_count() const;
    // Weights (a, b) of balloon beta; pole 1 carries a, pole 2 carries b.
    std::pair<long long, long long> weights(std::size_t beta) const;
    // Weight modulus at node nu (= pole-2 modulus of its left balloon).
    long long node_modulus(std::size_t nu) const;
    std::vector<std::string> diagnose() const;
};

// A section of Hom(O(L), O(M)): rational coefficients on the monomial basis
// indexed by k (relative to the stored difference pair).
struct Section {
    std::map<long long, Rat> coeff;
    bool zero() const { return coeff.empty(); }
};

// Bounded complex of line-bundle sums on one balloon.
struct BalloonComplex {
    long long min_deg = 0;
    std::vector<std::vector<Twist>> terms;  // terms[t] lives in degree min_deg + t
    // diff[t]: terms[t] -> terms[t+1]; diff[t][row][col]
    std::vector<std::vector<std::vector<Section>>> diff;

    bool has_degree(long long d) const {
        return d >= min_deg && d < min_deg + static_cast<long long>(terms.size());
    }
    const std::vector<Twist>& term(long long d) const { return terms[d - min_deg]; }
};

struct DescentComplex {
    std::vector<BalloonComplex> balloons;
    // node_glue[nu][degree] identifies fib(E^p at pole 2 of balloon nu) with
    // fib(E^p at pole 1 of balloon nu+1); entries must respect mu_a-weights.
    std::vector<std::map<long long, Mat>> node_glue;
};

std::vector<std::string> validate_descent(const BalloonShape& s, const DescentComplex& e);

// Structure sheaf: a single copy of O per balloon glued by identities.
DescentComplex descent_structure_sheaf(const BalloonShape& s);
DescentComplex descent_shift(const DescentComplex& e, long long by);
DescentComplex descent_sum(const BalloonShape& s, const DescentComplex& a,
                           const DescentComplex& b);

// Cohomology of the homotopy fiber of (balloon Homs) -> (node fiber Homs),
// with balloon Homs assembled termwise from the graded section spaces (h^0
// and h^1 pieces) and the restriction difference conjugated by the gluings.
std::map<long long, std::size_t> perf_hom(const BalloonShape& s, const DescentComplex& e,
                                          const DescentComplex& f);

// --- Beilinson-Bondal comparison ----------------------------------------------

struct BBReport {
    bool pass = false;
    std::string detail;
    std::vector<std::vector<long long>> quiver_hom;     // projectives pairwise
    std::vector<std::vector<long long>> balloon_hom_m;  // tilting pairwise
    std::vector<std::size_t> permutation;               // tilting index -> cell
};

// Builds the wheel with a1 upward and a2 downward spokes and compares the
// projective Hom/Ext pattern with the tilting collection on the balloon,
// up to a simultaneous permutation; also matches microlocal stalk positions
// against the pole weights of the matched bundles.
BBReport bb_compare(long long a1, long long a2);

// Negative-control variant comparing the (a1, a2) wheel against the
// (b1, b2) balloon.
BBReport bb_compare_cross(long long a1, long long a2, long long b1, long long b2);

}  // namespace rgk
