#include "doctest.h"
#include "rgk/cpm.hpp"

using namespace rgk;

namespace {

Edge mk(const std::string& id, std::optional<std::string> a, std::optional<std::string> b) {
    Edge e;
    e.id = id;
    e.end[0] = std::move(a);
    e.end[1] = std::move(b);
    e.lo = 0;
    e.hi = 1;
    return e;
}

// Single wheel with the zero section as its own Lagrangian (no spokes).
ChordalStructure bare_wheel() {
    RibbonGraph r;
    r.graph = Graph({"u", "w"}, {mk("z0", "u", "w"), mk("z1", "w", "u")});
    r.orders["u"] = CyclicOrder::from_list({"z0", "z1"});
    r.orders["w"] = CyclicOrder::from_list({"z0", "z1"});
    return ChordalStructure{r, {"z0", "z1"}};
}

}  // namespace

TEST_CASE("base graph of the curtain rod is a path") {
    // Two wheels joined by one chord, with one noncompact chord at each end.
    ChordalStructure c = make_balloon_graph(BaseShape::PATH, {1, 1, 1});
    BaseGraphInfo b = base_graph(c);
    CHECK(b.components.size() == 2);
    CHECK(b.edges.size() == 3);
    CHECK(b.shape == BaseShape::PATH);

    DualizableResult d = dualizable(c);
    CHECK(d.ok);
    CHECK(d.shape == BaseShape::PATH);
    CHECK(d.indices == std::vector<long long>{1, 1, 1});
}

TEST_CASE("torus fibration graph is a dualizable cycle") {
    ChordalStructure c = make_balloon_graph(BaseShape::CYCLE, {1, 1});
    BaseGraphInfo b = base_graph(c);
    CHECK(b.components.size() == 2);
    CHECK(b.shape == BaseShape::CYCLE);
    DualizableResult d = dualizable(c);
    CHECK(d.ok);
    CHECK(d.shape == BaseShape::CYCLE);
    CHECK(d.indices == std::vector<long long>{1, 1});

    WheelCover cover = wheel_cover(c);
    CHECK(cover.wheels.size() == 2);
    CHECK(cover.overlaps.size() == 2);
    for (const OverlapInfo& ov : cover.overlaps) CHECK(ov.chords.size() == 1);
}

TEST_CASE("single wheel and non-dualizable cases") {
    ChordalStructure single = make_balloon_graph(BaseShape::PATH, {1, 1});
    BaseGraphInfo b = base_graph(single);
    CHECK(b.components.size() == 1);
    CHECK(b.shape == BaseShape::PATH);
    CHECK(dualizable(single).ok);
    WheelCover cover = wheel_cover(single);
    CHECK(cover.wheels.size() == 1);
    CHECK(cover.overlaps.empty());

    // Bare circle: no chords at all, degree 0 in the base.
    CHECK(!dualizable(bare_wheel()).ok);

    // Three spokes on one side at a single wheel: sides are unbalanced.
    RibbonGraph r;
    r.graph = Graph({"u", "w"},
                    {mk("z0", "u", "w"), mk("z1", "w", "u"), mk("s0", "u", std::nullopt),
                     mk("s1", "w", std::nullopt)});
    r.orders["u"] = CyclicOrder::from_list({"z0", "s0", "z1"});
    r.orders["w"] = CyclicOrder::from_list({"z1", "s1", "z0"});
    // Both spokes on the same side: side 0 has two base edges, side 1 none.
    ChordalStructure c2{r, {"z0", "z1"}};
    CHECK(!dualizable(c2).ok);
}

TEST_CASE("cpm hom of the constant object on a bare wheel is the circle cohomology") {
    // Not dualizable, so build the chart by hand through the cover of the
    // sub-case: the bare wheel is its own chart.
    WheelCover cover;
    cover.shape = BaseShape::OTHER;
    WheelChart chart;
    chart.component = "u";
    chart.lagrangian = ConicLagrangian::make(BaseKind::CIRCLE, {});
    chart.quiver = quiver_from_lagrangian(chart.lagrangian);
    chart.vertex_cycle = {"u", "w"};
    cover.wheels.push_back(chart);

    GluedObject obj;
    obj.reps.push_back(Rep::constant(cover.wheels[0].quiver));
    CpmHom h = cpm_hom(cover, obj, obj);
    CHECK(h == CpmHom{0, 1, 1});
    CHECK(h.euler() == 0);
}

TEST_CASE("structure sheaf on the cycle (1,1): the degenerate elliptic curve") {
    WheelCover cover = wheel_cover(make_balloon_graph(BaseShape::CYCLE, {1, 1}));
    GluedObject o = structure_sheaf(cover);
    CHECK(validate_glued(cover, o).empty());
    CpmHom h = cpm_hom(cover, o, o);
    CHECK(h == CpmHom{0, 1, 1});
    CHECK(h.euler() == 0);

    // Zero object.
    GluedObject zero;
    for (const WheelChart& ch : cover.wheels) zero.reps.push_back(Rep::zero(ch.quiver));
    for (const auto& [cd, gp] : o.glue) zero.glue[cd] = GluePair{Mat(0, 0), Mat(0, 0)};
    CHECK(cpm_hom(cover, zero, zero) == CpmHom{0, 0, 0});

    // Additivity in direct sums.
    GluedObject two = direct_sum(cover, o, o);
    CpmHom h2 = cpm_hom(cover, two, o);
    CHECK(h2.h0 == 2 * h.h0);
    CHECK(h2.h1 == 2 * h.h1);
}

TEST_CASE("structure sheaf on paths has the chain cohomology") {
    for (auto indices : {std::vector<long long>{1, 1}, {1, 1, 1}, {2, 1}, {1, 2, 1}}) {
        WheelCover cover = wheel_cover(make_balloon_graph(BaseShape::PATH, indices));
        GluedObject o = structure_sheaf(cover);
        CHECK(validate_glued(cover, o).empty());
        CHECK(cpm_hom(cover, o, o) == CpmHom{0, 1, 0});
    }
    for (auto indices : {std::vector<long long>{1, 2}, {2, 2}, {1, 1, 2}}) {
        WheelCover cover = wheel_cover(make_balloon_graph(BaseShape::CYCLE, indices));
        GluedObject o = structure_sheaf(cover);
        CHECK(cpm_hom(cover, o, o) == CpmHom{0, 1, 1});
    }
}

TEST_CASE("cover independence under zero-section subdivision") {
    for (auto shape : {BaseShape::PATH, BaseShape::CYCLE}) {
        ChordalStructure c = make_balloon_graph(shape, {2, 1});
        ChordalStructure fine = subdivide_zero_section(c);
        WheelCover cov1 = wheel_cover(c), cov2 = wheel_cover(fine);
        CHECK(cov1.indices == cov2.indices);
        GluedObject o1 = structure_sheaf(cov1), o2 = structure_sheaf(cov2);
        CHECK(cpm_hom(cov1, o1, o1) == cpm_hom(cov2, o2, o2));
    }
}

TEST_CASE("reflection preserves the Euler characteristic of self-homs") {
    // Single wheel, no overlaps: reflect at any sink or source and transport.
    WheelCover cover = wheel_cover(make_balloon_graph(BaseShape::PATH, {2, 1}));
    GluedObject o = structure_sheaf(cover);
    CpmHom before = cpm_hom(cover, o, o);
    const Quiver& q = cover.wheels[0].quiver;
    bool reflected_once = false;
    for (std::size_t x = 0; x < q.cells.size(); ++x) {
        if (!q.is_sink(x) && !q.is_source(x)) continue;
        Reflected rf = bgp_reflect(q, x, o.reps[0]);
        WheelCover moved = cover;
        moved.wheels[0].quiver = rf.quiver;
        GluedObject mo;
        mo.reps.push_back(rf.rep);
        CHECK(cpm_hom(moved, mo, mo).euler() == before.euler());
        reflected_once = true;
    }
    CHECK(reflected_once);
}

TEST_CASE("sieve machinery") {
    ChordalStructure c = make_balloon_graph(BaseShape::PATH, {1, 1});
    const RibbonGraph& x = c.ribbon;
    auto universe = standard_morphisms(x);

    // The sieve generated by all vertex stars covers.
    std::vector<PartialContraction> stars;
    for (const auto& v : x.graph.vertices())
        stars.push_back(PartialContraction::open_inclusion(x, OpenSubgraph::star_of(x.graph, v)));
    Sieve star_sieve = generate_sieve(stars, universe, 2);
    CHECK(is_covering(x, star_sieve));

    // The empty sieve does not cover; a proper subset of stars does not cover.
    CHECK(!is_covering(x, Sieve{}));
    Sieve partial = generate_sieve({stars[0]}, universe, 2);
    CHECK(!is_covering(x, partial));

    // Pullback along the identity is membership-stable, and the maximal
    // sieve pulls back to a covering sieve along star inclusions.
    PartialContraction id = PartialContraction::identity(x);
    Sieve back = pullback_sieve(id, star_sieve, star_sieve.members);
    CHECK(back.members.size() == star_sieve.members.size());

    Sieve maximal = generate_sieve(universe, universe, 2);
    CHECK(is_covering(x, maximal));
    PartialContraction st = stars[0];
    auto universe_star = standard_morphisms(st.target);
    Sieve pulled = pullback_sieve(st, maximal, universe_star);
    CHECK(is_covering(st.target, pulled));
}
