#include "doctest.h"
#include "rgk/ribbon.hpp"

using namespace rgk;

namespace {

Edge mk(const std::string& id, std::optional<std::string> a, std::optional<std::string> b,
        int lo = 0, int hi = 1) {
    Edge e;
    e.id = id;
    e.end[0] = std::move(a);
    e.end[1] = std::move(b);
    e.lo = lo;
    e.hi = hi;
    return e;
}

RibbonGraph circle2() {
    RibbonGraph r;
    r.graph = Graph({"u", "w"}, {mk("a", "u", "w"), mk("b", "w", "u")});
    r.orders["u"] = CyclicOrder::from_list({"a", "b"});
    r.orders["w"] = CyclicOrder::from_list({"a", "b"});
    return r;
}

RibbonGraph theta(bool mirrored) {
    RibbonGraph r;
    r.graph = Graph({"u", "w"}, {mk("e1", "u", "w"), mk("e2", "u", "w"), mk("e3", "u", "w")});
    r.orders["u"] = CyclicOrder::from_list({"e1", "e2", "e3"});
    r.orders["w"] = mirrored ? CyclicOrder::from_list({"e3", "e2", "e1"})
                             : CyclicOrder::from_list({"e1", "e2", "e3"});
    return r;
}

// Two trivalent vertices joined by one internal edge, four leaves.
RibbonGraph two_vertex_tree(const CyclicOrder& cu, const CyclicOrder& cw) {
    RibbonGraph r;
    std::vector<Edge> es = {mk("m", "u", "w")};
    for (const Label& l : cu.sequence())
        if (l != "m") es.push_back(mk(l, "u", std::nullopt));
    for (const Label& l : cw.sequence())
        if (l != "m") es.push_back(mk(l, std::nullopt, "w"));
    r.graph = Graph({"u", "w"}, es);
    r.orders["u"] = cu;
    r.orders["w"] = cw;
    return r;
}

}  // namespace

TEST_CASE("boundary components of the circle and the theta graph") {
    auto walks = boundary_components(circle2());
    CHECK(walks.size() == 2);
    for (const Walk& w : walks) CHECK(w.compact);

    CHECK(boundary_components(theta(true)).size() == 3);
    CHECK(boundary_components(theta(false)).size() == 1);

    // Partition property: every directed edge side in exactly one walk.
    std::size_t sides = 0;
    for (const Walk& w : boundary_components(theta(false))) sides += w.edges.size();
    CHECK(sides == 6);
}

TEST_CASE("genus") {
    CHECK(genus(circle2()) == 0);
    CHECK(genus(theta(true)) == 0);
    CHECK(genus(theta(false)) == 1);

    // Genus is invariant under subdivision.
    RibbonGraph t = theta(false);
    RibbonGraph sub;
    sub.graph = t.graph.subdivide("e2", "m", "e2a", "e2b");
    sub.orders = t.orders;
    sub.orders["u"] = CyclicOrder::from_list({"e1", "e2a", "e3"});
    sub.orders["w"] = CyclicOrder::from_list({"e1", "e2b", "e3"});
    sub.orders["m"] = CyclicOrder::from_list({"e2a", "e2b"});
    CHECK(genus(sub) == 1);

    CHECK_THROWS(genus(two_vertex_tree(CyclicOrder::from_list({"m", "a", "b"}),
                                       CyclicOrder::from_list({"m", "c", "d"}))));
}

TEST_CASE("leaf cyclic order of stars and trees") {
    // Star of a trivalent vertex: the leaf order is the vertex order.
    RibbonGraph st;
    st.graph = Graph({"v"}, {mk("a", "v", std::nullopt), mk("b", "v", std::nullopt),
                             mk("c", "v", std::nullopt)});
    st.orders["v"] = CyclicOrder::from_list({"a", "c", "b"});
    auto walks = boundary_components(st);
    CHECK(walks.size() == 3);
    for (const Walk& w : walks) CHECK(!w.compact);
    CHECK(leaf_cyclic_order(st) == CyclicOrder::from_list({"a", "c", "b"}));

    // One-internal-edge trees: leaf order equals the join, over all vertex
    // orders with three half-edges per vertex.
    for (const auto& cu : all_cyclic_orders({"m", "a", "b"}))
        for (const auto& cw : all_cyclic_orders({"m", "c", "d"})) {
            RibbonGraph t = two_vertex_tree(cu, cw);
            CHECK(leaf_cyclic_order(t) == join(cu, "m", cw, "m"));
        }
}

TEST_CASE("chordal validation") {
    // Wheel: circle as zero section, one spoke up at u and one down at w.
    RibbonGraph r;
    r.graph = Graph({"u", "w"}, {mk("z0", "u", "w"), mk("z1", "w", "u"),
                                 mk("s0", "u", std::nullopt), mk("s1", "w", std::nullopt)});
    r.orders["u"] = CyclicOrder::from_list({"z0", "s0", "z1"});
    r.orders["w"] = CyclicOrder::from_list({"z0", "s1", "z1"});
    CHECK(validate_chordal(r, {"z0", "z1"}).empty());

    // Degree five cannot be chordal.
    RibbonGraph r5;
    r5.graph = Graph({"u", "w"},
                     {mk("z0", "u", "w"), mk("z1", "w", "u"), mk("s0", "u", std::nullopt),
                      mk("s1", "u", std::nullopt), mk("s2", "u", std::nullopt)});
    r5.orders["u"] = CyclicOrder::from_list({"z0", "s0", "s1", "s2", "z1"});
    r5.orders["w"] = CyclicOrder::from_list({"z0", "z1"});
    auto errs = validate_chordal(r5, {"z0", "z1"});
    REQUIRE(!errs.empty());
    CHECK(errs.front().find("degree at most 4") != std::string::npos);

    // Both extra half-edges on one side of Z.
    RibbonGraph rb;
    rb.graph = Graph({"u", "w"}, {mk("z0", "u", "w"), mk("z1", "w", "u"),
                                  mk("s0", "u", std::nullopt), mk("s1", "u", std::nullopt)});
    rb.orders["u"] = CyclicOrder::from_list({"z0", "s0", "s1", "z1"});
    rb.orders["w"] = CyclicOrder::from_list({"z0", "z1"});
    auto errs2 = validate_chordal(rb, {"z0", "z1"});
    REQUIRE(!errs2.empty());
    CHECK(errs2.front().find("side") != std::string::npos);

    // Missing a vertex from Z.
    RibbonGraph rm = circle2();
    CHECK(!validate_chordal(rm, {"a"}).empty());
}

TEST_CASE("simple contraction accepts joins and rejects others") {
    auto cu = CyclicOrder::from_list({"m", "a", "b"});
    auto cw = CyclicOrder::from_list({"m", "c", "d"});
    RibbonGraph t = two_vertex_tree(cu, cw);

    auto built = contract_edges(t, {"m"});
    CHECK(validate_simple_contraction(t, built.target, built.map).empty());
    CHECK(built.target.orders.at("u") == join(cu, "m", cw, "m"));

    // Identity is a contraction.
    RibbonGraph c = circle2();
    CHECK(validate_simple_contraction(c, c, GraphMorphism::identity(c.graph)).empty());

    // Any other target order is rejected with a minimal-pair report.
    for (const auto& other : all_cyclic_orders({"a", "b", "c", "d"})) {
        if (other == built.target.orders.at("u")) continue;
        RibbonGraph bad = built.target;
        bad.orders["u"] = other;
        auto errs = validate_simple_contraction(t, bad, built.map);
        REQUIRE(!errs.empty());
        CHECK(errs.front().find("minimal pair") != std::string::npos);
    }
}

TEST_CASE("partial contractions compose via preimages") {
    // Path p1 - p2 - p3 - p4 with a leaf at each end vertex.
    RibbonGraph x;
    x.graph = Graph({"p1", "p2", "p3", "p4"},
                    {mk("c1", "p1", "p2"), mk("c2", "p2", "p3"), mk("c3", "p3", "p4"),
                     mk("l1", "p1", std::nullopt), mk("l4", "p4", std::nullopt)});
    x.orders["p1"] = CyclicOrder::from_list({"c1", "l1"});
    x.orders["p2"] = CyclicOrder::from_list({"c1", "c2"});
    x.orders["p3"] = CyclicOrder::from_list({"c2", "c3"});
    x.orders["p4"] = CyclicOrder::from_list({"c3", "l4"});

    auto built = contract_edges(x, {"c2"});
    PartialContraction f = PartialContraction::full_contraction(x, built.target, built.map);
    CHECK(f.diagnose().empty());

    OpenSubgraph st = OpenSubgraph::star_of(built.target.graph, "p2");
    PartialContraction g = PartialContraction::open_inclusion(built.target, st);
    CHECK(g.diagnose().empty());

    PartialContraction gf = compose_partial(g, f);
    CHECK(gf.diagnose().empty());
    // The middle open part is the preimage tree over star(p2).
    CHECK(gf.open.vertices == std::set<std::string>{"p2", "p3"});
    CHECK(gf.open.edge_parts.count("c1"));
    CHECK(gf.open.edge_parts.count("c2"));
    CHECK(gf.open.edge_parts.count("c3"));

    // Identity composes neutrally and composition is associative here.
    PartialContraction idx = PartialContraction::identity(x);
    CHECK(compose_partial(f, idx) == f);
    PartialContraction h = PartialContraction::identity(gf.target);
    CHECK(compose_partial(h, compose_partial(g, f)) == compose_partial(compose_partial(h, g), f));
}
