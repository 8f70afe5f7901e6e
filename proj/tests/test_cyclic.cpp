#include <algorithm>

#include "doctest.h"
#include "rgk/cyclic.hpp"

using namespace rgk;

TEST_CASE("successor structure and the compass example") {
    auto c = CyclicOrder::from_list({"E", "N", "W", "S"});
    CHECK(c.succ("E") == "N");
    CHECK(c.succ("S") == "E");
    CHECK(c.pred("E") == "S");
    auto one = CyclicOrder::from_list({"a"});
    CHECK(one.succ("a") == "a");
    CHECK_THROWS(CyclicOrder::from_list({"a", "b", "a"}));
}

TEST_CASE("derived ternary relation satisfies the four cyclic-order axioms") {
    auto abc = CyclicOrder::from_list({"a", "b", "c"});
    CHECK(abc.rel("a", "b", "c"));
    CHECK(!abc.rel("a", "c", "b"));

    // Exhaustive axiom check for n <= 8 on a single representative order per n
    // plus every order for n <= 4 (the relation only depends on succ).
    std::vector<std::vector<Label>> cases;
    for (int n = 1; n <= 8; ++n) {
        std::vector<Label> ls;
        for (int i = 0; i < n; ++i) ls.push_back(std::string(1, char('a' + i)));
        cases.push_back(ls);
    }
    for (const auto& ls : cases) {
        std::vector<CyclicOrder> orders =
            ls.size() <= 4 ? all_cyclic_orders(ls) : std::vector<CyclicOrder>{CyclicOrder::from_list(ls)};
        for (const auto& c : orders) {
            for (const auto& x : ls)
                for (const auto& y : ls)
                    for (const auto& z : ls) {
                        bool r = (x != y && y != z && x != z) && c.rel(x, y, z);
                        if (r) CHECK(c.rel(y, z, x));                       // axiom 1
                        if (y == z) CHECK(!c.rel(x, y, z));                 // axiom 2
                        if (x != y && y != z && x != z)
                            CHECK(c.rel(x, y, z) != c.rel(x, z, y));        // axiom 3
                        if (r)
                            for (const auto& w : ls) {
                                if (w == x || w == y || w == z) continue;
                                // axiom 4 (transitivity anchored at x)
                                if (c.rel(x, z, w)) {
                                    CHECK(c.rel(x, y, w));
                                    CHECK(c.rel(y, z, w));
                                }
                            }
                    }
        }
    }
}

TEST_CASE("induced orders") {
    auto c = CyclicOrder::from_list({"E", "N", "W", "S"});
    auto ew = induced_order(c, {"E", "W"});
    CHECK(ew.succ("E") == "W");
    CHECK(ew.succ("W") == "E");

    auto abcd = CyclicOrder::from_list({"a", "b", "c", "d"});
    auto acd = induced_order(abcd, {"a", "c", "d"});
    CHECK(acd.succ("a") == "c");
    CHECK(acd.succ("c") == "d");
    CHECK(acd.succ("d") == "a");

    CHECK(induced_order(abcd, {"a", "b", "c", "d"}) == abcd);
    CHECK_THROWS(induced_order(abcd, {}));

    // Transitivity: restricting in stages agrees with restricting at once.
    auto big = CyclicOrder::from_list({"a", "b", "c", "d", "e", "f"});
    auto s1 = induced_order(big, {"a", "b", "d", "e", "f"});
    CHECK(induced_order(s1, {"a", "d", "f"}) == induced_order(big, {"a", "d", "f"}));
}

TEST_CASE("noninterlacing") {
    auto c1 = CyclicOrder::from_list({"a", "b", "c", "d"});
    CHECK(noninterlacing(c1, {"a", "b"}, {"c", "d"}));
    auto c2 = CyclicOrder::from_list({"a", "c", "b", "d"});
    CHECK(!noninterlacing(c2, {"a", "b"}, {"c", "d"}));
    CHECK(noninterlacing(c2, {"a"}, {"b", "c", "d"}));  // no 4-tuple exists
}

TEST_CASE("join against brute-force characterization") {
    auto c1 = CyclicOrder::from_list({"a", "b", "p"});
    auto c2 = CyclicOrder::from_list({"c", "d", "q"});
    auto j = join(c1, "p", c2, "q");
    CHECK(j == CyclicOrder::from_list({"a", "b", "c", "d"}));

    // Oracle: exactly one cyclic order on the 4 labels is noninterlacing with
    // both parts inheriting their induced orders and spliced at the removed
    // elements, i.e. with (pred(p), succ(q)) and (pred(q), succ(p)) minimal.
    int matches = 0;
    for (const auto& cand : all_cyclic_orders({"a", "b", "c", "d"})) {
        bool ok = noninterlacing(cand, {"a", "b"}, {"c", "d"}) &&
                  induced_order(cand, {"a", "b"}) == induced_order(c1, {"a", "b"}) &&
                  induced_order(cand, {"c", "d"}) == induced_order(c2, {"c", "d"}) &&
                  cand.minimal_pair("b", "c") &&  // pred1(p) -> succ2(q)
                  cand.minimal_pair("d", "a");    // pred2(q) -> succ1(p)
        if (ok) {
            ++matches;
            CHECK(cand == j);
        }
    }
    CHECK(matches == 1);

    // Two-element join is substitution.
    auto cx = CyclicOrder::from_list({"x", "q"});
    CHECK(join(c1, "p", cx, "q") == CyclicOrder::from_list({"a", "b", "x"}));

    // Triple joins keep all three parts noninterlacing.
    auto c3 = CyclicOrder::from_list({"e", "f", "r"});
    auto jj = join(join(c1, "p", c2, "q"), "d", c3, "r");
    CHECK(noninterlacing(jj, {"a", "b"}, {"e", "f"}));
    CHECK(noninterlacing(jj, {"a", "b"}, {"c"}));
    CHECK(noninterlacing(jj, {"c"}, {"e", "f"}));
}

TEST_CASE("compass unwinding torsor axioms") {
    auto u = Unwinding::compass();
    CHECK(u.validate().empty());

    CoverElem x{"N", 3};
    CHECK(u.act_word("RRRR", x) == u.act_word("SS", x));
    CHECK(u.act_word("", x) == x);
    CHECK(u.act_word("RRRRss", x) == x);  // R^n S^-2 = identity

    // Words of length <= 4 in the generators act consistently with normal
    // forms: R^4 = S^2 wherever both sides are defined.
    for (const auto& base : {"E", "N", "W", "S"})
        for (long long lvl = -2; lvl <= 2; ++lvl) {
            CoverElem y{base, lvl};
            CHECK(u.act_word("RS", y) == u.act_word("SR", y));
            CHECK(u.act_word("Rs", y) == u.act_word("sR", y));
        }
}

TEST_CASE("induced unwindings") {
    auto u = Unwinding::compass();
    CHECK(u.induced({"E", "N", "W", "S"}) == u);

    auto ew = u.induced({"E", "W"});
    CHECK(ew.validate().empty());
    // Over E the new R composes the E->N and N->W shifts (0); over W it picks
    // up the S->E jump.
    CHECK(ew.rshift().at("E") == 0);
    CHECK(ew.rshift().at("W") == 2);
    CHECK(ew.act_R({"E", 5}) == CoverElem{"W", 5});
    CHECK(ew.act_R({"W", 5}) == CoverElem{"E", 7});

    auto single = u.induced({"N"});
    CHECK(single.validate().empty());
    CHECK(single.act_R({"N", 0}) == CoverElem{"N", 2});  // minimal loop = S^2
    CHECK_THROWS(u.induced({}));
}
