#include <map>
#include <random>

#include "doctest.h"
#include "rgk/quiver.hpp"

using namespace rgk;

namespace {

ConicLagrangian bot_top() {
    // Zero section, fiber at 0, upward spoke at -1, downward spoke at +1.
    return ConicLagrangian::make(BaseKind::LINE, {{Rat(-1), SpokeDir::UP},
                                                  {Rat(0), SpokeDir::UP},
                                                  {Rat(0), SpokeDir::DOWN},
                                                  {Rat(1), SpokeDir::DOWN}});
}

Mat scalar(const Rat& x) {
    Mat m(1, 1);
    m(0, 0) = x;
    return m;
}

// Brute-force indecomposable count over 0/1 dimension vectors and 0/1 arrow
// scalars, deciding by endomorphism dimension 1.
std::size_t count_indecomposables_01(const Quiver& q) {
    const std::size_t n = q.cells.size(), a = q.arrows.size();
    std::set<std::pair<std::vector<std::size_t>, std::vector<int>>> found;
    for (std::size_t dm = 1; dm < (std::size_t(1) << n); ++dm) {
        std::vector<std::size_t> dims(n);
        for (std::size_t v = 0; v < n; ++v) dims[v] = (dm >> v) & 1;
        std::vector<std::size_t> live;
        for (std::size_t i = 0; i < a; ++i)
            if (dims[q.arrows[i].src] == 1 && dims[q.arrows[i].dst] == 1) live.push_back(i);
        for (std::size_t pat = 0; pat < (std::size_t(1) << live.size()); ++pat) {
            Rep m;
            m.dims = dims;
            std::vector<int> key(a, -1);
            for (std::size_t i = 0; i < a; ++i)
                m.maps.push_back(Mat(dims[q.arrows[i].dst], dims[q.arrows[i].src]));
            for (std::size_t li = 0; li < live.size(); ++li) {
                int bit = (pat >> li) & 1;
                key[live[li]] = bit;
                m.maps[live[li]](0, 0) = bit;
            }
            if (hom_ext(q, m, m).first == 1) found.insert({dims, key});
        }
    }
    return found.size();
}

}  // namespace

TEST_CASE("line partitions follow the boundary rules") {
    auto cells = partition(bot_top());
    REQUIRE(cells.size() == 5);
    CHECK(cells[0].label() == "(-inf,-1)");
    CHECK(cells[1].label() == "[-1,0)");
    CHECK(cells[2].label() == "{0}");
    CHECK(cells[3].label() == "(0,1]");
    CHECK(cells[4].label() == "(1,+inf)");

    auto none = partition(ConicLagrangian::make(BaseKind::LINE, {}));
    REQUIRE(none.size() == 1);
    CHECK(none[0].label() == "(-inf,+inf)");

    auto one_up = partition(ConicLagrangian::make(BaseKind::LINE, {{Rat(0), SpokeDir::UP}}));
    REQUIRE(one_up.size() == 2);
    CHECK(one_up[0].label() == "(-inf,0)");
    CHECK(one_up[1].label() == "[0,+inf)");
}

TEST_CASE("quiver of the bot-top Lagrangian is the A5 zigzag") {
    Quiver q = quiver_from_lagrangian(bot_top());
    CHECK(q.cells.size() == 5);
    CHECK(q.arrows.size() == 4);
    CHECK(q.shape() == "1->0 2->1 2->3 3->4");

    // Constant sheaf has vanishing microlocal stalk at every spoke.
    Rep c = Rep::constant(q);
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        Stalk s = microlocal_stalk(q, c, a);
        CHECK(s.h_minus1 == 0);
        CHECK(s.h0 == 0);
    }

    // A_{n+1} cell count.
    CHECK(partition(bot_top()).size() == bot_top().spokes.size() + 1);
}

TEST_CASE("circle quivers") {
    auto kron = ConicLagrangian::make(
        BaseKind::CIRCLE, {{Rat(0), SpokeDir::UP}, {Rat(0), SpokeDir::DOWN}});
    Quiver q = quiver_from_lagrangian(kron);
    CHECK(q.cells.size() == 2);
    REQUIRE(q.arrows.size() == 2);
    CHECK(q.arrows[0].src == q.arrows[1].src);
    CHECK(q.arrows[0].dst == q.arrows[1].dst);
    CHECK(q.cells[q.arrows[0].src].point);

    auto bare = quiver_from_lagrangian(ConicLagrangian::make(BaseKind::CIRCLE, {}));
    CHECK(bare.cells.size() == 1);
    CHECK(bare.arrows.empty());

    // Separated up/down spokes still give the Kronecker shape.
    auto sep = quiver_from_lagrangian(ConicLagrangian::make(
        BaseKind::CIRCLE, {{Rat(0), SpokeDir::UP}, {Rat(1, 2), SpokeDir::DOWN}}));
    CHECK(sep.cells.size() == 2);
    REQUIRE(sep.arrows.size() == 2);
    CHECK(sep.arrows[0].src == sep.arrows[1].src);
    CHECK(sep.arrows[0].dst == sep.arrows[1].dst);
}

TEST_CASE("hom and ext on small quivers") {
    Quiver a2 = type_a_quiver({false});  // 0 -> 1
    Rep s0 = Rep::simple(a2, 0), s1 = Rep::simple(a2, 1);
    CHECK(hom_ext(a2, s0, s0) == std::pair<std::size_t, std::size_t>{1, 0});
    CHECK(hom_ext(a2, s0, s1) == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(hom_ext(a2, s1, s0) == std::pair<std::size_t, std::size_t>{0, 0});

    // Kronecker projectives give the Beilinson pattern [[1,2],[0,1]].
    auto kron = quiver_from_lagrangian(ConicLagrangian::make(
        BaseKind::CIRCLE, {{Rat(0), SpokeDir::UP}, {Rat(0), SpokeDir::DOWN}}));
    Rep p_src = projective(kron, kron.arrows[0].src);
    Rep p_dst = projective(kron, kron.arrows[0].dst);
    // p_dst plays O, p_src plays O(1).
    CHECK(hom_ext(kron, p_dst, p_dst).first == 1);
    CHECK(hom_ext(kron, p_dst, p_src).first == 2);
    CHECK(hom_ext(kron, p_src, p_dst).first == 0);
    CHECK(hom_ext(kron, p_src, p_src).first == 1);
    for (const Rep* m : {&p_src, &p_dst})
        for (const Rep* n : {&p_src, &p_dst}) CHECK(hom_ext(kron, *m, *n).second == 0);
}

TEST_CASE("euler form equals hom minus ext") {
    std::mt19937_64 rng(20240811);
    std::vector<Quiver> quivers = {type_a_quiver({false}), type_a_quiver({true, false}),
                                   type_a_quiver({false, false, true}),
                                   quiver_from_lagrangian(ConicLagrangian::make(
                                       BaseKind::CIRCLE, {{Rat(0), SpokeDir::UP},
                                                          {Rat(1, 3), SpokeDir::DOWN},
                                                          {Rat(2, 3), SpokeDir::UP}}))};
    for (const Quiver& q : quivers) {
        // Unit vectors with no incident arrows give 1; A2 mixed gives -1.
        for (int trial = 0; trial < 25; ++trial) {
            Rep m, n;
            auto rnd_rep = [&]() {
                Rep r;
                for (std::size_t v = 0; v < q.cells.size(); ++v)
                    r.dims.push_back(rng() % 3);
                for (const Arrow& a : q.arrows) {
                    Mat f(r.dims[a.dst], r.dims[a.src]);
                    for (std::size_t i = 0; i < f.rows(); ++i)
                        for (std::size_t j = 0; j < f.cols(); ++j)
                            f(i, j) = Rat(static_cast<int>(rng() % 5) - 2);
                    r.maps.push_back(f);
                }
                return r;
            };
            m = rnd_rep();
            n = rnd_rep();
            auto [h, e] = hom_ext(q, m, n);
            std::vector<long long> dm(m.dims.begin(), m.dims.end());
            std::vector<long long> dn(n.dims.begin(), n.dims.end());
            CHECK(euler_form(q, dm, dn) ==
                  static_cast<long long>(h) - static_cast<long long>(e));
        }
    }
    Quiver a2 = type_a_quiver({false});
    CHECK(euler_form(a2, {1, 0}, {0, 1}) == -1);
}

TEST_CASE("microlocal stalks detect local constancy") {
    Quiver a2 = type_a_quiver({false});
    Rep m;
    m.dims = {1, 1};
    m.maps = {scalar(1)};
    Stalk s = microlocal_stalk(a2, m, 0);
    CHECK(s.h_minus1 == 0);
    CHECK(s.h0 == 0);
    m.maps = {scalar(0)};
    s = microlocal_stalk(a2, m, 0);
    CHECK(s.h_minus1 == 1);
    CHECK(s.h0 == 1);
}

TEST_CASE("BGP reflection") {
    Quiver a2 = type_a_quiver({false});  // 0 -> 1; vertex 1 is the sink
    Rep p;
    p.dims = {1, 1};
    p.maps = {scalar(1)};
    Reflected r = bgp_reflect(a2, 1, p);
    CHECK(r.quiver.shape() == "1->0");
    CHECK(r.rep.dims == std::vector<std::size_t>{1, 0});
    auto sd = reflect_dim_vector(a2, 1, {1, 1});
    CHECK(sd == std::vector<long long>{1, 0});

    CHECK_THROWS(bgp_reflect(type_a_quiver({false, false}), 1, Rep::zero(type_a_quiver({false, false}))));

    // Reflection preserves the Euler form on reflected dimension vectors.
    for (const Quiver& q : {type_a_quiver({false, true, false}), type_a_quiver({true, true})}) {
        for (std::size_t x = 0; x < q.cells.size(); ++x) {
            if (!q.is_sink(x) && !q.is_source(x)) continue;
            Reflected rf = bgp_reflect(q, x, Rep::zero(q));
            for (long long dm = 0; dm < (1 << q.cells.size()); ++dm)
                for (long long em = 0; em < (1 << q.cells.size()); ++em) {
                    std::vector<long long> d, e;
                    for (std::size_t v = 0; v < q.cells.size(); ++v) {
                        d.push_back((dm >> v) & 1);
                        e.push_back((em >> v) & 1);
                    }
                    CHECK(euler_form(q, d, e) == euler_form(rf.quiver, reflect_dim_vector(q, x, d),
                                                            reflect_dim_vector(q, x, e)));
                }
        }
    }
}

TEST_CASE("indecomposable counts of type A") {
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<bool> dirs(n >= 1 ? n - 1 : 0, false);
        if (n >= 3) dirs[1] = true;  // a mixed orientation
        Quiver q = n == 1 ? type_a_quiver({}) : type_a_quiver(dirs);
        CHECK(count_indecomposables_01(q) == n * (n + 1) / 2);
        // Any admissible reflection preserves the count.
        for (std::size_t x = 0; x < q.cells.size(); ++x) {
            if (!q.is_sink(x) && !q.is_source(x)) continue;
            Reflected rf = bgp_reflect(q, x, Rep::zero(q));
            CHECK(count_indecomposables_01(rf.quiver) == n * (n + 1) / 2);
        }
    }
}

TEST_CASE("spoke normalization") {
    auto canon = normalize_spokes(bot_top());
    CHECK(canon.points().size() == 3);
    CHECK(canon.points()[0] == 1);
    CHECK(canon.points()[2] == 3);
    CHECK(canon.has(Rat(1), SpokeDir::UP));
    CHECK(canon.has(Rat(2), SpokeDir::UP));
    CHECK(canon.has(Rat(2), SpokeDir::DOWN));
    CHECK(canon.has(Rat(3), SpokeDir::DOWN));
    CHECK(normalize_spokes(canon) == canon);

    // Rotated circle patterns normalize identically.
    auto w1 = ConicLagrangian::make(BaseKind::CIRCLE, {{Rat(0), SpokeDir::UP},
                                                       {Rat(1, 7), SpokeDir::UP},
                                                       {Rat(2, 7), SpokeDir::DOWN},
                                                       {Rat(3, 7), SpokeDir::DOWN},
                                                       {Rat(5, 7), SpokeDir::DOWN}});
    auto w2 = ConicLagrangian::make(BaseKind::CIRCLE, {{Rat(1, 2), SpokeDir::UP},
                                                       {Rat(5, 8), SpokeDir::UP},
                                                       {Rat(3, 4), SpokeDir::DOWN},
                                                       {Rat(7, 8), SpokeDir::DOWN},
                                                       {Rat(1, 4), SpokeDir::DOWN}});
    CHECK(normalize_spokes(w1) == normalize_spokes(w2));
}
