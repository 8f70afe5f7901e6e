#include "doctest.h"
#include "rgk/linalg.hpp"

using namespace rgk;

static Mat make(std::size_t r, std::size_t c, std::initializer_list<int> vals) {
    Mat m(r, c);
    auto it = vals.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = *it++;
    return m;
}

TEST_CASE("rank by fraction-free elimination") {
    CHECK(rank(Mat::identity(3)) == 3);
    CHECK(rank(Mat(4, 2)) == 0);
    Mat m = make(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(rank(m) == 2);
    Mat q(2, 2);
    q(0, 0) = Rat(1, 2);
    q(0, 1) = Rat(1, 3);
    q(1, 0) = Rat(3, 2);
    q(1, 1) = 1;
    CHECK(rank(q) == 1);
}

TEST_CASE("kernel and cokernel bases are exact and canonical") {
    Mat m = make(2, 3, {1, 2, 3, 2, 4, 6});
    Mat k = kernel_basis(m);
    CHECK(k.cols() == 2);
    CHECK((m * k).is_zero());
    Mat ret = kernel_retraction(m);
    CHECK(ret * k == Mat::identity(2));

    Mat q = coker_projection(m);
    CHECK(q.rows() == 1);
    CHECK((q * m).is_zero());

    // Retraction restricted to the kernel is the identity in kernel coords.
    Mat full = kernel_basis(Mat(3, 4));
    CHECK(full.cols() == 4);
}

TEST_CASE("inverse round-trips") {
    Mat m = make(2, 2, {2, 1, 1, 1});
    CHECK(invertible(m));
    CHECK(m * inverse(m) == Mat::identity(2));
    Mat s = make(2, 2, {1, 2, 2, 4});
    CHECK(!invertible(s));
}

TEST_CASE("complex cohomology of a small exact-ish complex") {
    // 0 -> Q -> Q^2 -> Q -> 0 with d0 = (1,0)^T, d1 = (0,1): exact in the
    // middle, h = (0, 0, 1)? d1*d0 = 0; h0 = 1-1 = 0; h1 = 2-1-1 = 0; h2 = 1-1 = 0.
    Mat d0 = make(2, 1, {1, 0});
    Mat d1 = make(1, 2, {0, 1});
    auto h = complex_cohomology({1, 2, 1}, {d0, d1});
    CHECK(h == std::vector<std::size_t>{0, 0, 0});
}
