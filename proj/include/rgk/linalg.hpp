#pragma once

#include <cstddef>
#include <vector>

#include "rgk/rational.hpp"

namespace rgk {

// Dense matrices over the exact rationals.  Everything downstream (quiver
// Hom/Ext, microlocal stalks, the CPM and Perf equalizer complexes) reduces
// to kernel/cokernel computations here, so ranks must be exact: rank() runs
// fraction-free (Bareiss) elimination on a denominator-cleared integer copy,
// while rref() does ordinary rational Gauss-Jordan when explicit bases are
// needed.
class Mat {
  public:
    Mat() : r_(0), c_(0) {}
    Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, Rat(0)) {}

    static Mat identity(std::size_t n);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat transpose() const;
    bool is_zero() const;

  private:
    std::size_t r_, c_;
    std::vector<Rat> a_;
};

// Rank by fraction-free Gaussian elimination.
std::size_t rank(const Mat& m);

// Reduced row echelon form; pivot column indices are appended to `pivots`.
Mat rref(const Mat& m, std::vector<std::size_t>& pivots);

// Basis of ker(m) as columns, in the canonical (free-coordinate) form: the
// submatrix on free-variable rows is the identity.
Mat kernel_basis(const Mat& m);

// Canonical retraction onto the kernel: ret * v = kernel coordinates of the
// canonical projection of v.  Satisfies ret * kernel_basis = id.
Mat kernel_retraction(const Mat& m);

// Canonical projection onto coker(m) = target / im(m): a (t - rank) x t
// matrix q with q*m = 0 that is the identity on the non-pivot coordinates
// of the column space.
Mat coker_projection(const Mat& m);

// Canonical section s (t x c) of the projection: coker_projection(m) * s = id.
Mat coker_section(const Mat& m);

bool invertible(const Mat& m);
Mat inverse(const Mat& m);  // throws std::invalid_argument if singular

// Dimensions of the cohomology of a bounded complex T0 -> T1 -> ... given by
// consecutive differentials d[i] : T_i -> T_{i+1} (d[i] has dims[i] columns).
// Requires d[i+1]*d[i] = 0; returns h_i for each i.
std::vector<std::size_t> complex_cohomology(const std::vector<std::size_t>& dims,
                                            const std::vector<Mat>& d);

}  // namespace rgk
