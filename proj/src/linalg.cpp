#include "rgk/linalg.hpp"

#include <stdexcept>

namespace rgk {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("Mat: shape mismatch in product");
    Mat out(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Rat& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j) {
                if (o(k, j) == 0) continue;
                out(i, j) += x * o(k, j);
            }
        }
    return out;
}

Mat Mat::operator+(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: shape mismatch in sum");
    Mat out(r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
    return out;
}

Mat Mat::operator-(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: shape mismatch in difference");
    Mat out(r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
    return out;
}

Mat Mat::transpose() const {
    Mat out(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

bool Mat::is_zero() const {
    for (const Rat& x : a_)
        if (x != 0) return false;
    return true;
}

std::size_t rank(const Mat& m) {
    const std::size_t R = m.rows(), C = m.cols();
    if (R == 0 || C == 0) return 0;
    // Clear denominators row by row; row scaling does not change the rank.
    std::vector<std::vector<Int>> a(R, std::vector<Int>(C));
    for (std::size_t i = 0; i < R; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < C; ++j) l = boost::multiprecision::lcm(l, rat_den(m(i, j)));
        for (std::size_t j = 0; j < C; ++j) a[i][j] = rat_num(m(i, j)) * (l / rat_den(m(i, j)));
    }
    // Bareiss one-step fraction-free elimination.
    Int prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t piv = row;
        while (piv < R && a[piv][col] == 0) ++piv;
        if (piv == R) continue;
        std::swap(a[piv], a[row]);
        for (std::size_t i = row + 1; i < R; ++i) {
            for (std::size_t j = col + 1; j < C; ++j)
                a[i][j] = (a[i][j] * a[row][col] - a[i][col] * a[row][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[row][col];
        ++row;
    }
    return row;
}

Mat rref(const Mat& m, std::vector<std::size_t>& pivots) {
    Mat a = m;
    const std::size_t R = a.rows(), C = a.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t piv = row;
        while (piv < R && a(piv, col) == 0) ++piv;
        if (piv == R) continue;
        if (piv != row)
            for (std::size_t j = 0; j < C; ++j) std::swap(a(piv, j), a(row, j));
        Rat p = a(row, col);
        for (std::size_t j = col; j < C; ++j) a(row, j) /= p;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == row || a(i, col) == 0) continue;
            Rat f = a(i, col);
            for (std::size_t j = col; j < C; ++j) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return a;
}

Mat kernel_basis(const Mat& m) {
    std::vector<std::size_t> pivots;
    Mat e = rref(m, pivots);
    const std::size_t C = m.cols();
    std::vector<bool> is_piv(C, false);
    for (std::size_t p : pivots) is_piv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < C; ++j)
        if (!is_piv[j]) free.push_back(j);
    Mat k(C, free.size());
    for (std::size_t fi = 0; fi < free.size(); ++fi) {
        k(free[fi], fi) = 1;
        for (std::size_t pi = 0; pi < pivots.size(); ++pi) k(pivots[pi], fi) = -e(pi, free[fi]);
    }
    return k;
}

Mat kernel_retraction(const Mat& m) {
    std::vector<std::size_t> pivots;
    rref(m, pivots);
    const std::size_t C = m.cols();
    std::vector<bool> is_piv(C, false);
    for (std::size_t p : pivots) is_piv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < C; ++j)
        if (!is_piv[j]) free.push_back(j);
    Mat ret(free.size(), C);
    for (std::size_t fi = 0; fi < free.size(); ++fi) ret(fi, free[fi]) = 1;
    return ret;
}

Mat coker_projection(const Mat& m) {
    // Row-reduce the transpose: its row space is the column space of m.
    std::vector<std::size_t> pivots;
    Mat e = rref(m.transpose(), pivots);
    const std::size_t T = m.rows();
    std::vector<bool> is_piv(T, false);
    for (std::size_t p : pivots) is_piv[p] = true;
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < T; ++j)
        if (!is_piv[j]) rest.push_back(j);
    Mat q(rest.size(), T);
    for (std::size_t ri = 0; ri < rest.size(); ++ri) {
        q(ri, rest[ri]) = 1;
        // Subtract the row-space components carried by the pivot coordinates.
        for (std::size_t pi = 0; pi < pivots.size(); ++pi) q(ri, pivots[pi]) = -e(pi, rest[ri]);
    }
    return q;
}

Mat coker_section(const Mat& m) {
    std::vector<std::size_t> pivots;
    rref(m.transpose(), pivots);
    const std::size_t T = m.rows();
    std::vector<bool> is_piv(T, false);
    for (std::size_t p : pivots) is_piv[p] = true;
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < T; ++j)
        if (!is_piv[j]) rest.push_back(j);
    Mat s(T, rest.size());
    for (std::size_t ri = 0; ri < rest.size(); ++ri) s(rest[ri], ri) = 1;
    return s;
}

bool invertible(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("Mat: inverse of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return m;
    Mat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> pivots;
    Mat e = rref(aug, pivots);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw std::invalid_argument("Mat: singular matrix");
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e(i, n + j);
    return inv;
}

std::vector<std::size_t> complex_cohomology(const std::vector<std::size_t>& dims,
                                            const std::vector<Mat>& d) {
    if (d.size() + 1 != dims.size())
        throw std::invalid_argument("complex_cohomology: need one differential per adjacent pair");
    std::vector<std::size_t> rk(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].cols() != dims[i] || d[i].rows() != dims[i + 1])
            throw std::invalid_argument("complex_cohomology: differential shape mismatch");
        rk[i] = rank(d[i]);
    }
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (!(d[i + 1] * d[i]).is_zero())
            throw std::invalid_argument("complex_cohomology: d^2 != 0");
    std::vector<std::size_t> h(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        std::size_t out = (i < d.size()) ? rk[i] : 0;
        std::size_t in = (i > 0) ? rk[i - 1] : 0;
        h[i] = dims[i] - out - in;
    }
    return h;
}

}  // namespace rgk
