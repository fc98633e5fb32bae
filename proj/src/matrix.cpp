#include "latred/matrix.hpp"

#include <utility>

namespace latred {

RatMatrix RatMatrix::identity(long n) {
    RatMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols != o.rows) throw ParameterError("matrix product: inner dimensions differ");
    RatMatrix out(rows, o.cols);
    for (long i = 0; i < rows; ++i)
        for (long k = 0; k < cols; ++k) {
            const Rat& v = at(i, k);
            if (v == 0) continue;
            for (long j = 0; j < o.cols; ++j) out.at(i, j) += v * o.at(k, j);
        }
    return out;
}

std::vector<Rat> RatMatrix::apply(const std::vector<Rat>& x) const {
    if (static_cast<long>(x.size()) != cols) throw ParameterError("matrix apply: size mismatch");
    std::vector<Rat> out(static_cast<std::size_t>(rows));
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) out[static_cast<std::size_t>(i)] += at(i, j) * x[static_cast<std::size_t>(j)];
    return out;
}

namespace {

// Clears denominators of a square rational matrix: returns the integer matrix
// L*M and the per-run scale L (one common scale keeps Bareiss bookkeeping
// trivial; sizes here are tiny).
std::pair<std::vector<Int>, Int> clear_denominators(const RatMatrix& m) {
    Int scale = 1;
    for (const Rat& q : m.a) {
        Int d = q.get_den();
        Int g = gcd(scale, d);
        scale *= d / g;
    }
    std::vector<Int> n(m.a.size());
    for (std::size_t i = 0; i < m.a.size(); ++i) {
        Rat scaled = m.a[i] * Rat(scale);
        n[i] = scaled.get_num();  // exact: scale is a multiple of every denominator
    }
    return {std::move(n), scale};
}

// Fraction-free single-step Bareiss elimination; returns the determinant of an
// integer matrix without ever leaving the integers.
Int bareiss_det(std::vector<Int> a, long n) {
    int sign = 1;
    Int prev = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (a[static_cast<std::size_t>(k) * n + k] == 0) {
            long piv = -1;
            for (long i = k + 1; i < n; ++i)
                if (a[static_cast<std::size_t>(i) * n + k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (long j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(k) * n + j], a[static_cast<std::size_t>(piv) * n + j]);
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j) {
                Int numer = a[static_cast<std::size_t>(i) * n + j] * a[static_cast<std::size_t>(k) * n + k] -
                            a[static_cast<std::size_t>(i) * n + k] * a[static_cast<std::size_t>(k) * n + j];
                a[static_cast<std::size_t>(i) * n + j] = numer / prev;  // divides exactly (Bareiss identity)
            }
            a[static_cast<std::size_t>(i) * n + k] = 0;
        }
        prev = a[static_cast<std::size_t>(k) * n + k];
    }
    Int det = a[static_cast<std::size_t>(n - 1) * n + (n - 1)];
    return sign > 0 ? det : Int(-det);
}

}  // namespace

Rat determinant(const RatMatrix& m) {
    if (m.rows != m.cols) throw ParameterError("determinant: matrix not square");
    if (m.rows == 0) return 1;
    auto [ints, scale] = clear_denominators(m);
    Int d = bareiss_det(std::move(ints), m.rows);
    Int denom = 1;
    for (long i = 0; i < m.rows; ++i) denom *= scale;
    Rat out(d, denom);
    out.canonicalize();
    return out;
}

std::vector<Rat> linear_solve(const RatMatrix& m, const std::vector<Rat>& b) {
    if (m.rows != m.cols) throw ParameterError("linear_solve: matrix not square");
    if (static_cast<long>(b.size()) != m.rows) throw ParameterError("linear_solve: rhs size mismatch");
    Rat det = determinant(m);
    if (det == 0) throw SingularMatrix("linear_solve: singular matrix");
    // Cramer on top of the fraction-free determinant; fine at these sizes.
    std::vector<Rat> x(b.size());
    for (long j = 0; j < m.cols; ++j) {
        RatMatrix mj = m;
        for (long i = 0; i < m.rows; ++i) mj.at(i, j) = b[static_cast<std::size_t>(i)];
        x[static_cast<std::size_t>(j)] = determinant(mj) / det;
    }
    return x;
}

}  // namespace latred
