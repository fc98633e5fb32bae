#pragma once

#include <vector>

#include "latred/rational.hpp"

namespace latred {

// Dense rational matrix. Small (the constructions need at most (k+1)x(k+1)
// for the weight solve and a few hundred rows for instances), so no attempt
// at sparsity here.
struct RatMatrix {
    long rows = 0;
    long cols = 0;
    std::vector<Rat> a;

    RatMatrix() = default;
    RatMatrix(long r, long c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    Rat& at(long i, long j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Rat& at(long i, long j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static RatMatrix identity(long n);

    RatMatrix operator*(const RatMatrix& o) const;
    std::vector<Rat> apply(const std::vector<Rat>& x) const;
    bool operator==(const RatMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// Exact determinant by fraction-free (Bareiss) elimination on the
// denominator-cleared integer matrix.
Rat determinant(const RatMatrix& m);

// Exact solution of M x = b. Throws SingularMatrix when det(M) == 0.
std::vector<Rat> linear_solve(const RatMatrix& m, const std::vector<Rat>& b);

}  // namespace latred
