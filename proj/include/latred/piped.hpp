#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latred/matrix.hpp"
#include "latred/rational.hpp"

namespace latred {

// The symmetric alpha-weighted parameterization of a (p,k)-isolating
// parallelepiped: weights alpha_0..alpha_k, scalar shift t*, and isolation
// margin epsilon with M_k(p,t*) * alpha = 1 + epsilon * e_0.
//
// When `exact` is set (p a positive integer), the rational fields are the
// source of truth. Otherwise the Float fields carry the data and the
// rational fields are unused.
struct WeightProfile {
    int k = 0;
    NormExponent p;
    bool exact = true;

    std::vector<Rat> alphas;
    Rat t_star;
    Rat epsilon;

    std::vector<Float> alphas_f;
    Float t_star_f;
    Float epsilon_f;
};

enum class PipedProvenance { WeightProfile, Literal, L1Family };

std::string provenance_str(PipedProvenance p);
PipedProvenance provenance_parse(const std::string& s);

// One row of the exact {0,1}-convention gadget: the clause-group's distance
// contribution is weight * |<coeffs, x> - target|^p. Coefficients and target
// are rational, so reductions built from these rows stay exact even though
// the dense coordinates (which carry p-th roots) do not.
struct ExactGadgetRow {
    Rat weight;
    std::vector<Rat> coeffs;  // length k
    Rat target;
};

struct IsolatingParallelepiped {
    int k = 0;
    NormExponent p;
    PipedProvenance provenance = PipedProvenance::WeightProfile;

    // Dense {0,1}-convention coordinates (d* x k); floats because rows carry
    // alpha^{1/p}.
    std::vector<std::vector<double>> V;
    std::vector<double> t_vec;

    // Exact representation; empty for literal gadgets such as Figure-style data.
    std::vector<ExactGadgetRow> exact_rows;

    std::optional<WeightProfile> profile;

    bool has_exact() const { return !exact_rows.empty(); }
    long dstar() const { return static_cast<long>(V.size()); }

    // ||t*||_p^p - 1, exact route when available.
    Rat margin_exact() const;
    double margin_float() const;
};

struct IsopedReport {
    bool pass = false;
    double max_deviation = 0.0;  // max | ||Vx - t||_p^p - 1 | over nonzero vertices
    double margin = 0.0;         // ||t||_p^p - 1
    std::vector<int> worst_vertex;
};

// M_k(p,t*) per the Hamming-weight norm table: entry (i,j) is
// sum_l binom(i,l) binom(k-i,j-l) |2i+2j-k-4l-t*|^p, with the zero-extended
// binomial convention.
RatMatrix build_m_matrix(int k, long p, const Rat& t_star);
std::vector<std::vector<Float>> build_m_matrix_f(int k, double p, const Float& t_star);

// Common row sum lambda of M_k(p,t*), computed both literally (row 0) and via
// the closed form sum_s binom(k,s) |2s-k-t*|^p. Disagreement is an
// implementation bug, reported as InternalInconsistency.
Rat lambda_row_sum(int k, long p, const Rat& t_star);
Float lambda_row_sum_f(int k, double p, const Float& t_star);

// First grid point t* in [-k,-k+2] with det M_k(p,t*) != 0. For exact integer
// p the grid is the (k+1)p+1 equispaced rational points and the test is
// exact. For float p, the t* that wins at p=1 is tried first (a fixed t* works
// for all but finitely many p), then an equispaced rational grid of size
// `budget` with float determinants at tolerance.
Rat find_tstar(int k, const NormExponent& p, int budget = 64, double det_tol = kFloatTol);

// Weights and margin from an invertible M_k(p,t*):
// alpha = 1/lambda + eps * M^{-1} e_0, eps = 1/(lambda * ||M^{-1} e_0||_inf).
WeightProfile solve_weights(int k, const NormExponent& p, const Rat& t_star);

// ||V y - t*||_p^p for any (+-1)-vertex y of Hamming weight j, as row j of
// M * alpha; cross-checked against the direct 2^k-row summation.
Rat vertex_norm_pow(const WeightProfile& profile, int j);
Float vertex_norm_pow_f(const WeightProfile& profile, int j);

// 2^k-row {0,1}-convention gadget from a profile: (+-1)-rows alpha^{1/p} v
// doubled and re-targeted so the isolating property holds over {0,1}^k.
// Zero-weight rows are dropped.
IsolatingParallelepiped assemble_dense(const WeightProfile& profile);

// Evaluates all 2^k vertices of the dense gadget.
IsopedReport validate_isoped(const IsolatingParallelepiped& piped, double tolerance = kFloatTol);
IsopedReport validate_isoped_or_throw(const IsolatingParallelepiped& piped, double tolerance = kFloatTol);

// find_tstar -> solve_weights -> assemble_dense. Throws ConstructionFailure
// when no grid point gives a nonzero determinant (the required outcome for
// p = 2, k >= 3).
IsolatingParallelepiped construct_isoped(int k, const NormExponent& p, int budget = 64);

// The degenerate 2-dimensional l1 family: k copies of (1,1)/(k-1) with
// target (k,1)/(k-1); margin 2/(k-1).
IsolatingParallelepiped l1_family(int k);

// Coefficient of (t*)^{(k+1)p} of t* -> det M_k(p,t*) on [-k,-k+2], by exact
// Lagrange interpolation at (k+1)p+1 rational nodes. Equals 2^k (2 - 2^k)
// for odd p.
Rat leading_coefficient(int k, long p);

// sum over S subset [k] of (-1)^{|S|} ||t - sum_{i in S} V e_i||_2^2, exact.
// Identically zero for k >= 3; the obstruction to (2,k)-isolating
// parallelepipeds.
Rat l2_alternating_sum(const RatMatrix& v_cols, const std::vector<Rat>& t);

}  // namespace latred
