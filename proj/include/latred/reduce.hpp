#pragma once

#include <cstdint>
#include <vector>

#include "latred/lattice.hpp"
#include "latred/piped.hpp"
#include "latred/sat.hpp"

namespace latred {

// Certified enumeration boxes: every construction below is an iff over
// {0,1}-coefficient vectors, and its proof bounds the value of anything the
// box adds beyond {0,1}^rank strictly above the threshold.
Box certified_box(const LatticeInstance& inst);

// Rank-n reduction from (weighted) Max-k-SAT via an isolating parallelepiped:
// per clause, the gadget's exact weighted rows instantiated on the clause's
// variables with row target tau - sum_{s in N_i} coeff_s; identity gadget
// rows 2 e_j with target 1 and weight alpha = W_tot + (W_tot - W) delta,
// where delta is the gadget margin; threshold_pow = alpha (n + 1).
CvpInstance maxksat_to_cvp_rankn(const WeightedMaxSatInstance& inst,
                                 const IsolatingParallelepiped& gadget);

// Rank n + (k-2)m reduction: one row per clause (entries +-1 on the clause's
// variables, a -1 block of width k-2 in the clause's switch coordinates),
// target 3/2 - |N_i|; identity gadget over all N coordinates with
// alpha = W (1/2)^p + (W_tot - W)(3/2)^p; threshold_pow = alpha (N + 1).
CvpInstance maxksat_to_cvp_highrank(const WeightedMaxSatInstance& inst, const NormExponent& p);

struct GapCvpResult {
    CvpInstance inst;
    Rat gamma_pow;  // gamma^p for finite p
};

// Gap-2-SAT to gamma-approximate CVP_p: m rows with entries +-2, target
// 3 - 2|N_i|, no identity gadget; threshold_pow = eps m + (1 - eps) m 3^p;
// gamma^p = (delta + (1 - delta) 3^p) / (eps + (1 - eps) 3^p).
GapCvpResult gap2sat_to_cvp(const GapSatInstance& g, const NormExponent& p);

// Coordinate-wise rounding z -> {0,1}^n: 1 iff z_i >= 1.
std::vector<long> chi_round(const std::vector<long>& z);

// Gap-k-SAT to gamma-approximate CVP_1: per clause a 2-row block of (1,1)^T
// columns, target (k,1)^T - |N_i| (1,1)^T; threshold_pow =
// eps m (k-1) + (1-eps) m (k+1); gamma = (delta(k-1) + (1-delta)(k+1)) /
// (eps(k-1) + (1-eps)(k+1)).
GapCvpResult gapksat_to_cvp1(const GapSatInstance& g, int k);

// k-SAT to CVP_infinity, rank n: clause rows +-1 with target (k+1)/2 - |N_i|;
// identity gadget (k-1) I_n with target (k-1)/2; threshold r = (k-1)/2.
CvpInstance ksat_to_cvp_inf(const WeightedMaxSatInstance& phi);

// k-SAT to SVP_infinity, rank n+1: [[B, -t], [0, -(k-1)/2]] over the CVP
// instance above; r = (k-1)/2. Threshold-meeting vectors in the certified box
// come in pairs +-(a, 1), one per satisfying assignment.
SvpInstance ksat_to_svp_inf(const WeightedMaxSatInstance& phi);

// Instance-independent CVPP lattice for Max-2-SAT on n variables: all
// M = 4 C(n,2) possible 2-clauses in canonical order (variable pairs i < j
// lexicographic; per pair, sign patterns (+,+), (+,-), (-,+), (-,-)).
struct CvppPreprocessedLattice {
    int n = 0;
    long m_total = 0;  // M
    NormExponent p;
    Rat alpha;         // 2^p M
    // Canonical clause for 1-based index c in [1..M].
    Clause canonical_clause(long c) const;
    // Inverse map; throws UnknownClause for anything outside the canon.
    long clause_index(const Clause& c) const;
};

CvppPreprocessedLattice cvpp_preprocess(int n, const NormExponent& p);

struct CvppQueryResult {
    CvpInstance inst;  // fixed basis + query-dependent target and threshold
    std::vector<long> on_indices;  // canonical indices of the query's clauses
};

// Target/threshold pair for a width-2, unit-weight query formula:
// clause-row targets u_i = 3/2 - |N_i| for the query's clauses and the
// switch-off value for all others; threshold_pow =
// (M - m + W)(1/2)^p + (m - W)(3/2)^p + alpha (n + M - m).
CvppQueryResult cvpp_query(const CvppPreprocessedLattice& prep,
                           const WeightedMaxSatInstance& query);

struct GapEthResult {
    GapCvpResult cvp;
    SparsifyResult sparsified;
    GapSatInstance two_sat;
    Rat gamma_pow_formula;  // (6 + d' + (4 - d') 3^p) / (7 + 3^{p+1})
};

// sparsify -> width-2 gadget -> gap2sat_to_cvp, starting from a
// (delta, 1)-gap width-3 instance.
GapEthResult gap_eth_pipeline(const GapSatInstance& g3, const Rat& delta_prime,
                              const NormExponent& p, std::uint64_t seed);

}  // namespace latred
