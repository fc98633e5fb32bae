#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "latred/rational.hpp"

namespace latred {

// DIMACS-style literal: variable index in 1..n, negative for negation.
using Lit = int;

inline int lit_var(Lit l) { return l < 0 ? -l : l; }
inline bool lit_positive(Lit l) { return l > 0; }

struct Clause {
    std::vector<Lit> lits;

    int width() const { return static_cast<int>(lits.size()); }
};

// Weighted Max-k-SAT instance over variables 1..n_vars: clauses C_1..C_m with
// positive integer weights (all 1 for plain CNF), decision threshold W, and
// declared width k (max clause length unless overridden upward).
struct WeightedMaxSatInstance {
    int n_vars = 0;
    std::vector<Clause> clauses;
    std::vector<long long> weights;  // parallel to clauses
    long long threshold_w = 0;       // W; 0 when the input carries none
    int width_k = 0;
    bool weighted = false;  // written as WCNF when set

    long n_clauses() const { return static_cast<long>(clauses.size()); }
    long long total_weight() const;  // W_tot
    int max_width() const;
    // Throws WidthError unless every clause has exactly k literals
    // (or at most k, when allow_shorter).
    void require_width(int k, bool allow_shorter = true) const;
    // Throws ParameterError on broken invariants (bad variable index,
    // repeated variable in a clause, W > W_tot, width over k).
    void check() const;
};

// Assignment a in {0,1}^n; index i-1 holds x_i.
using Assignment = std::vector<bool>;

// |S_i(a)|: number of satisfied literal positions in the clause.
int sat_count(const Clause& c, const Assignment& a);
inline bool eval_clause(const Clause& c, const Assignment& a) { return sat_count(c, a) >= 1; }

struct EvalResult {
    long m_plus = 0;        // satisfied clause count
    long long weight = 0;   // satisfied weight
};
EvalResult eval_assignment(const WeightedMaxSatInstance& inst, const Assignment& a);

struct MaxSatResult {
    long long best_weight = 0;
    Assignment best;             // lexicographically smallest optimum
    long count_optimal = 0;      // assignments attaining best_weight
    long count_at_least_w = 0;   // assignments with weight >= threshold_w
    Rat val;                     // best_weight / W_tot
};

// Exhaustive Max-SAT over all 2^n assignments. Throws LimitExceeded when
// n_vars exceeds the cap (default 24).
MaxSatResult brute_force_maxsat(const WeightedMaxSatInstance& inst, int n_limit = 24);

// DIMACS CNF / WCNF reader. Duplicate literals inside a clause are
// deduplicated (warning appended when `warnings` non-null); a clause holding
// x and -x raises TautologyError.
WeightedMaxSatInstance parse_dimacs(std::istream& in, std::vector<std::string>* warnings = nullptr);
WeightedMaxSatInstance parse_dimacs_file(const std::string& path,
                                         std::vector<std::string>* warnings = nullptr);

// Canonical writer: literals within each clause sorted by variable index
// (positive polarity first on the same variable never occurs — a clause has
// distinct variables), clause order preserved, "p cnf n m" or
// "p wcnf n m top" header with top = W_tot + 1.
void write_dimacs(std::ostream& out, const WeightedMaxSatInstance& inst);
std::string dimacs_str(const WeightedMaxSatInstance& inst);

// (delta, eps)-Gap-SAT promise wrapper: distinguish val(formula) >= eps from
// val(formula) < delta; delta < eps.
struct GapSatInstance {
    WeightedMaxSatInstance formula;
    Rat delta;
    Rat eps;
};

// Garey-Johnson width reduction: each 3-clause (a v b v c) becomes ten 1- and
// 2-clauses over {a,b,c,d} with a fresh variable d:
//   a, b, c, d, -a v -b, -a v -c, -b v -c, a v -d, b v -d, c v -d.
// Exactly 7 of the 10 are satisfiable (max over d) when the source clause is
// satisfied, 6 otherwise. Gap maps to ((6+delta)/10, (6+eps)/10).
GapSatInstance garey_3to2(const GapSatInstance& in);

// Counter-based deterministic 64-bit generator (SplitMix64 on seed+counter).
struct SplitMix64 {
    std::uint64_t seed;
    explicit SplitMix64(std::uint64_t s) : seed(s) {}
    std::uint64_t at(std::uint64_t counter) const;
};

struct SparsifyResult {
    GapSatInstance out;
    Rat alpha;     // midpoint of the admissible interval (0, (d'-d)/(d'+d))
    Rat p_keep;    // per-clause keep probability actually used
    bool clamped;  // p_keep hit the 1 cap (output formula == input formula)
    long kept = 0;
};

// Clause sampler: from a (delta, 1)-gap instance to a (delta_prime, 1)-gap
// instance, keeping each clause independently with probability
// p = min{1, 10/(delta alpha^2) * n/m}, where alpha is picked so that
// (1+alpha) delta / (1-alpha) < delta_prime. Deterministic given seed;
// val = 1 inputs keep val = 1.
SparsifyResult sparsify_gap(const GapSatInstance& in, const Rat& delta_prime, std::uint64_t seed);

// Random formula with m clauses of exactly k distinct variables, uniform
// signs. Deterministic given seed; used by the verification harness.
WeightedMaxSatInstance random_ksat(int n, long m, int k, std::uint64_t seed);

}  // namespace latred
