#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "latred/matrix.hpp"
#include "latred/rational.hpp"

namespace latred {

// One weighted block of basis rows: contributes
//   weight * sum_rows |<row, z> - target_row|^p
// to the p-th power of the distance. Realizes alpha^{1/p}- and w^{1/p}-scaled
// blocks without materializing p-th roots.
struct WeightedRowGroup {
    Rat weight;              // rho >= 0
    RatMatrix rows;          // rows x n
    std::vector<Rat> target; // length = rows (all zero for SVP instances)
};

struct Provenance {
    std::string reduction;
    std::vector<std::pair<std::string, std::string>> params;  // ordered key/value
    std::string source_sha256;
    std::string seed;  // empty when the construction is deterministic
};

struct LatticeInstance {
    enum class Kind { Cvp, Svp };

    Kind kind = Kind::Cvp;
    NormExponent norm;
    long rank = 0;  // n
    std::vector<WeightedRowGroup> groups;
    // r^p for finite norm, r itself for the infinity norm.
    Rat threshold;
    Provenance prov;

    long total_rows() const;
    // Throws ParameterError on broken invariants (column mismatch, negative
    // weight, non-unit weights under the infinity norm, ...).
    void check() const;
};

using CvpInstance = LatticeInstance;
using SvpInstance = LatticeInstance;

// Per-coordinate integer interval [lo, hi], inclusive.
struct Box {
    std::vector<std::pair<long, long>> range;

    static Box uniform(long n, long lo, long hi);
    long dims() const { return static_cast<long>(range.size()); }
    // Number of integer points, saturating at 2^62.
    unsigned long long points() const;
    std::string str() const;
};

struct SolveResult {
    bool yes = false;
    Rat best;                   // r^p-scale for finite norm, r-scale for infinity
    std::vector<long> witness;  // lexicographically smallest attaining best
    long long count = 0;        // box points with value <= threshold
    Box box;
};

// Exact distance evaluation (norm must be an exact integer or infinity).
Rat dist_pow(const LatticeInstance& inst, const std::vector<long>& z);
// Float path for non-integer finite norms.
Float dist_pow_f(const LatticeInstance& inst, const std::vector<long>& z);

// Exhaustive minimum of dist_pow over the box; lexicographically smallest
// witness; count of points with value <= threshold. Throws LimitExceeded when
// the box holds more than `limit` points (default 2^28).
SolveResult solve_cvp_enum(const LatticeInstance& inst, const Box& box,
                           unsigned long long limit = 1ull << 28);
// Same with z = 0 excluded.
SolveResult solve_svp_enum(const LatticeInstance& inst, const Box& box,
                           unsigned long long limit = 1ull << 28);

// Dense export: rows and targets scaled by weight^{1/p}. Approximate by
// design; only for handing instances to third-party solvers.
struct DenseInstance {
    NormExponent norm;
    long rank = 0;
    std::vector<std::vector<double>> basis_rows;
    std::vector<double> target;
    double threshold_pow = 0;
};
DenseInstance densify(const LatticeInstance& inst);

// "cvp-instance/1" JSON interchange. write -> read -> write is byte-identical.
std::string write_instance(const LatticeInstance& inst);
LatticeInstance read_instance(const std::string& text);
void write_instance_file(const std::string& path, const LatticeInstance& inst);
LatticeInstance read_instance_file(const std::string& path);

// "cvp-dense/1" decimal export.
std::string write_dense(const DenseInstance& d);

// SHA-256 hex digest; used for provenance source digests.
std::string sha256_hex(const std::string& data);

}  // namespace latred
