#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latred/lattice.hpp"
#include "latred/piped.hpp"
#include "latred/sat.hpp"

namespace latred {

// Dual-oracle verification: run a reduction, solve the produced instance by
// exhaustive enumeration over its certified box, and compare against the
// brute-force SAT-side oracle, together with the per-reduction side
// conditions (distance identities, rounding dominance, parsimony counts).
struct VerifyOptions {
    std::string reduction;  // rankn|highrank|gap2|gapk-l1|inf|svp-inf|cvpp|gap-eth
    NormExponent p = NormExponent::exact(1);
    int k = 3;     // clause width for random formulas
    int n = 6;     // variables per random formula
    long m = 12;   // clauses per random formula
    long trials = 20;
    std::uint64_t seed = 1;
    int workers = 1;
    std::vector<std::string> corpus_files;  // DIMACS paths; overrides random mode
    int chi_samples = 50;                   // random rounding checks per gap trial
};

struct VerifyRecord {
    std::string source;       // file name or formula digest
    std::string reduction;
    bool sat_yes = false;     // SAT-side oracle decision
    bool lat_yes = false;     // lattice-side oracle decision
    bool agree = false;
    bool has_residual = false;
    Rat residual;             // distance-identity residual; must be exactly 0
    long long count_expected = -1;  // parsimony (-1 when not applicable)
    long long count_lattice = -1;
    long chi_violations = -1;       // -1 when not applicable
    std::string box;
    std::string note;
    bool pass = false;
    double runtime_sec = 0;

    // Deterministic JSON line (runtime excluded from the digest input).
    std::string json_line(bool with_runtime) const;
};

struct VerificationReport {
    std::vector<VerifyRecord> records;
    long agreements = 0;
    long disagreements = 0;
    long residual_failures = 0;
    bool pass = false;
    std::string digest;  // sha256 over the deterministic record lines

    std::string render(bool with_runtime) const;  // JSON lines + summary line
};

VerificationReport run_verify(const VerifyOptions& opt);

}  // namespace latred
