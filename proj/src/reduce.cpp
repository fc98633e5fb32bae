#include "latred/reduce.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "latred/isoped_io.hpp"

namespace latred {

namespace {

// |base|^p; non-integer p falls back to the float path, reported as the
// exact rational image of the rounded double.
Rat pow_p(const Rat& base, const NormExponent& p) {
    if (p.is_exact_int()) return abs_pow(base, p.p_int);
    return Rat(static_cast<double>(abs_pow_f(to_float(base), p.p_real)));
}

std::string source_digest(const WeightedMaxSatInstance& inst) { return sha256_hex(dimacs_str(inst)); }

void require_unit_weights(const WeightedMaxSatInstance& inst, const char* who) {
    for (long long w : inst.weights)
        if (w != 1) throw ParameterError(std::string(who) + ": unit clause weights required");
}

std::vector<int> negative_positions(const Clause& c) {
    std::vector<int> neg;
    for (std::size_t s = 0; s < c.lits.size(); ++s)
        if (!lit_positive(c.lits[s])) neg.push_back(static_cast<int>(s));
    return neg;
}

}  // namespace

Box certified_box(const LatticeInstance& inst) {
    const std::string& r = inst.prov.reduction;
    if (r == "rankn" || r == "highrank" || r == "inf") return Box::uniform(inst.rank, -1, 2);
    if (r == "gap2" || r == "gapk-l1" || r == "gap-eth") return Box::uniform(inst.rank, -2, 3);
    if (r == "cvpp-query") return Box::uniform(inst.rank, 0, 1);
    if (r == "svp-inf") return Box::uniform(inst.rank, -1, 1);
    throw ParameterError("no certified box for reduction '" + r + "'");
}

CvpInstance maxksat_to_cvp_rankn(const WeightedMaxSatInstance& inst,
                                 const IsolatingParallelepiped& gadget) {
    inst.check();
    if (!gadget.p.finite()) throw GadgetMismatch("rankn: gadget norm must be finite");
    if (!gadget.has_exact()) throw GadgetMismatch("rankn: gadget lacks an exact representation");
    if (inst.max_width() > gadget.k)
        throw WidthError("rankn: clause width " + std::to_string(inst.max_width()) +
                         " exceeds gadget k = " + std::to_string(gadget.k));
    const long n = inst.n_vars;
    const Rat delta = gadget.margin_exact();
    const Rat w_tot = Rat(static_cast<long>(inst.total_weight()));
    const Rat w_thr = Rat(static_cast<long>(inst.threshold_w));
    const Rat alpha = w_tot + (w_tot - w_thr) * delta;

    CvpInstance out;
    out.kind = LatticeInstance::Kind::Cvp;
    out.norm = gadget.p;
    out.rank = n;
    // One group per (clause, gadget row): weight w(C_i) * row weight. The
    // clause's s-th literal uses the gadget's s-th column.
    for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
        const Clause& c = inst.clauses[i];
        for (const ExactGadgetRow& gr : gadget.exact_rows) {
            WeightedRowGroup g;
            g.weight = Rat(static_cast<long>(inst.weights[i])) * gr.weight;
            g.rows = RatMatrix(1, n);
            Rat tgt = gr.target;
            for (std::size_t s = 0; s < c.lits.size(); ++s) {
                Lit l = c.lits[s];
                const Rat& coeff = gr.coeffs[s];
                if (lit_positive(l)) {
                    g.rows.at(0, lit_var(l) - 1) += coeff;
                } else {
                    g.rows.at(0, lit_var(l) - 1) -= coeff;
                    tgt -= coeff;
                }
            }
            g.target.push_back(tgt);
            out.groups.push_back(std::move(g));
        }
    }
    {
        WeightedRowGroup id;
        id.weight = alpha;
        id.rows = RatMatrix(n, n);
        for (long j = 0; j < n; ++j) {
            id.rows.at(j, j) = 2;
            id.target.push_back(Rat(1));
        }
        out.groups.push_back(std::move(id));
    }
    out.threshold = alpha * (n + 1);
    out.prov.reduction = "rankn";
    out.prov.params = {{"p", gadget.p.str()},
                       {"k", std::to_string(gadget.k)},
                       {"n", std::to_string(n)},
                       {"m", std::to_string(inst.n_clauses())},
                       {"W", std::to_string(inst.threshold_w)},
                       {"W_tot", rat_str(w_tot)},
                       {"alpha", rat_str(alpha)},
                       {"delta", rat_str(delta)},
                       {"box", "[-1,2]^n"},
                       {"gadget_sha256", sha256_hex(write_isoped(gadget))}};
    out.prov.source_sha256 = source_digest(inst);
    out.check();
    return out;
}

CvpInstance maxksat_to_cvp_highrank(const WeightedMaxSatInstance& inst, const NormExponent& p) {
    inst.check();
    if (!p.finite()) throw ParameterError("highrank: finite p required");
    const int k = std::max(2, inst.max_width());
    const long n = inst.n_vars;
    const long m = inst.n_clauses();
    const long N = n + static_cast<long>(k - 2) * m;
    const Rat w_tot = Rat(static_cast<long>(inst.total_weight()));
    const Rat w_thr = Rat(static_cast<long>(inst.threshold_w));
    const Rat alpha = w_thr * pow_p(rat(1, 2), p) + (w_tot - w_thr) * pow_p(rat(3, 2), p);

    CvpInstance out;
    out.kind = LatticeInstance::Kind::Cvp;
    out.norm = p;
    out.rank = N;
    for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
        const Clause& c = inst.clauses[i];
        WeightedRowGroup g;
        g.weight = Rat(static_cast<long>(inst.weights[i]));
        g.rows = RatMatrix(1, N);
        for (Lit l : c.lits) g.rows.at(0, lit_var(l) - 1) = lit_positive(l) ? 1 : -1;
        // The clause's private switch block of -1s.
        for (int s = 0; s < k - 2; ++s)
            g.rows.at(0, n + static_cast<long>(i) * (k - 2) + s) = -1;
        g.target.push_back(rat(3, 2) - Rat(static_cast<long>(negative_positions(c).size())));
        out.groups.push_back(std::move(g));
    }
    {
        WeightedRowGroup id;
        id.weight = alpha;
        id.rows = RatMatrix(N, N);
        for (long j = 0; j < N; ++j) {
            id.rows.at(j, j) = 2;
            id.target.push_back(Rat(1));
        }
        out.groups.push_back(std::move(id));
    }
    out.threshold = alpha * (N + 1);
    out.prov.reduction = "highrank";
    out.prov.params = {{"p", p.str()},
                       {"k", std::to_string(k)},
                       {"n", std::to_string(n)},
                       {"m", std::to_string(m)},
                       {"rank", std::to_string(N)},
                       {"W", std::to_string(inst.threshold_w)},
                       {"W_tot", rat_str(w_tot)},
                       {"alpha", rat_str(alpha)},
                       {"box", "[-1,2]^N"}};
    out.prov.source_sha256 = source_digest(inst);
    out.check();
    return out;
}

GapCvpResult gap2sat_to_cvp(const GapSatInstance& g, const NormExponent& p) {
    g.formula.check();
    require_unit_weights(g.formula, "gap2");
    g.formula.require_width(2, true);
    if (!p.finite()) throw ParameterError("gap2: finite p required");
    const long n = g.formula.n_vars;
    const long m = g.formula.n_clauses();
    const Rat three_p = pow_p(Rat(3), p);

    GapCvpResult res;
    CvpInstance& out = res.inst;
    out.kind = LatticeInstance::Kind::Cvp;
    out.norm = p;
    out.rank = n;
    WeightedRowGroup grp;
    grp.weight = 1;
    grp.rows = RatMatrix(m, n);
    for (long i = 0; i < m; ++i) {
        const Clause& c = g.formula.clauses[static_cast<std::size_t>(i)];
        for (Lit l : c.lits) grp.rows.at(i, lit_var(l) - 1) = lit_positive(l) ? 2 : -2;
        grp.target.push_back(Rat(3) - 2 * Rat(static_cast<long>(negative_positions(c).size())));
    }
    out.groups.push_back(std::move(grp));
    out.threshold = g.eps * m + (1 - g.eps) * m * three_p;
    res.gamma_pow = (g.delta + (1 - g.delta) * three_p) / (g.eps + (1 - g.eps) * three_p);
    out.prov.reduction = "gap2";
    out.prov.params = {{"p", p.str()},
                       {"n", std::to_string(n)},
                       {"m", std::to_string(m)},
                       {"delta", rat_str(g.delta)},
                       {"eps", rat_str(g.eps)},
                       {"gamma_pow", rat_str(res.gamma_pow)},
                       {"box", "[-2,3]^n"}};
    out.prov.source_sha256 = source_digest(g.formula);
    out.check();
    return res;
}

std::vector<long> chi_round(const std::vector<long>& z) {
    std::vector<long> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i] >= 1 ? 1 : 0;
    return out;
}

GapCvpResult gapksat_to_cvp1(const GapSatInstance& g, int k) {
    g.formula.check();
    require_unit_weights(g.formula, "gapk-l1");
    g.formula.require_width(k, true);
    const long n = g.formula.n_vars;
    const long m = g.formula.n_clauses();

    GapCvpResult res;
    CvpInstance& out = res.inst;
    out.kind = LatticeInstance::Kind::Cvp;
    out.norm = NormExponent::exact(1);
    out.rank = n;
    WeightedRowGroup grp;
    grp.weight = 1;
    grp.rows = RatMatrix(2 * m, n);
    for (long i = 0; i < m; ++i) {
        const Clause& c = g.formula.clauses[static_cast<std::size_t>(i)];
        for (Lit l : c.lits) {
            Rat v = lit_positive(l) ? 1 : -1;
            grp.rows.at(2 * i, lit_var(l) - 1) = v;
            grp.rows.at(2 * i + 1, lit_var(l) - 1) = v;
        }
        Rat neg(static_cast<long>(negative_positions(c).size()));
        grp.target.push_back(Rat(k) - neg);
        grp.target.push_back(Rat(1) - neg);
    }
    out.groups.push_back(std::move(grp));
    out.threshold = g.eps * m * (k - 1) + (1 - g.eps) * m * (k + 1);
    res.gamma_pow = (g.delta * (k - 1) + (1 - g.delta) * (k + 1)) /
                    (g.eps * (k - 1) + (1 - g.eps) * (k + 1));
    out.prov.reduction = "gapk-l1";
    out.prov.params = {{"p", "1"},
                       {"k", std::to_string(k)},
                       {"n", std::to_string(n)},
                       {"m", std::to_string(m)},
                       {"delta", rat_str(g.delta)},
                       {"eps", rat_str(g.eps)},
                       {"gamma_pow", rat_str(res.gamma_pow)},
                       {"box", "[-2,3]^n"}};
    out.prov.source_sha256 = source_digest(g.formula);
    out.check();
    return res;
}

CvpInstance ksat_to_cvp_inf(const WeightedMaxSatInstance& phi) {
    phi.check();
    require_unit_weights(phi, "inf");
    const int k = phi.width_k;
    if (k < 2) throw WidthError("inf: declared width k >= 2 required");
    const long n = phi.n_vars;
    const long m = phi.n_clauses();

    CvpInstance out;
    out.kind = LatticeInstance::Kind::Cvp;
    out.norm = NormExponent::infinity();
    out.rank = n;
    WeightedRowGroup clause_grp;
    clause_grp.weight = 1;
    clause_grp.rows = RatMatrix(m, n);
    for (long i = 0; i < m; ++i) {
        const Clause& c = phi.clauses[static_cast<std::size_t>(i)];
        for (Lit l : c.lits) clause_grp.rows.at(i, lit_var(l) - 1) = lit_positive(l) ? 1 : -1;
        clause_grp.target.push_back(rat(k + 1, 2) -
                                    Rat(static_cast<long>(negative_positions(c).size())));
    }
    out.groups.push_back(std::move(clause_grp));
    // Binary-forcing gadget (k-1) I_n with target (k-1)/2: exactly (k-1)/2 on
    // {0,1} coefficients and at least 3(k-1)/2 elsewhere.
    WeightedRowGroup id;
    id.weight = 1;
    id.rows = RatMatrix(n, n);
    for (long j = 0; j < n; ++j) {
        id.rows.at(j, j) = k - 1;
        id.target.push_back(rat(k - 1, 2));
    }
    out.groups.push_back(std::move(id));
    out.threshold = rat(k - 1, 2);
    out.prov.reduction = "inf";
    out.prov.params = {{"k", std::to_string(k)},
                       {"n", std::to_string(n)},
                       {"m", std::to_string(m)},
                       {"r", rat_str(out.threshold)},
                       {"box", "[-1,2]^n"}};
    out.prov.source_sha256 = source_digest(phi);
    out.check();
    return out;
}

SvpInstance ksat_to_svp_inf(const WeightedMaxSatInstance& phi) {
    CvpInstance cvp = ksat_to_cvp_inf(phi);
    const long n = cvp.rank;
    SvpInstance out;
    out.kind = LatticeInstance::Kind::Svp;
    out.norm = NormExponent::infinity();
    out.rank = n + 1;
    // Homogenization: append column -t to every row, plus the corner row
    // (0, ..., 0, -(k-1)/2).
    for (const auto& g : cvp.groups) {
        WeightedRowGroup h;
        h.weight = 1;
        h.rows = RatMatrix(g.rows.rows, n + 1);
        for (long r = 0; r < g.rows.rows; ++r) {
            for (long c = 0; c < n; ++c) h.rows.at(r, c) = g.rows.at(r, c);
            h.rows.at(r, n) = -g.target[static_cast<std::size_t>(r)];
            h.target.push_back(Rat(0));
        }
        out.groups.push_back(std::move(h));
    }
    WeightedRowGroup corner;
    corner.weight = 1;
    corner.rows = RatMatrix(1, n + 1);
    corner.rows.at(0, n) = -cvp.threshold;  // -(k-1)/2
    corner.target.push_back(Rat(0));
    out.groups.push_back(std::move(corner));
    out.threshold = cvp.threshold;
    out.prov.reduction = "svp-inf";
    out.prov.params = cvp.prov.params;
    out.prov.params.back() = {"box", "[-1,1]^(n+1)"};
    out.prov.params.insert(out.prov.params.begin() + 2, {"rank", std::to_string(n + 1)});
    out.prov.source_sha256 = cvp.prov.source_sha256;
    out.check();
    return out;
}

Clause CvppPreprocessedLattice::canonical_clause(long c) const {
    if (c < 1 || c > m_total) throw ParameterError("canonical_clause: index out of range");
    long q = (c - 1) / 4;
    long s = (c - 1) % 4;
    // q-th pair (i < j) in lexicographic order.
    int i = 1;
    long left = q;
    while (left >= n - i) {
        left -= n - i;
        ++i;
    }
    int j = i + 1 + static_cast<int>(left);
    Lit l1 = (s < 2) ? i : -i;
    Lit l2 = (s % 2 == 0) ? j : -j;
    return Clause{{l1, l2}};
}

long CvppPreprocessedLattice::clause_index(const Clause& c) const {
    if (c.width() != 2) throw UnknownClause("cvpp: only 2-variable clauses are in the canonical set");
    Lit a = c.lits[0], b = c.lits[1];
    if (lit_var(a) > lit_var(b)) std::swap(a, b);
    int i = lit_var(a), j = lit_var(b);
    if (i == j) throw UnknownClause("cvpp: repeated variable");
    if (i < 1 || j > n) throw UnknownClause("cvpp: variable out of range");
    long q = 0;
    for (int v = 1; v < i; ++v) q += n - v;
    q += j - i - 1;
    long s = (lit_positive(a) ? 0 : 2) + (lit_positive(b) ? 0 : 1);
    return 4 * q + s + 1;
}

CvppPreprocessedLattice cvpp_preprocess(int n, const NormExponent& p) {
    if (n < 2) throw ParameterError("cvpp: n >= 2 required");
    if (!p.finite()) throw ParameterError("cvpp: finite p required");
    CvppPreprocessedLattice prep;
    prep.n = n;
    prep.m_total = 4 * (static_cast<long>(n) * (n - 1) / 2);
    prep.p = p;
    prep.alpha = pow_p(Rat(2), p) * prep.m_total;
    return prep;
}

CvppQueryResult cvpp_query(const CvppPreprocessedLattice& prep, const WeightedMaxSatInstance& query) {
    query.check();
    require_unit_weights(query, "cvpp");
    if (query.n_vars > prep.n) throw ParameterError("cvpp: query has more variables than the lattice");
    const long M = prep.m_total;
    const long n = prep.n;
    const long N = n + M;
    const long m = query.n_clauses();
    std::set<long> on;
    std::vector<long> on_order;
    for (const Clause& c : query.clauses) {
        long idx = prep.clause_index(c);
        if (!on.insert(idx).second) throw ParameterError("cvpp: duplicate clause in query");
        on_order.push_back(idx);
    }
    const Rat w_thr = Rat(static_cast<long>(query.threshold_w));

    CvppQueryResult res;
    CvpInstance& out = res.inst;
    res.on_indices = on_order;
    out.kind = LatticeInstance::Kind::Cvp;
    out.norm = prep.p;
    out.rank = N;
    WeightedRowGroup clause_grp;
    clause_grp.weight = 1;
    clause_grp.rows = RatMatrix(M, N);
    for (long i = 1; i <= M; ++i) {
        Clause c = prep.canonical_clause(i);
        for (Lit l : c.lits) clause_grp.rows.at(i - 1, lit_var(l) - 1) = lit_positive(l) ? 1 : -1;
        clause_grp.rows.at(i - 1, n + i - 1) = 1;  // switch column
        clause_grp.target.push_back(rat(3, 2) -
                                    Rat(static_cast<long>(negative_positions(c).size())));
    }
    out.groups.push_back(std::move(clause_grp));
    WeightedRowGroup id;
    id.weight = prep.alpha;
    id.rows = RatMatrix(N, N);
    for (long j = 0; j < N; ++j) {
        id.rows.at(j, j) = 2;
        // Variable coordinates target 1; switch coordinates target 0 for the
        // query's clauses (forcing the switch off) and 1 otherwise.
        if (j < n)
            id.target.push_back(Rat(1));
        else
            id.target.push_back(on.count(j - n + 1) ? Rat(0) : Rat(1));
    }
    out.groups.push_back(std::move(id));
    out.threshold = (Rat(M - m) + w_thr) * pow_p(rat(1, 2), prep.p) +
                    (Rat(m) - w_thr) * pow_p(rat(3, 2), prep.p) + prep.alpha * (n + M - m);
    out.prov.reduction = "cvpp-query";
    out.prov.params = {{"p", prep.p.str()},
                       {"n", std::to_string(n)},
                       {"M", std::to_string(M)},
                       {"rank", std::to_string(N)},
                       {"m", std::to_string(m)},
                       {"W", std::to_string(query.threshold_w)},
                       {"alpha", rat_str(prep.alpha)},
                       {"box", "{0,1}^N"}};
    out.prov.source_sha256 = source_digest(query);
    out.check();
    return res;
}

GapEthResult gap_eth_pipeline(const GapSatInstance& g3, const Rat& delta_prime,
                              const NormExponent& p, std::uint64_t seed) {
    g3.formula.require_width(3, false);
    GapEthResult res;
    res.sparsified = sparsify_gap(g3, delta_prime, seed);
    res.two_sat = garey_3to2(res.sparsified.out);
    res.cvp = gap2sat_to_cvp(res.two_sat, p);
    const Rat three_p = pow_p(Rat(3), p);
    res.gamma_pow_formula =
        (Rat(6) + delta_prime + (Rat(4) - delta_prime) * three_p) / (Rat(7) + 3 * three_p);
    if (p.is_exact_int() && res.gamma_pow_formula != res.cvp.gamma_pow)
        throw InternalInconsistency("gap_eth_pipeline: staged gamma != closed-form gamma");
    auto& prov = res.cvp.inst.prov;
    prov.reduction = "gap-eth";
    prov.seed = std::to_string(seed);
    prov.params.insert(prov.params.begin(),
                       {{"stages", "sparsify,width2,gap2"},
                        {"delta3", rat_str(g3.delta)},
                        {"delta_prime", rat_str(delta_prime)},
                        {"sparsify_alpha", rat_str(res.sparsified.alpha)},
                        {"sparsify_p_keep", rat_str(res.sparsified.p_keep)},
                        {"source3_sha256", sha256_hex(dimacs_str(g3.formula))}});
    return res;
}

}  // namespace latred
