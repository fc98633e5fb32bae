#include "latred/verify.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "latred/reduce.hpp"

namespace latred {

namespace {

// Threshold choice per trial, cycling through the regimes YES-at-optimum,
// NO-just-above, and a pseudorandom W.
long long pick_threshold(long long best, long long w_tot, long trial, std::uint64_t u) {
    switch (trial % 3) {
        case 0: return best;
        case 1: return best < w_tot ? best + 1 : best;
        default: return static_cast<long long>(u % static_cast<std::uint64_t>(w_tot + 1));
    }
}

Rat pow_int(const Rat& base, long p) { return abs_pow(base, p); }

struct TrialContext {
    const VerifyOptions& opt;
    long trial;
    WeightedMaxSatInstance formula;
    VerifyRecord rec;
};

void run_rankn(TrialContext& ctx, const IsolatingParallelepiped& gadget) {
    const VerifyOptions& opt = ctx.opt;
    MaxSatResult bf = brute_force_maxsat(ctx.formula);
    SplitMix64 rng(opt.seed ^ 0x72616e6bull);
    ctx.formula.threshold_w =
        pick_threshold(bf.best_weight, ctx.formula.total_weight(), ctx.trial,
                       rng.at(static_cast<std::uint64_t>(ctx.trial)));
    CvpInstance inst = maxksat_to_cvp_rankn(ctx.formula, gadget);
    Box box = certified_box(inst);
    SolveResult sol = solve_cvp_enum(inst, box);
    ctx.rec.sat_yes = bf.best_weight >= ctx.formula.threshold_w;
    ctx.rec.lat_yes = sol.yes;
    ctx.rec.box = box.str();
    // min over the box = W_tot + (W_tot - best) delta + alpha n, exactly.
    Rat delta = gadget.margin_exact();
    Rat w_tot(static_cast<long>(ctx.formula.total_weight()));
    Rat alpha = w_tot + (w_tot - Rat(static_cast<long>(ctx.formula.threshold_w))) * delta;
    Rat expect = w_tot + (w_tot - Rat(static_cast<long>(bf.best_weight))) * delta +
                 alpha * ctx.formula.n_vars;
    ctx.rec.has_residual = true;
    ctx.rec.residual = sol.best - expect;
}

void run_highrank(TrialContext& ctx) {
    const VerifyOptions& opt = ctx.opt;
    MaxSatResult bf = brute_force_maxsat(ctx.formula);
    SplitMix64 rng(opt.seed ^ 0x68696768ull);
    ctx.formula.threshold_w =
        pick_threshold(bf.best_weight, ctx.formula.total_weight(), ctx.trial,
                       rng.at(static_cast<std::uint64_t>(ctx.trial)));
    CvpInstance inst = maxksat_to_cvp_highrank(ctx.formula, opt.p);
    Box box = certified_box(inst);
    SolveResult sol = solve_cvp_enum(inst, box);
    ctx.rec.sat_yes = bf.best_weight >= ctx.formula.threshold_w;
    ctx.rec.lat_yes = sol.yes;
    ctx.rec.box = box.str();
    if (opt.p.is_exact_int()) {
        long p = opt.p.p_int;
        Rat w_tot(static_cast<long>(ctx.formula.total_weight()));
        Rat w_thr(static_cast<long>(ctx.formula.threshold_w));
        Rat alpha = w_thr * pow_int(rat(1, 2), p) + (w_tot - w_thr) * pow_int(rat(3, 2), p);
        Rat best(static_cast<long>(bf.best_weight));
        Rat expect = best * pow_int(rat(1, 2), p) + (w_tot - best) * pow_int(rat(3, 2), p) +
                     alpha * inst.rank;
        ctx.rec.has_residual = true;
        ctx.rec.residual = sol.best - expect;
    }
    // Parsimony for width-2, W = W_tot: close vectors <-> optimal assignments.
    if (ctx.formula.max_width() <= 2 && ctx.formula.threshold_w == ctx.formula.total_weight()) {
        MaxSatResult bf2 = brute_force_maxsat(ctx.formula);
        ctx.rec.count_expected = bf2.count_at_least_w;
        ctx.rec.count_lattice = sol.count;
    }
}

void run_gap(TrialContext& ctx, bool l1_family_variant) {
    const VerifyOptions& opt = ctx.opt;
    MaxSatResult bf = brute_force_maxsat(ctx.formula);
    const long m = ctx.formula.n_clauses();
    // Pick a gap straddling or excluding val so both promise sides occur.
    SplitMix64 rng(opt.seed ^ 0x67617033ull);
    std::uint64_t u = rng.at(static_cast<std::uint64_t>(ctx.trial));
    Rat val = bf.val;
    GapSatInstance g;
    g.formula = ctx.formula;
    switch (u % 3) {
        case 0:  // YES side: eps <= val
            g.eps = val;
            g.delta = val / 2;
            break;
        case 1:  // NO side: val < delta
            g.delta = val + rat(1, 2 * m);
            g.eps = g.delta + rat(1, 2 * m);
            break;
        default:  // in the gap: no promise, only dominance checks apply
            g.delta = val / 2;
            g.eps = (val + 1) / 2 + rat(1, 4 * m);
            break;
    }
    if (g.delta <= 0) g.delta = rat(1, 4 * m);
    if (g.eps <= g.delta) g.eps = g.delta + rat(1, 4 * m);
    if (g.eps > 1) g.eps = 1;
    if (g.delta >= g.eps) g.delta = g.eps - rat(1, 8 * m);
    GapCvpResult red = l1_family_variant ? gapksat_to_cvp1(g, std::max(2, ctx.formula.max_width()))
                                         : gap2sat_to_cvp(g, opt.p);
    Box box = certified_box(red.inst);
    SolveResult sol = solve_cvp_enum(red.inst, box);
    ctx.rec.box = box.str();
    // Promise-side agreement: val >= eps must give YES; val < delta must put
    // the minimum above gamma^p * threshold. In the gap, decisions are
    // unconstrained, so compare against the exact value law instead.
    if (opt.p.is_exact_int()) {
        long p = opt.p.p_int;
        Rat best(static_cast<long>(bf.best_weight));
        Rat lo = l1_family_variant ? Rat(std::max(2, ctx.formula.max_width()) - 1)
                                   : Rat(1);
        Rat hi = l1_family_variant ? Rat(std::max(2, ctx.formula.max_width()) + 1)
                                   : pow_int(Rat(3), p);
        Rat expect = best * lo + (Rat(m) - best) * hi;
        ctx.rec.has_residual = true;
        ctx.rec.residual = sol.best - expect;
        bool yes_side_ok = !(val >= g.eps) || sol.best <= red.inst.threshold;
        bool no_side_ok = !(val < g.delta) || sol.best > red.gamma_pow * red.inst.threshold;
        ctx.rec.sat_yes = val >= g.eps;
        ctx.rec.lat_yes = sol.yes;
        if (!yes_side_ok || !no_side_ok) ctx.rec.note = "gap soundness violated";
        // agreement field: promise-respecting only
        if (val >= g.eps || val < g.delta)
            ctx.rec.agree = yes_side_ok && no_side_ok;
        else {
            ctx.rec.agree = true;
            ctx.rec.note = "in-gap";
        }
    } else {
        ctx.rec.sat_yes = val >= g.eps;
        ctx.rec.lat_yes = sol.yes;
        ctx.rec.agree = true;
    }
    // chi rounding dominance on random integer points.
    SplitMix64 zrng(opt.seed ^ 0x63686921ull);
    long violations = 0;
    std::uint64_t ctr = static_cast<std::uint64_t>(ctx.trial) << 32;
    for (int s = 0; s < opt.chi_samples; ++s) {
        std::vector<long> z(static_cast<std::size_t>(red.inst.rank));
        for (auto& zi : z) zi = static_cast<long>(zrng.at(ctr++) % 12) - 5;  // [-5, 6]
        if (dist_pow(red.inst, chi_round(z)) > dist_pow(red.inst, z)) ++violations;
    }
    ctx.rec.chi_violations = violations;
}

void run_inf(TrialContext& ctx, bool svp) {
    MaxSatResult bf = brute_force_maxsat(ctx.formula);
    bool satisfiable = bf.best_weight == ctx.formula.total_weight();
    long long n_sat = 0;
    {
        WeightedMaxSatInstance all = ctx.formula;
        all.threshold_w = all.total_weight();
        n_sat = brute_force_maxsat(all).count_at_least_w;
    }
    LatticeInstance inst = svp ? ksat_to_svp_inf(ctx.formula) : ksat_to_cvp_inf(ctx.formula);
    Box box = certified_box(inst);
    SolveResult sol = svp ? solve_svp_enum(inst, box) : solve_cvp_enum(inst, box);
    ctx.rec.sat_yes = satisfiable;
    ctx.rec.lat_yes = sol.yes;
    ctx.rec.box = box.str();
    ctx.rec.count_expected = svp ? 2 * n_sat : n_sat;
    ctx.rec.count_lattice = sol.count;
}

void run_cvpp(TrialContext& ctx) {
    const VerifyOptions& opt = ctx.opt;
    // Deduplicate to distinct canonical clauses (the query set is a set).
    CvppPreprocessedLattice prep = cvpp_preprocess(opt.n, opt.p);
    WeightedMaxSatInstance q;
    q.n_vars = opt.n;
    std::vector<bool> seen(static_cast<std::size_t>(prep.m_total) + 1);
    for (const Clause& c : ctx.formula.clauses) {
        long idx = prep.clause_index(c);
        if (seen[static_cast<std::size_t>(idx)]) continue;
        seen[static_cast<std::size_t>(idx)] = true;
        q.clauses.push_back(c);
        q.weights.push_back(1);
    }
    q.width_k = 2;
    MaxSatResult bf = brute_force_maxsat(q);
    SplitMix64 rng(opt.seed ^ 0x63767070ull);
    q.threshold_w = pick_threshold(bf.best_weight, q.total_weight(), ctx.trial,
                                   rng.at(static_cast<std::uint64_t>(ctx.trial)));
    CvppQueryResult query = cvpp_query(prep, q);
    Box box = certified_box(query.inst);
    SolveResult sol = solve_cvp_enum(query.inst, box);
    ctx.rec.sat_yes = bf.best_weight >= q.threshold_w;
    ctx.rec.lat_yes = sol.yes;
    ctx.rec.box = box.str();
    if (opt.p.is_exact_int()) {
        long p = opt.p.p_int;
        long m = q.n_clauses();
        Rat best(static_cast<long>(bf.best_weight));
        Rat expect = (Rat(prep.m_total - m) + best) * pow_int(rat(1, 2), p) +
                     (Rat(m) - best) * pow_int(rat(3, 2), p) +
                     prep.alpha * (prep.n + prep.m_total - m);
        ctx.rec.has_residual = true;
        ctx.rec.residual = sol.best - expect;
    }
}

void run_gap_eth(TrialContext& ctx) {
    const VerifyOptions& opt = ctx.opt;
    MaxSatResult bf = brute_force_maxsat(ctx.formula);
    GapSatInstance g3;
    g3.formula = ctx.formula;
    g3.delta = rat(7, 10);
    g3.eps = 1;
    GapEthResult res = gap_eth_pipeline(g3, rat(4, 5), opt.p, opt.seed + static_cast<std::uint64_t>(ctx.trial));
    Box box = certified_box(res.cvp.inst);
    SolveResult sol = solve_cvp_enum(res.cvp.inst, box);
    // Perfect completeness: a satisfiable source stays satisfiable through
    // sparsification, and the final instance must be YES at its threshold.
    bool source_sat = bf.best_weight == ctx.formula.total_weight();
    MaxSatResult bf2 = brute_force_maxsat(res.two_sat.formula);
    bool two_sat_yes = bf2.val >= res.two_sat.eps;
    ctx.rec.sat_yes = two_sat_yes;
    ctx.rec.lat_yes = sol.yes;
    ctx.rec.box = box.str();
    if (source_sat && !sol.yes) ctx.rec.note = "completeness chain broken";
    // Value law of the final gap2 instance.
    if (opt.p.is_exact_int()) {
        ctx.rec.has_residual = true;
        long m2 = res.two_sat.formula.n_clauses();
        Rat best(static_cast<long>(bf2.best_weight));
        Rat expect = best + (Rat(m2) - best) * pow_int(Rat(3), opt.p.p_int);
        ctx.rec.residual = sol.best - expect;
    }
}

VerifyRecord run_trial(const VerifyOptions& opt, long trial, const WeightedMaxSatInstance& formula,
                       const std::string& source, const IsolatingParallelepiped* gadget) {
    TrialContext ctx{opt, trial, formula, {}};
    ctx.rec.source = source;
    ctx.rec.reduction = opt.reduction;
    auto t0 = std::chrono::steady_clock::now();
    if (opt.reduction == "rankn")
        run_rankn(ctx, *gadget);
    else if (opt.reduction == "highrank")
        run_highrank(ctx);
    else if (opt.reduction == "gap2")
        run_gap(ctx, false);
    else if (opt.reduction == "gapk-l1")
        run_gap(ctx, true);
    else if (opt.reduction == "inf")
        run_inf(ctx, false);
    else if (opt.reduction == "svp-inf")
        run_inf(ctx, true);
    else if (opt.reduction == "cvpp")
        run_cvpp(ctx);
    else if (opt.reduction == "gap-eth")
        run_gap_eth(ctx);
    else
        throw ParameterError("unknown reduction '" + opt.reduction + "'");
    if (opt.reduction != "gap2" && opt.reduction != "gapk-l1")
        ctx.rec.agree = ctx.rec.sat_yes == ctx.rec.lat_yes;
    bool residual_ok = !ctx.rec.has_residual || ctx.rec.residual == 0;
    bool counts_ok = ctx.rec.count_expected < 0 || ctx.rec.count_expected == ctx.rec.count_lattice;
    bool chi_ok = ctx.rec.chi_violations <= 0;
    ctx.rec.pass = ctx.rec.agree && residual_ok && counts_ok && chi_ok &&
                   ctx.rec.note != "gap soundness violated" &&
                   ctx.rec.note != "completeness chain broken";
    ctx.rec.runtime_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return ctx.rec;
}

}  // namespace

std::string VerifyRecord::json_line(bool with_runtime) const {
    std::ostringstream ss;
    ss << "{\"source\":\"" << source << "\",\"reduction\":\"" << reduction << "\""
       << ",\"sat_yes\":" << (sat_yes ? "true" : "false")
       << ",\"lat_yes\":" << (lat_yes ? "true" : "false")
       << ",\"agree\":" << (agree ? "true" : "false");
    if (has_residual) ss << ",\"residual\":\"" << rat_str(residual) << "\"";
    if (count_expected >= 0)
        ss << ",\"count_expected\":" << count_expected << ",\"count_lattice\":" << count_lattice;
    if (chi_violations >= 0) ss << ",\"chi_violations\":" << chi_violations;
    ss << ",\"box\":\"" << box << "\"";
    if (!note.empty()) ss << ",\"note\":\"" << note << "\"";
    ss << ",\"pass\":" << (pass ? "true" : "false");
    if (with_runtime) ss << ",\"runtime_sec\":" << runtime_sec;
    ss << "}";
    return ss.str();
}

std::string VerificationReport::render(bool with_runtime) const {
    std::ostringstream ss;
    for (const auto& r : records) ss << r.json_line(with_runtime) << "\n";
    ss << "summary: " << agreements << " agreements, " << disagreements << " disagreements, "
       << residual_failures << " residual failures, digest " << digest << ", "
       << (pass ? "PASS" : "FAIL") << "\n";
    return ss.str();
}

VerificationReport run_verify(const VerifyOptions& opt_in) {
    // Clamp generator dimensions so the certified enumeration box stays
    // within the default point limit for every reduction.
    VerifyOptions opt = opt_in;
    if (opt.reduction == "gap2" || opt.reduction == "cvpp") {
        opt.k = 2;
        if (opt.reduction == "cvpp") opt.n = std::min(opt.n, 3);  // rank is n + 4*C(n,2)
    } else if (opt.reduction == "gap-eth") {
        opt.k = 3;  // the width-3 front end is fixed
        opt.n = std::min(opt.n, 3);
        opt.m = std::min<long>(opt.m, 5);  // rank after the width-2 gadget is n + kept
    } else if (opt.reduction == "highrank") {
        // rank is n + (k-2)m over the box [-1,2]; keep 4^rank enumerable
        int kk = std::max(2, opt.k);
        if (kk > 2) opt.m = std::min<long>(opt.m, std::max(1, (9 - opt.n) / (kk - 2)));
    }
    // Work list: one formula per trial, from the corpus or the seeded generator.
    std::vector<WeightedMaxSatInstance> formulas;
    std::vector<std::string> sources;
    if (!opt.corpus_files.empty()) {
        for (const std::string& path : opt.corpus_files) {
            formulas.push_back(parse_dimacs_file(path));
            sources.push_back(path);
        }
    } else {
        for (long t = 0; t < opt.trials; ++t) {
            WeightedMaxSatInstance f =
                random_ksat(opt.n, opt.m, opt.k, opt.seed + static_cast<std::uint64_t>(t) * 7919);
            sources.push_back(sha256_hex(dimacs_str(f)).substr(0, 16));
            formulas.push_back(std::move(f));
        }
    }
    IsolatingParallelepiped gadget;
    if (opt.reduction == "rankn") {
        int k = std::max(2, opt.k);
        gadget = (opt.p.is_exact_int() && opt.p.p_int == 1) ? l1_family(k)
                                                            : construct_isoped(k, opt.p);
    }

    VerificationReport rep;
    rep.records.resize(formulas.size());
    std::atomic<long> next{0};
    int workers = std::max(1, opt.workers);
    auto work = [&]() {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= static_cast<long>(formulas.size())) return;
            rep.records[static_cast<std::size_t>(i)] =
                run_trial(opt, i, formulas[static_cast<std::size_t>(i)],
                          sources[static_cast<std::size_t>(i)], &gadget);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    std::string lines;
    for (const auto& r : rep.records) {
        if (r.agree)
            ++rep.agreements;
        else
            ++rep.disagreements;
        if (r.has_residual && r.residual != 0) ++rep.residual_failures;
        lines += r.json_line(false) + "\n";
    }
    rep.digest = sha256_hex(lines);
    rep.pass = true;
    for (const auto& r : rep.records) rep.pass = rep.pass && r.pass;
    return rep;
}

}  // namespace latred
