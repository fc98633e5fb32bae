#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "latred/isoped_io.hpp"
#include "latred/reduce.hpp"
#include "latred/verify.hpp"

using namespace latred;

namespace {

unsigned long long enum_limit() {
    if (const char* env = std::getenv("LATRED_ENUM_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1ull << 28;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

IsolatingParallelepiped load_gadget(const std::string& spec, const NormExponent& p, int need_k) {
    if (spec.empty() || spec == "auto") {
        int k = std::max(2, need_k);
        if (p.is_exact_int() && p.p_int == 1) return l1_family(k);
        return construct_isoped(k, p);
    }
    if (spec.rfind("l1:k=", 0) == 0) return l1_family(std::stoi(spec.substr(5)));
    if (spec.rfind("file=", 0) == 0) return read_isoped_file(spec.substr(5));
    return read_isoped_file(spec);
}

GapSatInstance load_gap(const std::string& path, const Rat& delta, const Rat& eps) {
    GapSatInstance g;
    g.formula = parse_dimacs_file(path);
    g.delta = delta;
    g.eps = eps;
    return g;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"SAT-to-lattice reduction toolkit"};
    app.require_subcommand(1);

    // ---- piped ----
    auto* piped = app.add_subcommand("piped", "isolating parallelepiped construction and checks");
    piped->require_subcommand(1);
    std::string p_str = "1", out_path, in_path, gadget_spec;
    int k = 3, budget = 64;
    double tol = kFloatTol;

    auto* pbuild = piped->add_subcommand("build", "construct a (p,k) gadget");
    pbuild->add_option("--p", p_str, "norm exponent")->required();
    pbuild->add_option("--k", k, "width")->required();
    pbuild->add_option("--budget", budget, "grid budget for non-integer p");
    pbuild->add_option("-o,--out", out_path, "output file");

    auto* pcheck = piped->add_subcommand("check", "validate a gadget file");
    pcheck->add_option("file", in_path)->required();
    pcheck->add_option("--tol", tol, "float tolerance");

    auto* plc = piped->add_subcommand("lc", "leading determinant coefficient");
    plc->add_option("--p", p_str)->required();
    plc->add_option("--k", k)->required();

    auto* pnogo = piped->add_subcommand("nogo", "p=2 falsification suite");
    pnogo->add_option("--k", k)->required();

    // ---- reduce ----
    auto* reduce = app.add_subcommand("reduce", "compile SAT instances to lattice instances");
    reduce->require_subcommand(1);
    long long w_flag = -1;
    std::string delta_s = "1/2", eps_s = "1", dprime_s;
    std::uint64_t seed = 1;
    int n_flag = 0;
    std::string red_in, red_out;
    const std::vector<std::string> red_names = {"rankn", "highrank", "gap2",      "gapk-l1", "inf",
                                                "svp-inf", "cvpp-prep", "cvpp-query", "gap-eth"};
    std::map<std::string, CLI::App*> red_subs;
    for (const auto& name : red_names) {
        auto* s = reduce->add_subcommand(name, name + " reduction");
        s->add_option("--p", p_str, "norm exponent");
        s->add_option("--W", w_flag, "Max-SAT threshold");
        s->add_option("--delta", delta_s, "gap lower fraction");
        s->add_option("--eps", eps_s, "gap upper fraction");
        s->add_option("--dprime", dprime_s, "sparsifier target soundness");
        s->add_option("--seed", seed, "sampler seed");
        s->add_option("--gadget", gadget_spec, "l1:k=K | file=PATH | auto");
        s->add_option("--k", k, "clause width");
        s->add_option("--n", n_flag, "lattice variable count (cvpp)");
        if (name != "cvpp-prep") s->add_option("input", red_in, "DIMACS file")->required();
        s->add_option("-o,--out", red_out, "output instance file");
        red_subs[name] = s;
    }

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "brute-force oracles");
    solve->require_subcommand(1);
    std::string box_spec;
    bool want_count = false;
    auto* scvp = solve->add_subcommand("cvp", "closest vector");
    scvp->add_option("file", in_path)->required();
    scvp->add_option("--box", box_spec, "a:b per-coordinate interval override");
    scvp->add_flag("--count", want_count);
    auto* ssvp = solve->add_subcommand("svp", "shortest vector");
    ssvp->add_option("file", in_path)->required();
    ssvp->add_option("--box", box_spec);
    ssvp->add_flag("--count", want_count);
    auto* smax = solve->add_subcommand("maxsat", "exhaustive Max-SAT");
    smax->add_option("file", in_path)->required();
    smax->add_option("--W", w_flag);

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "dual-oracle verification");
    VerifyOptions vopt;
    std::string corpus_dir, random_spec, report_path;
    verify->add_option("--reduction", vopt.reduction)->required();
    verify->add_option("--corpus", corpus_dir, "directory of DIMACS files");
    verify->add_option("--random", random_spec, "n,m,k,T random formulas");
    verify->add_option("--p", p_str);
    verify->add_option("--seed", vopt.seed);
    verify->add_option("--trials", vopt.trials);
    verify->add_option("--n", vopt.n);
    verify->add_option("--workers", vopt.workers);
    verify->add_option("-o,--out", report_path, "report file");

    // ---- sat ----
    auto* sat = app.add_subcommand("sat", "formula transforms and oracles");
    sat->require_subcommand(1);
    auto* ssp = sat->add_subcommand("sparsify", "seeded clause sampler");
    ssp->add_option("file", in_path)->required();
    ssp->add_option("--delta", delta_s)->required();
    ssp->add_option("--dprime", dprime_s)->required();
    ssp->add_option("--seed", seed);
    ssp->add_option("-o,--out", out_path);
    auto* sgy = sat->add_subcommand("garey3to2", "width-3 to width-2 gadget");
    sgy->add_option("file", in_path)->required();
    sgy->add_option("--delta", delta_s);
    sgy->add_option("--eps", eps_s);
    sgy->add_option("-o,--out", out_path);
    auto* smx = sat->add_subcommand("maxsat", "exhaustive Max-SAT decision");
    smx->add_option("file", in_path)->required();
    smx->add_option("--W", w_flag);

    CLI11_PARSE(app, argc, argv);

    // ---------- piped ----------
    if (pbuild->parsed()) {
        NormExponent p = NormExponent::parse(p_str);
        IsolatingParallelepiped g = construct_isoped(k, p, budget);
        validate_isoped_or_throw(g);
        emit(out_path, write_isoped(g));
        return 0;
    }
    if (pcheck->parsed()) {
        IsolatingParallelepiped g = read_isoped_file(in_path);
        IsopedReport rep = validate_isoped(g, tol);
        std::cout << (rep.pass ? "pass" : "FAIL") << " k=" << g.k << " p=" << g.p.str()
                  << " max_deviation=" << rep.max_deviation << " margin=" << rep.margin;
        if (g.has_exact() && g.p.is_exact_int()) std::cout << " margin_exact=" << rat_str(g.margin_exact());
        std::cout << "\n";
        return rep.pass ? 0 : 1;
    }
    if (plc->parsed()) {
        NormExponent p = NormExponent::parse(p_str);
        if (!p.is_exact_int()) throw ParameterError("lc: integer p required");
        std::cout << rat_str(leading_coefficient(k, p.p_int)) << "\n";
        return 0;
    }
    if (pnogo->parsed()) {
        // p = 2 falsification: the alternating sum vanishes for k >= 3 and
        // the grid scan finds no invertible M, so construction must fail.
        bool failed_as_expected = false;
        try {
            construct_isoped(k, NormExponent::exact(2));
        } catch (const ConstructionFailure&) {
            failed_as_expected = true;
        }
        std::cout << "k=" << k << " p=2 construction "
                  << (failed_as_expected ? "fails as required" : "UNEXPECTEDLY SUCCEEDED") << "\n";
        if (k >= 3 && !failed_as_expected) return 1;
        return 0;
    }

    // ---------- reduce ----------
    for (const auto& name : red_names) {
        if (!red_subs[name]->parsed()) continue;
        NormExponent p = NormExponent::parse(p_str);
        if (name == "rankn") {
            WeightedMaxSatInstance f = parse_dimacs_file(red_in);
            if (w_flag >= 0) f.threshold_w = w_flag;
            IsolatingParallelepiped g = load_gadget(gadget_spec, p, f.max_width());
            emit(red_out, write_instance(maxksat_to_cvp_rankn(f, g)));
        } else if (name == "highrank") {
            WeightedMaxSatInstance f = parse_dimacs_file(red_in);
            if (w_flag >= 0) f.threshold_w = w_flag;
            emit(red_out, write_instance(maxksat_to_cvp_highrank(f, p)));
        } else if (name == "gap2") {
            GapCvpResult r = gap2sat_to_cvp(load_gap(red_in, rat_parse(delta_s), rat_parse(eps_s)), p);
            std::cout << "gamma_pow " << rat_str(r.gamma_pow) << "\n";
            emit(red_out, write_instance(r.inst));
        } else if (name == "gapk-l1") {
            GapSatInstance g = load_gap(red_in, rat_parse(delta_s), rat_parse(eps_s));
            GapCvpResult r = gapksat_to_cvp1(g, std::max(k, g.formula.max_width()));
            std::cout << "gamma " << rat_str(r.gamma_pow) << "\n";
            emit(red_out, write_instance(r.inst));
        } else if (name == "inf") {
            emit(red_out, write_instance(ksat_to_cvp_inf(parse_dimacs_file(red_in))));
        } else if (name == "svp-inf") {
            emit(red_out, write_instance(ksat_to_svp_inf(parse_dimacs_file(red_in))));
        } else if (name == "cvpp-prep") {
            CvppPreprocessedLattice prep = cvpp_preprocess(n_flag > 0 ? n_flag : 2, p);
            std::cout << "n " << prep.n << " M " << prep.m_total << " N " << prep.n + prep.m_total
                      << " alpha " << rat_str(prep.alpha) << "\n";
        } else if (name == "cvpp-query") {
            WeightedMaxSatInstance f = parse_dimacs_file(red_in);
            if (w_flag >= 0) f.threshold_w = w_flag;
            CvppPreprocessedLattice prep = cvpp_preprocess(n_flag > 0 ? n_flag : f.n_vars, p);
            emit(red_out, write_instance(cvpp_query(prep, f).inst));
        } else if (name == "gap-eth") {
            GapSatInstance g3 = load_gap(red_in, rat_parse(delta_s), 1);
            GapEthResult r = gap_eth_pipeline(g3, rat_parse(dprime_s.empty() ? "4/5" : dprime_s), p, seed);
            std::cout << "gamma_pow " << rat_str(r.gamma_pow_formula) << "\n";
            emit(red_out, write_instance(r.cvp.inst));
        }
        return 0;
    }

    // ---------- solve ----------
    if (scvp->parsed() || ssvp->parsed()) {
        LatticeInstance inst = read_instance_file(in_path);
        Box box;
        if (!box_spec.empty()) {
            auto colon = box_spec.find(':');
            if (colon == std::string::npos) throw ParameterError("--box expects a:b");
            long lo = std::stol(box_spec.substr(0, colon)), hi = std::stol(box_spec.substr(colon + 1));
            box = Box::uniform(inst.rank, lo, hi);
            try {
                Box cert = certified_box(inst);
                if (lo > cert.range[0].first || hi < cert.range[0].second)
                    std::cout << "warning: box narrower than the certified box " << cert.str() << "\n";
            } catch (const ParameterError&) {
            }
        } else {
            box = certified_box(inst);
        }
        SolveResult sol = ssvp->parsed() ? solve_svp_enum(inst, box, enum_limit())
                                         : solve_cvp_enum(inst, box, enum_limit());
        std::cout << (sol.yes ? "YES" : "NO") << " best " << rat_str(sol.best) << " witness (";
        for (std::size_t i = 0; i < sol.witness.size(); ++i)
            std::cout << (i ? "," : "") << sol.witness[i];
        std::cout << ")";
        if (want_count) std::cout << " count " << sol.count;
        std::cout << "\n";
        return sol.yes ? 0 : 1;
    }
    if (smax->parsed()) {
        WeightedMaxSatInstance f = parse_dimacs_file(in_path);
        if (w_flag >= 0) f.threshold_w = w_flag;
        MaxSatResult r = brute_force_maxsat(f);
        std::cout << "best " << r.best_weight << " val " << rat_str(r.val) << " optima "
                  << r.count_optimal << "\n";
        return r.best_weight >= f.threshold_w ? 0 : 1;
    }

    // ---------- verify ----------
    if (verify->parsed()) {
        vopt.p = NormExponent::parse(p_str);
        if (!random_spec.empty()) {
            std::istringstream ss(random_spec);
            char c;
            ss >> vopt.n >> c >> vopt.m >> c >> vopt.k >> c >> vopt.trials;
            if (!ss) throw ParameterError("--random expects n,m,k,T");
        }
        if (!corpus_dir.empty()) {
            std::vector<std::string> files;
            for (const auto& e : std::filesystem::directory_iterator(corpus_dir))
                if (e.is_regular_file()) files.push_back(e.path().string());
            std::sort(files.begin(), files.end());
            vopt.corpus_files = files;
        }
        VerificationReport rep = run_verify(vopt);
        std::string text = rep.render(true);
        if (!report_path.empty()) emit(report_path, text);
        std::cout << text;
        return rep.pass ? 0 : 1;
    }

    // ---------- sat ----------
    if (ssp->parsed()) {
        GapSatInstance g = load_gap(in_path, rat_parse(delta_s), 1);
        SparsifyResult r = sparsify_gap(g, rat_parse(dprime_s), seed);
        std::cout << "alpha " << rat_str(r.alpha) << " p_keep " << rat_str(r.p_keep) << " kept "
                  << r.kept << (r.clamped ? " (clamped)" : "") << "\n";
        emit(out_path, dimacs_str(r.out.formula));
        return 0;
    }
    if (sgy->parsed()) {
        GapSatInstance g = load_gap(in_path, rat_parse(delta_s), rat_parse(eps_s));
        GapSatInstance out = garey_3to2(g);
        std::cout << "gap " << rat_str(out.delta) << " " << rat_str(out.eps) << "\n";
        emit(out_path, dimacs_str(out.formula));
        return 0;
    }
    if (smx->parsed()) {
        WeightedMaxSatInstance f = parse_dimacs_file(in_path);
        if (w_flag >= 0) f.threshold_w = w_flag;
        MaxSatResult r = brute_force_maxsat(f);
        std::cout << "best " << r.best_weight << " val " << rat_str(r.val) << "\n";
        return r.best_weight >= f.threshold_w ? 0 : 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ConstructionFailure& e) {
        std::cerr << "construction failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
