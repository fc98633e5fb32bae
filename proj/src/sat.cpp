#include "latred/sat.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace latred {

long long WeightedMaxSatInstance::total_weight() const {
    long long tot = 0;
    for (long long w : weights) tot += w;
    return tot;
}

int WeightedMaxSatInstance::max_width() const {
    int k = 0;
    for (const Clause& c : clauses) k = std::max(k, c.width());
    return k;
}

void WeightedMaxSatInstance::require_width(int k, bool allow_shorter) const {
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        int w = clauses[i].width();
        if (w > k || (!allow_shorter && w != k))
            throw WidthError("clause " + std::to_string(i + 1) + " has width " + std::to_string(w) +
                             ", expected " + (allow_shorter ? "<= " : "") + std::to_string(k));
    }
}

void WeightedMaxSatInstance::check() const {
    if (clauses.size() != weights.size())
        throw ParameterError("instance: clause/weight count mismatch");
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        const Clause& c = clauses[i];
        if (c.lits.empty()) throw ParameterError("clause " + std::to_string(i + 1) + " is empty");
        std::set<int> vars;
        for (Lit l : c.lits) {
            int v = lit_var(l);
            if (v < 1 || v > n_vars)
                throw ParameterError("clause " + std::to_string(i + 1) + ": variable " +
                                     std::to_string(v) + " out of range");
            if (!vars.insert(v).second)
                throw ParameterError("clause " + std::to_string(i + 1) + ": repeated variable " +
                                     std::to_string(v));
        }
        if (weights[i] <= 0) throw ParameterError("clause " + std::to_string(i + 1) + ": non-positive weight");
    }
    if (threshold_w > total_weight()) throw ParameterError("threshold W exceeds total weight");
    if (width_k > 0) require_width(width_k, true);
}

int sat_count(const Clause& c, const Assignment& a) {
    int n = 0;
    for (Lit l : c.lits) {
        bool x = a[static_cast<std::size_t>(lit_var(l)) - 1];
        if (x == lit_positive(l)) ++n;
    }
    return n;
}

EvalResult eval_assignment(const WeightedMaxSatInstance& inst, const Assignment& a) {
    EvalResult r;
    for (std::size_t i = 0; i < inst.clauses.size(); ++i)
        if (eval_clause(inst.clauses[i], a)) {
            ++r.m_plus;
            r.weight += inst.weights[i];
        }
    return r;
}

MaxSatResult brute_force_maxsat(const WeightedMaxSatInstance& inst, int n_limit) {
    if (inst.n_vars > n_limit)
        throw LimitExceeded("brute_force_maxsat: n = " + std::to_string(inst.n_vars) +
                            " exceeds limit " + std::to_string(n_limit));
    const int n = inst.n_vars;
    MaxSatResult res;
    res.best_weight = -1;
    // x_1 is the outermost bit so ascending mask order is lexicographic order
    // of (x_1, ..., x_n); the first optimum seen is the lex-smallest one.
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        Assignment a(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = (mask >> (n - 1 - i)) & 1;
        EvalResult e = eval_assignment(inst, a);
        if (e.weight > res.best_weight) {
            res.best_weight = e.weight;
            res.best = a;
            res.count_optimal = 1;
        } else if (e.weight == res.best_weight) {
            ++res.count_optimal;
        }
        if (e.weight >= inst.threshold_w) ++res.count_at_least_w;
    }
    long long tot = inst.total_weight();
    res.val = tot > 0 ? rat(static_cast<long>(res.best_weight), static_cast<long>(tot)) : Rat(0);
    return res;
}

namespace {

struct LineReader {
    std::istream& in;
    long line_no = 0;
    bool next(std::string& out) {
        while (std::getline(in, out)) {
            ++line_no;
            if (!out.empty() && out.back() == '\r') out.pop_back();
            return true;
        }
        return false;
    }
};

std::string clause_text(const Clause& c) {
    std::string s;
    for (Lit l : c.lits) s += std::to_string(l) + " ";
    return s + "0";
}

}  // namespace

WeightedMaxSatInstance parse_dimacs(std::istream& in, std::vector<std::string>* warnings) {
    WeightedMaxSatInstance inst;
    LineReader rd{in};
    std::string line;
    bool have_header = false;
    long declared_m = 0;
    std::vector<long long> pending;  // literals (and leading weight, for wcnf) of an open clause
    bool open = false;
    auto flush_clause = [&](long line_no) {
        Clause c;
        long long w = 1;
        std::size_t start = 0;
        if (inst.weighted) {
            if (pending.empty()) throw ParseError("weighted clause missing weight", line_no);
            w = pending[0];
            if (w <= 0) throw ParseError("non-positive clause weight", line_no);
            start = 1;
        }
        std::set<int> seen;
        for (std::size_t i = start; i < pending.size(); ++i) {
            long long lv = pending[i];
            if (lv == 0 || lv < -inst.n_vars || lv > inst.n_vars)
                throw ParseError("literal " + std::to_string(lv) + " out of range", line_no);
            Lit l = static_cast<Lit>(lv);
            if (seen.count(-l))
                throw TautologyError("tautological clause: " + clause_text(c) + " " +
                                     std::to_string(l) + " (line " + std::to_string(line_no) + ")");
            if (!seen.insert(l).second) {
                if (warnings)
                    warnings->push_back("line " + std::to_string(line_no) +
                                        ": duplicate literal " + std::to_string(l) + " dropped");
                continue;
            }
            c.lits.push_back(l);
        }
        if (c.lits.empty()) throw ParseError("empty clause", line_no);
        inst.clauses.push_back(std::move(c));
        inst.weights.push_back(w);
        pending.clear();
        open = false;
    };
    while (rd.next(line)) {
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;
        if (tok == "c" || tok[0] == 'c') continue;
        if (tok == "p") {
            if (have_header) throw ParseError("duplicate problem line", rd.line_no);
            std::string fmt;
            long long n = 0, m = 0;
            if (!(ss >> fmt >> n >> m)) throw ParseError("malformed problem line", rd.line_no);
            if (fmt == "cnf") {
                inst.weighted = false;
            } else if (fmt == "wcnf") {
                inst.weighted = true;
                long long top;
                ss >> top;  // old-style top value, optional and unused
            } else {
                throw ParseError("unknown format '" + fmt + "'", rd.line_no);
            }
            if (n < 0 || m < 0) throw ParseError("negative n or m", rd.line_no);
            inst.n_vars = static_cast<int>(n);
            declared_m = static_cast<long>(m);
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError("clause before problem line", rd.line_no);
        // Re-scan the whole line as numbers.
        std::istringstream ns(line);
        long long v;
        while (ns >> v) {
            if (v == 0 && (open || !inst.weighted || !pending.empty())) {
                flush_clause(rd.line_no);
            } else {
                pending.push_back(v);
                open = true;
            }
        }
        if (!ns.eof()) throw ParseError("unexpected token in clause data", rd.line_no);
    }
    if (open) throw ParseError("unterminated clause at end of input", rd.line_no);
    if (!have_header) throw ParseError("missing problem line", rd.line_no);
    if (declared_m != inst.n_clauses() && warnings)
        warnings->push_back("header declares " + std::to_string(declared_m) + " clauses, found " +
                            std::to_string(inst.n_clauses()));
    inst.width_k = inst.max_width();
    inst.check();
    return inst;
}

WeightedMaxSatInstance parse_dimacs_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    return parse_dimacs(f, warnings);
}

void write_dimacs(std::ostream& out, const WeightedMaxSatInstance& inst) {
    if (inst.weighted)
        out << "p wcnf " << inst.n_vars << " " << inst.n_clauses() << " "
            << inst.total_weight() + 1 << "\n";
    else
        out << "p cnf " << inst.n_vars << " " << inst.n_clauses() << "\n";
    for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
        std::vector<Lit> lits = inst.clauses[i].lits;
        std::sort(lits.begin(), lits.end(),
                  [](Lit a, Lit b) { return lit_var(a) < lit_var(b); });
        if (inst.weighted) out << inst.weights[i] << " ";
        for (Lit l : lits) out << l << " ";
        out << "0\n";
    }
}

std::string dimacs_str(const WeightedMaxSatInstance& inst) {
    std::ostringstream ss;
    write_dimacs(ss, inst);
    return ss.str();
}

GapSatInstance garey_3to2(const GapSatInstance& in) {
    in.formula.require_width(3, false);
    GapSatInstance out;
    out.formula.n_vars = in.formula.n_vars + static_cast<int>(in.formula.n_clauses());
    out.formula.weighted = in.formula.weighted;
    int next_aux = in.formula.n_vars + 1;
    for (std::size_t i = 0; i < in.formula.clauses.size(); ++i) {
        const auto& l = in.formula.clauses[i].lits;
        Lit a = l[0], b = l[1], c = l[2];
        Lit d = next_aux++;
        const std::vector<std::vector<Lit>> gadget = {
            {a}, {b}, {c}, {d}, {-a, -b}, {-a, -c}, {-b, -c}, {a, -d}, {b, -d}, {c, -d}};
        for (const auto& g : gadget) {
            out.formula.clauses.push_back(Clause{g});
            out.formula.weights.push_back(in.formula.weights[i]);
        }
    }
    out.formula.width_k = 2;
    out.delta = (Rat(6) + in.delta) / 10;
    out.eps = (Rat(6) + in.eps) / 10;
    out.formula.check();
    return out;
}

std::uint64_t SplitMix64::at(std::uint64_t counter) const {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

SparsifyResult sparsify_gap(const GapSatInstance& in, const Rat& delta_prime, std::uint64_t seed) {
    const Rat& delta = in.delta;
    if (in.eps != 1) throw ParameterError("sparsify_gap: input must be a (delta, 1)-gap instance");
    if (!(delta > 0 && delta < delta_prime && delta_prime < 1))
        throw ParameterError("sparsify_gap: need 0 < delta < delta' < 1");
    // The concentration argument needs (1+alpha) delta / (1-alpha) < delta',
    // i.e. 0 < alpha < (delta' - delta)/(delta' + delta); take the midpoint.
    Rat alpha = (delta_prime - delta) / (2 * (delta_prime + delta));
    if (!(alpha > 0)) throw ParameterError("sparsify_gap: no admissible alpha");
    const long m = in.formula.n_clauses();
    const long n = in.formula.n_vars;
    Rat p = Rat(10) / (delta * alpha * alpha) * Rat(n) / Rat(m);
    bool clamped = p >= 1;
    if (clamped) p = 1;
    SparsifyResult res;
    res.alpha = alpha;
    res.p_keep = p;
    res.clamped = clamped;
    res.out.formula.n_vars = in.formula.n_vars;
    res.out.formula.weighted = in.formula.weighted;
    SplitMix64 rng(seed);
    // Exact comparison u < p * 2^64 over the integers.
    Int num = p.get_num(), den = p.get_den();
    Int lhs_scale = den;
    Int rhs = num << 64;
    for (long i = 0; i < m; ++i) {
        Int u(std::to_string(rng.at(static_cast<std::uint64_t>(i))));
        bool keep = clamped || u * lhs_scale < rhs;
        if (keep) {
            res.out.formula.clauses.push_back(in.formula.clauses[static_cast<std::size_t>(i)]);
            res.out.formula.weights.push_back(in.formula.weights[static_cast<std::size_t>(i)]);
        }
    }
    res.kept = res.out.formula.n_clauses();
    res.out.formula.width_k = res.out.formula.max_width();
    res.out.delta = delta_prime;
    res.out.eps = 1;
    return res;
}

WeightedMaxSatInstance random_ksat(int n, long m, int k, std::uint64_t seed) {
    if (k > n) throw ParameterError("random_ksat: k > n");
    WeightedMaxSatInstance inst;
    inst.n_vars = n;
    inst.width_k = k;
    SplitMix64 rng(seed);
    std::uint64_t ctr = 0;
    for (long i = 0; i < m; ++i) {
        Clause c;
        std::set<int> used;
        while (static_cast<int>(used.size()) < k) {
            std::uint64_t u = rng.at(ctr++);
            int v = static_cast<int>(u % static_cast<std::uint64_t>(n)) + 1;
            if (!used.insert(v).second) continue;
            bool pos = (u >> 63) & 1;
            c.lits.push_back(pos ? v : -v);
        }
        inst.clauses.push_back(std::move(c));
        inst.weights.push_back(1);
    }
    inst.check();
    return inst;
}

}  // namespace latred
