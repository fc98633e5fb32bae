#include "latred/lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace latred {

long LatticeInstance::total_rows() const {
    long n = 0;
    for (const auto& g : groups) n += g.rows.rows;
    return n;
}

void LatticeInstance::check() const {
    if (rank < 1) throw ParameterError("instance: rank < 1");
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& g = groups[gi];
        if (g.weight < 0) throw ParameterError("group " + std::to_string(gi) + ": negative weight");
        if (g.rows.cols != rank)
            throw ParameterError("group " + std::to_string(gi) + ": column count != rank");
        if (static_cast<long>(g.target.size()) != g.rows.rows)
            throw ParameterError("group " + std::to_string(gi) + ": target length != row count");
        if (!norm.finite() && g.weight != 1)
            throw ParameterError("group " + std::to_string(gi) + ": infinity norm requires unit weights");
        if (kind == Kind::Svp)
            for (const Rat& t : g.target)
                if (t != 0) throw ParameterError("svp instance with nonzero target");
    }
    if (threshold < 0) throw ParameterError("instance: negative threshold");
}

Box Box::uniform(long n, long lo, long hi) {
    Box b;
    b.range.assign(static_cast<std::size_t>(n), {lo, hi});
    return b;
}

unsigned long long Box::points() const {
    unsigned long long p = 1;
    for (auto [lo, hi] : range) {
        if (hi < lo) return 0;
        unsigned long long w = static_cast<unsigned long long>(hi - lo + 1);
        if (p > (1ull << 62) / w) return 1ull << 62;
        p *= w;
    }
    return p;
}

std::string Box::str() const {
    // Runs of equal intervals printed as [lo,hi]^count.
    std::string s;
    std::size_t i = 0;
    while (i < range.size()) {
        std::size_t j = i;
        while (j < range.size() && range[j] == range[i]) ++j;
        s += "[" + std::to_string(range[i].first) + "," + std::to_string(range[i].second) + "]";
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

Rat dist_pow(const LatticeInstance& inst, const std::vector<long>& z) {
    if (static_cast<long>(z.size()) != inst.rank) throw ParameterError("dist_pow: bad z length");
    if (inst.norm.finite() && !inst.norm.is_exact_int())
        throw ParameterError("dist_pow: non-integer norm needs the float path");
    Rat acc;
    for (const auto& g : inst.groups) {
        if (g.weight == 0) continue;
        for (long r = 0; r < g.rows.rows; ++r) {
            Rat s = -g.target[static_cast<std::size_t>(r)];
            for (long j = 0; j < g.rows.cols; ++j)
                if (z[static_cast<std::size_t>(j)] != 0)
                    s += g.rows.at(r, j) * z[static_cast<std::size_t>(j)];
            if (inst.norm.finite())
                acc += g.weight * abs_pow(s, inst.norm.p_int);
            else
                acc = std::max(acc, Rat(abs(s)));
        }
    }
    return acc;
}

Float dist_pow_f(const LatticeInstance& inst, const std::vector<long>& z) {
    if (static_cast<long>(z.size()) != inst.rank) throw ParameterError("dist_pow_f: bad z length");
    if (!inst.norm.finite()) throw ParameterError("dist_pow_f: infinity norm is exact, use dist_pow");
    double p = inst.norm.value();
    Float acc = 0;
    for (const auto& g : inst.groups) {
        if (g.weight == 0) continue;
        Float w = to_float(g.weight);
        for (long r = 0; r < g.rows.rows; ++r) {
            Float s = -to_float(g.target[static_cast<std::size_t>(r)]);
            for (long j = 0; j < g.rows.cols; ++j)
                if (z[static_cast<std::size_t>(j)] != 0)
                    s += to_float(g.rows.at(r, j)) * Float(z[static_cast<std::size_t>(j)]);
            acc += w * abs_pow_f(s, p);
        }
    }
    return acc;
}

namespace {

// Integer-compiled form of an instance: every row entry and target scaled by
// a single global denominator L so per-point work is int64 inner products;
// the rational bookkeeping is folded into per-group constants.
struct Compiled {
    long n = 0;
    long n_rows = 0;
    std::vector<std::vector<long long>> col;  // col[j][r]
    std::vector<long long> tgt;               // scaled targets, per stacked row
    std::vector<int> group_of;                // stacked row -> group index
    long n_groups = 0;
    long p = 1;                  // finite exact norm only
    bool infinity = false;
    Int L;                       // global scale
    std::vector<Int> c;          // finite: value*Q = sum_g c[g] * S_g
    Int thr_scaled;              // finite: threshold*Q; infinity: unused
    Int Q;
    // infinity norm: value = max |d - tgt| / L; threshold comparison is
    // |d - tgt| * thr_den <= thr_num * L.
    Int inf_cmp_lhs_scale, inf_cmp_rhs;
    unsigned __int128 row_bound = 0;  // max |d - tgt| over the box
};

bool fits_ll(const Int& v) { return v.fits_slong_p(); }

Int int128_to_mpz(unsigned __int128 v) {
    Int hi(static_cast<unsigned long>(v >> 64));
    Int lo(static_cast<unsigned long>(v & 0xFFFFFFFFFFFFFFFFull));
    return (hi << 64) + lo;
}

std::optional<Compiled> compile_instance(const LatticeInstance& inst, const Box& box) {
    if (inst.norm.finite() && !inst.norm.is_exact_int()) return std::nullopt;
    Compiled c;
    c.n = inst.rank;
    c.infinity = !inst.norm.finite();
    c.p = c.infinity ? 1 : inst.norm.p_int;
    c.n_groups = static_cast<long>(inst.groups.size());
    Int L = 1;
    for (const auto& g : inst.groups) {
        for (const Rat& q : g.rows.a) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
        for (const Rat& q : g.target) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
    }
    c.L = L;
    c.col.assign(static_cast<std::size_t>(c.n), {});
    long max_abs_z = 1;
    for (auto [lo, hi] : box.range)
        max_abs_z = std::max({max_abs_z, std::labs(lo), std::labs(hi)});
    Int bound = 0;
    for (std::size_t gi = 0; gi < inst.groups.size(); ++gi) {
        const auto& g = inst.groups[gi];
        for (long r = 0; r < g.rows.rows; ++r) {
            Int row_abs = 0;
            for (long j = 0; j < g.rows.cols; ++j) {
                Rat scaled = g.rows.at(r, j) * Rat(L);
                Int e = scaled.get_num();  // denominator is 1 by construction
                if (!fits_ll(e)) return std::nullopt;
                c.col[static_cast<std::size_t>(j)].push_back(e.get_si());
                row_abs += abs(e);
            }
            Rat st = g.target[static_cast<std::size_t>(r)] * Rat(L);
            Int t = st.get_num();
            if (!fits_ll(t)) return std::nullopt;
            c.tgt.push_back(t.get_si());
            c.group_of.push_back(static_cast<int>(gi));
            bound = std::max(bound, Int(row_abs * max_abs_z + abs(t)));
        }
    }
    c.n_rows = static_cast<long>(c.tgt.size());
    if (!fits_ll(bound)) return std::nullopt;
    // Inner products must stay inside int64; |d - tgt|^p inside __int128.
    if (bound > Int((std::numeric_limits<long>::max)() / 4)) return std::nullopt;
    Int pow_bound = 1;
    for (long i = 0; i < c.p; ++i) pow_bound *= bound;
    pow_bound *= std::max<long>(c.n_rows, 1);
    if (pow_bound >= (Int(1) << 126)) return std::nullopt;
    c.row_bound = static_cast<unsigned __int128>(bound.get_ui());
    if (c.infinity) {
        c.inf_cmp_lhs_scale = inst.threshold.get_den();
        c.inf_cmp_rhs = Int(inst.threshold.get_num() * L);
        return c;
    }
    // Common denominator Q for sum_g weight_g/L^p * S_g and the threshold.
    Int Lp = 1;
    for (long i = 0; i < c.p; ++i) Lp *= L;
    Int Q = inst.threshold.get_den();
    for (const auto& g : inst.groups) {
        Rat cg = g.weight / Rat(Lp);
        mpz_lcm(Q.get_mpz_t(), Q.get_mpz_t(), cg.get_den().get_mpz_t());
    }
    c.Q = Q;
    for (const auto& g : inst.groups) {
        Rat cg = g.weight / Rat(Lp) * Rat(Q);
        c.c.push_back(cg.get_num());
    }
    c.thr_scaled = Rat(inst.threshold * Q).get_num();  // den divides Q
    return c;
}

unsigned __int128 ipow128(long long base, long p) {
    unsigned __int128 b = base < 0 ? static_cast<unsigned __int128>(-(base + 1)) + 1
                                   : static_cast<unsigned __int128>(base);
    unsigned __int128 r = 1;
    for (long i = 0; i < p; ++i) r *= b;
    return r;
}

struct OdometerState {
    std::vector<long> z;
    std::vector<long long> d;  // per stacked row: <scaled row, z>
};

SolveResult enumerate_compiled(const LatticeInstance& inst, const Box& box, const Compiled& c,
                               bool exclude_zero) {
    SolveResult res;
    res.box = box;
    const long n = c.n;
    std::vector<long> z(static_cast<std::size_t>(n));
    std::vector<long long> d(static_cast<std::size_t>(c.n_rows), 0);
    long zero_in_box = 0;
    for (long j = 0; j < n; ++j) {
        z[static_cast<std::size_t>(j)] = box.range[static_cast<std::size_t>(j)].first;
        if (box.range[static_cast<std::size_t>(j)].first <= 0 &&
            box.range[static_cast<std::size_t>(j)].second >= 0)
            ++zero_in_box;
    }
    for (long j = 0; j < n; ++j) {
        long v = z[static_cast<std::size_t>(j)];
        if (v == 0) continue;
        const auto& col = c.col[static_cast<std::size_t>(j)];
        for (long r = 0; r < c.n_rows; ++r) d[static_cast<std::size_t>(r)] += col[static_cast<std::size_t>(r)] * v;
    }
    std::vector<unsigned __int128> s_group(static_cast<std::size_t>(c.n_groups));
    bool have_best = false;
    Int best_int;         // finite: value*Q; infinity: max|d-t| (over L)
    std::vector<long> best_z;
    while (true) {
        bool skip = false;
        if (exclude_zero) {
            skip = std::all_of(z.begin(), z.end(), [](long v) { return v == 0; });
        }
        if (!skip) {
            if (c.infinity) {
                long long m = 0;
                for (long r = 0; r < c.n_rows; ++r) {
                    long long a = d[static_cast<std::size_t>(r)] - c.tgt[static_cast<std::size_t>(r)];
                    if (a < 0) a = -a;
                    if (a > m) m = a;
                }
                Int mv(std::to_string(m));
                if (mv * c.inf_cmp_lhs_scale <= c.inf_cmp_rhs) ++res.count;
                if (!have_best || mv < best_int) {
                    have_best = true;
                    best_int = mv;
                    best_z = z;
                }
            } else {
                std::fill(s_group.begin(), s_group.end(), 0);
                for (long r = 0; r < c.n_rows; ++r) {
                    long long a = d[static_cast<std::size_t>(r)] - c.tgt[static_cast<std::size_t>(r)];
                    s_group[static_cast<std::size_t>(c.group_of[static_cast<std::size_t>(r)])] +=
                        ipow128(a, c.p);
                }
                Int val;
                for (long g = 0; g < c.n_groups; ++g) {
                    if (s_group[static_cast<std::size_t>(g)] == 0) continue;
                    val += c.c[static_cast<std::size_t>(g)] *
                           int128_to_mpz(s_group[static_cast<std::size_t>(g)]);
                }
                if (val <= c.thr_scaled) ++res.count;
                if (!have_best || val < best_int) {
                    have_best = true;
                    best_int = val;
                    best_z = z;
                }
            }
        }
        // Odometer step, last coordinate fastest (lexicographic order).
        long j = n - 1;
        for (; j >= 0; --j) {
            auto [lo, hi] = box.range[static_cast<std::size_t>(j)];
            if (z[static_cast<std::size_t>(j)] < hi) {
                ++z[static_cast<std::size_t>(j)];
                const auto& col = c.col[static_cast<std::size_t>(j)];
                for (long r = 0; r < c.n_rows; ++r)
                    d[static_cast<std::size_t>(r)] += col[static_cast<std::size_t>(r)];
                break;
            }
            z[static_cast<std::size_t>(j)] = lo;
            const auto& col = c.col[static_cast<std::size_t>(j)];
            long long span = hi - lo;
            if (span != 0)
                for (long r = 0; r < c.n_rows; ++r)
                    d[static_cast<std::size_t>(r)] -= col[static_cast<std::size_t>(r)] * span;
        }
        if (j < 0) break;
    }
    (void)zero_in_box;
    if (!have_best) {
        res.yes = false;
        return res;
    }
    if (c.infinity)
        res.best = Rat(best_int) / Rat(c.L);
    else
        res.best = Rat(best_int) / Rat(c.Q);
    res.witness = best_z;
    res.yes = res.count >= 1;
    return res;
}

SolveResult enumerate_generic(const LatticeInstance& inst, const Box& box, bool exclude_zero) {
    SolveResult res;
    res.box = box;
    const long n = inst.rank;
    std::vector<long> z(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = box.range[static_cast<std::size_t>(j)].first;
    const bool exact = !inst.norm.finite() || inst.norm.is_exact_int();
    bool have_best = false;
    Rat best_q;
    Float best_f = 0, thr_f = to_float(inst.threshold);
    std::vector<long> best_z;
    while (true) {
        bool skip = exclude_zero && std::all_of(z.begin(), z.end(), [](long v) { return v == 0; });
        if (!skip) {
            if (exact) {
                Rat v = dist_pow(inst, z);
                if (v <= inst.threshold) ++res.count;
                if (!have_best || v < best_q) {
                    have_best = true;
                    best_q = v;
                    best_z = z;
                }
            } else {
                Float v = dist_pow_f(inst, z);
                if (v <= thr_f) ++res.count;
                if (!have_best || v < best_f) {
                    have_best = true;
                    best_f = v;
                    best_z = z;
                }
            }
        }
        long j = n - 1;
        for (; j >= 0; --j) {
            auto [lo, hi] = box.range[static_cast<std::size_t>(j)];
            if (z[static_cast<std::size_t>(j)] < hi) {
                ++z[static_cast<std::size_t>(j)];
                break;
            }
            z[static_cast<std::size_t>(j)] = lo;
        }
        if (j < 0) break;
    }
    if (have_best) {
        res.witness = best_z;
        res.yes = res.count >= 1;
        if (exact)
            res.best = best_q;
        else
            // Exact rational image of the double-rounded float minimum.
            res.best = Rat(static_cast<double>(best_f));
    }
    return res;
}

SolveResult solve_enum(const LatticeInstance& inst, const Box& box, unsigned long long limit,
                       bool exclude_zero) {
    if (box.dims() != inst.rank) throw ParameterError("solve: box dimension != rank");
    if (box.points() > limit)
        throw LimitExceeded("enumeration box holds " + std::to_string(box.points()) +
                            " points, limit " + std::to_string(limit));
    if (box.points() == 0) return SolveResult{.box = box};
    if (auto c = compile_instance(inst, box)) return enumerate_compiled(inst, box, *c, exclude_zero);
    return enumerate_generic(inst, box, exclude_zero);
}

}  // namespace

SolveResult solve_cvp_enum(const LatticeInstance& inst, const Box& box, unsigned long long limit) {
    return solve_enum(inst, box, limit, false);
}

SolveResult solve_svp_enum(const LatticeInstance& inst, const Box& box, unsigned long long limit) {
    return solve_enum(inst, box, limit, true);
}

DenseInstance densify(const LatticeInstance& inst) {
    if (!inst.norm.finite()) throw ParameterError("densify: finite norm required");
    DenseInstance d;
    d.norm = inst.norm;
    d.rank = inst.rank;
    d.threshold_pow = to_double(inst.threshold);
    double p = inst.norm.value();
    for (const auto& g : inst.groups) {
        double scale = std::pow(to_double(g.weight), 1.0 / p);
        for (long r = 0; r < g.rows.rows; ++r) {
            std::vector<double> row(static_cast<std::size_t>(g.rows.cols));
            for (long j = 0; j < g.rows.cols; ++j) row[static_cast<std::size_t>(j)] = scale * to_double(g.rows.at(r, j));
            d.basis_rows.push_back(std::move(row));
            d.target.push_back(scale * to_double(g.target[static_cast<std::size_t>(r)]));
        }
    }
    return d;
}

namespace {

using ojson = nlohmann::ordered_json;

std::string dec17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const ojson& field(const ojson& j, const std::string& name, const std::string& path) {
    auto it = j.find(name);
    if (it == j.end()) throw FormatError(path.empty() ? name : path + "." + name);
    return *it;
}

Rat rat_field(const ojson& j, const std::string& name, const std::string& path) {
    const ojson& f = field(j, name, path);
    if (!f.is_string()) throw FormatError(path.empty() ? name : path + "." + name);
    try {
        return rat_parse(f.get<std::string>());
    } catch (const Error&) {
        throw FormatError(path.empty() ? name : path + "." + name);
    }
}

}  // namespace

std::string write_instance(const LatticeInstance& inst) {
    ojson j;
    j["format"] = "cvp-instance/1";
    j["kind"] = inst.kind == LatticeInstance::Kind::Cvp ? "cvp" : "svp";
    j["norm"] = inst.norm.str();
    j["rank"] = inst.rank;
    ojson groups = ojson::array();
    for (const auto& g : inst.groups) {
        ojson gj;
        gj["weight"] = rat_str(g.weight);
        ojson rows = ojson::array();
        for (long r = 0; r < g.rows.rows; ++r) {
            ojson row = ojson::array();
            for (long c = 0; c < g.rows.cols; ++c) row.push_back(rat_str(g.rows.at(r, c)));
            rows.push_back(std::move(row));
        }
        gj["rows"] = std::move(rows);
        ojson tgt = ojson::array();
        for (const Rat& t : g.target) tgt.push_back(rat_str(t));
        gj["target"] = std::move(tgt);
        groups.push_back(std::move(gj));
    }
    j["groups"] = std::move(groups);
    j[inst.norm.finite() ? "threshold_pow" : "threshold"] = rat_str(inst.threshold);
    ojson prov;
    prov["reduction"] = inst.prov.reduction;
    ojson params = ojson::object();
    for (const auto& [k, v] : inst.prov.params) params[k] = v;
    prov["params"] = std::move(params);
    prov["source_sha256"] = inst.prov.source_sha256;
    prov["seed"] = inst.prov.seed;
    j["provenance"] = std::move(prov);
    return j.dump(2) + "\n";
}

LatticeInstance read_instance(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad instance JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("(root)");
    if (field(j, "format", "").get<std::string>() != "cvp-instance/1") throw FormatError("format");
    LatticeInstance inst;
    std::string kind = field(j, "kind", "").get<std::string>();
    if (kind == "cvp")
        inst.kind = LatticeInstance::Kind::Cvp;
    else if (kind == "svp")
        inst.kind = LatticeInstance::Kind::Svp;
    else
        throw FormatError("kind");
    try {
        inst.norm = NormExponent::parse(field(j, "norm", "").get<std::string>());
    } catch (const Error&) {
        throw FormatError("norm");
    }
    const ojson& rank = field(j, "rank", "");
    if (!rank.is_number_integer()) throw FormatError("rank");
    inst.rank = rank.get<long>();
    const ojson& groups = field(j, "groups", "");
    if (!groups.is_array()) throw FormatError("groups");
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        std::string path = "groups[" + std::to_string(gi) + "]";
        const ojson& gj = groups[gi];
        WeightedRowGroup g;
        g.weight = rat_field(gj, "weight", path);
        const ojson& rows = field(gj, "rows", path);
        if (!rows.is_array() || rows.empty()) throw FormatError(path + ".rows");
        g.rows = RatMatrix(static_cast<long>(rows.size()), static_cast<long>(rows[0].size()));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!rows[r].is_array() || static_cast<long>(rows[r].size()) != g.rows.cols)
                throw FormatError(path + ".rows[" + std::to_string(r) + "]");
            for (std::size_t c = 0; c < rows[r].size(); ++c) {
                if (!rows[r][c].is_string()) throw FormatError(path + ".rows[" + std::to_string(r) + "]");
                g.rows.at(static_cast<long>(r), static_cast<long>(c)) =
                    rat_parse(rows[r][c].get<std::string>());
            }
        }
        const ojson& tgt = field(gj, "target", path);
        if (!tgt.is_array()) throw FormatError(path + ".target");
        for (const auto& t : tgt) {
            if (!t.is_string()) throw FormatError(path + ".target");
            g.target.push_back(rat_parse(t.get<std::string>()));
        }
        inst.groups.push_back(std::move(g));
    }
    inst.threshold = rat_field(j, inst.norm.finite() ? "threshold_pow" : "threshold", "");
    const ojson& prov = field(j, "provenance", "");
    inst.prov.reduction = field(prov, "reduction", "provenance").get<std::string>();
    const ojson& params = field(prov, "params", "provenance");
    if (!params.is_object()) throw FormatError("provenance.params");
    for (auto it = params.begin(); it != params.end(); ++it)
        inst.prov.params.emplace_back(it.key(), it.value().get<std::string>());
    inst.prov.source_sha256 = field(prov, "source_sha256", "provenance").get<std::string>();
    inst.prov.seed = field(prov, "seed", "provenance").get<std::string>();
    inst.check();
    return inst;
}

void write_instance_file(const std::string& path, const LatticeInstance& inst) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << write_instance(inst);
}

LatticeInstance read_instance_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return read_instance(ss.str());
}

std::string write_dense(const DenseInstance& d) {
    ojson j;
    j["format"] = "cvp-dense/1";
    j["norm"] = d.norm.str();
    j["rank"] = d.rank;
    ojson rows = ojson::array();
    for (const auto& row : d.basis_rows) {
        ojson rj = ojson::array();
        for (double v : row) rj.push_back(dec17(v));
        rows.push_back(std::move(rj));
    }
    j["basis"] = std::move(rows);
    ojson tgt = ojson::array();
    for (double v : d.target) tgt.push_back(dec17(v));
    j["target"] = std::move(tgt);
    j["threshold_pow"] = dec17(d.threshold_pow);
    return j.dump(2) + "\n";
}

// --- SHA-256 (FIPS 180-4), compact implementation for provenance digests ---

namespace {

inline std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

const std::uint32_t kSha256K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

}  // namespace

std::string sha256_hex(const std::string& data) {
    std::uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                          0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::string msg = data;
    std::uint64_t bitlen = static_cast<std::uint64_t>(msg.size()) * 8;
    msg.push_back('\x80');
    while (msg.size() % 64 != 56) msg.push_back('\0');
    for (int i = 7; i >= 0; --i) msg.push_back(static_cast<char>((bitlen >> (8 * i)) & 0xff));
    for (std::size_t off = 0; off < msg.size(); off += 64) {
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = (static_cast<std::uint32_t>(static_cast<unsigned char>(msg[off + 4 * i])) << 24) |
                   (static_cast<std::uint32_t>(static_cast<unsigned char>(msg[off + 4 * i + 1])) << 16) |
                   (static_cast<std::uint32_t>(static_cast<unsigned char>(msg[off + 4 * i + 2])) << 8) |
                   static_cast<std::uint32_t>(static_cast<unsigned char>(msg[off + 4 * i + 3]));
        for (int i = 16; i < 64; ++i) {
            std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6], hh = h[7];
        for (int i = 0; i < 64; ++i) {
            std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            std::uint32_t ch = (e & f) ^ (~e & g);
            std::uint32_t t1 = hh + s1 + ch + kSha256K[i] + w[i];
            std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            std::uint32_t t2 = s0 + maj;
            hh = g; g = f; f = e; e = d + t1; d = c; c = b; b = a; a = t1 + t2;
        }
        h[0] += a; h[1] += b; h[2] += c; h[3] += d; h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (std::uint32_t v : h)
        for (int i = 7; i >= 0; --i) out.push_back(hex[(v >> (4 * i)) & 0xf]);
    return out;
}

}  // namespace latred
