#include "latred/isoped_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace latred {

namespace {

using ojson = nlohmann::ordered_json;

std::string dec17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const ojson& field(const ojson& j, const std::string& name) {
    auto it = j.find(name);
    if (it == j.end()) throw FormatError(name);
    return *it;
}

Rat rat_field(const ojson& j, const std::string& name) {
    const ojson& f = field(j, name);
    if (!f.is_string()) throw FormatError(name);
    try {
        return rat_parse(f.get<std::string>());
    } catch (const Error&) {
        throw FormatError(name);
    }
}

}  // namespace

std::string write_isoped(const IsolatingParallelepiped& piped) {
    ojson j;
    j["format"] = "isoped/1";
    j["p"] = piped.p.str();
    j["k"] = piped.k;
    j["provenance"] = provenance_str(piped.provenance);
    if (piped.profile) {
        const WeightProfile& prof = *piped.profile;
        ojson alphas = ojson::array();
        if (prof.exact) {
            for (const Rat& a : prof.alphas) alphas.push_back(rat_str(a));
            j["alphas"] = std::move(alphas);
            j["t_star"] = rat_str(prof.t_star);
            j["epsilon"] = rat_str(prof.epsilon);
        } else {
            // Non-integer p: the profile is float-valued; store the exact
            // rational image of each double-rounded value.
            for (const Float& a : prof.alphas_f) alphas.push_back(rat_str(Rat(double(a))));
            j["alphas"] = std::move(alphas);
            j["t_star"] = rat_str(prof.t_star);
            j["epsilon"] = rat_str(Rat(double(prof.epsilon_f)));
        }
    }
    if (!piped.V.empty()) {
        ojson dense;
        ojson rows = ojson::array();
        for (const auto& row : piped.V) {
            ojson rj = ojson::array();
            for (double v : row) rj.push_back(dec17(v));
            rows.push_back(std::move(rj));
        }
        dense["V"] = std::move(rows);
        ojson t = ojson::array();
        for (double v : piped.t_vec) t.push_back(dec17(v));
        dense["t"] = std::move(t);
        j["dense"] = std::move(dense);
    }
    return j.dump(2) + "\n";
}

IsolatingParallelepiped read_isoped(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad isoped JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("(root)");
    if (field(j, "format").get<std::string>() != "isoped/1") throw FormatError("format");
    NormExponent p;
    try {
        p = NormExponent::parse(field(j, "p").get<std::string>());
    } catch (const Error&) {
        throw FormatError("p");
    }
    const ojson& kf = field(j, "k");
    if (!kf.is_number_integer()) throw FormatError("k");
    int k = kf.get<int>();
    PipedProvenance prov = provenance_parse(field(j, "provenance").get<std::string>());
    if (prov == PipedProvenance::L1Family) {
        if (p.str() != "1") throw FormatError("p");
        return l1_family(k);
    }
    if (prov == PipedProvenance::WeightProfile) {
        Rat t_star = rat_field(j, "t_star");
        const ojson& alphas = field(j, "alphas");
        if (!alphas.is_array() || static_cast<int>(alphas.size()) != k + 1) throw FormatError("alphas");
        WeightProfile prof;
        prof.k = k;
        prof.p = p;
        prof.t_star = t_star;
        if (p.is_exact_int()) {
            prof.exact = true;
            for (const auto& a : alphas) {
                if (!a.is_string()) throw FormatError("alphas");
                prof.alphas.push_back(rat_parse(a.get<std::string>()));
            }
            prof.epsilon = rat_field(j, "epsilon");
            // Regenerating the profile from (k, p, t_star) must agree with
            // the stored weights; this guards hand-edited files.
            WeightProfile fresh = solve_weights(k, p, t_star);
            if (fresh.alphas != prof.alphas || fresh.epsilon != prof.epsilon)
                throw ValidationFailure("isoped: stored weights disagree with (k, p, t_star)");
        } else {
            prof.exact = false;
            prof.t_star_f = to_float(t_star);
            for (const auto& a : alphas) {
                if (!a.is_string()) throw FormatError("alphas");
                prof.alphas_f.push_back(to_float(rat_parse(a.get<std::string>())));
            }
            prof.epsilon_f = to_float(rat_field(j, "epsilon"));
        }
        return assemble_dense(prof);
    }
    // Literal gadget: dense coordinates only.
    IsolatingParallelepiped out;
    out.k = k;
    out.p = p;
    out.provenance = PipedProvenance::Literal;
    const ojson& dense = field(j, "dense");
    const ojson& rows = field(dense, "V");
    if (!rows.is_array() || rows.empty()) throw FormatError("dense.V");
    for (const auto& rj : rows) {
        if (!rj.is_array() || static_cast<int>(rj.size()) != k) throw FormatError("dense.V");
        std::vector<double> row;
        for (const auto& v : rj) {
            if (!v.is_string()) throw FormatError("dense.V");
            row.push_back(std::strtod(v.get<std::string>().c_str(), nullptr));
        }
        out.V.push_back(std::move(row));
    }
    const ojson& t = field(dense, "t");
    if (!t.is_array() || t.size() != rows.size()) throw FormatError("dense.t");
    for (const auto& v : t) {
        if (!v.is_string()) throw FormatError("dense.t");
        out.t_vec.push_back(std::strtod(v.get<std::string>().c_str(), nullptr));
    }
    return out;
}

void write_isoped_file(const std::string& path, const IsolatingParallelepiped& piped) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << write_isoped(piped);
}

IsolatingParallelepiped read_isoped_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return read_isoped(ss.str());
}

}  // namespace latred
