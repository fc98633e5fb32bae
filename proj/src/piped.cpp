#include "latred/piped.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace latred {

std::string provenance_str(PipedProvenance p) {
    switch (p) {
        case PipedProvenance::WeightProfile: return "weight-profile";
        case PipedProvenance::Literal: return "literal";
        case PipedProvenance::L1Family: return "l1-family";
    }
    return "weight-profile";
}

PipedProvenance provenance_parse(const std::string& s) {
    if (s == "weight-profile") return PipedProvenance::WeightProfile;
    if (s == "literal") return PipedProvenance::Literal;
    if (s == "l1-family") return PipedProvenance::L1Family;
    throw FormatError("provenance: '" + s + "'");
}

Rat IsolatingParallelepiped::margin_exact() const {
    if (!has_exact() || !p.is_exact_int())
        throw ParameterError("margin_exact: no exact representation");
    Rat val;
    for (const auto& row : exact_rows) val += row.weight * abs_pow(row.target, p.p_int);
    return val - 1;
}

double IsolatingParallelepiped::margin_float() const {
    double pv = p.value();
    double val = 0;
    for (double c : t_vec) val += std::pow(std::abs(c), pv);
    return val - 1.0;
}

RatMatrix build_m_matrix(int k, long p, const Rat& t_star) {
    if (k < 1) throw ParameterError("build_m_matrix: k >= 1 required");
    RatMatrix m(k + 1, k + 1);
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) {
            Rat entry;
            for (int l = 0; l <= k; ++l) {
                Int c = binom(i, l) * binom(k - i, j - l);
                if (c == 0) continue;
                Rat arg = Rat(2 * i + 2 * j - k - 4 * l) - t_star;
                entry += Rat(c) * abs_pow(arg, p);
            }
            m.at(i, j) = entry;
        }
    return m;
}

std::vector<std::vector<Float>> build_m_matrix_f(int k, double p, const Float& t_star) {
    if (k < 1) throw ParameterError("build_m_matrix_f: k >= 1 required");
    std::vector<std::vector<Float>> m(k + 1, std::vector<Float>(k + 1));
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) {
            Float entry = 0;
            for (int l = 0; l <= k; ++l) {
                Int c = binom(i, l) * binom(k - i, j - l);
                if (c == 0) continue;
                Float arg = Float(2 * i + 2 * j - k - 4 * l) - t_star;
                entry += Float(c.get_str()) * abs_pow_f(arg, p);
            }
            m[i][j] = entry;
        }
    return m;
}

Rat lambda_row_sum(int k, long p, const Rat& t_star) {
    RatMatrix m = build_m_matrix(k, p, t_star);
    Rat literal;
    for (int j = 0; j <= k; ++j) literal += m.at(0, j);
    // Closed form: the row sum collapses over s = i + j - 2l with weight
    // binom(k,s) (Vandermonde).
    Rat closed;
    for (int s = 0; s <= k; ++s)
        closed += Rat(binom(k, s)) * abs_pow(Rat(2 * s - k) - t_star, p);
    if (literal != closed)
        throw InternalInconsistency("lambda_row_sum: literal row sum != closed form");
    // All rows share the sum; check them while we have the matrix.
    for (int i = 1; i <= k; ++i) {
        Rat ri;
        for (int j = 0; j <= k; ++j) ri += m.at(i, j);
        if (ri != literal) throw InternalInconsistency("lambda_row_sum: rows disagree");
    }
    if (!(literal > 0)) throw InternalInconsistency("lambda_row_sum: lambda <= 0");
    return literal;
}

Float lambda_row_sum_f(int k, double p, const Float& t_star) {
    Float closed = 0;
    for (int s = 0; s <= k; ++s)
        closed += Float(binom(k, s).get_str()) * abs_pow_f(Float(2 * s - k) - t_star, p);
    return closed;
}

namespace {

// Partial-pivot Gaussian elimination over Float; good enough for the
// (k+1)x(k+1) solves on the inexact path.
Float float_det(std::vector<std::vector<Float>> m) {
    using boost::multiprecision::abs;
    const std::size_t n = m.size();
    Float det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
        if (m[piv][c] == 0) return Float(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Float f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

std::vector<Float> float_solve(std::vector<std::vector<Float>> m, std::vector<Float> b) {
    using boost::multiprecision::abs;
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
        if (m[piv][c] == 0) throw SingularMatrix("float_solve: singular matrix");
        std::swap(m[piv], m[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            Float f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
            b[r] -= f * b[c];
        }
    }
    std::vector<Float> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Float s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
        x[i] = s / m[i][i];
    }
    return x;
}

std::vector<Rat> exact_grid(int k, long points_minus_one) {
    std::vector<Rat> grid;
    for (long i = 0; i <= points_minus_one; ++i) {
        Rat t = Rat(-k) + Rat(2 * i, points_minus_one);
        t.canonicalize();
        grid.push_back(t);
    }
    return grid;
}

}  // namespace

Rat find_tstar(int k, const NormExponent& p, int budget, double det_tol) {
    if (k < 2) throw ParameterError("find_tstar: k >= 2 required");
    if (!p.finite()) throw ParameterError("find_tstar: finite p required");
    if (p.is_exact_int()) {
        long degree = (k + 1) * p.p_int;
        for (const Rat& t : exact_grid(k, degree))
            if (determinant(build_m_matrix(k, p.p_int, t)) != 0) return t;
        throw ConstructionFailure("find_tstar: det M_k(p,t*) = 0 on the whole grid (k=" +
                                  std::to_string(k) + ", p=" + p.str() + ")");
    }
    // General p: the p=1 winner works for all but finitely many p, so try it
    // first, then fall back to a rational scan with float determinants.
    using boost::multiprecision::abs;
    Rat t1 = find_tstar(k, NormExponent::exact(1));
    if (abs(float_det(build_m_matrix_f(k, p.p_real, to_float(t1)))) > det_tol) return t1;
    for (const Rat& t : exact_grid(k, budget > 1 ? budget - 1 : 1)) {
        if (abs(float_det(build_m_matrix_f(k, p.p_real, to_float(t)))) > det_tol) return t;
    }
    throw ConstructionFailure("find_tstar: no grid point with nonzero determinant (k=" +
                              std::to_string(k) + ", p=" + p.str() + ")");
}

WeightProfile solve_weights(int k, const NormExponent& p, const Rat& t_star) {
    if (k < 1) throw ParameterError("solve_weights: k >= 1 required");
    if (!p.finite()) throw ParameterError("solve_weights: finite p required");
    WeightProfile prof;
    prof.k = k;
    prof.p = p;
    if (p.is_exact_int()) {
        prof.exact = true;
        prof.t_star = t_star;
        RatMatrix m = build_m_matrix(k, p.p_int, t_star);
        Rat lambda = lambda_row_sum(k, p.p_int, t_star);
        std::vector<Rat> e0(static_cast<std::size_t>(k) + 1);
        e0[0] = 1;
        std::vector<Rat> inv_e0 = linear_solve(m, e0);
        Rat maxabs;
        for (const Rat& q : inv_e0) maxabs = std::max(maxabs, Rat(abs(q)));
        prof.epsilon = 1 / (lambda * maxabs);
        prof.alphas.resize(inv_e0.size());
        for (std::size_t i = 0; i < inv_e0.size(); ++i) {
            prof.alphas[i] = 1 / lambda + prof.epsilon * inv_e0[i];
            if (prof.alphas[i] < 0) throw InternalInconsistency("solve_weights: negative alpha");
        }
        // Profile invariant: M * alpha = 1 + eps e_0, exactly.
        std::vector<Rat> w = m.apply(prof.alphas);
        for (std::size_t i = 0; i < w.size(); ++i) {
            Rat expect = (i == 0) ? Rat(1) + prof.epsilon : Rat(1);
            if (w[i] != expect) throw InternalInconsistency("solve_weights: M*alpha != 1 + eps e_0");
        }
        return prof;
    }
    using boost::multiprecision::abs;
    prof.exact = false;
    prof.t_star_f = to_float(t_star);
    prof.t_star = t_star;  // keep the rational spelling for serialization
    auto m = build_m_matrix_f(k, p.p_real, prof.t_star_f);
    Float lambda = lambda_row_sum_f(k, p.p_real, prof.t_star_f);
    std::vector<Float> e0(static_cast<std::size_t>(k) + 1, Float(0));
    e0[0] = 1;
    std::vector<Float> inv_e0 = float_solve(m, e0);
    Float maxabs = 0;
    for (const Float& v : inv_e0) maxabs = std::max(maxabs, Float(abs(v)));
    prof.epsilon_f = 1 / (lambda * maxabs);
    prof.alphas_f.resize(inv_e0.size());
    for (std::size_t i = 0; i < inv_e0.size(); ++i) {
        prof.alphas_f[i] = 1 / lambda + prof.epsilon_f * inv_e0[i];
        if (prof.alphas_f[i] < 0) {
            if (double(prof.alphas_f[i]) < -kFloatTol)
                throw InternalInconsistency("solve_weights: negative alpha (float path)");
            prof.alphas_f[i] = 0;
        }
    }
    return prof;
}

namespace {

// Direct summation over all 2^k (+-1)-rows for a vertex of Hamming weight j.
template <typename Scalar, typename AbsPow>
Scalar direct_vertex_sum(int k, int j, const std::vector<Scalar>& alphas, const Scalar& t_star,
                         AbsPow&& apow) {
    Scalar total{};
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        int pos = std::popcount(mask);
        const Scalar& alpha = alphas[static_cast<std::size_t>(k - pos)];
        if (alpha == 0) continue;
        // <v, y> with y = (+1 x j, -1 x (k-j)) and v given by mask bits.
        int dot = 0;
        for (int s = 0; s < k; ++s) {
            int vs = (mask >> s) & 1 ? 1 : -1;
            dot += (s < j) ? vs : -vs;
        }
        total += alpha * apow(Scalar(dot) - t_star);
    }
    return total;
}

}  // namespace

Rat vertex_norm_pow(const WeightProfile& profile, int j) {
    if (j < 0 || j > profile.k) throw ParameterError("vertex_norm_pow: j out of range");
    if (!profile.exact) throw ParameterError("vertex_norm_pow: profile is not exact");
    long p = profile.p.p_int;
    RatMatrix m = build_m_matrix(profile.k, p, profile.t_star);
    Rat via_matrix;
    for (int c = 0; c <= profile.k; ++c) via_matrix += m.at(j, c) * profile.alphas[static_cast<std::size_t>(c)];
    Rat direct = direct_vertex_sum<Rat>(profile.k, j, profile.alphas, profile.t_star,
                                        [p](const Rat& x) { return abs_pow(x, p); });
    if (via_matrix != direct)
        throw InternalInconsistency("vertex_norm_pow: matrix route != direct 2^k summation");
    return via_matrix;
}

Float vertex_norm_pow_f(const WeightProfile& profile, int j) {
    if (j < 0 || j > profile.k) throw ParameterError("vertex_norm_pow_f: j out of range");
    double p = profile.p.value();
    const std::vector<Float>* alphas = &profile.alphas_f;
    std::vector<Float> tmp;
    Float t = profile.t_star_f;
    if (profile.exact) {
        for (const Rat& a : profile.alphas) tmp.push_back(to_float(a));
        alphas = &tmp;
        t = to_float(profile.t_star);
    }
    return direct_vertex_sum<Float>(profile.k, j, *alphas, t,
                                    [p](const Float& x) { return abs_pow_f(x, p); });
}

IsolatingParallelepiped assemble_dense(const WeightProfile& profile) {
    const int k = profile.k;
    IsolatingParallelepiped out;
    out.k = k;
    out.p = profile.p;
    out.provenance = PipedProvenance::WeightProfile;
    out.profile = profile;
    double pv = profile.p.value();
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        int pos = std::popcount(mask);
        double alpha;
        Rat alpha_q;
        if (profile.exact) {
            alpha_q = profile.alphas[static_cast<std::size_t>(k - pos)];
            alpha = to_double(alpha_q);
        } else {
            alpha = double(profile.alphas_f[static_cast<std::size_t>(k - pos)]);
        }
        if (alpha == 0) continue;  // zero-weight rows contribute nothing; d* shrinks
        double a = std::pow(alpha, 1.0 / pv);
        double tstar = profile.exact ? to_double(profile.t_star) : double(profile.t_star_f);
        std::vector<double> row(static_cast<std::size_t>(k));
        for (int s = 0; s < k; ++s) row[static_cast<std::size_t>(s)] = ((mask >> s) & 1 ? 1.0 : -1.0) * 2.0 * a;
        // {+-1} -> {0,1} transform: target coordinate becomes a*(2|v| - k + t*).
        out.V.push_back(std::move(row));
        out.t_vec.push_back(a * (2.0 * pos - k + tstar));
        if (profile.exact) {
            ExactGadgetRow er;
            er.weight = alpha_q;
            er.coeffs.resize(static_cast<std::size_t>(k));
            for (int s = 0; s < k; ++s) er.coeffs[static_cast<std::size_t>(s)] = ((mask >> s) & 1 ? 2 : -2);
            er.target = Rat(2 * pos - k) + profile.t_star;
            out.exact_rows.push_back(std::move(er));
        }
    }
    return out;
}

IsopedReport validate_isoped(const IsolatingParallelepiped& piped, double tolerance) {
    IsopedReport rep;
    const int k = piped.k;
    double pv = piped.p.value();
    double max_dev = 0;
    std::vector<int> worst;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        double val = 0;
        for (std::size_t r = 0; r < piped.V.size(); ++r) {
            double s = -piped.t_vec[r];
            for (int c = 0; c < k; ++c)
                if ((mask >> c) & 1) s += piped.V[r][static_cast<std::size_t>(c)];
            val += std::pow(std::abs(s), pv);
        }
        if (mask == 0) {
            rep.margin = val - 1.0;
            continue;
        }
        double dev = std::abs(val - 1.0);
        if (dev > max_dev) {
            max_dev = dev;
            worst.clear();
            for (int c = 0; c < k; ++c) worst.push_back((mask >> c) & 1);
        }
    }
    rep.max_deviation = max_dev;
    rep.worst_vertex = worst;
    rep.pass = max_dev <= tolerance && rep.margin > tolerance;
    return rep;
}

IsopedReport validate_isoped_or_throw(const IsolatingParallelepiped& piped, double tolerance) {
    IsopedReport rep = validate_isoped(piped, tolerance);
    if (!rep.pass) {
        std::string vtx;
        for (int b : rep.worst_vertex) vtx += std::to_string(b);
        throw ValidationFailure("isolating parallelepiped invariant violated (max deviation " +
                                std::to_string(rep.max_deviation) + ", margin " +
                                std::to_string(rep.margin) + ", vertex " + vtx + ")");
    }
    return rep;
}

IsolatingParallelepiped construct_isoped(int k, const NormExponent& p, int budget) {
    if (k < 2) throw ParameterError("construct_isoped: k >= 2 required");
    if (!p.finite()) throw ParameterError("construct_isoped: finite p required");
    Rat t_star = find_tstar(k, p, budget);
    WeightProfile prof = solve_weights(k, p, t_star);
    return assemble_dense(prof);
}

IsolatingParallelepiped l1_family(int k) {
    if (k < 2) throw ParameterError("l1_family: k >= 2 required");
    IsolatingParallelepiped out;
    out.k = k;
    out.p = NormExponent::exact(1);
    out.provenance = PipedProvenance::L1Family;
    Rat c(1, k - 1);
    for (int r = 0; r < 2; ++r) {
        ExactGadgetRow er;
        er.weight = 1;
        er.coeffs.assign(static_cast<std::size_t>(k), c);
        er.target = (r == 0) ? Rat(k, k - 1) : Rat(1, k - 1);
        out.exact_rows.push_back(er);
        out.V.emplace_back(static_cast<std::size_t>(k), to_double(c));
        out.t_vec.push_back(to_double(er.target));
    }
    return out;
}

Rat leading_coefficient(int k, long p) {
    if (k < 1) throw ParameterError("leading_coefficient: k >= 1 required");
    long degree = (k + 1) * p;
    std::vector<Rat> nodes = exact_grid(k, degree);
    std::vector<Rat> values;
    values.reserve(nodes.size());
    for (const Rat& t : nodes) values.push_back(determinant(build_m_matrix(k, p, t)));
    // Top coefficient of the Lagrange interpolant: sum_i y_i / prod_{j!=i} (x_i - x_j).
    Rat top;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Rat denom = 1;
        for (std::size_t j = 0; j < nodes.size(); ++j)
            if (j != i) denom *= nodes[i] - nodes[j];
        top += values[i] / denom;
    }
    return top;
}

Rat l2_alternating_sum(const RatMatrix& v_cols, const std::vector<Rat>& t) {
    if (static_cast<long>(t.size()) != v_cols.rows)
        throw ParameterError("l2_alternating_sum: dimension mismatch");
    const int k = static_cast<int>(v_cols.cols);
    Rat total;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        int sign = std::popcount(mask) % 2 == 0 ? 1 : -1;
        Rat norm2;
        for (long r = 0; r < v_cols.rows; ++r) {
            Rat coord = t[static_cast<std::size_t>(r)];
            for (int c = 0; c < k; ++c)
                if ((mask >> c) & 1) coord -= v_cols.at(r, c);
            norm2 += coord * coord;
        }
        total += Rat(sign) * norm2;
    }
    return total;
}

}  // namespace latred
