#include "latred/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace latred {

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw FormatError("rational: empty string");
    // mpq_class accepts leading whitespace and partial junk; be strict instead.
    std::size_t slash = s.find('/');
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!is_int(s)) throw FormatError("rational: '" + s + "'");
        return Rat(Int(s));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-')
        throw FormatError("rational: '" + s + "'");
    Int d(den);
    if (d == 0) throw FormatError("rational: zero denominator in '" + s + "'");
    Rat q(Int(num), d);
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Float to_float(const Rat& q) {
    return Float(q.get_num().get_str()) / Float(q.get_den().get_str());
}

double to_double(const Rat& q) {
    return q.get_d();
}

NormExponent NormExponent::exact(long p) {
    if (p < 1) throw ParameterError("norm exponent must satisfy p >= 1");
    NormExponent e;
    e.kind = Kind::FiniteExact;
    e.p_int = p;
    e.p_text = std::to_string(p);
    return e;
}

NormExponent NormExponent::real(double p) {
    if (!(p >= 1.0)) throw ParameterError("norm exponent must satisfy p >= 1");
    NormExponent e;
    e.kind = Kind::FiniteFloat;
    e.p_real = p;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    e.p_text = buf;
    return e;
}

NormExponent NormExponent::infinity() {
    NormExponent e;
    e.kind = Kind::Infinity;
    e.p_text = "inf";
    return e;
}

NormExponent NormExponent::parse(const std::string& s) {
    if (s == "inf" || s == "infinity") return infinity();
    bool integral = !s.empty();
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) integral = false;
    if (integral) return exact(std::strtol(s.c_str(), nullptr, 10));
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw FormatError("norm: '" + s + "'");
    NormExponent e = real(v);
    e.p_text = s;
    return e;
}

double NormExponent::value() const {
    switch (kind) {
        case Kind::FiniteExact: return static_cast<double>(p_int);
        case Kind::FiniteFloat: return p_real;
        default: throw ParameterError("p = infinity has no finite value");
    }
}

std::string NormExponent::str() const {
    return p_text;
}

Rat abs_pow(const Rat& x, long p) {
    if (p < 1) throw ParameterError("abs_pow: p must be >= 1");
    Rat a = abs(x);
    Rat out = 1;
    Rat base = a;
    long e = p;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

Float abs_pow_f(const Float& x, double p) {
    using boost::multiprecision::abs;
    using boost::multiprecision::pow;
    Float a = abs(x);
    if (a == 0) return Float(0);
    return pow(a, Float(p));
}

Int binom(long n, long k) {
    if (n < 0) throw ParameterError("binom: n must be >= 0");
    if (k < 0 || k > n) return 0;
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Int binom_ext(long n, const Rat& k) {
    if (k.get_den() != 1) return 0;
    if (!k.get_num().fits_slong_p()) return 0;
    return binom(n, k.get_num().get_si());
}

}  // namespace latred
