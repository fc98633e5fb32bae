#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <string>

#include "latred/errors.hpp"

namespace latred {

// Exact signed fraction, always canonical (lowest terms, positive denominator).
using Rat = mpq_class;
using Int = mpz_class;

// Float scalar for the inexact code paths (non-integer p, dense gadget
// coordinates). 80-bit mantissa by default; change the typedef to retune.
using Float = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<80, boost::multiprecision::backends::digit_base_2>>;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "num/den" or "num". Throws FormatError on garbage.
Rat rat_parse(const std::string& s);

// Canonical textual form: "num/den", with "/den" omitted when den == 1.
std::string rat_str(const Rat& q);

Float to_float(const Rat& q);
double to_double(const Rat& q);

// Norm exponent p: exact positive integer, arbitrary real >= 1, or infinity.
// Exact-arithmetic code paths require finite-exact or infinity.
struct NormExponent {
    enum class Kind { FiniteExact, FiniteFloat, Infinity };

    Kind kind = Kind::FiniteExact;
    long p_int = 1;        // valid when FiniteExact
    double p_real = 1.0;   // valid when FiniteFloat
    std::string p_text;    // original spelling, preserved for round-trips

    static NormExponent exact(long p);
    static NormExponent real(double p);
    static NormExponent infinity();
    static NormExponent parse(const std::string& s);

    bool finite() const { return kind != Kind::Infinity; }
    bool is_exact_int() const { return kind == Kind::FiniteExact; }
    double value() const;
    std::string str() const;

    bool operator==(const NormExponent& o) const { return str() == o.str(); }
};

// |x|^p for finite integer p >= 1. Exact.
Rat abs_pow(const Rat& x, long p);

// |x|^p on the float path, any finite p >= 1.
Float abs_pow_f(const Float& x, double p);

// Binomial coefficient with n >= 0, plain integer k. Zero when k < 0 or k > n.
Int binom(long n, long k);

// Zero-extended binomial: also zero when k is not an integer.
Int binom_ext(long n, const Rat& k);

// Default absolute tolerance for float comparisons.
inline constexpr double kFloatTol = 1e-9;

}  // namespace latred
