#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latred/matrix.hpp"
#include "latred/rational.hpp"

using namespace latred;

TEST_CASE("abs_pow exact cases") {
    CHECK(abs_pow(rat(-3, 2), 3) == rat(27, 8));
    CHECK(abs_pow(Rat(0), 5) == Rat(0));
    CHECK(abs_pow(rat(2), 1) == rat(2));
    CHECK(abs_pow(rat(-5, 3), 2) == rat(25, 9));
}

TEST_CASE("abs_pow float path cross-checked against 4*sqrt(2)") {
    Float v = abs_pow_f(Float(2), 2.5);
    Float expect = Float(4) * sqrt(Float(2));
    CHECK(abs(v - expect) < Float(1e-18));
    CHECK(double(v) == doctest::Approx(5.656854).epsilon(1e-6));
}

TEST_CASE("binomial coefficients with out-of-range conventions") {
    CHECK(binom(4, 2) == 6);
    CHECK(binom(4, 0) == 1);
    CHECK(binom(4, 4) == 1);
    CHECK(binom(3, -1) == 0);
    CHECK(binom(3, 5) == 0);
    // non-integer index convention: C(2, 1/2) = 0
    CHECK(binom_ext(2, rat(1, 2)) == 0);
    CHECK(binom_ext(2, Rat(1)) == 2);
}

TEST_CASE("NormExponent parse/round-trip") {
    NormExponent p1 = NormExponent::parse("1");
    CHECK(p1.is_exact_int());
    CHECK(p1.p_int == 1);
    CHECK(p1.str() == "1");
    NormExponent pinf = NormExponent::parse("inf");
    CHECK(!pinf.finite());
    NormExponent pf = NormExponent::parse("2.5");
    CHECK(pf.finite());
    CHECK(!pf.is_exact_int());
    CHECK(pf.value() == doctest::Approx(2.5));
    CHECK(NormExponent::parse("3") == NormExponent::exact(3));
    CHECK_THROWS_AS(NormExponent::parse("0.5"), ParameterError);
    CHECK_THROWS_AS(NormExponent::parse("bogus"), FormatError);
}

namespace {

RatMatrix mat3(std::initializer_list<long> vals, const Rat& scale = Rat(1)) {
    RatMatrix m(3, 3);
    auto it = vals.begin();
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j) m.at(i, j) = Rat(*it++) * scale;
    return m;
}

}  // namespace

TEST_CASE("determinant: identity, singular, and scaled hand-expanded oracle") {
    CHECK(determinant(RatMatrix::identity(3)) == Rat(1));
    // hand cofactor expansion: 0*(0-8) - 4*(0-8) + 4*(8-16) = 32 - 32 = 0
    CHECK(determinant(mat3({0, 4, 4, 2, 4, 2, 4, 4, 0})) == Rat(0));
    // hand cofactor expansion of the unscaled matrix gives -640; scale (1/3)^3
    CHECK(determinant(mat3({2, 8, 10, 4, 12, 4, 10, 8, 2}, rat(1, 3))) == rat(-640, 27));
}

TEST_CASE("linear_solve: identity, Cramer oracle, singular") {
    RatMatrix id = RatMatrix::identity(2);
    std::vector<Rat> b = {Rat(5), Rat(7)};
    CHECK(linear_solve(id, b) == b);

    RatMatrix m = mat3({2, 8, 10, 4, 12, 4, 10, 8, 2}, rat(1, 3));
    std::vector<Rat> e0 = {Rat(1), Rat(0), Rat(0)};
    std::vector<Rat> x = linear_solve(m, e0);
    CHECK(x == std::vector<Rat>{rat(3, 80), rat(-3, 20), rat(33, 80)});
    // residual check: M x == e0 exactly
    CHECK(m.apply(x) == e0);

    RatMatrix sing(2, 2);
    sing.at(0, 0) = sing.at(0, 1) = sing.at(1, 0) = sing.at(1, 1) = Rat(1);
    CHECK_THROWS_AS(linear_solve(sing, b), SingularMatrix);
}

TEST_CASE("rational string round-trip") {
    CHECK(rat_str(rat(-4, 6)) == "-2/3");
    CHECK(rat_str(Rat(7)) == "7");
    CHECK(rat_parse("21/220") == rat(21, 220));
    CHECK_THROWS_AS(rat_parse("1/0"), FormatError);
    CHECK_THROWS_AS(rat_parse("x"), FormatError);
}
