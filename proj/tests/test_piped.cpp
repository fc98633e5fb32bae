#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "latred/piped.hpp"

using namespace latred;

namespace {

RatMatrix mat(long n, std::initializer_list<Rat> vals) {
    RatMatrix m(n, n);
    auto it = vals.begin();
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m.at(i, j) = *it++;
    return m;
}

}  // namespace

TEST_CASE("M_k matrix: direct summation oracles") {
    // k=2, p=1, t*=-2: summed term by term from the defining formula
    CHECK(build_m_matrix(2, 1, Rat(-2)) ==
          mat(3, {Rat(0), Rat(4), Rat(4), Rat(2), Rat(4), Rat(2), Rat(4), Rat(4), Rat(0)}));
    // k=2, p=1, t*=-4/3
    CHECK(build_m_matrix(2, 1, rat(-4, 3)) ==
          mat(3, {rat(2, 3), rat(8, 3), rat(10, 3), rat(4, 3), Rat(4), rat(4, 3), rat(10, 3),
                  rat(8, 3), rat(2, 3)}));
    // k=1, p=1, t*=0 is singular: all entries |±1|
    RatMatrix m1 = build_m_matrix(1, 1, Rat(0));
    CHECK(m1 == mat(2, {Rat(1), Rat(1), Rat(1), Rat(1)}));
    CHECK(determinant(m1) == Rat(0));
}

TEST_CASE("lambda row sum: closed form agrees with every row") {
    CHECK(lambda_row_sum(2, 1, Rat(-2)) == Rat(8));
    CHECK(lambda_row_sum(2, 1, rat(-4, 3)) == rat(20, 3));
    // positivity across a small sweep
    for (int k = 2; k <= 5; ++k)
        for (long p : {1L, 3L})
            for (long i = 0; i <= 4; ++i)
                CHECK(lambda_row_sum(k, p, Rat(-k) + rat(i, 2)) > 0);
}

TEST_CASE("find_tstar exact grid") {
    // k=2, p=1: grid {-2,-4/3,-2/3,0}; det vanishes at -2, first nonzero at -4/3
    Rat t = find_tstar(2, NormExponent::exact(1));
    CHECK(t == rat(-4, 3));
    CHECK(determinant(build_m_matrix(2, 1, Rat(-2))) == Rat(0));
    CHECK(determinant(build_m_matrix(2, 1, t)) == rat(-640, 27));
    // k=3, p=2: every grid point is singular
    CHECK_THROWS_AS(find_tstar(3, NormExponent::exact(2)), ConstructionFailure);
    // k=2, p=3: some grid point works
    Rat t23 = find_tstar(2, NormExponent::exact(3));
    CHECK(determinant(build_m_matrix(2, 3, t23)) != 0);
}

TEST_CASE("solve_weights: exact profile for (2,1,-4/3)") {
    WeightProfile prof = solve_weights(2, NormExponent::exact(1), rat(-4, 3));
    REQUIRE(prof.exact);
    CHECK(prof.alphas == std::vector<Rat>{rat(9, 55), rat(21, 220), rat(3, 10)});
    CHECK(prof.epsilon == rat(4, 11));
    // invariant: M alpha = 1 + eps e0, exactly
    RatMatrix M = build_m_matrix(2, 1, prof.t_star);
    std::vector<Rat> v = M.apply(prof.alphas);
    CHECK(v[0] == Rat(1) + prof.epsilon);
    CHECK(v[1] == Rat(1));
    CHECK(v[2] == Rat(1));
    for (const Rat& a : prof.alphas) CHECK(a >= 0);
}

TEST_CASE("vertex_norm_pow: direct 2^k summation oracle") {
    WeightProfile prof = solve_weights(2, NormExponent::exact(1), rat(-4, 3));
    CHECK(vertex_norm_pow(prof, 1) == Rat(1));
    CHECK(vertex_norm_pow(prof, 2) == Rat(1));
    CHECK(vertex_norm_pow(prof, 0) == rat(15, 11));
    CHECK(vertex_norm_pow(prof, 0) == Rat(1) + prof.epsilon);
}

TEST_CASE("assemble_dense: margin matches epsilon, zero-weight rows dropped") {
    WeightProfile prof = solve_weights(2, NormExponent::exact(1), rat(-4, 3));
    IsolatingParallelepiped g = assemble_dense(prof);
    CHECK(g.V.size() == 4);  // all three weights nonzero: C(2,0)+C(2,1)+C(2,2) rows
    IsopedReport rep = validate_isoped(g);
    CHECK(rep.pass);
    CHECK(rep.margin == doctest::Approx(4.0 / 11.0).epsilon(1e-9));
    CHECK(g.margin_exact() == rat(4, 11));

    // zero weight drops rows: a profile with alpha_0 = 0 loses C(k,0) = 1 row
    WeightProfile z = prof;
    z.alphas[0] = Rat(0);
    IsolatingParallelepiped gz = assemble_dense(z);
    CHECK(gz.V.size() == 3);
}

TEST_CASE("construct_isoped sweep and impossibility") {
    for (long p : {1L, 3L}) {
        for (int k = 2; k <= 4; ++k) {
            IsolatingParallelepiped g = construct_isoped(k, NormExponent::exact(p));
            CHECK(validate_isoped(g).pass);
        }
    }
    CHECK_THROWS_AS(construct_isoped(3, NormExponent::exact(2)), ConstructionFailure);
    // even p is fine when k <= p
    IsolatingParallelepiped g22 = construct_isoped(2, NormExponent::exact(2));
    CHECK(validate_isoped(g22).pass);
}

TEST_CASE("construct_isoped non-integer p uses the float path") {
    IsolatingParallelepiped g = construct_isoped(2, NormExponent::real(2.5));
    CHECK(validate_isoped(g).pass);
}

TEST_CASE("l1 family") {
    IsolatingParallelepiped g2 = l1_family(2);
    // t* = (2,1)/(k-1) for k=2 -> (2,1), l1 norm 3
    REQUIRE(g2.t_vec.size() == 2);
    CHECK(g2.t_vec[0] == doctest::Approx(2.0));
    CHECK(g2.t_vec[1] == doctest::Approx(1.0));
    CHECK(g2.margin_exact() == Rat(2));  // ||t*||_1 - 1 = 2/(k-1)

    IsolatingParallelepiped g3 = l1_family(3);
    CHECK(validate_isoped(g3).pass);
    // all seven nonzero vertices at l1 distance exactly 1 from (3/2, 1/2)
    for (int mask = 1; mask < 8; ++mask) {
        int w = __builtin_popcount(static_cast<unsigned>(mask));
        double d = 0;
        for (std::size_t r = 0; r < g3.t_vec.size(); ++r)
            d += std::abs(g3.V[r][0] * w - g3.t_vec[r]);
        CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(l1_family(5).margin_exact() == rat(1, 2));
}

TEST_CASE("leading coefficient of the determinant polynomial") {
    CHECK(leading_coefficient(2, 1) == Rat(-8));    // 2^2 (2 - 2^2)
    CHECK(leading_coefficient(3, 1) == Rat(-48));   // 2^3 (2 - 2^3)
    CHECK(leading_coefficient(2, 3) == Rat(-8));    // independent of p
    CHECK(leading_coefficient(3, 3) == Rat(-48));
}

TEST_CASE("l2 alternating sum vanishes for k >= 3") {
    std::mt19937_64 rng(12345);
    auto rnd = [&]() { return rat(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 7) + 1); };
    for (int trial = 0; trial < 25; ++trial) {
        long d = 2 + static_cast<long>(rng() % 3);
        RatMatrix V(d, 3);
        std::vector<Rat> t(static_cast<std::size_t>(d));
        for (Rat& x : V.a) x = rnd();
        for (Rat& x : t) x = rnd();
        CHECK(l2_alternating_sum(V, t) == Rat(0));
    }
    // k = 2 counterexample: v1 = v2 = e1, t = 0 -> 0 - 1 - 1 + 4 = 2
    RatMatrix V(1, 2);
    V.at(0, 0) = V.at(0, 1) = Rat(1);
    CHECK(l2_alternating_sum(V, {Rat(0)}) == Rat(2));
    // V = 0 vanishes for any k
    RatMatrix Z(1, 4);
    CHECK(l2_alternating_sum(Z, {rat(7, 3)}) == Rat(0));
}

TEST_CASE("validate_isoped flags perturbations") {
    IsolatingParallelepiped g = l1_family(3);
    g.V[0][0] += 1e-3;
    CHECK(!validate_isoped(g).pass);
    CHECK_THROWS_AS(validate_isoped_or_throw(g), ValidationFailure);
}
