#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latred/lattice.hpp"

using namespace latred;

namespace {

LatticeInstance identity_half(const NormExponent& p) {
    // one group, weight 1, rows I_2, target (1/2, 0)
    LatticeInstance inst;
    inst.kind = LatticeInstance::Kind::Cvp;
    inst.norm = p;
    inst.rank = 2;
    WeightedRowGroup g;
    g.weight = Rat(1);
    g.rows = RatMatrix::identity(2);
    g.target = {rat(1, 2), Rat(0)};
    inst.groups.push_back(std::move(g));
    inst.threshold = rat(1, 2);
    inst.prov.reduction = "manual";
    return inst;
}

}  // namespace

TEST_CASE("dist_pow: identity examples") {
    LatticeInstance inst = identity_half(NormExponent::exact(1));
    CHECK(dist_pow(inst, {0, 0}) == rat(1, 2));
    CHECK(dist_pow(inst, {1, 0}) == rat(1, 2));
    CHECK(dist_pow(inst, {1, 1}) == rat(3, 2));

    // a zero-weight group contributes nothing
    LatticeInstance z = inst;
    z.groups[0].weight = Rat(0);
    CHECK(dist_pow(z, {7, -3}) == Rat(0));
}

TEST_CASE("solve_cvp_enum on the identity example") {
    LatticeInstance inst = identity_half(NormExponent::exact(1));
    SolveResult r = solve_cvp_enum(inst, Box::uniform(2, -1, 1));
    CHECK(r.yes);
    CHECK(r.best == rat(1, 2));
    CHECK(r.witness == std::vector<long>{0, 0});
    CHECK(r.count == 2);  // (0,0) and (1,0) both at 1/2
}

TEST_CASE("solve_svp_enum: 2I_2 under the infinity norm") {
    LatticeInstance inst;
    inst.kind = LatticeInstance::Kind::Svp;
    inst.norm = NormExponent::infinity();
    inst.rank = 2;
    WeightedRowGroup g;
    g.weight = Rat(1);
    g.rows = RatMatrix::identity(2);
    g.rows.at(0, 0) = g.rows.at(1, 1) = Rat(2);
    g.target = {Rat(0), Rat(0)};
    inst.groups.push_back(std::move(g));
    inst.threshold = Rat(2);
    inst.prov.reduction = "manual";
    SolveResult r = solve_svp_enum(inst, Box::uniform(2, -1, 1));
    CHECK(r.yes);
    CHECK(r.best == Rat(2));
    CHECK(r.count == 8);  // all nonzero points of {-1,0,1}^2
}

TEST_CASE("enumeration limit guard") {
    LatticeInstance inst = identity_half(NormExponent::exact(1));
    CHECK_THROWS_AS(solve_cvp_enum(inst, Box::uniform(2, -100000, 100000), 1000), LimitExceeded);
}

TEST_CASE("generic path agrees with the compiled path") {
    // non-integer p forces the float fallback; compare decisions on integer p
    LatticeInstance inst = identity_half(NormExponent::exact(3));
    inst.threshold = rat(1, 8);
    SolveResult fast = solve_cvp_enum(inst, Box::uniform(2, -2, 2));
    CHECK(fast.yes);
    CHECK(fast.best == rat(1, 8));

    LatticeInstance fl = identity_half(NormExponent::real(3.0));
    fl.threshold = rat(1, 8);
    SolveResult slow = solve_cvp_enum(fl, Box::uniform(2, -2, 2));
    CHECK(slow.yes);
    CHECK(to_double(slow.best) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("densify row scaling") {
    LatticeInstance inst = identity_half(NormExponent::exact(1));
    inst.groups[0].weight = Rat(8);
    DenseInstance d1 = densify(inst);
    CHECK(d1.basis_rows[0][0] == doctest::Approx(8.0));  // rho^{1/1}

    inst.norm = NormExponent::exact(3);
    DenseInstance d3 = densify(inst);
    CHECK(d3.basis_rows[0][0] == doctest::Approx(2.0));  // exact cube root of 8

    inst.norm = NormExponent::exact(2);
    inst.groups[0].weight = Rat(2);
    DenseInstance d2 = densify(inst);
    CHECK(d2.basis_rows[0][0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    // float check against the rho * |.|^p route
    double direct = 2.0 * std::pow(std::abs(1.0 - 0.5), 2.0);
    double scaled = std::pow(std::abs(d2.basis_rows[0][0] * 1.0 - d2.target[0]), 2.0);
    CHECK(scaled == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("instance JSON: byte-identical round-trip and field names") {
    LatticeInstance inst = identity_half(NormExponent::exact(1));
    std::string a = write_instance(inst);
    CHECK(a.find("\"threshold_pow\"") != std::string::npos);
    LatticeInstance back = read_instance(a);
    std::string b = write_instance(back);
    CHECK(a == b);
    CHECK(back.threshold == inst.threshold);
    CHECK(back.groups[0].target == inst.groups[0].target);

    LatticeInstance infi = identity_half(NormExponent::infinity());
    std::string c = write_instance(infi);
    CHECK(c.find("\"threshold\"") != std::string::npos);
    CHECK(c.find("\"threshold_pow\"") == std::string::npos);
    CHECK(write_instance(read_instance(c)) == c);
}

TEST_CASE("instance JSON: FormatError names the field") {
    LatticeInstance inst = identity_half(NormExponent::exact(1));
    std::string good = write_instance(inst);
    std::string broken = good;
    auto pos = broken.find("\"norm\"");
    REQUIRE(pos != std::string::npos);
    broken.replace(pos, 6, "\"nrm\"");
    try {
        read_instance(broken);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("norm") != std::string::npos);
    }
}

TEST_CASE("box helpers") {
    Box b = Box::uniform(3, -1, 2);
    CHECK(b.dims() == 3);
    CHECK(b.points() == 64);
    CHECK(b.str() == "[-1,2]^3");
}

TEST_CASE("sha256 known vector") {
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}
