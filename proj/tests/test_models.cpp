#include "charvar/models.hpp"

#include <catch_amalgamated.hpp>
#include <random>

#include "charvar/trace.hpp"

using namespace charvar;

namespace {

PolyZ xv() { return PolyZ::variable("x"); }
PolyZ yv() { return PolyZ::variable("y"); }
PolyZ zv() { return PolyZ::variable("z"); }
PolyZ tv() { return PolyZ::variable("t"); }
PolyZ cst(long c) { return PolyZ::constant(Integer(c)); }

Rational small_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    return make_rational(Integer(num(rng)), Integer(den(rng)));
}

}  // namespace

TEST_CASE("link parameters") {
    LinkParams p = LinkParams::make(5, -7);
    CHECK(p.m == 2);
    CHECK(p.n == -4);
    CHECK(p.hyperbolic);
    CHECK(!LinkParams::make(1, 5).hyperbolic);
    CHECK_THROWS_AS(LinkParams::make(4, 3), ValidationError);
}

TEST_CASE("t polynomial") {
    CHECK(t_poly(0) == xv() * yv() - zv());
    PolyZ t1 = (xv() * zv() - yv()) * (yv() * zv() - xv()) -
               zv() * (zv() * zv() + cst(1)) + cst(4) * zv();
    CHECK(t_poly(1) == t1);
    CHECK(t_poly(-1) == xv() * yv() - zv());  // S_{-1} = 0 kills the kappa term

    // t = P_{w_k}; the trace engine is the oracle.
    for (long m = -4; m <= 4; ++m)
        CHECK(t_poly(m) == trace_poly(LinkWords::make(m, 0).wk));

    // substituting t_poly(0) into S_1(t) recovers xy - z
    CHECK(cheb_S(1, "t").subst("t", t_poly(0)) == xv() * yv() - zv());

    // Both displayed forms agree (the constructor cross-checks them).
    for (long m = -8; m <= 8; ++m) CHECK_NOTHROW(t_poly(m));
}

TEST_CASE("reducible locus") {
    PolyZ k = reducible_poly();
    CHECK(k.eval_int({{"x", Integer(2)}, {"y", Integer(2)}, {"z", Integer(2)}}) == 0);
    CHECK(k.eval_int({{"x", Integer(0)}, {"y", Integer(0)}, {"z", Integer(0)}}) == 4);
}

TEST_CASE("curve polynomials") {
    CHECK(curve_poly(3, 3) == tv() - zv());
    CHECK(curve_poly(5, 5) == (tv() - zv()) * (tv() * zv() + cst(1)));
    // S_3(t) S_1(z) - S_2(t) S_2(z), expanded by hand
    PolyZ c57 = (tv() * tv() * tv() - cst(2) * tv()) * zv() -
                (tv() * tv() - cst(1)) * (zv() * zv() - cst(1));
    CHECK(curve_poly(5, 7) == c57);
    CHECK(curve_poly(-3, -3) == zv() - tv());
}

TEST_CASE("natural models") {
    CHECK(natural_model(3, 3) == t_poly(1) - zv());
    // The J(3, 2m+1) subfamily in its t S_{m-1}(z) - S_m(z) orientation.
    for (long m : {-3L, -2L, 1L, 2L, 3L})
        CHECK(natural_model(2 * m + 1, 3) == t_poly(m) * cheb_S(m - 1) - cheb_S(m));
}

TEST_CASE("phi factorization against the trace engine") {
    for (auto [k, l] : std::vector<std::pair<long, long>>{
             {3, 3}, {3, 5}, {5, 3}, {3, -3}, {-3, 5}, {-5, -5}, {5, 7}}) {
        CHECK(reducible_poly() * natural_model(k, l) == phi_via_traces(k, l));
    }
}

TEST_CASE("diagonal splitting") {
    auto [c0, none] = diagonal_split(3);
    CHECK(c0 == tv() - zv());
    CHECK(!none.has_value());

    auto [c0b, c1b] = diagonal_split(5);
    REQUIRE(c1b.has_value());
    CHECK(*c1b == tv() * zv() + cst(1));

    auto [c0c, c1c] = diagonal_split(-5);
    REQUIRE(c1c.has_value());
    CHECK((tv() - zv()) * *c1c == curve_poly(-5, -5));  // multiply-back oracle

    for (long l = 3; l <= 15; l += 2) {
        CHECK_NOTHROW(diagonal_split(l));
        CHECK_NOTHROW(diagonal_split(-l));
    }
    CHECK_THROWS_AS(diagonal_split(1), ValidationError);
    CHECK_THROWS_AS(diagonal_split(4), ValidationError);
}

TEST_CASE("variety model assembly") {
    VarietyModel v = VarietyModel::make(7, 7);
    REQUIRE(v.components.size() == 2);
    CHECK(v.components[0].label == "canonical");
    CHECK(v.components[0].poly == tv() - zv());
    CHECK(v.components[0].poly * v.components[1].poly == v.curve);

    VarietyModel w = VarietyModel::make(5, 7);
    REQUIRE(w.components.size() == 1);
    CHECK(w.components[0].poly == w.curve);
    CHECK(w.irr_model == natural_model(5, 7));
    CHECK(w.reducible * w.irr_model == phi_via_traces(5, 7));
}

TEST_CASE("birational map V <-> U") {
    ToRational conv;
    // m = 0: S_0 = 1, S_{-1} = 0: the map is the identity on (x,y)->(u,v).
    AffinePoint<Rational> p0{{"x", Rational(3)}, {"y", Rational(-2)}, {"z", Rational(5)}};
    auto u0 = map_V_to_U(p0, 0, conv);
    CHECK(u0.at("u") == Rational(3));
    CHECK(u0.at("v") == Rational(-2));

    // m = 1, z = 0: denominator S_2(0) = -1, forward sends (x,y,0) to (-y,-x,0).
    AffinePoint<Rational> p1{{"x", Rational(4)}, {"y", Rational(7)}, {"z", Rational(0)}};
    auto u1 = map_V_to_U(p1, 1, conv);
    CHECK(u1.at("u") == Rational(-7));
    CHECK(u1.at("v") == Rational(-4));
    auto back1 = map_U_to_V(u1, 1, conv);
    CHECK(back1 == p1);

    std::mt19937_64 rng(314);
    int done = 0;
    std::uniform_int_distribution<long> md(-4, 4);
    while (done < 100) {
        long m = md(rng);
        AffinePoint<Rational> pt{
            {"x", small_rational(rng)}, {"y", small_rational(rng)}, {"z", small_rational(rng)}};
        try {
            auto fwd = map_V_to_U(pt, m, conv);
            CHECK(map_U_to_V(fwd, m, conv) == pt);
            ++done;
        } catch (const ExceptionalLocus&) {
            // S_2m vanished at z; resample
        }
    }
}

TEST_CASE("birational map U <-> W") {
    ToRational conv;
    // m = 0: t = uv - z; inverse recovers u = (t + z)/v.
    AffinePoint<Rational> q0{{"u", Rational(3)}, {"v", Rational(2)}, {"z", Rational(1)}};
    auto w0 = map_U_to_W(q0, 0, conv);
    CHECK(w0.at("t") == Rational(5));
    CHECK(map_W_to_U(w0, 0, conv) == q0);

    // (u,v,z) = (1,1,0), m = 1: t = 1 - 0 + 0 = 1.
    AffinePoint<Rational> q1{{"u", Rational(1)}, {"v", Rational(1)}, {"z", Rational(0)}};
    auto w1 = map_U_to_W(q1, 1, conv);
    CHECK(w1.at("t") == Rational(1));
    CHECK(map_W_to_U(w1, 1, conv).at("u") == Rational(1));

    AffinePoint<Rational> bad{{"u", Rational(1)}, {"v", Rational(0)}, {"z", Rational(0)}};
    CHECK_THROWS_AS(map_U_to_W(bad, 1, conv), ExceptionalLocus);

    std::mt19937_64 rng(2718);
    int done = 0;
    std::uniform_int_distribution<long> md(-4, 4);
    while (done < 100) {
        long m = md(rng);
        Rational v = small_rational(rng);
        if (v == 0) continue;
        AffinePoint<Rational> pt{{"u", small_rational(rng)}, {"v", v}, {"z", small_rational(rng)}};
        auto fwd = map_U_to_W(pt, m, conv);
        CHECK(map_W_to_U(fwd, m, conv) == pt);
        ++done;
    }
}

TEST_CASE("birational maps work over a prime field too") {
    Integer p(101);
    ToFp conv{p};
    AffinePoint<Fp> pt{{"x", Fp(Integer(17), p)}, {"y", Fp(Integer(40), p)}, {"z", Fp(Integer(3), p)}};
    auto fwd = map_V_to_U(pt, 2, conv);
    auto back = map_U_to_V(fwd, 2, conv);
    CHECK(back.at("x") == pt.at("x"));
    CHECK(back.at("y") == pt.at("y"));
}

TEST_CASE("curve divisibility on the diagonal") {
    for (long l = 3; l <= 15; l += 2) {
        for (long sign : {1L, -1L}) {
            PolyZ c = curve_poly(sign * l, sign * l);
            PolyZ q = c.divide_exact(tv() - zv());
            CHECK((tv() - zv()) * q == c);
        }
    }
}
