#include "charvar/univariate.hpp"

#include <catch_amalgamated.hpp>

using namespace charvar;

namespace {
PolyQ qvar(const std::string& n) { return PolyQ::variable(n); }
PolyQ qcst(long c) { return PolyQ::constant(Rational(c)); }
}  // namespace

TEST_CASE("univariate division") {
    PolyQ z = qvar("z");
    PolyQ a = z * z * z - qcst(2) * z;  // z(z^2-2)
    auto [q, r] = univar_divmod(a, z);
    CHECK(q == z * z - qcst(2));
    CHECK(r.is_zero());

    auto [q2, r2] = univar_divmod(a, z * z - qcst(1));
    CHECK(q2 == z);
    CHECK(r2 == -z);
}

TEST_CASE("gcd and squarefree part") {
    PolyQ z = qvar("z");
    PolyQ g = (z - qcst(1)) * (z - qcst(1)) * (z + qcst(2));
    CHECK(univar_gcd(g, univar_derivative(g)) == z - qcst(1));
    CHECK(squarefree_part(g) == (z - qcst(1)) * (z + qcst(2)));
    CHECK(squarefree_part((z - qcst(3))) == z - qcst(3));
}

TEST_CASE("quotient ring arithmetic mod z^2 - 2") {
    PolyQ z = qvar("z");
    PolyQ g = z * z - qcst(2);
    QuotientElement zeta = QuotientElement::generator(g);
    QuotientElement two = QuotientElement::of_constant(Rational(2), g);
    CHECK(zeta * zeta == two);
    CHECK((zeta * zeta * zeta).residue() == qcst(2) * z);
    CHECK((zeta - zeta).is_zero());

    // (1 + zeta)^{-1} = zeta - 1  since (1+sqrt2)(sqrt2-1) = 1
    QuotientElement e = QuotientElement::of_constant(Rational(1), g) + zeta;
    CHECK(e.is_unit());
    CHECK(e.inverse() == zeta - QuotientElement::of_constant(Rational(1), g));
    CHECK((e * e.inverse()).residue() == qcst(1));
}

TEST_CASE("non-units detected in non-field quotients") {
    PolyQ z = qvar("z");
    PolyQ g = z * z - z;  // z(z-1): Q[z]/(g) has zero divisors
    QuotientElement zeta = QuotientElement::generator(g);
    CHECK(!zeta.is_unit());
    CHECK_THROWS(zeta.inverse());
    QuotientElement u = zeta + zeta - QuotientElement::of_constant(Rational(1), g);  // 2z-1
    CHECK(u.is_unit());
    CHECK((u * u.inverse()).residue() == qcst(1));
}

TEST_CASE("MultiPoly evaluation into a quotient ring") {
    PolyQ z = qvar("z");
    PolyQ g = z * z - qcst(2);
    PolyZ zz = PolyZ::variable("z");
    PolyZ s3 = zz * zz * zz - PolyZ::constant(Integer(2)) * zz;  // S_3
    QuotientElement val =
        s3.eval<QuotientElement>({{"z", QuotientElement::generator(g)}}, ToQuotient{g});
    CHECK(val.is_zero());  // sqrt(2) is a root of S_3
}

TEST_CASE("complex root finding") {
    PolyQ z = qvar("z");
    PolyQ p = z * z + qcst(1);
    auto roots = complex_roots(p);
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) {
        CHECK(std::abs(std::abs(r.imag()) - 1.0) < 1e-10);
        CHECK(std::abs(r.real()) < 1e-10);
    }

    // S_3 = z^3 - 2z has roots 0, +-sqrt(2)
    PolyQ s3 = z * z * z - qcst(2) * z;
    auto r3 = complex_roots(s3);
    REQUIRE(r3.size() == 3);
    double prod = 1.0;
    for (const auto& r : r3) {
        if (std::abs(r) > 1e-9) prod *= r.real();
        CHECK(std::abs(r.imag()) < 1e-10);
    }
    CHECK(std::abs(prod + 2.0) < 1e-9);
}
