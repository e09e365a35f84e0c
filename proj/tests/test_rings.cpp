#include "charvar/rings.hpp"

#include <catch_amalgamated.hpp>

using namespace charvar;

TEST_CASE("integers are exact and canonical") {
    Integer a("123456789012345678901234567890");
    Integer b = a * a;
    CHECK(b / a == a);
    CHECK(Integer(0) == -Integer(0));
    CHECK(int_from_string("-42") == Integer(-42));
}

TEST_CASE("rationals reduce to lowest terms with positive denominator") {
    Rational q = make_rational(Integer(6), Integer(-4));
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 2);
    CHECK(make_rational(Integer(0), Integer(7)) == Rational(0));
    CHECK_THROWS_AS(make_rational(Integer(1), Integer(0)), ValidationError);
    CHECK(is_integral(Rational(5)));
    CHECK(!is_integral(q));
}

TEST_CASE("mod_floor lands in [0, p)") {
    CHECK(mod_floor(Integer(-1), Integer(7)) == 6);
    CHECK(mod_floor(Integer(14), Integer(7)) == 0);
    CHECK(mod_floor(Integer(9), Integer(7)) == 2);
}

TEST_CASE("prime field arithmetic") {
    Integer p(101);
    Fp a(Integer(45), p), b(Integer(77), p);
    CHECK((a + b).value() == mod_floor(Integer(45 + 77), p));
    CHECK((a * b).value() == mod_floor(Integer(45 * 77), p));
    CHECK((a - a).is_zero());
    CHECK((a * a.inverse()).value() == 1);
    CHECK(a.pow(100).value() == 1);  // Fermat
    CHECK_THROWS_AS(Fp(Integer(1), Integer(2)), ValidationError);

    Fp c(Integer(3), Integer(103));
    CHECK_THROWS_AS(a + c, ModulusMismatch);
}

TEST_CASE("coefficient injections") {
    CHECK(ToInteger{}(Integer(-7)) == Integer(-7));
    CHECK(ToRational{}(Integer(3)) == Rational(3));
    CHECK(ToComplex{}(Integer(2)) == std::complex<double>(2.0, 0.0));
    Fp f = ToFp{Integer(11)}(Integer(-1));
    CHECK(f.value() == 10);
    Fp half = ToFp{Integer(11)}(make_rational(Integer(1), Integer(2)));
    CHECK((half + half).value() == 1);
}
