#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

#include "charvar/errors.hpp"

namespace charvar {

// Exact coefficient domains. Integer and Rational are GMP classes; both keep
// canonical representations (Rational: reduced, positive denominator).
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer int_from_string(const std::string& s) {
    return Integer(s);
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) {
    return q.get_den() == 1;
}

// Floor-mod: result in [0, p) for p > 0.
inline Integer mod_floor(const Integer& a, const Integer& p) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

inline double to_double(const Integer& a) { return a.get_d(); }
inline double to_double(const Rational& a) { return a.get_d(); }

// Prime field element. The modulus travels with the value; mixing moduli is
// an error. p > 2 required.
class Fp {
public:
    Fp() : v_(0), p_(3) {}
    Fp(const Integer& v, const Integer& p) : v_(mod_floor(v, p)), p_(p) {
        if (p <= 2) throw ValidationError("prime field modulus must exceed 2");
    }

    const Integer& value() const { return v_; }
    const Integer& modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    friend Fp operator+(const Fp& a, const Fp& b) {
        a.check(b);
        return Fp(a.v_ + b.v_, a.p_);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        a.check(b);
        return Fp(a.v_ - b.v_, a.p_);
    }
    friend Fp operator-(const Fp& a) { return Fp(-a.v_, a.p_); }
    friend Fp operator*(const Fp& a, const Fp& b) {
        a.check(b);
        return Fp(a.v_ * b.v_, a.p_);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
    friend bool operator==(const Fp& a, const Fp& b) {
        a.check(b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp inverse() const {
        Integer inv;
        if (mpz_invert(inv.get_mpz_t(), v_.get_mpz_t(), p_.get_mpz_t()) == 0)
            throw Error("element not invertible mod p");
        return Fp(inv, p_);
    }

    Fp pow(unsigned long e) const {
        Integer r;
        mpz_powm_ui(r.get_mpz_t(), v_.get_mpz_t(), e, p_.get_mpz_t());
        return Fp(r, p_);
    }

private:
    void check(const Fp& b) const {
        if (p_ != b.p_) throw ModulusMismatch("prime field modulus mismatch");
    }
    Integer v_;
    Integer p_;
};

// Coefficient injections used by MultiPoly::eval. Each maps an exact
// coefficient (Integer or Rational) into the evaluation ring.
struct ToInteger {
    Integer operator()(const Integer& c) const { return c; }
    Integer operator()(const Rational& c) const {
        if (!is_integral(c)) throw ValidationError("non-integral coefficient in integer evaluation");
        return c.get_num();
    }
};

struct ToRational {
    Rational operator()(const Integer& c) const { return Rational(c); }
    Rational operator()(const Rational& c) const { return c; }
};

struct ToComplex {
    std::complex<double> operator()(const Integer& c) const { return {to_double(c), 0.0}; }
    std::complex<double> operator()(const Rational& c) const { return {to_double(c), 0.0}; }
};

struct ToFp {
    Integer p;
    Fp operator()(const Integer& c) const { return Fp(c, p); }
    Fp operator()(const Rational& c) const {
        return Fp(c.get_num(), p) / Fp(c.get_den(), p);
    }
};

}  // namespace charvar
