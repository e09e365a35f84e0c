#pragma once

#include <complex>
#include <string>
#include <vector>

#include "charvar/multipoly.hpp"

namespace charvar {

// Helpers for MultiPoly values known to be univariate (or constant).

inline std::string univar_name(const PolyQ& p) {
    if (p.vars().size() > 1) throw ValidationError("polynomial is not univariate");
    return p.vars().empty() ? std::string() : p.vars()[0];
}

inline long univar_degree(const PolyQ& p) {
    if (p.is_zero()) return -1;
    if (p.vars().empty()) return 0;
    return p.degree(p.vars()[0]);
}

// Dense coefficient list, index = exponent.
inline std::vector<Rational> univar_coeffs(const PolyQ& p) {
    long d = univar_degree(p);
    std::vector<Rational> c(static_cast<std::size_t>(std::max(d, 0L)) + 1, Rational(0));
    if (p.is_zero()) return c;
    if (p.vars().empty()) {
        c[0] = p.constant_value();
        return c;
    }
    for (const auto& [e, v] : p.terms()) c[e[0]] = v;
    return c;
}

inline PolyQ univar_from_coeffs(const std::vector<Rational>& c, const std::string& var) {
    PolyQ r;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (i == 0)
            r = r + PolyQ::constant(c[i]);
        else
            r = r + PolyQ::monomial(c[i], {{var, static_cast<unsigned>(i)}});
    }
    return r;
}

inline Rational univar_leading_coeff(const PolyQ& p) {
    if (p.is_zero()) return Rational(0);
    if (p.vars().empty()) return p.constant_value();
    return p.terms().begin()->second;
}

inline PolyQ univar_monic(const PolyQ& p) {
    if (p.is_zero()) throw DivisionByZeroPoly("monic normalization of zero");
    Rational lc = univar_leading_coeff(p);
    return p * PolyQ::constant(Rational(1) / lc);
}

// Classical division with remainder in Q[x].
inline std::pair<PolyQ, PolyQ> univar_divmod(const PolyQ& a, const PolyQ& b) {
    if (b.is_zero()) throw DivisionByZeroPoly("univariate division by zero");
    std::string var = !b.vars().empty() ? b.vars()[0] : univar_name(a);
    if (!a.vars().empty() && !b.vars().empty() && a.vars()[0] != b.vars()[0])
        throw ValidationError("univariate division across different variables");
    auto ac = univar_coeffs(a);
    auto bc = univar_coeffs(b);
    long db = univar_degree(b);
    long da = univar_degree(a);
    if (da < db) return {PolyQ(), a};
    std::vector<Rational> rem = ac;
    std::vector<Rational> quot(static_cast<std::size_t>(da - db) + 1, Rational(0));
    for (long i = da; i >= db; --i) {
        Rational c = rem[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Rational q = c / bc[static_cast<std::size_t>(db)];
        quot[static_cast<std::size_t>(i - db)] = q;
        for (long j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(i - db + j)] -= q * bc[static_cast<std::size_t>(j)];
    }
    return {univar_from_coeffs(quot, var), univar_from_coeffs(rem, var)};
}

inline PolyQ univar_gcd(PolyQ a, PolyQ b) {
    while (!b.is_zero()) {
        PolyQ r = univar_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return univar_monic(a);
}

inline PolyQ univar_derivative(const PolyQ& p) {
    if (p.vars().empty()) return PolyQ();
    return p.partial(p.vars()[0]);
}

// g / gcd(g, g'): same roots, all simple.
inline PolyQ squarefree_part(const PolyQ& g) {
    if (univar_degree(g) <= 0) return g;
    PolyQ d = univar_gcd(g, univar_derivative(g));
    if (univar_degree(d) <= 0) return univar_monic(g);
    auto [q, r] = univar_divmod(g, d);
    if (!r.is_zero()) throw Error("squarefree_part: non-exact gcd division");
    return univar_monic(q);
}

// Durand-Kerner simultaneous iteration. Fine for the well-conditioned,
// moderate-degree polynomials that show up here.
inline std::vector<std::complex<double>> complex_roots(const PolyQ& p, int max_iter = 2000) {
    using cplx = std::complex<double>;
    long deg = univar_degree(p);
    if (deg <= 0) return {};
    auto coeffs = univar_coeffs(p);
    std::vector<cplx> a(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) a[i] = cplx(to_double(coeffs[i]), 0.0);
    // Monic normalization.
    cplx lead = a.back();
    for (auto& c : a) c /= lead;
    auto eval = [&](cplx x) {
        cplx v = 0;
        for (std::size_t i = a.size(); i-- > 0;) v = v * x + a[i];
        return v;
    };
    double bound = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) bound = std::max(bound, std::abs(a[i]));
    bound += 1.0;
    std::vector<cplx> z(static_cast<std::size_t>(deg));
    cplx seed(0.4, 0.9);
    cplx cur = 1.0;
    for (auto& zi : z) {
        cur *= seed;
        zi = cur * bound;
    }
    for (int it = 0; it < max_iter; ++it) {
        double shift = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            cplx denom = 1.0;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i) denom *= (z[i] - z[j]);
            cplx delta = eval(z[i]) / denom;
            z[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-14 * bound) break;
    }
    return z;
}

inline std::vector<std::complex<double>> complex_roots(const PolyZ& p, int max_iter = 2000) {
    return complex_roots(to_rational(p), max_iter);
}

// Element of Q[x]/(g) with g monic non-constant. Residues are kept reduced.
class QuotientElement {
public:
    QuotientElement() = default;

    QuotientElement(const PolyQ& residue, const PolyQ& modulus)
        : modulus_(univar_monic(modulus)) {
        if (univar_degree(modulus_) < 1)
            throw ValidationError("quotient modulus must be non-constant");
        residue_ = univar_divmod(residue, modulus_).second;
    }

    static QuotientElement of_constant(const Rational& c, const PolyQ& modulus) {
        return QuotientElement(PolyQ::constant(c), modulus);
    }

    // The class of the modulus variable itself.
    static QuotientElement generator(const PolyQ& modulus) {
        PolyQ g = univar_monic(modulus);
        return QuotientElement(PolyQ::variable(univar_name(g)), g);
    }

    const PolyQ& residue() const { return residue_; }
    const PolyQ& modulus() const { return modulus_; }
    bool is_zero() const { return residue_.is_zero(); }

    friend QuotientElement operator+(const QuotientElement& a, const QuotientElement& b) {
        a.check(b);
        return QuotientElement(a.residue_ + b.residue_, a.modulus_);
    }
    friend QuotientElement operator-(const QuotientElement& a, const QuotientElement& b) {
        a.check(b);
        return QuotientElement(a.residue_ - b.residue_, a.modulus_);
    }
    friend QuotientElement operator-(const QuotientElement& a) {
        return QuotientElement(-a.residue_, a.modulus_);
    }
    friend QuotientElement operator*(const QuotientElement& a, const QuotientElement& b) {
        a.check(b);
        return QuotientElement(a.residue_ * b.residue_, a.modulus_);
    }
    friend QuotientElement operator/(const QuotientElement& a, const QuotientElement& b) {
        return a * b.inverse();
    }
    friend bool operator==(const QuotientElement& a, const QuotientElement& b) {
        a.check(b);
        return a.residue_ == b.residue_;
    }
    friend bool operator!=(const QuotientElement& a, const QuotientElement& b) { return !(a == b); }

    bool is_unit() const {
        if (residue_.is_zero()) return false;
        return univar_degree(univar_gcd(residue_, modulus_)) == 0;
    }

    // Extended Euclid in Q[x].
    QuotientElement inverse() const {
        if (residue_.is_zero()) throw Error("inverse of zero in quotient ring");
        PolyQ r0 = modulus_, r1 = residue_;
        PolyQ s0 = PolyQ(), s1 = PolyQ::constant(Rational(1));
        while (!r1.is_zero()) {
            auto [q, r] = univar_divmod(r0, r1);
            PolyQ s = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (univar_degree(r0) != 0)
            throw Error("element not invertible in quotient ring (gcd degree > 0)");
        Rational lc = r0.constant_value();
        return QuotientElement(s0 * PolyQ::constant(Rational(1) / lc), modulus_);
    }

private:
    void check(const QuotientElement& b) const {
        if (modulus_ != b.modulus_) throw ModulusMismatch("quotient ring modulus mismatch");
    }
    PolyQ residue_;
    PolyQ modulus_;
};

struct ToQuotient {
    PolyQ modulus;
    QuotientElement operator()(const Integer& c) const {
        return QuotientElement::of_constant(Rational(c), modulus);
    }
    QuotientElement operator()(const Rational& c) const {
        return QuotientElement::of_constant(c, modulus);
    }
};

}  // namespace charvar
