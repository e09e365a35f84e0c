#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charvar/chebyshev.hpp"
#include "charvar/multipoly.hpp"

namespace charvar {

// Validated link parameters for J(k, l): k = 2m+1, l = 2n+1, both odd.
// Hyperbolic exactly when |k| > 1 and |l| > 1.
struct LinkParams {
    long k = 3, l = 3;
    long m = 1, n = 1;
    bool hyperbolic = true;

    static LinkParams make(long k, long l) {
        if (k % 2 == 0 || l % 2 == 0)
            throw ValidationError("J(k,l) is a two-component link only for odd k and l");
        LinkParams p;
        p.k = k;
        p.l = l;
        p.m = (k - 1) / 2;
        p.n = (l - 1) / 2;
        p.hyperbolic = std::abs(k) > 1 && std::abs(l) > 1;
        return p;
    }
};

// xyz + 4 - x^2 - y^2 - z^2: the reducible locus.
inline PolyZ reducible_poly() {
    PolyZ x = PolyZ::variable("x"), y = PolyZ::variable("y"), z = PolyZ::variable("z");
    return x * y * z + PolyZ::constant(Integer(4)) - x * x - y * y - z * z;
}

// t = tr(w_k) as a polynomial in (x, y, z). Both displayed forms are built
// and compared: the product form
//   (x S_m - y S_{m-1})(y S_m - x S_{m-1}) - z (S_m^2 + S_{m-1}^2) + 4 S_m S_{m-1}
// and the simplified form  xy - z + (xyz + 4 - x^2 - y^2 - z^2) S_m S_{m-1}.
inline PolyZ t_poly(long m) {
    PolyZ x = PolyZ::variable("x"), y = PolyZ::variable("y"), z = PolyZ::variable("z");
    PolyZ sm = cheb_S(m, "z"), sm1 = cheb_S(m - 1, "z");
    PolyZ product_form = (x * sm - y * sm1) * (y * sm - x * sm1) -
                         z * (sm * sm + sm1 * sm1) + PolyZ::constant(Integer(4)) * sm * sm1;
    PolyZ simple_form = x * y - z + reducible_poly() * sm * sm1;
    if (product_form != simple_form)
        throw ConsistencyFailure("the two displayed forms of t disagree at m=" + std::to_string(m));
    return product_form;
}

// C(k, l): S_n(t) S_{m-1}(z) - S_{n-1}(t) S_m(z) in (t, z).
inline PolyZ curve_poly(long k, long l) {
    LinkParams p = LinkParams::make(k, l);
    return cheb_S(p.n, "t") * cheb_S(p.m - 1, "z") - cheb_S(p.n - 1, "t") * cheb_S(p.m, "z");
}

// The natural model of X_irr(k, l) in (x, y, z): the curve polynomial with
// t replaced by t_poly(m).
inline PolyZ natural_model(long k, long l) {
    LinkParams p = LinkParams::make(k, l);
    return subst_or_same(curve_poly(k, l), "t", t_poly(p.m));
}

// Diagonal splitting of C(l, l): the canonical factor t - z, and the exact
// quotient when |l| > 3.
inline std::pair<PolyZ, std::optional<PolyZ>> diagonal_split(long l) {
    if (l % 2 == 0) throw ValidationError("diagonal_split requires odd l");
    if (std::abs(l) < 3) throw ValidationError("diagonal_split requires |l| >= 3");
    PolyZ t_minus_z = PolyZ::variable("t") - PolyZ::variable("z");
    if (std::abs(l) == 3) return {t_minus_z, std::nullopt};
    return {t_minus_z, curve_poly(l, l).divide_exact(t_minus_z)};
}

struct VarietyModel {
    struct Component {
        std::string label;  // "canonical" or "extra"
        PolyZ poly;         // factor of the curve polynomial, in (t, z)
    };
    LinkParams params;
    PolyZ reducible;
    PolyZ irr_model;  // V(k,l) polynomial in (x, y, z)
    PolyZ curve;      // C(k,l) polynomial in (t, z)
    std::vector<Component> components;

    static VarietyModel make(long k, long l) {
        VarietyModel v;
        v.params = LinkParams::make(k, l);
        v.reducible = reducible_poly();
        v.curve = curve_poly(k, l);
        v.irr_model = natural_model(k, l);
        if (k == l && std::abs(l) >= 3) {
            auto [c0, c1] = diagonal_split(l);
            v.components.push_back({"canonical", c0});
            if (c1) v.components.push_back({"extra", *c1});
        } else {
            v.components.push_back({"canonical", v.curve});
        }
        return v;
    }
};

// ---------------------------------------------------------------------------
// Birational maps between the models, evaluated pointwise over a field.
// Points are keyed by coordinate name; Conv injects Integer coefficients.

template <class R>
using AffinePoint = std::map<std::string, R>;

namespace detail {
template <class R, class Conv>
R eval_univar_at(const PolyZ& p, const std::string& var, const R& value, Conv conv) {
    if (!p.has_var(var)) return p.template eval<R>({}, conv);
    return p.template eval<R>({{var, value}}, conv);
}

template <class R>
const R& coord(const AffinePoint<R>& pt, const std::string& name) {
    auto it = pt.find(name);
    if (it == pt.end()) throw MissingVariable("point lacks coordinate " + name);
    return it->second;
}
}  // namespace detail

// V(k,l) -> U(k,l):
//   (x, y, z) |-> ((x S_m + y S_{m-1}) / S_2m, (y S_m + x S_{m-1}) / S_2m, z)
// with the denominator S_m^2 - S_{m-1}^2 = S_2m evaluated at z.
template <class R, class Conv>
AffinePoint<R> map_V_to_U(const AffinePoint<R>& pt, long m, Conv conv) {
    const R &x = detail::coord(pt, "x"), &y = detail::coord(pt, "y"), &z = detail::coord(pt, "z");
    R sm = detail::eval_univar_at(cheb_S(m), "z", z, conv);
    R sm1 = detail::eval_univar_at(cheb_S(m - 1), "z", z, conv);
    R den = sm * sm - sm1 * sm1;
    if (den == conv(Integer(0)))
        throw ExceptionalLocus("S_2m vanishes at the z-coordinate");
    return {{"u", (x * sm + y * sm1) / den}, {"v", (y * sm + x * sm1) / den}, {"z", z}};
}

// U(k,l) -> V(k,l): (u, v, z) |-> (u S_m - v S_{m-1}, v S_m - u S_{m-1}, z).
template <class R, class Conv>
AffinePoint<R> map_U_to_V(const AffinePoint<R>& pt, long m, Conv conv) {
    const R &u = detail::coord(pt, "u"), &v = detail::coord(pt, "v"), &z = detail::coord(pt, "z");
    R sm = detail::eval_univar_at(cheb_S(m), "z", z, conv);
    R sm1 = detail::eval_univar_at(cheb_S(m - 1), "z", z, conv);
    return {{"x", u * sm - v * sm1}, {"y", v * sm - u * sm1}, {"z", z}};
}

// U(k,l) -> W(k,l): t = u v - z (S_m^2 + S_{m-1}^2) + 4 S_m S_{m-1}. The map
// is only invertible off {v = 0}.
template <class R, class Conv>
AffinePoint<R> map_U_to_W(const AffinePoint<R>& pt, long m, Conv conv) {
    const R &u = detail::coord(pt, "u"), &v = detail::coord(pt, "v"), &z = detail::coord(pt, "z");
    if (v == conv(Integer(0))) throw ExceptionalLocus("v = 0");
    R sm = detail::eval_univar_at(cheb_S(m), "z", z, conv);
    R sm1 = detail::eval_univar_at(cheb_S(m - 1), "z", z, conv);
    R t = u * v - z * (sm * sm + sm1 * sm1) + conv(Integer(4)) * sm * sm1;
    return {{"t", t}, {"v", v}, {"z", z}};
}

// W(k,l) -> U(k,l): u = (t + z (S_m^2 + S_{m-1}^2) - 4 S_m S_{m-1}) / v.
template <class R, class Conv>
AffinePoint<R> map_W_to_U(const AffinePoint<R>& pt, long m, Conv conv) {
    const R &t = detail::coord(pt, "t"), &v = detail::coord(pt, "v"), &z = detail::coord(pt, "z");
    if (v == conv(Integer(0))) throw ExceptionalLocus("v = 0");
    R sm = detail::eval_univar_at(cheb_S(m), "z", z, conv);
    R sm1 = detail::eval_univar_at(cheb_S(m - 1), "z", z, conv);
    R u = (t + z * (sm * sm + sm1 * sm1) - conv(Integer(4)) * sm * sm1) / v;
    return {{"u", u}, {"v", v}, {"z", z}};
}

}  // namespace charvar
