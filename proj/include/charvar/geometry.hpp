#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charvar/chebyshev.hpp"
#include "charvar/models.hpp"
#include "charvar/univariate.hpp"

namespace charvar {

// ---------------------------------------------------------------------------
// Closed-form invariants (bidegree, genus, gonality, degree of irrationality).

struct InvariantReport {
    LinkParams params;
    long a = 0, b = 0;  // floor(|k|/2), floor(|l|/2)
    struct ComponentInvariants {
        std::string label;
        long bidegree_t = 0, bidegree_z = 0;
        long genus = 0;
        long gonality = 0;
    };
    std::vector<ComponentInvariants> components;
    long deg_irrationality = 0;  // of the canonical component
};

inline InvariantReport invariants(long k, long l) {
    LinkParams p = LinkParams::make(k, l);
    if (!p.hyperbolic) throw NonHyperbolic("J(" + std::to_string(k) + "," + std::to_string(l) +
                                           ") is not hyperbolic");
    InvariantReport rep;
    rep.params = p;
    rep.a = std::abs(k) / 2;
    rep.b = std::abs(l) / 2;

    // Syntactic cross-check: the t-degree is governed by n (from l), the
    // z-degree by m (from k).
    PolyZ curve = curve_poly(k, l);
    if (curve.degree("t") != rep.b || curve.degree("z") != rep.a)
        throw ConsistencyFailure("curve bidegree does not match the closed form");

    auto genus_of = [](long da, long db) { return (da - 1) * (db - 1); };
    if (k != l) {
        InvariantReport::ComponentInvariants c;
        c.label = "canonical";
        c.bidegree_t = rep.b;
        c.bidegree_z = rep.a;
        c.genus = genus_of(rep.a, rep.b);
        c.gonality = std::min(rep.a, rep.b);
        rep.components.push_back(c);
        rep.deg_irrationality = std::min(rep.a, rep.b);
    } else {
        InvariantReport::ComponentInvariants c0;
        c0.label = "canonical";
        c0.bidegree_t = 1;
        c0.bidegree_z = 1;
        c0.genus = 0;
        c0.gonality = 1;
        rep.components.push_back(c0);
        rep.deg_irrationality = 1;
        if (std::abs(l) > 3) {
            auto [tz, extra] = diagonal_split(l);
            InvariantReport::ComponentInvariants c1;
            c1.label = "extra";
            c1.bidegree_t = extra->degree("t");
            c1.bidegree_z = extra->degree("z");
            if (c1.bidegree_t != rep.a - 1 || c1.bidegree_z != rep.a - 1)
                throw ConsistencyFailure("C1 bidegree does not match floor(|l|/2) - 1");
            c1.genus = (rep.a - 2) * (rep.a - 2);
            c1.gonality = rep.a - 1;
            if (c1.genus != genus_of(c1.bidegree_t, c1.bidegree_z))
                throw ConsistencyFailure("C1 genus does not satisfy the bidegree law");
            rep.components.push_back(c1);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The homogeneous surface model for the J(3, 2m+1) family in P^2 x P^1,
// coordinates (x : y : u, z : w).

// Affine defining polynomial t S_{m-1}(z) - S_m(z) with t = t_poly(m).
inline PolyZ F_affine(long m) {
    return t_poly(m) * cheb_S(m - 1, "z") - cheb_S(m, "z");
}

inline PolyZ F_homogeneous(long m) {
    PolyZ f = F_affine(m);
    PolyZ F = f.is_constant()
                  ? f
                  : bihomogenize(f, {{{"x", "y"}, "u"}, {{"z"}, "w"}});
    // Degenerate m in {0, -1}: pad the conic-bundle group degree up to 2.
    long dxy = group_degree(F, {"x", "y", "u"});
    if (dxy < 2) F = F * PolyZ::variable("u").pow(static_cast<unsigned>(2 - dxy));

    // Cross-check against the factored bracket form (valid as displayed for
    // m >= 0; for m <= -1 the same derivation with the w-powers cleared).
    PolyZ x = PolyZ::variable("x"), y = PolyZ::variable("y"), u = PolyZ::variable("u");
    PolyZ z = PolyZ::variable("z"), w = PolyZ::variable("w");
    PolyZ kh = bihomogenize(reducible_poly(), {{{"x", "y"}, "u"}, {{"z"}, "w"}});
    PolyZ tm = cheb_T(m), tm1 = cheb_T(m - 1);
    PolyZ display;
    if (m >= 0) {
        PolyZ w2m = w.pow(static_cast<unsigned>(2 * m));
        display = ((x * y * w - u * u * z) * w2m + kh * tm * tm1) * tm1 - u * u * w2m * tm;
    } else {
        display = (x * y * w - u * u * z) * tm1 * w.pow(static_cast<unsigned>(-2 * m - 2)) +
                  kh * tm * tm1 * tm1 - u * u * tm * w.pow(static_cast<unsigned>(-2 * m));
    }
    if (F != display)
        throw MismatchWithClosedForm("homogeneous F disagrees with the bracket form at m=" +
                                    std::to_string(m));
    return F;
}

// First-order partials of F, computed formally and (for m >= 0) checked
// against their factored closed forms. Euler relations are asserted
// for every m.
inline std::map<std::string, PolyZ> F_partials(long m) {
    PolyZ F = F_homogeneous(m);
    std::map<std::string, PolyZ> parts;
    for (const std::string v : {"x", "y", "u", "z", "w"}) parts[v] = partial_or_zero(F, v);

    PolyZ x = PolyZ::variable("x"), y = PolyZ::variable("y"), u = PolyZ::variable("u");
    PolyZ z = PolyZ::variable("z"), w = PolyZ::variable("w");
    if (m >= 0) {
        PolyZ kh = bihomogenize(reducible_poly(), {{{"x", "y"}, "u"}, {{"z"}, "w"}});
        PolyZ tm = cheb_T(m), tm1 = cheb_T(m - 1);
        PolyZ w2m = w.pow(static_cast<unsigned>(2 * m));
        PolyZ tt = tm * tm1;
        PolyZ tt_z = partial_or_zero(tt, "z"), tt_w = partial_or_zero(tt, "w");
        PolyZ tm_z = partial_or_zero(tm, "z"), tm_w = partial_or_zero(tm, "w");
        PolyZ tm1_z = partial_or_zero(tm1, "z"), tm1_w = partial_or_zero(tm1, "w");
        PolyZ bracket = (x * y * w - u * u * z) * w2m + kh * tt;
        PolyZ two = PolyZ::constant(Integer(2)), four = PolyZ::constant(Integer(4));

        std::map<std::string, PolyZ> display;
        display["x"] = (y * w2m + (y * z - two * x * w) * tt) * w * tm1;
        display["y"] = (x * w2m + (x * z - two * y * w) * tt) * w * tm1;
        display["u"] =
            -two * u * ((z * w2m + (z * z - four * w * w) * tt) * tm1 + w2m * tm);
        display["z"] = (-u * u * w2m + (x * y * w - two * u * u * z) * tt + kh * tt_z) * tm1 +
                       bracket * tm1_z - u * u * w2m * tm_z;
        PolyZ fw = ((x * y * z + PolyZ::constant(Integer(8)) * u * u * w - two * x * x * w -
                     two * y * y * w) *
                        tt +
                    kh * tt_w) *
                       tm1 +
                   PolyZ::constant(Integer(2 * m + 1)) * x * y * w2m * tm1 +
                   bracket * tm1_w - u * u * w2m * tm_w;
        if (m >= 1) {
            PolyZ w2m_1 = w.pow(static_cast<unsigned>(2 * m - 1));
            fw = fw - PolyZ::constant(Integer(2 * m)) * u * u * z * w2m_1 * tm1 -
                 PolyZ::constant(Integer(2 * m)) * u * u * w2m_1 * tm;
        }
        display["w"] = fw;
        for (const auto& [v, d] : display)
            if (parts[v] != d)
                throw MismatchWithClosedForm("partial F_" + v +
                                            " disagrees with the displayed form at m=" +
                                            std::to_string(m));
    }

    // Euler relations in both variable groups.
    PolyZ lhs_xyu = x * parts["x"] + y * parts["y"] + u * parts["u"];
    if (lhs_xyu != PolyZ::constant(Integer(2)) * F)
        throw ConsistencyFailure("Euler relation fails in (x,y,u)");
    long dzw = group_degree(F, {"z", "w"});
    if (z * parts["z"] + w * parts["w"] != PolyZ::constant(Integer(dzw)) * F)
        throw ConsistencyFailure("Euler relation fails in (z,w)");
    return parts;
}

// ---------------------------------------------------------------------------
// Singular points of F, certified exactly in quotient rings.

struct SingularFamily {
    std::string tag;  // infinity_pair | Sm1_root_pair | Sminus_root | Splus_root
    std::vector<std::array<long, 3>> xyu_points;
    bool at_infinity = false;      // (z : w) = (1 : 0)
    PolyQ modulus;                 // monic squarefree factor (empty if at_infinity)
    std::vector<ChebRoot> approx;  // numeric z values, display only
    long point_count = 0;
};

struct SingularSet {
    long m = 0;
    std::vector<SingularFamily> families;
    long count = 0;
};

namespace detail {

// Certifies that every polynomial vanishes at (x,y,u) = xyu, w = 1 and z the
// class of the modulus variable in Q[z]/(g).
inline void certify_quotient_zero(const std::map<std::string, PolyZ>& system,
                                  const std::array<long, 3>& xyu, const PolyQ& g,
                                  const std::string& tag) {
    ToQuotient conv{g};
    std::map<std::string, QuotientElement> asg{
        {"x", conv(Integer(xyu[0]))}, {"y", conv(Integer(xyu[1]))},
        {"u", conv(Integer(xyu[2]))}, {"z", QuotientElement::generator(g)},
        {"w", conv(Integer(1))}};
    for (const auto& [name, poly] : system) {
        QuotientElement v = poly.eval<QuotientElement>(asg, conv);
        if (!v.is_zero())
            throw CertificateFailure("family " + tag + ": " + name +
                                     " does not vanish in the quotient ring");
    }
}

inline void certify_rational_zero(const std::map<std::string, PolyZ>& system,
                                  const std::array<long, 3>& xyu, long zval, long wval,
                                  const std::string& tag) {
    std::map<std::string, Rational> asg{{"x", Rational(xyu[0])}, {"y", Rational(xyu[1])},
                                        {"u", Rational(xyu[2])}, {"z", Rational(zval)},
                                        {"w", Rational(wval)}};
    for (const auto& [name, poly] : system) {
        if (poly.eval_rat(asg) != 0)
            throw CertificateFailure("family " + tag + ": " + name +
                                     " does not vanish at the rational point");
    }
}

inline PolyQ monic_squarefree(const PolyZ& p) { return squarefree_part(to_rational(p)); }

}  // namespace detail

inline SingularSet singular_points(long m) {
    if (m == 0 || m == -1)
        throw ValidationError("singular_points requires m >= 1 or m <= -2");
    PolyZ F = F_homogeneous(m);
    std::map<std::string, PolyZ> system = F_partials(m);
    system.emplace("F", F);

    SingularSet set;
    set.m = m;

    // (1:0:0, 1:0) and (0:1:0, 1:0).
    SingularFamily inf;
    inf.tag = "infinity_pair";
    inf.at_infinity = true;
    inf.xyu_points = {{1, 0, 0}, {0, 1, 0}};
    for (const auto& pt : inf.xyu_points) detail::certify_rational_zero(system, pt, 1, 0, inf.tag);
    inf.point_count = 2;
    set.families.push_back(inf);

    struct FamilyDef {
        std::string tag;
        RootKind kind;
        std::vector<std::array<long, 3>> xyu;
    };
    const std::vector<FamilyDef> defs = {
        {"Sm1_root_pair", RootKind::Sroots, {{1, 0, 0}, {0, 1, 0}}},
        {"Sminus_root", RootKind::SminusRoots, {{1, 1, 0}}},
        {"Splus_root", RootKind::SplusRoots, {{1, -1, 0}}},
    };
    for (const auto& sp : defs) {
        PolyZ fam_poly = root_family_poly(sp.kind, m);
        if (fam_poly.is_constant()) continue;  // no roots (e.g. S_0 for m = 1)
        SingularFamily fam;
        fam.tag = sp.tag;
        fam.xyu_points = sp.xyu;
        fam.modulus = detail::monic_squarefree(fam_poly);
        long deg = univar_degree(fam.modulus);
        if (deg != fam_poly.degree("z"))
            throw CertificateFailure("family polynomial for " + sp.tag + " is not separable");
        for (const auto& pt : fam.xyu_points)
            detail::certify_quotient_zero(system, pt, fam.modulus, sp.tag);
        fam.approx = cheb_roots(sp.kind, m).roots;
        fam.point_count = static_cast<long>(fam.xyu_points.size()) * deg;
        set.families.push_back(fam);
    }

    for (const auto& f : set.families) set.count += f.point_count;
    long expected = m >= 1 ? 4 * m : -(2 + 4 * m);
    if (set.count != expected)
        throw CountMismatch("singular count " + std::to_string(set.count) +
                            " does not match closed form " + std::to_string(expected));
    return set;
}

// ---------------------------------------------------------------------------
// Independent numeric cross-check of the singular-point count. For each
// candidate z0 (numeric roots of the Chebyshev factors, plus the chart at
// infinity), F(., z0) is a quadratic form in (x, y, u); singular points are
// null vectors of that form on which F_z and F_w also vanish.

namespace detail {

using cplx = std::complex<double>;
using Mat3 = std::array<std::array<cplx, 3>, 3>;

// Quadratic-form coefficients of p (degree 2 in x,y,u) as polynomials in the
// remaining variable after fixing one of z/w.
struct QuadForm {
    // key: exponents (ex, ey, eu) with ex+ey+eu = 2
    std::map<std::array<unsigned, 3>, PolyZ> coeff;

    static QuadForm of(const PolyZ& p, const std::string& fixed_var, long fixed_val) {
        PolyZ q = subst_or_same(p, fixed_var, PolyZ::constant(Integer(fixed_val)));
        QuadForm f;
        const auto& vars = q.vars();
        auto idx = [&vars](const std::string& v) -> long {
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == v) return static_cast<long>(i);
            return -1;
        };
        long ix = idx("x"), iy = idx("y"), iu = idx("u");
        for (const auto& [e, c] : q.terms()) {
            std::array<unsigned, 3> key{ix >= 0 ? e[static_cast<std::size_t>(ix)] : 0,
                                        iy >= 0 ? e[static_cast<std::size_t>(iy)] : 0,
                                        iu >= 0 ? e[static_cast<std::size_t>(iu)] : 0};
            std::vector<std::pair<std::string, unsigned>> rest;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (static_cast<long>(i) == ix || static_cast<long>(i) == iy ||
                    static_cast<long>(i) == iu || e[i] == 0)
                    continue;
                rest.emplace_back(vars[i], e[i]);
            }
            auto [it, fresh] = f.coeff.try_emplace(key, PolyZ::monomial(c, rest));
            if (!fresh) it->second = it->second + PolyZ::monomial(c, rest);
        }
        return f;
    }

    Mat3 matrix_at(const std::string& var, cplx value) const {
        auto ev = [&](const std::array<unsigned, 3>& key) -> cplx {
            auto it = coeff.find(key);
            if (it == coeff.end()) return 0.0;
            if (!it->second.has_var(var)) return it->second.eval_complex({});
            return it->second.eval_complex({{var, value}});
        };
        Mat3 M{};
        M[0][0] = ev({2, 0, 0});
        M[1][1] = ev({0, 2, 0});
        M[2][2] = ev({0, 0, 2});
        M[0][1] = M[1][0] = ev({1, 1, 0}) / 2.0;
        M[0][2] = M[2][0] = ev({1, 0, 1}) / 2.0;
        M[1][2] = M[2][1] = ev({0, 1, 1}) / 2.0;
        return M;
    }
};

inline cplx form_value(const Mat3& M, const std::array<cplx, 3>& v) {
    cplx s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += v[static_cast<std::size_t>(i)] * M[i][j] * v[static_cast<std::size_t>(j)];
    return s;
}

inline double frobenius(const Mat3& M) {
    double s = 0;
    for (const auto& row : M)
        for (const auto& e : row) s += std::norm(e);
    return std::sqrt(s);
}

// Null space of a 3x3 complex matrix with tolerance, via full-pivot Gaussian
// elimination.
inline std::vector<std::array<cplx, 3>> nullspace3(Mat3 M, double tol) {
    double scale = std::max(1.0, frobenius(M));
    std::array<int, 3> col_of{0, 1, 2};
    int rank = 0;
    for (int step = 0; step < 3; ++step) {
        int pr = -1, pc = -1;
        double best = tol * scale;
        for (int r = rank; r < 3; ++r)
            for (int c = rank; c < 3; ++c)
                if (std::abs(M[r][c]) > best) {
                    best = std::abs(M[r][c]);
                    pr = r;
                    pc = c;
                }
        if (pr < 0) break;
        std::swap(M[rank], M[pr]);
        for (int r = 0; r < 3; ++r) std::swap(M[r][rank], M[r][pc]);
        std::swap(col_of[rank], col_of[pc]);
        cplx piv = M[rank][rank];
        for (int r = 0; r < 3; ++r) {
            if (r == rank) continue;
            cplx f = M[r][rank] / piv;
            for (int c = 0; c < 3; ++c) M[r][c] -= f * M[rank][c];
        }
        ++rank;
    }
    std::vector<std::array<cplx, 3>> basis;
    for (int free = rank; free < 3; ++free) {
        std::array<cplx, 3> v{};  // in permuted coordinates
        v[static_cast<std::size_t>(free)] = 1.0;
        for (int r = rank - 1; r >= 0; --r)
            v[static_cast<std::size_t>(r)] = -M[r][free] / M[r][r];
        std::array<cplx, 3> out{};
        for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(col_of[i])] = v[static_cast<std::size_t>(i)];
        basis.push_back(out);
    }
    return basis;
}

inline std::array<cplx, 3> normalize_point(std::array<cplx, 3> v) {
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(v[static_cast<std::size_t>(i)]) > std::abs(v[static_cast<std::size_t>(best)])) best = i;
    cplx pivot = v[static_cast<std::size_t>(best)];
    for (auto& c : v) c /= pivot;
    return v;
}

}  // namespace detail

inline long singular_search_crosscheck(long m, double grid_tol = 1e-7) {
    if (m == 0 || m == -1 || std::abs(m) > 3)
        throw ValidationError("singular_search_crosscheck supports 1 <= |m| <= 3");
    PolyZ F = F_homogeneous(m);
    auto parts = F_partials(m);

    using detail::cplx;
    // Candidate z values: numeric roots of all the Chebyshev factors in play.
    std::vector<cplx> candidates;
    for (const PolyZ& fac :
         {cheb_S(m - 1), cheb_S(m), cheb_S(m) - cheb_S(m - 1), cheb_S(m) + cheb_S(m - 1),
          cheb_S(3 * m)}) {
        if (fac.is_constant()) continue;
        for (const auto& r : complex_roots(to_rational(fac))) candidates.push_back(r);
    }
    std::vector<cplx> unique_z;
    for (const auto& z0 : candidates) {
        bool seen = false;
        for (const auto& z1 : unique_z)
            if (std::abs(z0 - z1) < 1e-8) seen = true;
        if (!seen) unique_z.push_back(z0);
    }

    struct Found {
        cplx z;
        bool at_infinity;
        std::array<cplx, 3> pt;
    };
    std::vector<Found> found;
    auto record = [&found](cplx z0, bool at_inf, std::array<cplx, 3> v) {
        v = detail::normalize_point(v);
        for (const auto& f : found) {
            if (f.at_infinity != at_inf) continue;
            if (!at_inf && std::abs(f.z - z0) > 1e-6) continue;
            double d = 0;
            for (int i = 0; i < 3; ++i) d += std::abs(f.pt[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)]);
            if (d < 1e-6) return;
        }
        found.push_back({z0, at_inf, v});
    };

    auto scan = [&](const std::string& fixed_var, long fixed_val, const std::string& free_var,
                    cplx value, bool at_inf) {
        auto qf_F = detail::QuadForm::of(F, fixed_var, fixed_val);
        auto qf_z = detail::QuadForm::of(parts.at("z"), fixed_var, fixed_val);
        auto qf_w = detail::QuadForm::of(parts.at("w"), fixed_var, fixed_val);
        detail::Mat3 MF = qf_F.matrix_at(free_var, value);
        detail::Mat3 Mz = qf_z.matrix_at(free_var, value);
        detail::Mat3 Mw = qf_w.matrix_at(free_var, value);
        auto basis = detail::nullspace3(MF, grid_tol);
        double sz = std::max(1.0, detail::frobenius(Mz));
        double sw = std::max(1.0, detail::frobenius(Mw));
        if (basis.size() == 1) {
            const auto& v = basis[0];
            if (std::abs(detail::form_value(Mz, v)) < grid_tol * sz &&
                std::abs(detail::form_value(Mw, v)) < grid_tol * sw)
                record(value, at_inf, v);
        } else if (basis.size() == 2) {
            // Restrict the two extra forms to the null line; solve the first
            // nontrivial quadratic and filter with the other.
            auto restrict_quad = [&](const detail::Mat3& M) {
                // q(s) for v = b0 + s b1: c0 + c1 s + c2 s^2
                cplx c0 = detail::form_value(M, basis[0]);
                cplx c2 = detail::form_value(M, basis[1]);
                cplx cross = 0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        cross += basis[0][static_cast<std::size_t>(i)] * M[i][j] * basis[1][static_cast<std::size_t>(j)];
                return std::array<cplx, 3>{c0, 2.0 * cross, c2};
            };
            auto qz = restrict_quad(Mz);
            auto qw = restrict_quad(Mw);
            auto scale_of = [](const std::array<cplx, 3>& q) {
                return std::max({std::abs(q[0]), std::abs(q[1]), std::abs(q[2]), 1.0});
            };
            auto trivial = [&](const std::array<cplx, 3>& q) {
                double s = scale_of(q);
                return std::abs(q[0]) < grid_tol * s && std::abs(q[1]) < grid_tol * s &&
                       std::abs(q[2]) < grid_tol * s;
            };
            // roots of a nontrivial c0 + c1 s + c2 s^2 on P^1 (bool = s at infinity)
            auto roots_of = [](const std::array<cplx, 3>& q) {
                std::vector<std::pair<cplx, bool>> rs;
                double scale = std::max({std::abs(q[0]), std::abs(q[1]), std::abs(q[2]), 1.0});
                if (std::abs(q[2]) > 1e-10 * scale) {
                    cplx disc = std::sqrt(q[1] * q[1] - 4.0 * q[2] * q[0]);
                    rs.push_back({(-q[1] + disc) / (2.0 * q[2]), false});
                    rs.push_back({(-q[1] - disc) / (2.0 * q[2]), false});
                } else if (std::abs(q[1]) > 1e-10 * scale) {
                    rs.push_back({-q[0] / q[1], false});
                    rs.push_back({0, true});
                }
                return rs;
            };
            auto eval_quad = [](const std::array<cplx, 3>& q, std::pair<cplx, bool> s) {
                if (s.second) return q[2];
                return q[0] + q[1] * s.first + q[2] * s.first * s.first;
            };
            bool zt = trivial(qz), wt = trivial(qw);
            if (zt && wt) throw CountMismatch("numeric search found a singular line");
            auto cands = roots_of(zt ? qw : qz);
            for (const auto& s : cands) {
                if (std::abs(eval_quad(qz, s)) >= grid_tol * scale_of(qz)) continue;
                if (std::abs(eval_quad(qw, s)) >= grid_tol * scale_of(qw)) continue;
                std::array<cplx, 3> v{};
                if (s.second) {
                    v = basis[1];
                } else {
                    for (int i = 0; i < 3; ++i)
                        v[static_cast<std::size_t>(i)] =
                            basis[0][static_cast<std::size_t>(i)] + s.first * basis[1][static_cast<std::size_t>(i)];
                }
                record(value, at_inf, v);
            }
        } else if (basis.size() == 3) {
            throw CountMismatch("numeric search: quadratic form vanished identically");
        }
    };

    for (const auto& z0 : unique_z) scan("w", 1, "z", z0, false);
    scan("z", 1, "w", cplx(0.0, 0.0), true);

    long count = static_cast<long>(found.size());
    long expected = singular_points(m).count;
    if (count != expected)
        throw CountMismatch("numeric search found " + std::to_string(count) +
                            " singular points, certificates give " + std::to_string(expected));
    return count;
}

// ---------------------------------------------------------------------------
// Degenerate fibers of phi : S -> P^1, (x:y:u, z:w) -> (z:w).

struct FiberClass {
    std::string label;
    std::string fiber_type;  // double_line_u2 | conic_split_lines | conic_smooth_minus | ...
    bool at_infinity = false;
    PolyQ modulus;   // base locus in z (monic squarefree), empty for (1:0)
    PolyZ fiber_poly;
    PolyQ unit;      // residue of the unit c with F = c * fiber in the quotient
    long base_count = 0;
};

struct FiberReport {
    long m = 0;
    std::vector<FiberClass> classes;
};

namespace detail {

// Coefficients of p as a polynomial in (x, y, u) over Q[z]/(g).
inline std::map<std::array<unsigned, 3>, QuotientElement> reduce_xyu_mod(const PolyZ& p,
                                                                         const PolyQ& g) {
    std::map<std::array<unsigned, 3>, QuotientElement> out;
    const auto& vars = p.vars();
    auto idx = [&vars](const std::string& v) -> long {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == v) return static_cast<long>(i);
        return -1;
    };
    long ix = idx("x"), iy = idx("y"), iu = idx("u"), iz = idx("z");
    std::string zname = univar_name(g);
    for (const auto& [e, c] : p.terms()) {
        std::array<unsigned, 3> key{ix >= 0 ? e[static_cast<std::size_t>(ix)] : 0,
                                    iy >= 0 ? e[static_cast<std::size_t>(iy)] : 0,
                                    iu >= 0 ? e[static_cast<std::size_t>(iu)] : 0};
        unsigned ez = iz >= 0 ? e[static_cast<std::size_t>(iz)] : 0;
        PolyQ zmono = ez == 0 ? PolyQ::constant(Rational(c))
                              : PolyQ::monomial(Rational(c), {{zname, ez}});
        QuotientElement q(zmono, g);
        auto [it, fresh] = out.try_emplace(key, q);
        if (!fresh) it->second = it->second + q;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// F_red = c * fiber_red with c a unit; returns c.
inline QuotientElement match_up_to_unit(const std::map<std::array<unsigned, 3>, QuotientElement>& F_red,
                                        const std::map<std::array<unsigned, 3>, QuotientElement>& fiber_red,
                                        const PolyQ& g, const std::string& label) {
    std::optional<QuotientElement> c;
    for (const auto& [key, d] : fiber_red) {
        if (!d.is_unit()) continue;
        auto it = F_red.find(key);
        if (it == F_red.end())
            throw FiberMismatch(label + ": fiber monomial missing from reduced F");
        c = it->second / d;
        break;
    }
    if (!c) throw FiberMismatch(label + ": no unit coefficient in the claimed fiber polynomial");
    if (!c->is_unit()) throw FiberMismatch(label + ": proportionality factor is not a unit");
    // Verify every coefficient both ways.
    for (const auto& [key, d] : fiber_red) {
        auto it = F_red.find(key);
        QuotientElement lhs = it == F_red.end()
                                  ? QuotientElement::of_constant(Rational(0), g)
                                  : it->second;
        if (lhs != *c * d) throw FiberMismatch(label + ": coefficient mismatch");
    }
    for (const auto& [key, v] : F_red)
        if (fiber_red.find(key) == fiber_red.end() && !v.is_zero())
            throw FiberMismatch(label + ": reduced F has a monomial outside the claimed fiber");
    return *c;
}

}  // namespace detail

inline FiberReport degenerate_fibers(long m) {
    if (m == 0 || m == -1)
        throw ValidationError("degenerate_fibers requires m >= 1 or m <= -2");
    PolyZ F = F_homogeneous(m);
    PolyZ F1 = subst_or_same(F, "w", PolyZ::constant(Integer(1)));
    PolyZ x = PolyZ::variable("x"), y = PolyZ::variable("y"), u = PolyZ::variable("u");
    PolyZ z = PolyZ::variable("z");
    PolyZ sm = cheb_S(m), sm1 = cheb_S(m - 1);
    PolyZ two = PolyZ::constant(Integer(2));

    FiberReport rep;
    rep.m = m;

    // phi^{-1}(1:0) = {u^2 = 0}: evaluate F at z = 1, w = 0 over Q.
    {
        PolyZ Finf = subst_or_same(subst_or_same(F, "z", PolyZ::constant(Integer(1))), "w",
                                   PolyZ());
        PolyZ q = Finf.divide_exact(u * u);
        if (!q.is_constant() || q.is_zero())
            throw FiberMismatch("fiber over (1:0) is not a u^2 double line");
        FiberClass fc;
        fc.label = "infinity";
        fc.fiber_type = "double_line_u2";
        fc.at_infinity = true;
        fc.fiber_poly = u * u;
        fc.unit = PolyQ::constant(Rational(q.constant_value()));
        fc.base_count = 1;
        rep.classes.push_back(fc);
    }

    struct ClassDef {
        std::string label;
        std::string type;
        PolyZ locus;
        PolyZ fiber;
    };
    const std::vector<ClassDef> defs = {
        {"Sm1_double_line", "double_line_u2", sm1, u * u},
        {"S3m_split_conic", "conic_split_lines", cheb_S(3 * m),
         (x * sm - y * sm1) * (y * sm - x * sm1)},
        {"Sminus_conic", "conic_smooth_minus", sm - sm1, (x - y) * (x - y) - (two - z) * u * u},
        {"Splus_conic", "conic_smooth_plus", sm + sm1, (x + y) * (x + y) - (two + z) * u * u},
    };
    for (const auto& sp : defs) {
        FiberClass fc;
        fc.label = sp.label;
        fc.fiber_type = sp.type;
        fc.fiber_poly = sp.fiber;
        if (sp.locus.is_constant()) {
            fc.base_count = 0;  // no base points in this class at this m
            rep.classes.push_back(fc);
            continue;
        }
        fc.modulus = detail::monic_squarefree(sp.locus);
        fc.base_count = univar_degree(fc.modulus);
        auto F_red = detail::reduce_xyu_mod(F1, fc.modulus);
        auto fib_red = detail::reduce_xyu_mod(sp.fiber, fc.modulus);
        fc.unit = detail::match_up_to_unit(F_red, fib_red, fc.modulus, sp.label).residue();
        rep.classes.push_back(fc);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Euler characteristic and blow-up arithmetic.

struct BlowupReport {
    long m = 0;
    long chi = 0;
    long n_sing = 0;
    long N = 0;     // blow-ups from P^1 x P^1
    long N_p2 = 0;  // blow-ups from P^2 (= N + 1)
};

inline BlowupReport euler_blowup(long m) {
    if (m == 0 || m == -1)
        throw ValidationError("euler_blowup requires m >= 1 or m <= -2");
    BlowupReport rep;
    rep.m = m;
    rep.chi = m >= 1 ? 4 + 5 * m : -5 * m;
    rep.n_sing = singular_points(m).count;
    rep.N = rep.chi + rep.n_sing - 4;
    long closed = m >= 1 ? 9 * m : -(6 + 9 * m);
    if (rep.N != closed)
        throw ConsistencyFailure("N = chi + N_sing - 4 = " + std::to_string(rep.N) +
                                 " disagrees with the closed form " + std::to_string(closed));
    rep.N_p2 = rep.N + 1;
    return rep;
}

// ---------------------------------------------------------------------------
// Smoothness spot checks: critical values of h_j = S_j / S_{j-1} at the roots
// of Delta_j, pairwise disjointness, the |h_n| bounds, and the C_1(l,l)
// system.

inline std::vector<std::complex<double>> delta_roots(long j) {
    PolyZ d = cheb_derived(DerivedKind::Delta, j);
    if (d.is_constant()) return {};
    return complex_roots(to_rational(d));
}

inline std::complex<double> h_value(long j, std::complex<double> omega) {
    std::complex<double> num = cheb_S(j).is_constant() ? cheb_S(j).eval_complex({})
                                                       : cheb_S(j).eval_complex({{"z", omega}});
    const PolyZ& dp = cheb_S(j - 1);
    std::complex<double> den =
        dp.is_constant() ? dp.eval_complex({}) : dp.eval_complex({{"z", omega}});
    if (std::abs(den) < 1e-12)
        throw Error("h_j denominator vanished at a critical point (unexpected)");
    return num / den;
}

inline std::vector<double> h_magnitudes_at_delta_roots(long j) {
    std::vector<double> out;
    for (const auto& r : delta_roots(j)) out.push_back(std::abs(h_value(j, r)));
    return out;
}

struct SmoothnessReport {
    LinkParams params;
    double tol = 1e-7;
    std::vector<std::complex<double>> critical_values_k;  // from index m
    std::vector<std::complex<double>> critical_values_l;  // from index n
    double min_gap = std::numeric_limits<double>::infinity();
    bool disjoint_checked = false;
    struct MnCheck {
        long j = 0;
        std::vector<double> magnitudes;
        bool pass = true;
    };
    std::vector<MnCheck> mn_checks;
    bool c1_checked = false;
    double c1_min_residual = std::numeric_limits<double>::infinity();
};

inline SmoothnessReport smoothness_check(long k, long l, double tol = 1e-7) {
    LinkParams p = LinkParams::make(k, l);
    if (!p.hyperbolic) throw NonHyperbolic("smoothness checks require hyperbolic parameters");
    if (std::abs(k) > 21 || std::abs(l) > 21)
        throw ValidationError("smoothness_check is desk-scale: |k|, |l| <= 21");
    SmoothnessReport rep;
    rep.params = p;
    rep.tol = tol;

    auto crit = [](long j) {
        std::vector<std::complex<double>> vals;
        for (const auto& r : delta_roots(j)) vals.push_back(h_value(j, r));
        return vals;
    };
    rep.critical_values_k = crit(p.m);
    rep.critical_values_l = crit(p.n);

    if (k != l) {
        rep.disjoint_checked = true;
        for (const auto& a : rep.critical_values_k)
            for (const auto& b : rep.critical_values_l)
                rep.min_gap = std::min(rep.min_gap, std::abs(a - b));
        if (rep.min_gap <= tol)
            throw SuspectSingularity("critical values of h_m and h_n nearly coincide (gap " +
                                     std::to_string(rep.min_gap) + ")");
    }

    for (long j : {p.m, p.n}) {
        SmoothnessReport::MnCheck chk;
        chk.j = j;
        chk.magnitudes = h_magnitudes_at_delta_roots(j);
        for (double mag : chk.magnitudes)
            if ((j > 0 && mag <= 1.0 + tol) || (j < 0 && mag >= 1.0 - tol)) chk.pass = false;
        if (!chk.pass)
            throw SuspectSingularity("|h_j| bound violated at a Delta_j root, j=" +
                                     std::to_string(j));
        rep.mn_checks.push_back(std::move(chk));
        if (p.m == p.n) break;
    }

    if (k == l && std::abs(l) > 3) {
        rep.c1_checked = true;
        auto [tz, extra] = diagonal_split(l);
        const PolyZ& G = *extra;
        PolyZ Gt = partial_or_zero(G, "t"), Gz = partial_or_zero(G, "z");
        auto at = [](const PolyZ& q, std::complex<double> t0) {
            std::map<std::string, std::complex<double>> asg;
            if (q.has_var("t")) asg.emplace("t", t0);
            if (q.has_var("z")) asg.emplace("z", t0);
            return q.eval_complex(asg);
        };
        for (const auto& t0 : delta_roots(p.n)) {
            double m3 = std::max({std::abs(at(G, t0)), std::abs(at(Gt, t0)), std::abs(at(Gz, t0))});
            rep.c1_min_residual = std::min(rep.c1_min_residual, m3);
        }
        if (rep.c1_min_residual <= tol)
            throw SuspectSingularity("C1(l,l) candidate system nearly vanishes");
    }
    return rep;
}

}  // namespace charvar
