#pragma once

#include <complex>
#include <mutex>
#include <utility>
#include <vector>

#include "charvar/multipoly.hpp"
#include "charvar/univariate.hpp"

namespace charvar {

// The Chebyshev (Fibonacci) family S_0 = 1, S_1 = w, S_{j+1} = w S_j - S_{j-1},
// extended to all integer indices by running the recursion backwards.

// S_j evaluated at an arbitrary polynomial argument.
inline PolyZ cheb_S_of(long j, const PolyZ& omega) {
    PolyZ prev = PolyZ();                       // S_{-1}
    PolyZ cur = PolyZ::constant(Integer(1));    // S_0
    if (j >= 0) {
        for (long i = 0; i < j; ++i) {
            PolyZ next = omega * cur - prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
        return cur;
    }
    for (long i = 0; i > j; --i) {
        PolyZ below = omega * prev - cur;  // S_{i-2} = w S_{i-1} - S_i
        cur = std::move(prev);
        prev = std::move(below);
    }
    return cur;  // after -j steps: cur = S_j
}

inline PolyZ cheb_S(long j, const std::string& var = "z") {
    static std::mutex mu;
    static std::vector<PolyZ> up;    // up[j] = S_j, j >= 0
    static std::vector<PolyZ> down;  // down[i] = S_{-1-i}, i >= 0
    PolyZ result;
    {
        std::lock_guard<std::mutex> lock(mu);
        PolyZ omega = PolyZ::variable("z");
        if (up.empty()) {
            up.push_back(PolyZ::constant(Integer(1)));
            up.push_back(omega);
            down.push_back(PolyZ());  // S_{-1} = 0
        }
        if (j >= 0) {
            while (static_cast<long>(up.size()) <= j)
                up.push_back(omega * up[up.size() - 1] - up[up.size() - 2]);
            result = up[static_cast<std::size_t>(j)];
        } else {
            while (static_cast<long>(down.size()) < -j) {
                // S_{k-1} = w S_k - S_{k+1} with k = -down.size()
                const PolyZ& sk = down[down.size() - 1];
                const PolyZ& skp1 = down.size() >= 2 ? down[down.size() - 2] : up[0];
                down.push_back(omega * sk - skp1);
            }
            result = down[static_cast<std::size_t>(-j - 1)];
        }
    }
    if (var != "z") result = result.rename_var("z", var);
    return result;
}

// T_j(z, w) = w^j S_j(z/w) for j >= 0, a homogeneous degree-j polynomial.
// Negative indices use S_{-j} = -S_{j-2} first, then homogenize.
inline PolyZ cheb_T(long j) {
    if (j == -1) return PolyZ();
    if (j < -1) return -cheb_T(-j - 2);
    PolyZ s = cheb_S(j, "z");
    if (s.is_constant()) return s;
    return bihomogenize(s, {{{"z"}, "w"}});
}

// f_j of the sequence f_{j+1} = omega_expr * f_j - f_{j-1}:
// f_j = S_j(omega) f_0 - S_{j-1}(omega) f_{-1}.
inline PolyZ cheb_linear(long j, const PolyZ& f0, const PolyZ& fm1, const PolyZ& omega_expr) {
    return cheb_S_of(j, omega_expr) * f0 - cheb_S_of(j - 1, omega_expr) * fm1;
}

enum class DerivedKind { Delta, H };

// Delta_j = S'_j S_{j-1} - S_j S'_{j-1};  H_j = S''_j S_{j-1} - S''_{j-1} S_j.
inline PolyZ cheb_derived(DerivedKind kind, long j, const std::string& var = "z") {
    PolyZ sj = cheb_S(j, var), sjm1 = cheb_S(j - 1, var);
    auto d = [&var](const PolyZ& p) { return partial_or_zero(p, var); };
    if (kind == DerivedKind::Delta) return d(sj) * sjm1 - sj * d(sjm1);
    return d(d(sj)) * sjm1 - d(d(sjm1)) * sj;
}

inline std::pair<PolyZ, PolyZ> cheb_h_num_den(long j, const std::string& var = "z") {
    return {cheb_S(j, var), cheb_S(j - 1, var)};
}

// ---------------------------------------------------------------------------
// Root families with closed cosine forms.

enum class RootKind { Sroots, SminusRoots, SplusRoots, DeltaRoots };

inline const char* root_kind_name(RootKind k) {
    switch (k) {
        case RootKind::Sroots: return "Sroots";
        case RootKind::SminusRoots: return "SminusRoots";
        case RootKind::SplusRoots: return "SplusRoots";
        case RootKind::DeltaRoots: return "DeltaRoots";
    }
    return "?";
}

struct ChebRoot {
    std::complex<double> value;
    // value = 2 cos(angle_num * pi / angle_den) when angle_den != 0.
    long angle_num = 0;
    long angle_den = 0;
};

struct RootFamily {
    RootKind kind;
    long m;
    PolyZ family_poly;
    std::vector<ChebRoot> roots;
};

// Family polynomial for each kind, indexed as the singular-point families:
// Sroots(m) -> S_{m-1}, SminusRoots(m) -> S_m - S_{m-1},
// SplusRoots(m) -> S_m + S_{m-1}, DeltaRoots(m) -> Delta_m.
inline PolyZ root_family_poly(RootKind kind, long m, const std::string& var = "z") {
    switch (kind) {
        case RootKind::Sroots: return cheb_S(m - 1, var);
        case RootKind::SminusRoots: return cheb_S(m, var) - cheb_S(m - 1, var);
        case RootKind::SplusRoots: return cheb_S(m, var) + cheb_S(m - 1, var);
        case RootKind::DeltaRoots: return cheb_derived(DerivedKind::Delta, m, var);
    }
    throw ValidationError("unknown root family");
}

inline RootFamily cheb_roots(RootKind kind, long m, double tol = 1e-9) {
    RootFamily fam{kind, m, root_family_poly(kind, m), {}};
    if (fam.family_poly.is_zero())
        throw ValidationError("root family polynomial is identically zero");
    long deg = fam.family_poly.is_constant() ? 0 : fam.family_poly.degree(fam.family_poly.vars()[0]);
    if (deg == 0) throw EmptyFamily("degree-0 family polynomial has no roots");

    const double pi = std::acos(-1.0);
    auto push_cos = [&fam, pi](long num, long den) {
        ChebRoot r;
        r.angle_num = num;
        r.angle_den = den;
        r.value = {2.0 * std::cos(static_cast<double>(num) * pi / static_cast<double>(den)), 0.0};
        fam.roots.push_back(r);
    };

    // For m <= -2 the mirror identity S_{-j} = -S_{j-2} converts each family
    // into the corresponding positive-index family: with M = -m-1,
    //   S_{m-1}   = -S_{-m-1}            (index M, denominator -m)
    //   S_m -+ S_{m-1} = -+(S_M -+ S_{M-1})  (denominator |2m+1| = 2M+1)
    switch (kind) {
        case RootKind::Sroots: {
            long denom = m >= 1 ? m : -m;
            for (long r = 1; r <= denom - 1; ++r) push_cos(r, denom);
            break;
        }
        case RootKind::SminusRoots: {
            long M = m >= 1 ? m : -m - 1;
            for (long r = 0; r <= M - 1; ++r) push_cos(2 * r + 1, 2 * M + 1);
            break;
        }
        case RootKind::SplusRoots: {
            long M = m >= 1 ? m : -m - 1;
            for (long r = 1; r <= M; ++r) push_cos(2 * r, 2 * M + 1);
            break;
        }
        case RootKind::DeltaRoots: {
            for (const auto& z : complex_roots(to_rational(fam.family_poly)))
                fam.roots.push_back(ChebRoot{z, 0, 0});
            break;
        }
    }

    if (static_cast<long>(fam.roots.size()) != deg)
        throw Error("root family count does not match polynomial degree");
    const std::string var = fam.family_poly.vars()[0];
    for (const auto& r : fam.roots) {
        auto v = fam.family_poly.eval_complex({{var, r.value}});
        if (std::abs(v) >= tol)
            throw Error("root certification failed: |p(root)| = " + std::to_string(std::abs(v)));
    }
    return fam;
}

// ---------------------------------------------------------------------------
// Identity suite, all exact polynomial identities over the stated ranges:
// the norm identity S_j^2 + S_{j-1}^2 - w S_j S_{j-1} = 1, the difference
// identity S_j^2 - S_{j-1}^2 = S_2j, the triple-index identity for S_3m,
// the homogeneous norm identity for T_j, and the two Wronskian identities
// (w^2-4) Delta_j = S_2j - (2j+1) and the H_j analogue.

inline bool cheb_identity_a_holds(const PolyZ& sj, const PolyZ& sjm1, const std::string& var = "z") {
    PolyZ w = PolyZ::variable(var);
    return sj * sj + sjm1 * sjm1 - w * sj * sjm1 == PolyZ::constant(Integer(1));
}

inline bool cheb_identity_b_holds(const PolyZ& sj, const PolyZ& sjm1, const PolyZ& s2j) {
    return sj * sj - sjm1 * sjm1 == s2j;
}

inline bool cheb_identity_c_holds(long m, const std::string& var = "z") {
    PolyZ w = PolyZ::variable(var);
    PolyZ sm = cheb_S(m, var), smm1 = cheb_S(m - 1, var);
    PolyZ lhs = smm1 * (w + (w * w - PolyZ::constant(Integer(4))) * smm1 * sm) + sm;
    return lhs == cheb_S(3 * m, var);
}

inline bool cheb_T_norm_identity_holds(long j) {
    PolyZ tj = cheb_T(j), tjm1 = cheb_T(j - 1);
    PolyZ z = PolyZ::variable("z"), w = PolyZ::variable("w");
    PolyZ rhs = w.pow(static_cast<unsigned>(2 * j));
    return tj * tj + w * w * tjm1 * tjm1 - z * tj * tjm1 == rhs;
}

inline bool cheb_delta_identity_holds(long j, const std::string& var = "z") {
    PolyZ w = PolyZ::variable(var);
    PolyZ lhs = (w * w - PolyZ::constant(Integer(4))) * cheb_derived(DerivedKind::Delta, j, var);
    return lhs == cheb_S(2 * j, var) - PolyZ::constant(Integer(2 * j + 1));
}

inline bool cheb_H_identity_holds(long j, const std::string& var = "z") {
    PolyZ w = PolyZ::variable(var);
    PolyZ four = PolyZ::constant(Integer(4));
    PolyZ lhs = (w * w - four).pow(2) * cheb_derived(DerivedKind::H, j, var);
    PolyZ rhs = PolyZ::constant(Integer(2 * j - 2)) * w * cheb_S(2 * j, var) -
                PolyZ::constant(Integer(4 * j + 2)) * cheb_S(2 * j - 1, var) +
                PolyZ::constant(Integer(4 * j + 2)) * w;
    return lhs == rhs;
}

struct IdentityReport {
    struct Entry {
        std::string name;
        long jmin, jmax;
        bool pass;
    };
    std::vector<Entry> entries;
    bool all_pass = true;
};

inline IdentityReport identity_suite(long jmax) {
    if (jmax < 1) throw ValidationError("identity_suite requires jmax >= 1");
    IdentityReport rep;
    auto run = [&rep](const std::string& name, long lo, long hi, auto&& check) {
        for (long j = lo; j <= hi; ++j)
            if (!check(j)) throw IdentityFailure(name, j);
        rep.entries.push_back({name, lo, hi, true});
    };
    run("identities_a", -jmax, jmax,
        [](long j) { return cheb_identity_a_holds(cheb_S(j), cheb_S(j - 1)); });
    run("identities_b", -jmax, jmax,
        [](long j) { return cheb_identity_b_holds(cheb_S(j), cheb_S(j - 1), cheb_S(2 * j)); });
    run("identities_c", -jmax, jmax, [](long m) { return cheb_identity_c_holds(m); });
    run("T_norm", 0, jmax, [](long j) { return cheb_T_norm_identity_holds(j); });
    run("delta_wronskian", 0, jmax, [](long j) { return cheb_delta_identity_holds(j); });
    run("H_wronskian", 0, jmax, [](long j) { return cheb_H_identity_holds(j); });
    return rep;
}

}  // namespace charvar
