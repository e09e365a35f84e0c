#pragma once

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "charvar/geometry.hpp"
#include "charvar/oracle.hpp"
#include "json.hpp"

namespace charvar {

// The verification suites. Each one corresponds to an acceptance criterion;
// `verify --suite all` runs the lot.

struct VerifyOptions {
    std::string suite = "all";
    long jmax = 30;
    long max_kl = 9;
    std::uint64_t seed = 0;
    int trials = 50;
    double tol = 1e-7;
    Integer prime = default_oracle_prime();
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
    long millis = 0;
};

namespace suites {

// Criterion 1: reducible * natural_model(k,l) == phi_via_traces(k,l),
// exact, for all odd 3 <= |k|, |l| <= max_kl.
inline std::string phi_factorization(const VerifyOptions& opt) {
    PolyZ kappa = reducible_poly();
    long pairs = 0;
    for (long k = -opt.max_kl; k <= opt.max_kl; k += 2) {
        if (std::abs(k) < 3) continue;
        for (long l = -opt.max_kl; l <= opt.max_kl; l += 2) {
            if (std::abs(l) < 3) continue;
            if (kappa * natural_model(k, l) != phi_via_traces(k, l))
                throw VerificationFailure("phi factorization fails at (" + std::to_string(k) +
                                          "," + std::to_string(l) + ")");
            ++pairs;
        }
    }
    return std::to_string(pairs) + " (k,l) pairs, exact equality";
}

// Criterion 2: t_poly(m) == trace_poly(w_k) exactly.
inline std::string t_identity(const VerifyOptions&) {
    std::vector<long> ms{-4, -3, -2, 0, 1, 2, 3, 4};
    for (long m : ms)
        if (t_poly(m) != trace_poly(LinkWords::make(m, 0).wk))
            throw VerificationFailure("t_poly(m) != P_{w_k} at m=" + std::to_string(m));
    return std::to_string(ms.size()) + " indices, exact equality";
}

// Criterion 3: the full Chebyshev identity suite at |j| <= jmax.
inline std::string cheb_identities(const VerifyOptions& opt) {
    IdentityReport rep = identity_suite(opt.jmax);
    return std::to_string(rep.entries.size()) + " identities, |j| <= " +
           std::to_string(opt.jmax) + ", exact";
}

// Criterion 4: curve splitting on the diagonal.
inline std::string curve_split(const VerifyOptions&) {
    PolyZ t = PolyZ::variable("t"), z = PolyZ::variable("z");
    if (curve_poly(3, 3) != t - z) throw VerificationFailure("C(3,3) != t - z");
    if (curve_poly(5, 5) != (t - z) * (t * z + PolyZ::constant(Integer(1))))
        throw VerificationFailure("C(5,5) != (t-z)(tz+1)");
    long checked = 0;
    for (long l = 3; l <= 15; l += 2) {
        for (long sl : {l, -l}) {
            auto [c0, c1] = diagonal_split(sl);
            if (std::abs(sl) == 3) {
                // C(+-3,+-3) is the line t = z up to a unit.
                PolyZ q = curve_poly(sl, sl).divide_exact(c0);
                if (!q.is_constant())
                    throw VerificationFailure("C(l,l) is not a unit multiple of t-z at l=" +
                                              std::to_string(sl));
            } else if (c0 * *c1 != curve_poly(sl, sl)) {
                throw VerificationFailure("diagonal split not exact at l=" + std::to_string(sl));
            }
            ++checked;
        }
    }
    return std::to_string(checked) + " diagonal curves split exactly";
}

// Criterion 5: genus / bidegree / gonality tables for odd 3 <= |k|,|l| <= 15.
inline std::string invariant_tables(const VerifyOptions&) {
    long cells = 0;
    for (long k = -15; k <= 15; k += 2) {
        if (std::abs(k) < 3) continue;
        for (long l = -15; l <= 15; l += 2) {
            if (std::abs(l) < 3) continue;
            InvariantReport rep = invariants(k, l);  // cross-checks internally
            long a = std::abs(k) / 2, b = std::abs(l) / 2;
            if (k != l) {
                if (rep.components[0].genus != (a - 1) * (b - 1) ||
                    rep.deg_irrationality != std::min(a, b))
                    throw VerificationFailure("invariant table mismatch at (" +
                                              std::to_string(k) + "," + std::to_string(l) + ")");
            } else {
                if (rep.components[0].genus != 0 || rep.components[0].gonality != 1)
                    throw VerificationFailure("C0 invariants wrong at l=" + std::to_string(l));
                if (std::abs(l) > 3 && (rep.components[1].genus != (a - 2) * (a - 2) ||
                                        rep.components[1].gonality != a - 1))
                    throw VerificationFailure("C1 invariants wrong at l=" + std::to_string(l));
            }
            ++cells;
        }
    }
    return std::to_string(cells) + " table cells, exact integers";
}

// Criterion 6: exact singular certificates and the numeric cross-check.
inline std::string singular_certificates(const VerifyOptions& opt) {
    for (long m : {1L, 2L, 3L, 4L, -2L, -3L, -4L}) singular_points(m);
    for (long m : {1L, 2L, 3L, -2L, -3L}) singular_search_crosscheck(m, opt.tol);
    return "certificates m in {1,2,3,4,-2,-3,-4}; numeric search |m| <= 3";
}

// Criterion 7: all five degenerate-fiber classes in quotient rings.
inline std::string fiber_classes(const VerifyOptions&) {
    for (long m : {1L, 2L, -2L, -3L}) degenerate_fibers(m);
    return "five fiber classes verified for m in {1,2,-2,-3}";
}

// Criterion 8: Euler characteristic / blow-up arithmetic.
inline std::string euler_blowups(const VerifyOptions&) {
    for (long m = -6; m <= 6; ++m) {
        if (m == 0 || m == -1) continue;
        euler_blowup(m);  // internal N = chi + N_sing - 4 and closed-form checks
    }
    if (euler_blowup(1).N_p2 != 10)
        throw VerificationFailure("m=1 P^2 blow-up count is not 10");
    return "m in [-6,6] \\ {-1,0}; m=1 gives the P^2-form count 10";
}

// Criterion 9: birational round trips over Q.
inline std::string birational_roundtrips(const VerifyOptions& opt) {
    std::mt19937_64 rng(splitmix64(opt.seed ^ 0xB1A7A710ULL));
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    auto rnd = [&]() { return make_rational(Integer(num(rng)), Integer(den(rng))); };
    ToRational conv;
    long total = 0;
    for (long m = -4; m <= 4; ++m) {
        int done_vu = 0;
        while (done_vu < 100) {
            AffinePoint<Rational> pt{{"x", rnd()}, {"y", rnd()}, {"z", rnd()}};
            try {
                if (map_U_to_V(map_V_to_U(pt, m, conv), m, conv) != pt)
                    throw VerificationFailure("V<->U round trip failed at m=" + std::to_string(m));
                ++done_vu;
                ++total;
            } catch (const ExceptionalLocus&) {
            }
        }
        int done_uw = 0;
        while (done_uw < 100) {
            Rational v = rnd();
            if (v == 0) continue;
            AffinePoint<Rational> pt{{"u", rnd()}, {"v", v}, {"z", rnd()}};
            if (map_W_to_U(map_U_to_W(pt, m, conv), m, conv) != pt)
                throw VerificationFailure("U<->W round trip failed at m=" + std::to_string(m));
            ++done_uw;
            ++total;
        }
    }
    return std::to_string(total) + " exact rational round trips";
}

// Criterion 10: randomized identity testing at the big prime.
inline std::string oracle_pit(const VerifyOptions& opt) {
    const Integer& p = opt.prime;
    // Trace corpus: all words of length <= 6 plus the link words for
    // |m|, |n| <= 3, against the matrix oracle on shared samples.
    std::vector<Word> corpus = word_corpus(6);
    for (long m = -3; m <= 3; ++m) {
        for (long n = -3; n <= 3; ++n) {
            LinkWords lw = LinkWords::make(m, n);
            corpus.push_back(lw.wk);
            corpus.push_back(lw.r);
            corpus.push_back(lw.r * Word::parse("ab"));
            corpus.push_back(Word::parse("ba") * lw.r);
        }
    }
    std::vector<PolyZ> polys;
    polys.reserve(corpus.size());
    for (const auto& w : corpus) polys.push_back(trace_poly(w));
    for (int i = 0; i < opt.trials; ++i) {
        RepSample s = sample_rep(p, trial_seed(opt.seed, static_cast<std::uint64_t>(i)),
                                 SampleMode::Generic);
        for (std::size_t j = 0; j < corpus.size(); ++j)
            if (eval_character(polys[j], s) != word_trace_matrix(corpus[j], s))
                throw IdentityRefuted("trace_corpus", "word " + corpus[j].str());
    }

    for (long k = -7; k <= 7; k += 2) {
        if (std::abs(k) < 3) continue;
        for (long l = -7; l <= 7; l += 2) {
            if (std::abs(l) < 3) continue;
            pit_check({Claim::Kind::Phi, Word(), k, l, 0}, opt.trials, p, opt.seed);
            pit_check({Claim::Kind::ModelProduct, Word(), k, l, 0}, opt.trials, p, opt.seed);
        }
    }
    for (long m = -3; m <= 3; ++m)
        pit_check({Claim::Kind::TIsPwk, Word(), 0, 0, m}, opt.trials, p, opt.seed);

    // A deliberately faulted kappa must be refuted.
    PolyZ x = PolyZ::variable("x"), y = PolyZ::variable("y"), z = PolyZ::variable("z");
    PolyZ faulted = x * y * z + PolyZ::constant(Integer(4)) - x * x - y * y + z * z;
    LinkWords lw = LinkWords::make(1, 1);
    Word rab = lw.r * Word::parse("ab"), bar = Word::parse("ba") * lw.r;
    bool refuted = false;
    try {
        pit_check_poly("faulted_kappa", faulted * natural_model(3, 3),
                       [&](const RepSample& s) {
                           return word_trace_matrix(rab, s) - word_trace_matrix(bar, s);
                       },
                       opt.trials, p, opt.seed);
    } catch (const IdentityRefuted&) {
        refuted = true;
    }
    if (!refuted) throw VerificationFailure("faulted kappa was not refuted");
    return std::to_string(corpus.size()) + " corpus words + phi/model/t claims at " +
           std::to_string(opt.trials) + " trials; fault refuted";
}

// Criterion 11: smoothness spot checks.
inline std::string smoothness_spot_checks(const VerifyOptions& opt) {
    for (auto [k, l] : std::vector<std::pair<long, long>>{
             {3, 5}, {5, 7}, {3, -5}, {-5, 7}, {5, -7}})
        smoothness_check(k, l, opt.tol);
    for (long n : {1L, 2L, 3L, 4L})
        for (double mag : h_magnitudes_at_delta_roots(n))
            if (mag <= 1.0) throw SuspectSingularity("|h_n| <= 1 at n=" + std::to_string(n));
    for (long n : {-2L, -3L, -4L})
        for (double mag : h_magnitudes_at_delta_roots(n))
            if (mag >= 1.0) throw SuspectSingularity("|h_n| >= 1 at n=" + std::to_string(n));
    for (long l : {5L, 7L}) {
        SmoothnessReport rep = smoothness_check(l, l, opt.tol);
        if (!rep.c1_checked || rep.c1_min_residual <= opt.tol)
            throw SuspectSingularity("C1 check failed at l=" + std::to_string(l));
    }
    return "critical-value disjointness, |h_n| bounds, C1(l,l) for l in {5,7}";
}

}  // namespace suites

inline std::vector<std::pair<std::string, std::function<std::string(const VerifyOptions&)>>>
verify_suite_registry() {
    using namespace suites;
    return {
        {"phi_factorization", phi_factorization},
        {"t_identity", t_identity},
        {"cheb_identities", cheb_identities},
        {"curve_split", curve_split},
        {"invariant_tables", invariant_tables},
        {"singular_certificates", singular_certificates},
        {"fiber_classes", fiber_classes},
        {"euler_blowups", euler_blowups},
        {"birational_roundtrips", birational_roundtrips},
        {"oracle_pit", oracle_pit},
        {"smoothness_spot_checks", smoothness_spot_checks},
    };
}

inline std::vector<SuiteResult> run_verify(const VerifyOptions& opt) {
    std::vector<SuiteResult> results;
    bool found = false;
    for (const auto& [name, fn] : verify_suite_registry()) {
        if (opt.suite != "all" && opt.suite != name) continue;
        found = true;
        SuiteResult r;
        r.name = name;
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.detail = fn(opt);
            r.passed = true;
        } catch (const Error& e) {
            r.passed = false;
            r.detail = e.what();
        }
        r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
        results.push_back(std::move(r));
    }
    if (!found) throw ValidationError("unknown verify suite '" + opt.suite + "'");
    return results;
}

}  // namespace charvar
