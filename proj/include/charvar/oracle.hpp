#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "charvar/models.hpp"
#include "charvar/rings.hpp"
#include "charvar/trace.hpp"
#include "charvar/words.hpp"

namespace charvar {

// Brute-force SL2(F_p) evaluation and Schwartz-Zippel identity testing.
// Determinism contract: trial i draws from an mt19937_64 stream seeded with
// splitmix64(seed ^ GOLDEN * (i + 1)), so reports are independent of trial
// execution order.

inline Integer default_oracle_prime() {
    return (Integer(1) << 61) - 1;  // Mersenne prime 2^61 - 1
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) {
    return splitmix64(base ^ (0x9E3779B97F4A7C15ULL * (trial + 1)));
}

// Uniform residues in [0, p) by rejection from 64-bit blocks.
class ResidueRng {
public:
    explicit ResidueRng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    Integer residue(const Integer& p) {
        const std::size_t bits = mpz_sizeinbase(p.get_mpz_t(), 2);
        const std::size_t words = (bits + 63) / 64;
        Integer block = Integer(1) << static_cast<unsigned long>(64 * words);
        Integer limit = block - block % p;
        for (int attempt = 0; attempt < 256; ++attempt) {
            Integer v = 0;
            for (std::size_t i = 0; i < words; ++i)
                v = (v << 64) + Integer(static_cast<unsigned long>(gen_()));
            if (v < limit) return v % p;
        }
        throw Error("residue sampling failed to terminate");
    }

    Integer nonzero_residue(const Integer& p) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            Integer v = residue(p);
            if (v != 0) return v;
        }
        throw Error("nonzero residue sampling exhausted its attempt budget");
    }

private:
    std::mt19937_64 gen_;
};

struct Mat2 {
    Fp a11, a12, a21, a22;

    static Mat2 identity(const Integer& p) {
        return {Fp(Integer(1), p), Fp(Integer(0), p), Fp(Integer(0), p), Fp(Integer(1), p)};
    }

    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a11 * n.a11 + m.a12 * n.a21, m.a11 * n.a12 + m.a12 * n.a22,
                m.a21 * n.a11 + m.a22 * n.a21, m.a21 * n.a12 + m.a22 * n.a22};
    }

    Fp trace() const { return a11 + a22; }
    Fp det() const { return a11 * a22 - a12 * a21; }

    // Inverse of a determinant-1 matrix is its adjugate.
    Mat2 inverse() const { return {a22, -a12, -a21, a11}; }
};

enum class SampleMode { Generic, Reducible };

struct RepSample {
    Integer p;
    Mat2 A, B;
    Fp x, y, z;  // tr A, tr B, tr(A B^-1)
};

inline RepSample sample_rep(const Integer& p, std::uint64_t seed, SampleMode mode) {
    if (p <= 5) throw ValidationError("oracle modulus must exceed 5");
    ResidueRng rng(seed);
    auto draw_generic = [&]() {
        Fp a11(rng.nonzero_residue(p), p);
        Fp a12(rng.residue(p), p);
        Fp a21(rng.residue(p), p);
        Fp a22 = (Fp(Integer(1), p) + a12 * a21) / a11;
        return Mat2{a11, a12, a21, a22};
    };
    auto draw_reducible = [&]() {
        Fp a11(rng.nonzero_residue(p), p);
        Fp a12(rng.residue(p), p);
        return Mat2{a11, a12, Fp(Integer(0), p), a11.inverse()};
    };
    RepSample s;
    s.p = p;
    s.A = mode == SampleMode::Generic ? draw_generic() : draw_reducible();
    s.B = mode == SampleMode::Generic ? draw_generic() : draw_reducible();
    s.x = s.A.trace();
    s.y = s.B.trace();
    s.z = (s.A * s.B.inverse()).trace();
    return s;
}

// Trace of the literal matrix product of the word's letters.
inline Fp word_trace_matrix(const Word& w, const RepSample& rep) {
    Mat2 m = Mat2::identity(rep.p);
    Mat2 Ainv = rep.A.inverse(), Binv = rep.B.inverse();
    for (auto c : w.letters()) {
        switch (c) {
            case 1: m = m * rep.A; break;
            case -1: m = m * Ainv; break;
            case 2: m = m * rep.B; break;
            case -2: m = m * Binv; break;
            default: throw Error("corrupt word letter");
        }
    }
    return m.trace();
}

inline Fp eval_character(const PolyZ& poly, const RepSample& s) {
    std::map<std::string, Fp> asg;
    if (poly.has_var("x")) asg.emplace("x", s.x);
    if (poly.has_var("y")) asg.emplace("y", s.y);
    if (poly.has_var("z")) asg.emplace("z", s.z);
    return poly.eval_fp(asg, s.p);
}

struct PitReport {
    std::string claim;
    int trials = 0;
    std::string prime;
    std::uint64_t seed = 0;
    bool passed = false;
    // Schwartz-Zippel: per-trial false-accept probability <= deg / p.
    long poly_degree = 0;
};

// Compare a symbolic polynomial in (x, y, z) against a matrix-side quantity
// on `trials` generic samples. Throws IdentityRefuted with the witness
// character on the first disagreement.
template <class MatrixSide>
PitReport pit_check_poly(const std::string& name, const PolyZ& poly, MatrixSide&& side,
                         int trials, const Integer& p, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("pit_check requires trials >= 1");
    PitReport rep;
    rep.claim = name;
    rep.trials = trials;
    rep.prime = p.get_str();
    rep.seed = seed;
    rep.poly_degree = poly.total_degree();
    for (int i = 0; i < trials; ++i) {
        RepSample s = sample_rep(p, trial_seed(seed, static_cast<std::uint64_t>(i)),
                                 SampleMode::Generic);
        Fp lhs = eval_character(poly, s);
        Fp rhs = side(s);
        if (lhs != rhs) {
            std::ostringstream witness;
            witness << "trial " << i << ", character (x,y,z) = (" << s.x.value().get_str()
                    << ", " << s.y.value().get_str() << ", " << s.z.value().get_str()
                    << "), symbolic " << lhs.value().get_str() << " vs matrix "
                    << rhs.value().get_str();
            throw IdentityRefuted(name, witness.str());
        }
    }
    rep.passed = true;
    return rep;
}

struct Claim {
    enum class Kind { TracePolyOfWord, Phi, TIsPwk, ModelProduct } kind;
    Word word;  // TracePolyOfWord
    long k = 0, l = 0, m = 0;
};

inline PitReport pit_check(const Claim& claim, int trials, const Integer& p, std::uint64_t seed) {
    switch (claim.kind) {
        case Claim::Kind::TracePolyOfWord: {
            Word w = claim.word;
            return pit_check_poly("trace_poly_of(" + w.str() + ")", trace_poly(w),
                                  [&w](const RepSample& s) { return word_trace_matrix(w, s); },
                                  trials, p, seed);
        }
        case Claim::Kind::Phi: {
            LinkWords lw = LinkWords::make((claim.k - 1) / 2, (claim.l - 1) / 2);
            Word rab = lw.r * Word::parse("ab");
            Word bar = Word::parse("ba") * lw.r;
            PolyZ poly = phi_via_traces(claim.k, claim.l);
            return pit_check_poly(
                "phi(" + std::to_string(claim.k) + "," + std::to_string(claim.l) + ")", poly,
                [rab, bar](const RepSample& s) {
                    return word_trace_matrix(rab, s) - word_trace_matrix(bar, s);
                },
                trials, p, seed);
        }
        case Claim::Kind::TIsPwk: {
            Word wk = LinkWords::make(claim.m, 0).wk;
            return pit_check_poly("t_is_Pwk(" + std::to_string(claim.m) + ")", t_poly(claim.m),
                                  [wk](const RepSample& s) { return word_trace_matrix(wk, s); },
                                  trials, p, seed);
        }
        case Claim::Kind::ModelProduct: {
            LinkWords lw = LinkWords::make((claim.k - 1) / 2, (claim.l - 1) / 2);
            Word rab = lw.r * Word::parse("ab");
            Word bar = Word::parse("ba") * lw.r;
            PolyZ poly = reducible_poly() * natural_model(claim.k, claim.l);
            return pit_check_poly(
                "model_product(" + std::to_string(claim.k) + "," + std::to_string(claim.l) + ")",
                poly,
                [rab, bar](const RepSample& s) {
                    return word_trace_matrix(rab, s) - word_trace_matrix(bar, s);
                },
                trials, p, seed);
        }
    }
    throw ValidationError("unknown claim kind");
}

// All freely reduced words of length <= max_len (the identity-test corpus).
inline std::vector<Word> word_corpus(int max_len) {
    std::vector<Word> out{Word()};
    std::vector<std::vector<std::int8_t>> layer{{}};
    static const std::int8_t alphabet[4] = {1, -1, 2, -2};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<std::int8_t>> next;
        for (const auto& w : layer) {
            for (auto c : alphabet) {
                if (!w.empty() && w.back() == -c) continue;
                auto e = w;
                e.push_back(c);
                out.push_back(Word::from_letters(e));
                next.push_back(std::move(e));
            }
        }
        layer = std::move(next);
    }
    return out;
}

}  // namespace charvar
