#include "charvar/trace.hpp"
#include "charvar/words.hpp"

#include <catch_amalgamated.hpp>
#include <chrono>
#include <random>

using namespace charvar;

namespace {

PolyZ xv() { return PolyZ::variable("x"); }
PolyZ yv() { return PolyZ::variable("y"); }
PolyZ zv() { return PolyZ::variable("z"); }
PolyZ cst(long c) { return PolyZ::constant(Integer(c)); }

PolyZ kappa() {
    return xv() * yv() * zv() + cst(4) - xv() * xv() - yv() * yv() - zv() * zv();
}

// t for m = 1, expanded by hand from the displayed formula:
// (xz - y)(yz - x) - z(z^2 + 1) + 4z.
PolyZ t1_hand() {
    PolyZ x = xv(), y = yv(), z = zv();
    return (x * z - y) * (y * z - x) - z * (z * z + cst(1)) + cst(4) * z;
}

Word random_word(std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> pick(0, 3);
    static const std::int8_t alphabet[4] = {1, -1, 2, -2};
    std::vector<std::int8_t> l;
    int n = len(rng);
    for (int i = 0; i < n; ++i) l.push_back(alphabet[pick(rng)]);
    return Word::from_letters(std::move(l));
}

}  // namespace

TEST_CASE("word building and reduction") {
    CHECK(Word::parse("aA").empty());
    CHECK(Word::parse("aB").pow(2).str() == "aBaB");
    CHECK(LinkWords::make(0, 1).wk.str() == "ab");
    CHECK(Word::parse("abBA").empty());
    CHECK(Word::parse("ab").inverse().str() == "BA");
    CHECK(Word::parse("aB").pow(-2).str() == "bAbA");
}

TEST_CASE("word reversal") {
    CHECK(Word::parse("ab").reversed().str() == "ba");
    CHECK(Word::parse("aBa").reversed().str() == "aBa");  // palindrome
    Word r = LinkWords::make(0, 1).r;                     // m=0, n=1: r = ab
    CHECK(r.str() == "ab");
    CHECK(r.reversed().str() == "ba");
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        Word w = random_word(rng, 10);
        CHECK(w.reversed().reversed() == w);  // involution
    }
}

TEST_CASE("link words have the expected shapes") {
    LinkWords lw = LinkWords::make(1, 1);
    CHECK(lw.wk.str() == "aBabAb");
    CHECK(lw.r.str() == "aBabAbaB");
    LinkWords neg = LinkWords::make(-1, -1);
    CHECK(neg.wk == Word::parse("aB").pow(-1) * Word::parse("ab") * Word::parse("Ab").pow(-1));
}

TEST_CASE("trace polynomial base cases") {
    CHECK(trace_poly(Word()) == cst(2));
    CHECK(trace_poly(Word::parse("aB")) == zv());
    CHECK(trace_poly(Word::parse("ab")) == xv() * yv() - zv());
    CHECK(trace_poly(Word::parse("aa")) == xv() * xv() - cst(2));
    CHECK(trace_poly(Word::parse("a")) == xv());
    CHECK(trace_poly(Word::parse("B")) == yv());
    CHECK(trace_poly(Word::parse("AB")) == xv() * yv() - zv());
}

TEST_CASE("trace of w_k for m=1 equals the t polynomial") {
    CHECK(trace_poly(LinkWords::make(1, 0).wk) == t1_hand());
}

TEST_CASE("cyclic, inversion and reversal invariance") {
    std::mt19937_64 rng(42);
    int done = 0;
    while (done < 500) {
        Word u = random_word(rng, 6);
        Word v = random_word(rng, 6);
        if ((u * v).size() > 12) continue;
        CHECK(trace_poly(u * v) == trace_poly(v * u));
        ++done;
    }
    for (int i = 0; i < 200; ++i) {
        Word w = random_word(rng, 10);
        CHECK(trace_poly(w) == trace_poly(w.inverse()));
        CHECK(trace_poly(w) == trace_poly(w.reversed()));
    }
}

TEST_CASE("fundamental trace recurrence") {
    std::mt19937_64 rng(77);
    static const std::int8_t gens[2] = {1, 2};
    for (int i = 0; i < 120; ++i) {
        Word u = random_word(rng, 5);
        Word v = random_word(rng, 5);
        std::int8_t g = gens[i % 2];
        Word wg = Word::from_letters({g});
        PolyZ xg = g == 1 ? xv() : yv();
        CHECK(trace_poly(u * wg * wg * v) == xg * trace_poly(u * wg * v) - trace_poly(u * v));
    }
}

TEST_CASE("strict-mode engine agrees with the block-power engine") {
    TraceEngine strict(10000, /*block_power_rule=*/false);
    TraceEngine fast(10000, /*block_power_rule=*/true);
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 150; ++i) {
        Word w = random_word(rng, 9);
        CHECK(strict.trace(w) == fast.trace(w));
    }
    for (long m : {-2L, -1L, 0L, 1L, 2L}) {
        for (long n : {-2L, -1L, 0L, 1L, 2L}) {
            LinkWords lw = LinkWords::make(m, n);
            Word rab = lw.r * Word::parse("ab");
            CHECK(strict.trace(rab) == fast.trace(rab));
        }
    }
}

TEST_CASE("phi via traces for small links") {
    // (k,l) = (3,3): phi = kappa * (t - z) with t the m=1 trace polynomial.
    PolyZ phi33 = phi_via_traces(3, 3);
    CHECK(phi33 == kappa() * (t1_hand() - zv()));

    // Degenerate m = n = 0 (k = l = 1): r is empty, so phi = P_ab - P_ba = 0,
    // matching the closed form where S_{-1} = 0 kills both terms.
    PolyZ phi11 = phi_via_traces(1, 1);
    CHECK(phi11 == trace_poly(Word::parse("ab")) - trace_poly(Word::parse("ba")));
    CHECK(phi11.is_zero());

    // The neighbouring degenerate case m=0, n=1 (k=1, l=3) has r = ab and
    // phi = P_{abab} - P_{baab} = -kappa, matching kappa * (0 - S_0 S_0).
    CHECK(phi_via_traces(1, 3) ==
          trace_poly(Word::parse("abab")) - trace_poly(Word::parse("baab")));
    CHECK(phi_via_traces(1, 3) == -kappa());

    CHECK_THROWS_AS(phi_via_traces(2, 3), ValidationError);
}

TEST_CASE("complexity guard") {
    TraceEngine tiny(8);
    CHECK_THROWS_AS(tiny.trace(Word::parse("abababababab")), ComplexityLimit);
}

TEST_CASE("phi at the acceptance corner stays tractable") {
    auto t0 = std::chrono::steady_clock::now();
    PolyZ phi = phi_via_traces(-9, -9);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    CHECK(!phi.is_zero());
    INFO("phi(-9,-9) took " << ms << " ms, " << phi.term_count() << " terms");
    CHECK(ms < 60000);
}
