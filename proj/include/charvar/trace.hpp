#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "charvar/chebyshev.hpp"
#include "charvar/multipoly.hpp"
#include "charvar/words.hpp"

namespace charvar {

// Trace polynomial engine: P_u(x, y, z) with x = tr a, y = tr b, z = tr(ab^-1),
// computed by Cayley-Hamilton rewriting. Reduction rules, applied to the
// cyclic class of the word:
//   base      length <= 2 by table,
//   powers    tr(U g^j V) collapses through the linear recursion
//             f_j = S_{j-1}(tr g) f_1 - S_{j-2}(tr g) f_0 for any block g,
//   inverses  tr(U g^-1) = x_g tr(U) - tr(U g),
//   squares   tr(X g g) = x_g tr(X g) - tr(X)   (strict mode only; the
//             power rule covers this when enabled),
//   split     alternating positive words: tr(uv) = tr(u) tr(v) - tr(u v^-1).
// The block-power rule is the engine's workhorse on the highly periodic
// relator words; without it, inverse elimination alone branches into
// exponentially many distinct cyclic words.
class TraceEngine {
public:
    explicit TraceEngine(std::size_t length_limit = 10000, bool block_power_rule = true)
        : limit_(length_limit), block_rule_(block_power_rule) {}

    PolyZ trace(const Word& w) {
        if (w.size() > limit_)
            throw ComplexityLimit("word length " + std::to_string(w.size()) +
                                  " exceeds configured limit " + std::to_string(limit_));
        return go(cyclic_reduce(w.letters()));
    }

    std::size_t memo_size() const { return memo_.size(); }

private:
    using Letters = std::vector<std::int8_t>;

    static Letters cyclic_reduce(Letters l) {
        std::size_t lo = 0, hi = l.size();
        while (hi - lo >= 2 && l[lo] == -l[hi - 1]) {
            ++lo;
            --hi;
        }
        return Letters(l.begin() + static_cast<long>(lo), l.begin() + static_cast<long>(hi));
    }

    static Letters rotate(const Letters& l, std::size_t s) {
        Letters r;
        r.reserve(l.size());
        r.insert(r.end(), l.begin() + static_cast<long>(s), l.end());
        r.insert(r.end(), l.begin(), l.begin() + static_cast<long>(s));
        return r;
    }

    static std::string min_rotation_key(const Letters& l) {
        if (l.empty()) return {};
        std::size_t best = 0;
        for (std::size_t s = 1; s < l.size(); ++s) {
            for (std::size_t i = 0; i < l.size(); ++i) {
                std::int8_t c = l[(s + i) % l.size()];
                std::int8_t d = l[(best + i) % l.size()];
                if (c != d) {
                    if (c < d) best = s;
                    break;
                }
            }
        }
        std::string key;
        key.reserve(l.size());
        for (std::size_t i = 0; i < l.size(); ++i)
            key.push_back(static_cast<char>(l[(best + i) % l.size()]));
        return key;
    }

    static std::size_t inverse_count(const Letters& l) {
        std::size_t n = 0;
        for (auto c : l)
            if (c < 0) ++n;
        return n;
    }

    PolyZ go_word(Letters l) { return go(cyclic_reduce(Word::reduce(std::move(l)))); }

    PolyZ trace_of_generator(std::int8_t c) const {
        return PolyZ::variable(std::abs(c) == 1 ? "x" : "y");
    }

    PolyZ go(const Letters& cw) {
        std::string key = min_rotation_key(cw);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Letters w(key.begin(), key.end());
        PolyZ result = compute(w);
        memo_.emplace(std::move(key), result);
        return result;
    }

    PolyZ compute(const Letters& w) {
        const std::size_t n = w.size();
        if (n == 0) return PolyZ::constant(Integer(2));
        if (n == 1) return trace_of_generator(w[0]);
        if (n == 2) {
            if (w[0] == w[1] || w[0] == -w[1]) {
                PolyZ xg = trace_of_generator(w[0]);
                return xg * xg - PolyZ::constant(Integer(2));
            }
            bool same_sign = (w[0] > 0) == (w[1] > 0);
            if (same_sign)
                return PolyZ::variable("x") * PolyZ::variable("y") - PolyZ::variable("z");
            return PolyZ::variable("z");
        }

        if (block_rule_) {
            if (auto r = try_block_power(w)) return *r;
        }

        // Inverse elimination: rotate an inverse letter to the end.
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i] >= 0) continue;
            Letters rot = rotate(w, (i + 1) % n);
            Letters head(rot.begin(), rot.end() - 1);
            PolyZ xg = trace_of_generator(rot.back());
            Letters flipped = head;
            flipped.push_back(static_cast<std::int8_t>(-rot.back()));
            return xg * go_word(head) - go_word(flipped);
        }

        if (!block_rule_) {
            // Square reduction for positive words: tr(X g g) = x_g tr(X g) - tr(X).
            for (std::size_t i = 0; i < n; ++i) {
                if (w[i] != w[(i + 1) % n]) continue;
                Letters rot = rotate(w, (i + 2) % n);  // ... g g at the end
                Letters xg_head(rot.begin(), rot.end() - 1);
                Letters x_head(rot.begin(), rot.end() - 2);
                return trace_of_generator(w[i]) * go_word(xg_head) - go_word(x_head);
            }
        }

        // Alternating positive word of length >= 3: midpoint split at an even
        // index so that u v^-1 collapses.
        std::size_t s = 2 * ((n + 3) / 4);
        if (s >= n) s = n - 1;
        if (s < 2) s = 2;
        Letters u(w.begin(), w.begin() + static_cast<long>(s));
        Letters v(w.begin() + static_cast<long>(s), w.end());
        Letters vinv(v.rbegin(), v.rend());
        for (auto& c : vinv) c = static_cast<std::int8_t>(-c);
        Letters uvinv = u;
        uvinv.insert(uvinv.end(), vinv.begin(), vinv.end());
        uvinv = cyclic_reduce(Word::reduce(std::move(uvinv)));
        if (uvinv.size() >= n)
            throw Error("trace engine: split failed to shrink an alternating word");
        return go_word(u) * go_word(v) - go_word(uvinv);
    }

    // Best periodic block g^j (j >= 2) in the cyclic word; collapse via the
    // linear recursion with omega = tr(g).
    std::optional<PolyZ> try_block_power(const Letters& w) {
        const std::size_t n = w.size();
        Letters d = w;
        d.insert(d.end(), w.begin(), w.end());
        std::size_t best_s = 0, best_b = 0, best_j = 0, best_saved = 0;
        for (std::size_t b = 1; b <= n / 2; ++b) {
            std::vector<std::size_t> match(2 * n, 0);
            for (std::size_t i = 2 * n - b; i-- > 0;)
                match[i] = d[i] == d[i + b] ? match[i + 1] + 1 : 0;
            for (std::size_t s = 0; s < n; ++s) {
                std::size_t ext = std::min(match[s], n - b);
                std::size_t j = 1 + ext / b;
                if (j < 2) continue;
                std::size_t saved = (j - 1) * b;  // letters removed by the collapse
                if (saved > best_saved) {
                    best_s = s;
                    best_b = b;
                    best_j = j;
                    best_saved = saved;
                }
            }
        }
        if (best_j < 2) return std::nullopt;
        Letters rot = rotate(w, best_s);
        Letters g(rot.begin(), rot.begin() + static_cast<long>(best_b));
        Letters rest(rot.begin() + static_cast<long>(best_b * best_j), rot.end());
        Letters g_rest = g;
        g_rest.insert(g_rest.end(), rest.begin(), rest.end());
        PolyZ tg = go_word(g);
        PolyZ f1 = go_word(g_rest);
        PolyZ f0 = go_word(rest);
        long j = static_cast<long>(best_j);
        return cheb_S_of(j - 1, tg) * f1 - cheb_S_of(j - 2, tg) * f0;
    }

    std::unordered_map<std::string, PolyZ> memo_;
    std::size_t limit_;
    bool block_rule_;
};

// Shared, memoizing engine.
inline PolyZ trace_poly(const Word& w) {
    static std::mutex mu;
    static TraceEngine engine;
    std::lock_guard<std::mutex> lock(mu);
    return engine.trace(w);
}

// phi(x, y, z) = P_{r a b} - P_{b a r} for J(k, l), k = 2m+1, l = 2n+1.
inline PolyZ phi_via_traces(long k, long l) {
    if (k % 2 == 0 || l % 2 == 0) throw ValidationError("phi requires odd k and l");
    LinkWords lw = LinkWords::make((k - 1) / 2, (l - 1) / 2);
    Word rab = lw.r * Word::parse("ab");
    Word bar = Word::parse("ba") * lw.r;
    return trace_poly(rab) - trace_poly(bar);
}

}  // namespace charvar
