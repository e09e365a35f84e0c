#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/errors.hpp"

namespace charvar {

// Freely reduced word in the rank-2 free group <a, b>.
// Letters: a = 1, a^-1 = -1, b = 2, b^-1 = -2. Serialized as a/A/b/B.
class Word {
public:
    Word() = default;

    static Word from_letters(std::vector<std::int8_t> letters) {
        Word w;
        w.l_ = reduce(std::move(letters));
        return w;
    }

    static Word parse(std::string_view s) {
        std::vector<std::int8_t> l;
        for (char c : s) {
            switch (c) {
                case 'a': l.push_back(1); break;
                case 'A': l.push_back(-1); break;
                case 'b': l.push_back(2); break;
                case 'B': l.push_back(-2); break;
                case ' ': break;
                default: throw ValidationError(std::string("bad word letter '") + c + "'");
            }
        }
        return from_letters(std::move(l));
    }

    const std::vector<std::int8_t>& letters() const { return l_; }
    std::size_t size() const { return l_.size(); }
    bool empty() const { return l_.empty(); }

    friend Word operator*(const Word& x, const Word& y) {
        std::vector<std::int8_t> l = x.l_;
        l.insert(l.end(), y.l_.begin(), y.l_.end());
        return from_letters(std::move(l));
    }

    Word inverse() const {
        std::vector<std::int8_t> l(l_.rbegin(), l_.rend());
        for (auto& c : l) c = static_cast<std::int8_t>(-c);
        Word w;
        w.l_ = std::move(l);  // inverse of a reduced word is reduced
        return w;
    }

    // Letters in reversed order, *not* inverted.
    Word reversed() const {
        Word w;
        w.l_.assign(l_.rbegin(), l_.rend());
        return w;
    }

    Word pow(long e) const {
        Word base = e >= 0 ? *this : inverse();
        long n = e >= 0 ? e : -e;
        Word r;
        for (long i = 0; i < n; ++i) r = r * base;
        return r;
    }

    std::string str() const {
        static const char* names[] = {"B", "A", "", "a", "b"};
        std::string s;
        for (auto c : l_) s += names[c + 2];
        return s;
    }

    friend bool operator==(const Word& x, const Word& y) { return x.l_ == y.l_; }
    friend bool operator!=(const Word& x, const Word& y) { return !(x == y); }

    static std::vector<std::int8_t> reduce(std::vector<std::int8_t> in) {
        std::vector<std::int8_t> out;
        out.reserve(in.size());
        for (auto c : in) {
            if (!out.empty() && out.back() == -c)
                out.pop_back();
            else
                out.push_back(c);
        }
        return out;
    }

private:
    std::vector<std::int8_t> l_;
};

// The relator words for J(k, l) with k = 2m+1, l = 2n+1:
//   w_k = (a b^-1)^m a b (a^-1 b)^m,  r = w_k^n (a b^-1)^m.
struct LinkWords {
    long m = 0, n = 0;
    Word wk, r, r_rev;

    static LinkWords make(long m, long n) {
        LinkWords lw;
        lw.m = m;
        lw.n = n;
        Word aB = Word::parse("aB"), ab = Word::parse("ab"), Ab = Word::parse("Ab");
        lw.wk = aB.pow(m) * ab * Ab.pow(m);
        lw.r = lw.wk.pow(n) * aB.pow(m);
        lw.r_rev = lw.r.reversed();
        return lw;
    }
};

}  // namespace charvar
