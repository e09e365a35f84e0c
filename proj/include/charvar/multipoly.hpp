#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "charvar/errors.hpp"
#include "charvar/rings.hpp"
#include "json.hpp"

namespace charvar {

namespace detail {

template <class C>
struct CoeffOps;

template <>
struct CoeffOps<Integer> {
    static bool exact_divide(const Integer& n, const Integer& d, Integer& out) {
        if (d == 0) return false;
        if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
        mpz_divexact(out.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        return true;
    }
    static std::string str(const Integer& c) { return c.get_str(); }
    static Integer parse(const std::string& s) {
        try {
            return Integer(s);
        } catch (const std::invalid_argument&) {
            throw ValidationError("bad integer coefficient '" + s + "'");
        }
    }
};

template <>
struct CoeffOps<Rational> {
    static bool exact_divide(const Rational& n, const Rational& d, Rational& out) {
        if (d == 0) return false;
        out = n / d;
        return true;
    }
    static std::string str(const Rational& c) { return c.get_str(); }
    static Rational parse(const std::string& s) {
        try {
            Rational q(s);
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument&) {
            throw ValidationError("bad rational coefficient '" + s + "'");
        }
    }
};

}  // namespace detail

// Sparse multivariate polynomial over an exact coefficient ring C.
//
// Canonical form: the variable list is sorted, contains exactly the variables
// that occur, and the term map holds no zero coefficients. Terms are ordered
// graded-lex descending, which is also the canonical JSON order.
template <class C>
class MultiPoly {
public:
    using ExpVec = std::vector<unsigned>;

    struct GradedLexDesc {
        bool operator()(const ExpVec& a, const ExpVec& b) const {
            unsigned long da = std::accumulate(a.begin(), a.end(), 0ul);
            unsigned long db = std::accumulate(b.begin(), b.end(), 0ul);
            if (da != db) return da > db;
            return a > b;
        }
    };
    using TermMap = std::map<ExpVec, C, GradedLexDesc>;

    MultiPoly() = default;

    static MultiPoly zero() { return MultiPoly(); }

    static MultiPoly constant(const C& c) {
        MultiPoly p;
        if (c != 0) p.terms_.emplace(ExpVec{}, c);
        return p;
    }

    static MultiPoly variable(const std::string& name) {
        MultiPoly p;
        p.vars_ = {name};
        p.terms_.emplace(ExpVec{1}, C(1));
        return p;
    }

    static MultiPoly monomial(const C& c, const std::vector<std::pair<std::string, unsigned>>& m) {
        MultiPoly p = constant(c);
        for (const auto& [v, e] : m)
            for (unsigned i = 0; i < e; ++i) p = p * variable(v);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return vars_.empty(); }

    // Constant term value (the whole value for constant polynomials).
    C constant_value() const {
        ExpVec key(vars_.size(), 0);
        auto it = terms_.find(key);
        return it == terms_.end() ? C(0) : it->second;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool has_var(const std::string& v) const {
        return std::binary_search(vars_.begin(), vars_.end(), v);
    }

    long degree(const std::string& v) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
        if (it == vars_.end() || *it != v) return 0;
        std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
        long d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[idx]));
        return d;
    }

    long total_degree() const {
        long d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, static_cast<long>(std::accumulate(e.begin(), e.end(), 0ul)));
        return d;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        auto [av, bv, vars] = aligned(a, b);
        MultiPoly r;
        r.vars_ = vars;
        r.terms_ = std::move(av);
        for (auto& [e, c] : bv) {
            auto [it, fresh] = r.terms_.emplace(e, c);
            if (!fresh) it->second += c;
        }
        r.normalize();
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        if (a.is_zero() || b.is_zero()) return MultiPoly();
        auto [av, bv, vars] = aligned(a, b);
        MultiPoly r;
        r.vars_ = vars;
        const std::size_t n = vars.size();
        ExpVec e(n);
        for (const auto& [ea, ca] : av) {
            for (const auto& [eb, cb] : bv) {
                for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
                auto [it, fresh] = r.terms_.emplace(e, ca * cb);
                if (!fresh) it->second += ca * cb;
            }
        }
        r.normalize();
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const C& c) { return a * constant(c); }
    friend MultiPoly operator*(const C& c, const MultiPoly& a) { return a * constant(c); }

    MultiPoly pow(unsigned e) const {
        MultiPoly r = constant(C(1));
        MultiPoly base = *this;
        unsigned k = e;
        while (k > 0) {
            if (k & 1u) r = r * base;
            k >>= 1u;
            if (k > 0) base = base * base;
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        auto [av, bv, vars] = aligned(a, b);
        (void)vars;
        return av == bv;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    // Formal partial derivative.
    MultiPoly partial(const std::string& v) const {
        std::size_t idx = var_index_checked(v);
        MultiPoly r;
        r.vars_ = vars_;
        for (const auto& [e, c] : terms_) {
            if (e[idx] == 0) continue;
            ExpVec ne = e;
            ne[idx] -= 1;
            r.terms_.emplace(std::move(ne), c * C(static_cast<long>(e[idx])));
        }
        r.normalize();
        return r;
    }

    // Full symbolic substitution v := q.
    MultiPoly subst(const std::string& v, const MultiPoly& q) const {
        std::size_t idx = var_index_checked(v);
        unsigned maxe = 0;
        for (const auto& [e, c] : terms_) maxe = std::max(maxe, e[idx]);
        std::vector<MultiPoly> qpow(maxe + 1);
        qpow[0] = constant(C(1));
        for (unsigned i = 1; i <= maxe; ++i) qpow[i] = qpow[i - 1] * q;
        MultiPoly r;
        for (const auto& [e, c] : terms_) {
            MultiPoly rest;
            rest.vars_ = vars_;
            ExpVec ne = e;
            ne[idx] = 0;
            rest.terms_.emplace(std::move(ne), c);
            rest.normalize();
            r = r + rest * qpow[e[idx]];
        }
        return r;
    }

    // Exact division: returns r with *this == q * r, throws NotDivisible
    // otherwise. Works by leading-term elimination in graded-lex order.
    MultiPoly divide_exact(const MultiPoly& q) const {
        if (q.is_zero()) throw DivisionByZeroPoly("division by zero polynomial");
        auto [av, bv, vars] = aligned(*this, q);
        const std::size_t n = vars.size();
        MultiPoly rem;
        rem.vars_ = vars;
        rem.terms_ = std::move(av);
        MultiPoly quot;
        quot.vars_ = vars;
        const auto& qlead = *bv.begin();
        while (!rem.terms_.empty()) {
            const auto& rlead = *rem.terms_.begin();
            ExpVec de(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (rlead.first[i] < qlead.first[i]) throw NotDivisible("remainder is nonzero");
                de[i] = rlead.first[i] - qlead.first[i];
            }
            C dc;
            if (!detail::CoeffOps<C>::exact_divide(rlead.second, qlead.second, dc))
                throw NotDivisible("leading coefficient does not divide");
            quot.terms_.emplace(de, dc);
            // rem -= (dc * x^de) * q
            ExpVec e(n);
            for (const auto& [eq, cq] : bv) {
                for (std::size_t i = 0; i < n; ++i) e[i] = eq[i] + de[i];
                auto [it, fresh] = rem.terms_.emplace(e, -(dc * cq));
                if (!fresh) {
                    it->second -= dc * cq;
                    if (it->second == 0) rem.terms_.erase(it);
                }
            }
        }
        quot.normalize();
        return quot;
    }

    // Evaluation in a ring R. `conv` injects coefficients into R; the
    // assignment must cover every variable.
    template <class R, class Conv>
    R eval(const std::map<std::string, R>& assignment, Conv conv) const {
        std::vector<const R*> vals(vars_.size());
        std::vector<unsigned> maxe(vars_.size(), 0);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = assignment.find(vars_[i]);
            if (it == assignment.end()) throw MissingVariable("no value for variable " + vars_[i]);
            vals[i] = &it->second;
        }
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < vars_.size(); ++i) maxe[i] = std::max(maxe[i], e[i]);
        // pows[i][e-1] = vals[i]^e
        std::vector<std::vector<R>> pows(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (maxe[i] == 0) continue;
            pows[i].reserve(maxe[i]);
            pows[i].push_back(*vals[i]);
            for (unsigned e = 2; e <= maxe[i]; ++e) pows[i].push_back(pows[i].back() * *vals[i]);
        }
        R acc = conv(C(0));
        for (const auto& [e, c] : terms_) {
            R t = conv(c);
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (e[i] > 0) t = t * pows[i][e[i] - 1];
            acc = acc + t;
        }
        return acc;
    }

    Integer eval_int(const std::map<std::string, Integer>& a) const { return eval(a, ToInteger{}); }
    Rational eval_rat(const std::map<std::string, Rational>& a) const { return eval(a, ToRational{}); }
    std::complex<double> eval_complex(const std::map<std::string, std::complex<double>>& a) const {
        return eval(a, ToComplex{});
    }
    Fp eval_fp(const std::map<std::string, Fp>& a, const Integer& p) const {
        return eval(a, ToFp{p});
    }

    MultiPoly rename_var(const std::string& from, const std::string& to) const {
        if (!has_var(from) || from == to) return *this;
        if (has_var(to)) throw ValidationError("rename target '" + to + "' already present");
        std::vector<std::string> renamed = vars_;
        *std::find(renamed.begin(), renamed.end(), from) = to;
        std::vector<std::string> sorted = renamed;
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> pos(renamed.size());
        for (std::size_t i = 0; i < renamed.size(); ++i)
            pos[i] = static_cast<std::size_t>(
                std::lower_bound(sorted.begin(), sorted.end(), renamed[i]) - sorted.begin());
        MultiPoly r;
        r.vars_ = std::move(sorted);
        for (const auto& [e, c] : terms_) {
            ExpVec ne(r.vars_.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    // Rebuilds the polynomial over the given (unsorted ok) variable list,
    // which must contain all current variables.
    MultiPoly reindexed(std::vector<std::string> new_vars) const {
        std::sort(new_vars.begin(), new_vars.end());
        new_vars.erase(std::unique(new_vars.begin(), new_vars.end()), new_vars.end());
        std::vector<std::size_t> pos(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::lower_bound(new_vars.begin(), new_vars.end(), vars_[i]);
            if (it == new_vars.end()) throw ValidationError("reindex drops a live variable");
            pos[i] = static_cast<std::size_t>(it - new_vars.begin());
        }
        MultiPoly r;
        r.vars_ = std::move(new_vars);
        for (const auto& [e, c] : terms_) {
            ExpVec ne(r.vars_.size(), 0);
            for (std::size_t i = 0; i < vars_.size(); ++i) ne[pos[i]] = e[i];
            r.terms_.emplace(std::move(ne), c);
        }
        r.normalize();
        return r;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["vars"] = vars_;
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [e, c] : terms_) {
            nlohmann::json t;
            t["coef"] = detail::CoeffOps<C>::str(c);
            t["exp"] = e;
            terms.push_back(std::move(t));
        }
        j["terms"] = std::move(terms);
        return j;
    }

    static MultiPoly from_json(const nlohmann::json& j) {
        MultiPoly p;
        std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
        MultiPoly acc;
        for (const auto& t : j.at("terms")) {
            C c = detail::CoeffOps<C>::parse(t.at("coef").get<std::string>());
            ExpVec e = t.at("exp").get<ExpVec>();
            if (e.size() != vars.size()) throw ValidationError("exponent vector length mismatch");
            std::vector<std::pair<std::string, unsigned>> m;
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (e[i] > 0) m.emplace_back(vars[i], e[i]);
            acc = acc + monomial(c, m);
        }
        return acc;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            C ac = c < 0 ? C(-c) : c;
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            bool has_vars = std::accumulate(e.begin(), e.end(), 0ul) > 0;
            bool coef_shown = !(ac == 1 && has_vars);
            if (coef_shown) os << detail::CoeffOps<C>::str(ac);
            bool first_var = true;
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (e[i] == 0) continue;
                if (!first_var || coef_shown) os << "*";
                os << vars_[i];
                if (e[i] > 1) os << "^" << e[i];
                first_var = false;
            }
        }
        return os.str();
    }

private:
    std::size_t var_index_checked(const std::string& v) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
        if (it == vars_.end() || *it != v) throw UnknownVariable("unknown variable " + v);
        return static_cast<std::size_t>(it - vars_.begin());
    }

    // Removes zero coefficients and variables that no longer occur.
    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second == 0)
                it = terms_.erase(it);
            else
                ++it;
        }
        std::vector<bool> used(vars_.size(), false);
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (e[i] > 0) used[i] = true;
        if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
        std::vector<std::string> nv;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) {
                nv.push_back(vars_[i]);
                keep.push_back(i);
            }
        TermMap nt;
        for (const auto& [e, c] : terms_) {
            ExpVec ne(keep.size());
            for (std::size_t i = 0; i < keep.size(); ++i) ne[i] = e[keep[i]];
            nt.emplace(std::move(ne), c);
        }
        vars_ = std::move(nv);
        terms_ = std::move(nt);
    }

    // Re-expresses both polynomials over the union of their variables.
    static std::tuple<TermMap, TermMap, std::vector<std::string>> aligned(const MultiPoly& a,
                                                                          const MultiPoly& b) {
        std::vector<std::string> vars;
        std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                       std::back_inserter(vars));
        auto remap = [&vars](const MultiPoly& p) {
            TermMap out;
            std::vector<std::size_t> pos(p.vars_.size());
            for (std::size_t i = 0; i < p.vars_.size(); ++i)
                pos[i] = static_cast<std::size_t>(
                    std::lower_bound(vars.begin(), vars.end(), p.vars_[i]) - vars.begin());
            for (const auto& [e, c] : p.terms_) {
                ExpVec ne(vars.size(), 0);
                for (std::size_t i = 0; i < p.vars_.size(); ++i) ne[pos[i]] = e[i];
                out.emplace(std::move(ne), c);
            }
            return out;
        };
        return {remap(a), remap(b), vars};
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

using PolyZ = MultiPoly<Integer>;
using PolyQ = MultiPoly<Rational>;

inline PolyQ to_rational(const PolyZ& p) {
    PolyQ r;
    for (const auto& [e, c] : p.terms()) {
        std::vector<std::pair<std::string, unsigned>> m;
        for (std::size_t i = 0; i < p.vars().size(); ++i)
            if (e[i] > 0) m.emplace_back(p.vars()[i], e[i]);
        r = r + PolyQ::monomial(Rational(c), m);
    }
    return r;
}

// partial() is strict about unknown variables; internal callers often want
// "zero if the variable is absent".
template <class C>
MultiPoly<C> partial_or_zero(const MultiPoly<C>& p, const std::string& v) {
    return p.has_var(v) ? p.partial(v) : MultiPoly<C>();
}

template <class C>
MultiPoly<C> subst_or_same(const MultiPoly<C>& p, const std::string& v, const MultiPoly<C>& q) {
    return p.has_var(v) ? p.subst(v, q) : p;
}

// Homogenize each variable group to its maximal group degree with a fresh
// variable. Setting every homogenizing variable to 1 recovers the input.
template <class C>
MultiPoly<C> bihomogenize(const MultiPoly<C>& p,
                          const std::vector<std::pair<std::vector<std::string>, std::string>>& groups) {
    std::vector<std::string> seen;
    for (const auto& [gvars, hv] : groups) {
        for (const auto& v : gvars) {
            if (std::find(seen.begin(), seen.end(), v) != seen.end())
                throw OverlappingGroups("variable " + v + " appears in two groups");
            seen.push_back(v);
        }
        if (p.has_var(hv) || std::find(seen.begin(), seen.end(), hv) != seen.end())
            throw ValidationError("homogenizing variable " + hv + " is not fresh");
        seen.push_back(hv);
    }
    for (const auto& v : p.vars())
        if (std::find(seen.begin(), seen.end(), v) == seen.end())
            throw ValidationError("variable " + v + " not covered by any group");

    // Which group does each of p's variables belong to?
    std::vector<std::size_t> group_of(p.vars().size());
    for (std::size_t i = 0; i < p.vars().size(); ++i)
        for (std::size_t g = 0; g < groups.size(); ++g)
            if (std::find(groups[g].first.begin(), groups[g].first.end(), p.vars()[i]) !=
                groups[g].first.end())
                group_of[i] = g;

    auto term_group_degrees = [&](const typename MultiPoly<C>::ExpVec& e) {
        std::vector<long> d(groups.size(), 0);
        for (std::size_t i = 0; i < p.vars().size(); ++i) d[group_of[i]] += e[i];
        return d;
    };
    std::vector<long> gdeg(groups.size(), 0);
    for (const auto& [e, c] : p.terms()) {
        auto d = term_group_degrees(e);
        for (std::size_t g = 0; g < groups.size(); ++g) gdeg[g] = std::max(gdeg[g], d[g]);
    }

    MultiPoly<C> result;
    for (const auto& [e, c] : p.terms()) {
        std::vector<std::pair<std::string, unsigned>> m;
        for (std::size_t i = 0; i < p.vars().size(); ++i)
            if (e[i] > 0) m.emplace_back(p.vars()[i], e[i]);
        auto d = term_group_degrees(e);
        for (std::size_t g = 0; g < groups.size(); ++g)
            if (gdeg[g] - d[g] > 0)
                m.emplace_back(groups[g].second, static_cast<unsigned>(gdeg[g] - d[g]));
        result = result + MultiPoly<C>::monomial(c, m);
    }
    return result;
}

template <class C>
MultiPoly<C> dehomogenize(const MultiPoly<C>& p, const std::vector<std::string>& homog_vars) {
    MultiPoly<C> r = p;
    for (const auto& v : homog_vars) r = subst_or_same(r, v, MultiPoly<C>::constant(C(1)));
    return r;
}

// Uniform group-degree scan: every term has the same summed exponent within
// each group.
template <class C>
bool is_homogeneous_in(const MultiPoly<C>& p, const std::vector<std::string>& group_vars) {
    std::optional<long> deg;
    for (const auto& [e, c] : p.terms()) {
        long d = 0;
        for (std::size_t i = 0; i < p.vars().size(); ++i)
            if (std::find(group_vars.begin(), group_vars.end(), p.vars()[i]) != group_vars.end())
                d += e[i];
        if (!deg)
            deg = d;
        else if (*deg != d)
            return false;
    }
    return true;
}

template <class C>
long group_degree(const MultiPoly<C>& p, const std::vector<std::string>& group_vars) {
    long dg = 0;
    for (const auto& [e, c] : p.terms()) {
        long d = 0;
        for (std::size_t i = 0; i < p.vars().size(); ++i)
            if (std::find(group_vars.begin(), group_vars.end(), p.vars()[i]) != group_vars.end())
                d += e[i];
        dg = std::max(dg, d);
    }
    return dg;
}

}  // namespace charvar
