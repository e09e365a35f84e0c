#pragma once

#include <cstdlib>
#include <future>
#include <map>
#include <string>

#include "charvar/verify.hpp"
#include "json.hpp"

namespace charvar {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON views of the report types.

inline json roots_to_json(const std::vector<ChebRoot>& roots) {
    json arr = json::array();
    for (const auto& r : roots) {
        json j{{"value", r.value.real()}, {"angle_num", r.angle_num}, {"angle_den", r.angle_den}};
        if (std::abs(r.value.imag()) > 0) j["imag"] = r.value.imag();
        arr.push_back(std::move(j));
    }
    return arr;
}

inline json root_family_to_json(const RootFamily& fam) {
    return json{{"kind", root_kind_name(fam.kind)},
                {"m", fam.m},
                {"roots", roots_to_json(fam.roots)}};
}

inline json to_json(const LinkParams& p) {
    return json{{"k", p.k}, {"l", p.l}, {"m", p.m}, {"n", p.n}, {"hyperbolic", p.hyperbolic}};
}

inline json to_json(const InvariantReport& r) {
    json comps = json::array();
    for (const auto& c : r.components)
        comps.push_back(json{{"label", c.label},
                             {"bidegree", {c.bidegree_t, c.bidegree_z}},
                             {"genus", c.genus},
                             {"gonality", c.gonality}});
    return json{{"params", to_json(r.params)},
                {"bidegree", {r.a, r.b}},
                {"components", comps},
                {"deg_irrationality", r.deg_irrationality}};
}

inline json to_json(const SingularSet& s) {
    json fams = json::array();
    for (const auto& f : s.families) {
        json jf{{"tag", f.tag},
                {"xyu_points", f.xyu_points},
                {"at_infinity", f.at_infinity},
                {"points", f.point_count}};
        if (!f.at_infinity) {
            jf["modulus"] = f.modulus.to_json();
            jf["roots"] = roots_to_json(f.approx);
        }
        fams.push_back(std::move(jf));
    }
    return json{{"m", s.m}, {"count", s.count}, {"families", fams}};
}

inline json to_json(const FiberReport& r) {
    json classes = json::array();
    for (const auto& c : r.classes) {
        json jc{{"label", c.label},
                {"fiber_type", c.fiber_type},
                {"at_infinity", c.at_infinity},
                {"base_count", c.base_count},
                {"fiber_poly", c.fiber_poly.to_json()}};
        if (c.base_count > 0) {
            if (!c.at_infinity) jc["modulus"] = c.modulus.to_json();
            jc["unit"] = c.unit.to_json();
        }
        classes.push_back(std::move(jc));
    }
    return json{{"m", r.m}, {"classes", classes}};
}

inline json to_json(const BlowupReport& r) {
    return json{{"m", r.m},
                {"chi", r.chi},
                {"n_sing", r.n_sing},
                {"N", r.N},
                {"N_p2", r.N_p2}};
}

inline json to_json(const SmoothnessReport& r) {
    auto cplx_list = [](const std::vector<std::complex<double>>& v) {
        json arr = json::array();
        for (const auto& c : v) arr.push_back(json{{"re", c.real()}, {"im", c.imag()}});
        return arr;
    };
    json mn = json::array();
    for (const auto& c : r.mn_checks)
        mn.push_back(json{{"j", c.j}, {"magnitudes", c.magnitudes}, {"pass", c.pass}});
    json j{{"params", to_json(r.params)},
           {"tol", r.tol},
           {"critical_values_k", cplx_list(r.critical_values_k)},
           {"critical_values_l", cplx_list(r.critical_values_l)},
           {"mn_checks", mn},
           {"c1_checked", r.c1_checked}};
    if (r.disjoint_checked) j["min_gap"] = r.min_gap;
    if (r.c1_checked) j["c1_min_residual"] = r.c1_min_residual;
    return j;
}

inline json to_json(const PitReport& r) {
    return json{{"claim", r.claim},
                {"trials", r.trials},
                {"prime", r.prime},
                {"seed", r.seed},
                {"passed", r.passed},
                {"poly_degree", r.poly_degree},
                {"per_trial_false_accept_bound", "deg/p"}};
}

inline json to_json(const std::vector<SuiteResult>& rs) {
    json arr = json::array();
    bool all = true;
    for (const auto& r : rs) {
        arr.push_back(json{{"suite", r.name},
                           {"passed", r.passed},
                           {"detail", r.detail},
                           {"millis", r.millis}});
        all = all && r.passed;
    }
    return json{{"suites", arr}, {"all_passed", all}};
}

// ---------------------------------------------------------------------------
// Command dispatch.

struct CommandRequest {
    std::string command;
    std::map<std::string, std::string> params;
    bool pretty = false;
};

namespace detail {

inline long param_long(const CommandRequest& req, const std::string& name) {
    auto it = req.params.find(name);
    if (it == req.params.end())
        throw ValidationError("command '" + req.command + "' requires --" + name);
    try {
        std::size_t pos = 0;
        long v = std::stol(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("parameter --" + name + " is not an integer: " + it->second);
    }
}

inline long param_long_or(const CommandRequest& req, const std::string& name, long fallback) {
    return req.params.count(name) ? param_long(req, name) : fallback;
}

inline double param_double_or(const CommandRequest& req, const std::string& name, double fb) {
    auto it = req.params.find(name);
    if (it == req.params.end()) return fb;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw ValidationError("parameter --" + name + " is not a number: " + it->second);
    }
}

inline std::string param_str_or(const CommandRequest& req, const std::string& name,
                                const std::string& fb) {
    auto it = req.params.find(name);
    return it == req.params.end() ? fb : it->second;
}

// Default oracle modulus, overridable through CHARVAR_PRIME.
inline Integer oracle_prime(const CommandRequest& req) {
    std::string text;
    if (auto it = req.params.find("prime"); it != req.params.end()) {
        text = it->second;
    } else if (const char* env = std::getenv("CHARVAR_PRIME"); env && *env) {
        text = env;
    } else {
        return default_oracle_prime();
    }
    Integer p;
    try {
        p = Integer(text);
    } catch (const std::exception&) {
        throw ValidationError("prime '" + text + "' is not an integer");
    }
    if (p <= 5 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw ValidationError("oracle modulus must be a prime > 5");
    return p;
}

}  // namespace detail

inline json dispatch(const CommandRequest& req) {
    using detail::param_double_or;
    using detail::param_long;
    using detail::param_long_or;
    using detail::param_str_or;

    if (req.command == "phi") {
        long k = param_long(req, "k"), l = param_long(req, "l");
        PolyZ model = natural_model(k, l);
        PolyZ kappa = reducible_poly();
        return json{{"command", "phi"},
                    {"k", k},
                    {"l", l},
                    {"phi", (kappa * model).to_json()},
                    {"reducible", kappa.to_json()},
                    {"natural_model", model.to_json()}};
    }
    if (req.command == "curve") {
        long k = param_long(req, "k"), l = param_long(req, "l");
        return json{{"command", "curve"}, {"k", k}, {"l", l}, {"curve", curve_poly(k, l).to_json()}};
    }
    if (req.command == "split") {
        long l = param_long(req, "l");
        auto [c0, c1] = diagonal_split(l);
        json j{{"command", "split"}, {"l", l}, {"c0", c0.to_json()}};
        j["c1"] = c1 ? c1->to_json() : json(nullptr);
        return j;
    }
    if (req.command == "roots") {
        std::string kind_name = param_str_or(req, "kind", "Sroots");
        RootKind kind;
        if (kind_name == "Sroots") kind = RootKind::Sroots;
        else if (kind_name == "SminusRoots") kind = RootKind::SminusRoots;
        else if (kind_name == "SplusRoots") kind = RootKind::SplusRoots;
        else if (kind_name == "DeltaRoots") kind = RootKind::DeltaRoots;
        else throw ValidationError("unknown root family kind '" + kind_name + "'");
        json j = root_family_to_json(
            cheb_roots(kind, param_long(req, "m"), param_double_or(req, "tol", 1e-9)));
        j["command"] = "roots";
        return j;
    }
    if (req.command == "invariants") {
        long k = param_long(req, "k"), l = param_long(req, "l");
        json j = to_json(invariants(k, l));
        j["command"] = "invariants";
        return j;
    }
    if (req.command == "singular") {
        long m = param_long(req, "m");
        json j = to_json(singular_points(m));
        if (std::abs(m) <= 3)
            j["numeric_crosscheck_count"] =
                singular_search_crosscheck(m, param_double_or(req, "tol", 1e-7));
        j["command"] = "singular";
        return j;
    }
    if (req.command == "fibers") {
        long m = param_long(req, "m");
        json j = to_json(degenerate_fibers(m));
        j["command"] = "fibers";
        return j;
    }
    if (req.command == "blowup") {
        long m = param_long(req, "m");
        json j = to_json(euler_blowup(m));
        j["command"] = "blowup";
        return j;
    }
    if (req.command == "smooth") {
        long k = param_long(req, "k"), l = param_long(req, "l");
        json j = to_json(smoothness_check(k, l, param_double_or(req, "tol", 1e-7)));
        j["command"] = "smooth";
        return j;
    }
    if (req.command == "oracle") {
        std::string claim = param_str_or(req, "claim", "phi");
        int trials = static_cast<int>(param_long_or(req, "trials", 50));
        std::uint64_t seed = static_cast<std::uint64_t>(param_long_or(req, "seed", 0));
        Integer p = detail::oracle_prime(req);
        Claim c{Claim::Kind::Phi, Word(), 0, 0, 0};
        if (claim == "phi") {
            c = {Claim::Kind::Phi, Word(), param_long(req, "k"), param_long(req, "l"), 0};
        } else if (claim == "model_product") {
            c = {Claim::Kind::ModelProduct, Word(), param_long(req, "k"), param_long(req, "l"), 0};
        } else if (claim == "t_is_Pwk") {
            c = {Claim::Kind::TIsPwk, Word(), 0, 0, param_long(req, "m")};
        } else if (claim == "trace" || claim == "trace_poly_of") {
            c = {Claim::Kind::TracePolyOfWord, Word::parse(param_str_or(req, "word", "ab")), 0, 0,
                 0};
        } else if (claim == "faulted_kappa") {
            // Fault-injection demo: a wrong sign in the reducible polynomial
            // must be refuted (exit code 3).
            PolyZ x = PolyZ::variable("x"), y = PolyZ::variable("y"), z = PolyZ::variable("z");
            PolyZ faulted =
                x * y * z + PolyZ::constant(Integer(4)) - x * x - y * y + z * z;
            LinkWords lw = LinkWords::make(1, 1);
            Word rab = lw.r * Word::parse("ab"), bar = Word::parse("ba") * lw.r;
            json j = to_json(pit_check_poly(
                "faulted_kappa", faulted * natural_model(3, 3),
                [&](const RepSample& s) {
                    return word_trace_matrix(rab, s) - word_trace_matrix(bar, s);
                },
                trials, p, seed));
            j["command"] = "oracle";
            return j;
        } else {
            throw ValidationError("unknown oracle claim '" + claim + "'");
        }
        json j = to_json(pit_check(c, trials, p, seed));
        j["command"] = "oracle";
        return j;
    }
    if (req.command == "verify") {
        VerifyOptions opt;
        opt.suite = param_str_or(req, "suite", "all");
        opt.jmax = param_long_or(req, "jmax", 30);
        opt.max_kl = param_long_or(req, "max-kl", 9);
        opt.seed = static_cast<std::uint64_t>(param_long_or(req, "seed", 0));
        opt.trials = static_cast<int>(param_long_or(req, "trials", 50));
        opt.tol = param_double_or(req, "tol", 1e-7);
        opt.prime = detail::oracle_prime(req);
        json j = to_json(run_verify(opt));
        j["command"] = "verify";
        return j;
    }
    if (req.command == "sweep") {
        long kmin = param_long(req, "kmin"), kmax = param_long(req, "kmax");
        long lmin = param_long(req, "lmin"), lmax = param_long(req, "lmax");
        for (long b : {kmin, kmax, lmin, lmax})
            if (std::abs(b) > 99) throw ValidationError("sweep bounds limited to |k|,|l| <= 99");
        if (kmin > kmax || lmin > lmax) throw ValidationError("sweep bounds are inverted");
        std::vector<std::pair<long, long>> grid;
        for (long k = kmin; k <= kmax; ++k) {
            if ((k % 2) == 0) continue;
            for (long l = lmin; l <= lmax; ++l)
                if ((l % 2) != 0) grid.emplace_back(k, l);
        }
        // Cells are independent; compute them concurrently, assemble in grid order.
        std::vector<std::future<json>> futures;
        futures.reserve(grid.size());
        for (auto [k, l] : grid)
            futures.push_back(std::async(std::launch::async, [k = k, l = l]() {
                json cell{{"k", k}, {"l", l}};
                try {
                    cell["status"] = "ok";
                    cell["report"] = to_json(invariants(k, l));
                } catch (const NonHyperbolic&) {
                    cell["status"] = "NonHyperbolic";
                }
                return cell;
            }));
        json cells = json::array();
        long ok = 0, nonhyp = 0;
        for (auto& f : futures) {
            json cell = f.get();
            (cell["status"] == "ok" ? ok : nonhyp) += 1;
            cells.push_back(std::move(cell));
        }
        return json{{"command", "sweep"},
                    {"cells", cells},
                    {"summary",
                     {{"total", ok + nonhyp}, {"ok", ok}, {"non_hyperbolic", nonhyp}}}};
    }
    throw ValidationError("unknown command '" + req.command + "'");
}

// Convenience wrapper: runs a request and maps exceptions to the exit-code
// contract (0 success, 2 validation, 3 refuted identity / failed certificate).
struct CliOutcome {
    json doc;
    int exit_code = 0;
    std::string diagnostic;
};

inline CliOutcome run_request(const CommandRequest& req) {
    CliOutcome out;
    try {
        out.doc = dispatch(req);
        out.exit_code = 0;
        if (req.command == "verify" && !out.doc.value("all_passed", true)) {
            out.exit_code = 3;
            out.diagnostic = "one or more verify suites failed";
        }
    } catch (const ValidationError& e) {
        out.exit_code = 2;
        out.diagnostic = e.what();
    } catch (const IdentityRefuted& e) {
        out.exit_code = 3;
        out.diagnostic = e.what();
        out.doc = json{{"command", req.command},
                       {"claim", e.claim},
                       {"passed", false},
                       {"witness", e.witness}};
    } catch (const VerificationFailure& e) {
        out.exit_code = 3;
        out.diagnostic = e.what();
        out.doc = json{{"command", req.command}, {"error", e.what()}, {"passed", false}};
    } catch (const Error& e) {
        out.exit_code = 1;
        out.diagnostic = e.what();
    }
    return out;
}

}  // namespace charvar
