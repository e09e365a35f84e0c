// charvar: exact models and invariants of the SL2(C) character varieties of
// the two-component double twist links J(k, l).

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "charvar/cli.hpp"

namespace {

struct Options {
    charvar::CommandRequest req;
};

void add_param_flag(CLI::App* cmd, charvar::CommandRequest& req, const std::string& name,
                    const std::string& desc, bool required = false) {
    auto opt = cmd->add_option_function<std::string>(
        "--" + name, [&req, name](const std::string& v) { req.params[name] = v; }, desc);
    if (required) opt->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Character-variety models of the two-component double twist links J(k,l):\n"
        "defining polynomials, genus/gonality tables, singular-point certificates,\n"
        "degenerate fibers, blow-up counts, and randomized identity checks."};
    app.require_subcommand(1);
    app.fallthrough();

    charvar::CommandRequest req;
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent the JSON output");

    struct Sub {
        const char* name;
        const char* help;
        std::vector<std::pair<const char*, bool>> params;  // (name, required)
    };
    const std::vector<Sub> subs = {
        {"phi", "defining polynomial phi(x,y,z) of X(k,l) and its factors",
         {{"k", true}, {"l", true}}},
        {"curve", "curve polynomial C(k,l) in (t,z)", {{"k", true}, {"l", true}}},
        {"split", "diagonal splitting of C(l,l) into t-z and its complement", {{"l", true}}},
        {"invariants", "bidegree, genus, gonality, degree of irrationality",
         {{"k", true}, {"l", true}}},
        {"roots", "closed-form root families of the Chebyshev factors",
         {{"kind", false}, {"m", true}, {"tol", false}}},
        {"singular", "certified singular points of the J(3,2m+1) surface model",
         {{"m", true}, {"tol", false}}},
        {"fibers", "degenerate fibers of the conic bundle over P^1", {{"m", true}}},
        {"blowup", "Euler characteristic and blow-up counts", {{"m", true}}},
        {"smooth", "numeric smoothness spot checks for C(k,l)",
         {{"k", true}, {"l", true}, {"tol", false}}},
        {"oracle", "Schwartz-Zippel identity testing over a large prime field",
         {{"claim", false}, {"k", false}, {"l", false}, {"m", false}, {"word", false},
          {"trials", false}, {"seed", false}, {"prime", false}}},
        {"verify", "run the verification suites (all acceptance criteria)",
         {{"suite", false}, {"jmax", false}, {"max-kl", false}, {"seed", false},
          {"trials", false}, {"tol", false}, {"prime", false}}},
        {"sweep", "invariant reports over a (k,l) grid",
         {{"kmin", true}, {"kmax", true}, {"lmin", true}, {"lmax", true}}},
    };
    for (const auto& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        for (const auto& [pname, required] : sub.params) add_param_flag(cmd, req, pname, "", required);
        cmd->callback([&req, name = std::string(sub.name)]() { req.command = name; });
    }

    CLI11_PARSE(app, argc, argv);
    req.pretty = pretty;

    charvar::CliOutcome out = charvar::run_request(req);
    if (!out.doc.is_null()) std::cout << out.doc.dump(req.pretty ? 2 : -1) << "\n";
    if (out.exit_code != 0 && !out.diagnostic.empty()) std::cerr << out.diagnostic << "\n";
    return out.exit_code;
}
