#include "charvar/cli.hpp"

#include <catch_amalgamated.hpp>

using namespace charvar;

namespace {

CommandRequest make_req(const std::string& cmd,
                        std::map<std::string, std::string> params = {}) {
    CommandRequest r;
    r.command = cmd;
    r.params = std::move(params);
    return r;
}

// Minimal schema checks per command.
void check_poly_schema(const json& j) {
    REQUIRE(j.contains("vars"));
    REQUIRE(j.contains("terms"));
    REQUIRE(j["vars"].is_array());
    for (const auto& t : j["terms"]) {
        REQUIRE(t.contains("coef"));
        REQUIRE(t["coef"].is_string());
        REQUIRE(t["exp"].is_array());
        REQUIRE(t["exp"].size() == j["vars"].size());
    }
}

}  // namespace

TEST_CASE("phi command") {
    CliOutcome out = run_request(make_req("phi", {{"k", "3"}, {"l", "3"}}));
    REQUIRE(out.exit_code == 0);
    check_poly_schema(out.doc["phi"]);
    check_poly_schema(out.doc["reducible"]);
    check_poly_schema(out.doc["natural_model"]);
    PolyZ phi = PolyZ::from_json(out.doc["phi"]);
    CHECK(phi == reducible_poly() * natural_model(3, 3));
}

TEST_CASE("curve and split commands") {
    CliOutcome curve = run_request(make_req("curve", {{"k", "5"}, {"l", "5"}}));
    REQUIRE(curve.exit_code == 0);
    CHECK(PolyZ::from_json(curve.doc["curve"]) == curve_poly(5, 5));

    CliOutcome split = run_request(make_req("split", {{"l", "5"}}));
    REQUIRE(split.exit_code == 0);
    PolyZ t = PolyZ::variable("t"), z = PolyZ::variable("z");
    CHECK(PolyZ::from_json(split.doc["c0"]) == t - z);
    CHECK(PolyZ::from_json(split.doc["c1"]) == t * z + PolyZ::constant(Integer(1)));

    CliOutcome split3 = run_request(make_req("split", {{"l", "3"}}));
    CHECK(split3.doc["c1"].is_null());
}

TEST_CASE("invariants command and exit codes") {
    CliOutcome ok = run_request(make_req("invariants", {{"k", "5"}, {"l", "7"}}));
    REQUIRE(ok.exit_code == 0);
    CHECK(ok.doc["components"][0]["genus"] == 2);
    CHECK(ok.doc["deg_irrationality"] == 2);

    CHECK(run_request(make_req("invariants", {{"k", "1"}, {"l", "5"}})).exit_code == 2);
    CHECK(run_request(make_req("invariants", {{"k", "4"}, {"l", "5"}})).exit_code == 2);
    CHECK(run_request(make_req("invariants", {{"k", "5"}})).exit_code == 2);
    CHECK(run_request(make_req("nonsense")).exit_code == 2);
    CHECK(run_request(make_req("invariants", {{"k", "abc"}, {"l", "5"}})).exit_code == 2);
}

TEST_CASE("geometry commands") {
    CliOutcome sing = run_request(make_req("singular", {{"m", "1"}}));
    REQUIRE(sing.exit_code == 0);
    CHECK(sing.doc["count"] == 4);
    CHECK(sing.doc["numeric_crosscheck_count"] == 4);
    for (const auto& fam : sing.doc["families"]) {
        REQUIRE(fam.contains("tag"));
        REQUIRE(fam.contains("points"));
        if (!fam["at_infinity"].get<bool>()) {
            check_poly_schema(fam["modulus"]);
            for (const auto& r : fam["roots"]) {
                REQUIRE(r.contains("value"));
                REQUIRE(r.contains("angle_num"));
                REQUIRE(r.contains("angle_den"));
            }
        }
    }

    CliOutcome fib = run_request(make_req("fibers", {{"m", "2"}}));
    REQUIRE(fib.exit_code == 0);
    CHECK(fib.doc["classes"].size() == 5);

    CliOutcome blow = run_request(make_req("blowup", {{"m", "1"}}));
    REQUIRE(blow.exit_code == 0);
    CHECK(blow.doc["N"] == 9);
    CHECK(blow.doc["N_p2"] == 10);

    CliOutcome smooth = run_request(make_req("smooth", {{"k", "5"}, {"l", "7"}}));
    REQUIRE(smooth.exit_code == 0);
    CHECK(smooth.doc["min_gap"].get<double>() > 1e-7);

    CHECK(run_request(make_req("singular", {{"m", "0"}})).exit_code == 2);
    CHECK(run_request(make_req("blowup", {{"m", "-1"}})).exit_code == 2);
}

TEST_CASE("oracle command") {
    CliOutcome ok = run_request(make_req(
        "oracle", {{"claim", "phi"}, {"k", "3"}, {"l", "5"}, {"trials", "50"}, {"seed", "42"}}));
    REQUIRE(ok.exit_code == 0);
    CHECK(ok.doc["passed"] == true);
    CHECK(ok.doc["trials"] == 50);
    CHECK(ok.doc["prime"] == "2305843009213693951");

    // determinism: identical (seed, p, trials) yields identical reports
    CliOutcome again = run_request(make_req(
        "oracle", {{"claim", "phi"}, {"k", "3"}, {"l", "5"}, {"trials", "50"}, {"seed", "42"}}));
    CHECK(ok.doc == again.doc);

    CliOutcome tr = run_request(
        make_req("oracle", {{"claim", "trace"}, {"word", "abAB"}, {"trials", "25"}}));
    CHECK(tr.exit_code == 0);

    // the documented fault-injection demo is refuted: exit code 3
    CliOutcome fault = run_request(make_req("oracle", {{"claim", "faulted_kappa"}}));
    CHECK(fault.exit_code == 3);
    CHECK(fault.doc["passed"] == false);
    CHECK(fault.doc.contains("witness"));

    CHECK(run_request(make_req("oracle", {{"claim", "wat"}})).exit_code == 2);
    CHECK(run_request(make_req("oracle", {{"claim", "phi"},
                                          {"k", "3"},
                                          {"l", "5"},
                                          {"prime", "91"}}))
              .exit_code == 2);  // composite modulus rejected
}

TEST_CASE("roots command emits the RootFamily schema") {
    CliOutcome out = run_request(make_req("roots", {{"kind", "SminusRoots"}, {"m", "1"}}));
    REQUIRE(out.exit_code == 0);
    CHECK(out.doc["kind"] == "SminusRoots");
    CHECK(out.doc["m"] == 1);
    REQUIRE(out.doc["roots"].size() == 1);
    CHECK(out.doc["roots"][0]["value"].get<double>() == Catch::Approx(1.0));
    CHECK(out.doc["roots"][0]["angle_num"] == 1);
    CHECK(out.doc["roots"][0]["angle_den"] == 3);

    CHECK(run_request(make_req("roots", {{"kind", "Sroots"}, {"m", "1"}})).exit_code == 2);
    CHECK(run_request(make_req("roots", {{"kind", "bogus"}, {"m", "2"}})).exit_code == 2);
}

TEST_CASE("CHARVAR_PRIME overrides the oracle modulus") {
    setenv("CHARVAR_PRIME", "1000003", 1);
    CliOutcome out = run_request(
        make_req("oracle", {{"claim", "trace"}, {"word", "ab"}, {"trials", "10"}}));
    CHECK(out.exit_code == 0);
    CHECK(out.doc["prime"] == "1000003");

    setenv("CHARVAR_PRIME", "1000000", 1);  // composite: rejected
    CHECK(run_request(make_req("oracle", {{"claim", "trace"}, {"word", "ab"}})).exit_code == 2);

    // explicit --prime wins over the environment
    setenv("CHARVAR_PRIME", "1000000", 1);
    CliOutcome expl = run_request(make_req(
        "oracle", {{"claim", "trace"}, {"word", "ab"}, {"trials", "5"}, {"prime", "10007"}}));
    CHECK(expl.exit_code == 0);
    CHECK(expl.doc["prime"] == "10007");
    unsetenv("CHARVAR_PRIME");
}

TEST_CASE("verify command, single fast suite") {
    CliOutcome out =
        run_request(make_req("verify", {{"suite", "cheb_identities"}, {"jmax", "8"}}));
    REQUIRE(out.exit_code == 0);
    CHECK(out.doc["all_passed"] == true);
    REQUIRE(out.doc["suites"].size() == 1);
    CHECK(out.doc["suites"][0]["suite"] == "cheb_identities");

    CHECK(run_request(make_req("verify", {{"suite", "no_such_suite"}})).exit_code == 2);
}

TEST_CASE("sweep command") {
    CliOutcome out = run_request(
        make_req("sweep", {{"kmin", "3"}, {"kmax", "9"}, {"lmin", "3"}, {"lmax", "9"}}));
    REQUIRE(out.exit_code == 0);
    CHECK(out.doc["summary"]["total"] == 16);
    CHECK(out.doc["summary"]["ok"] == 16);
    for (const auto& cell : out.doc["cells"]) {
        long k = cell["k"].get<long>(), l = cell["l"].get<long>();
        long a = std::labs(k) / 2, b = std::labs(l) / 2;
        if (k != l) CHECK(cell["report"]["components"][0]["genus"] == (a - 1) * (b - 1));
        if (k == l && std::labs(l) > 3) CHECK(cell["report"]["components"].size() == 2);
        if (k == l && std::labs(l) == 3) CHECK(cell["report"]["components"].size() == 1);
    }

    CliOutcome with_torus = run_request(
        make_req("sweep", {{"kmin", "1"}, {"kmax", "3"}, {"lmin", "3"}, {"lmax", "5"}}));
    long nonhyp = 0;
    for (const auto& cell : with_torus.doc["cells"])
        if (cell["status"] == "NonHyperbolic") ++nonhyp;
    CHECK(nonhyp == 2);  // the k=1 row

    CHECK(run_request(make_req("sweep", {{"kmin", "3"}, {"kmax", "101"}, {"lmin", "3"},
                                         {"lmax", "5"}}))
              .exit_code == 2);
    CHECK(run_request(make_req("sweep", {{"kmin", "5"}, {"kmax", "3"}, {"lmin", "3"},
                                         {"lmax", "5"}}))
              .exit_code == 2);
}
