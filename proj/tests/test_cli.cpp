#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

// Integration tests against the built command-line binary.

namespace {

const std::string k_cli = QPROB_CLI_PATH;
const std::string k_root = QPROB_SOURCE_DIR;

struct RunResult {
    int exit_code = -1;
    std::string output;  // file written via --out, when requested
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args, const std::string& out_file = "") {
    RunResult r;
    // pin the default tolerance environment so goldens stay byte-stable
    std::string cmd = "env -u QPROB_TOLERANCE_SCALE " + k_cli + " " + args;
    if (!out_file.empty()) cmd += " --out " + out_file;
    cmd += " > /dev/null 2> /dev/null";
    const int status = std::system(cmd.c_str());
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (!out_file.empty() && r.exit_code == 0) r.output = slurp(out_file);
    return r;
}

}  // namespace

TEST_CASE("identical config produces byte-identical output") {
    const std::string cfg = k_root + "/configs/grid1d_gaussian.json";
    const auto a = run_cli("grid --config " + cfg + " --seed 7", "/tmp/qprob_cli_a.json");
    const auto b = run_cli("grid --config " + cfg + " --seed 7", "/tmp/qprob_cli_b.json");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.output == b.output);

    const std::string ev = k_root + "/configs/evolve_rabi.json";
    const auto c = run_cli("evolve --config " + ev, "/tmp/qprob_cli_c.csv");
    const auto d = run_cli("evolve --config " + ev, "/tmp/qprob_cli_d.csv");
    REQUIRE(c.exit_code == 0);
    CHECK(c.output == d.output);

    const std::string nc = k_root + "/configs/noncomm_gaussian.json";
    const auto e = run_cli("noncomm --config " + nc, "/tmp/qprob_cli_e.json");
    const auto f = run_cli("noncomm --config " + nc, "/tmp/qprob_cli_f.json");
    REQUIRE(e.exit_code == 0);
    CHECK(e.output == f.output);
}

TEST_CASE("pinned golden outputs") {
    const auto json_run = run_cli("discrete --config " + k_root + "/configs/discrete_exact.json",
                                  "/tmp/qprob_golden.json");
    REQUIRE(json_run.exit_code == 0);
    CHECK(json_run.output == slurp(k_root + "/tests/golden/discrete_exact.json"));

    const auto csv_run = run_cli("evolve --config " + k_root + "/configs/evolve_flat.json",
                                 "/tmp/qprob_golden.csv");
    REQUIRE(csv_run.exit_code == 0);
    CHECK(csv_run.output == slurp(k_root + "/tests/golden/evolve_flat.csv"));
}

TEST_CASE("emitted reports re-parse under the documented schema") {
    const auto r = run_cli("discrete --config " + k_root + "/configs/discrete_oscillator.json",
                           "/tmp/qprob_schema.json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("tool") == "qprob");
    CHECK(doc.at("version").is_string());
    CHECK(doc.at("config_hash").get<std::string>().starts_with("fnv1a64:"));
    CHECK(doc.at("kind") == "discrete");
    REQUIRE(doc.at("reports").is_array());
    for (const auto& rep : doc["reports"]) {
        CHECK(rep.at("quantity").is_string());
        CHECK(rep.at("value").is_number());
        CHECK(rep.at("route_definition").is_number());
        CHECK(rep.at("route_trace").is_number());
        CHECK(rep.at("discrepancy").get<double>() <= rep.at("tolerance").get<double>());
        CHECK(rep.at("verdict") == "ok");
    }
}

TEST_CASE("rabi time series matches the closed form") {
    const auto r = run_cli("evolve --config " + k_root + "/configs/evolve_rabi.json",
                           "/tmp/qprob_rabi.csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "t,CE,AP,CP");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        double t = 0, ce = 0, ap = 0, cp = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &t, &ce, &ap, &cp) == 4);
        CHECK(std::abs(ap - std::sin(t) * std::sin(t)) < 1e-10);
        ++rows;
    }
    CHECK(rows == 1000);
}

TEST_CASE("exit codes") {
    // 2: malformed config naming the bad field
    {
        std::ofstream bad("/tmp/qprob_bad_field.json");
        bad << R"({"kind":"discrete","system":{"eigenvalues":[1.0],"amplitudes":[[1.0,0.0]]},)"
            << R"("requests":[{"quantity":"CE","event":{"indices":[0]},"typo_field":1}]})";
    }
    CHECK(run_cli("discrete --config /tmp/qprob_bad_field.json").exit_code == 2);

    {
        std::ofstream bad("/tmp/qprob_not_json.json");
        bad << "][ not json";
    }
    CHECK(run_cli("discrete --config /tmp/qprob_not_json.json").exit_code == 2);

    // 2: kind mismatch between config and subcommand
    CHECK(run_cli("fock --config " + k_root + "/configs/discrete_exact.json").exit_code == 2);

    // 1: zero-probability conditioning surfaces as a computation failure
    {
        std::ofstream zero("/tmp/qprob_zero_cond.json");
        zero << R"({"kind":"discrete","system":{"eigenvalues":[1.0,2.0],"amplitudes":[[1.0,0.0],[0.0,0.0]]},)"
             << R"("requests":[{"quantity":"CE","event":{"indices":[1]}}]})";
    }
    CHECK(run_cli("discrete --config /tmp/qprob_zero_cond.json").exit_code == 1);

    // 0 / 1: verification pass and sabotage detection
    CHECK(run_cli("verify --seed 3 --max-dim 8 --grid-n 256").exit_code == 0);
    CHECK(run_cli("verify --seed 3 --max-dim 8 --grid-n 256 "
                  "--inject-amplitude-perturbation 1e-3")
              .exit_code == 1);
}

TEST_CASE("grid states load from wavefunction files through the CLI") {
    // header + rows; deliberately unnormalized so the loader has work to do
    {
        std::ofstream state("/tmp/qprob_cli_state.dat");
        state << "# four-cell test state\nx0 0.25\ndx 0.5\nn 4\n";
        state << "0 1.0 0.0\n1 1.0 0.0\n2 1.0 0.0\n3 1.0 0.0\n";
    }
    {
        std::ofstream cfg("/tmp/qprob_cli_file.json");
        cfg << R"({"kind":"grid1d","system":{"file":"/tmp/qprob_cli_state.dat"},)"
            << R"("requests":[{"quantity":"AP","event":{"intervals":[[0.0,1.0]]}}]})";
    }
    const auto r = run_cli("grid --config /tmp/qprob_cli_file.json", "/tmp/qprob_cli_file_out.json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    // uniform density over [0, 2]; the first two of four cells carry half
    CHECK(doc["reports"][0]["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("disjoint conditioning reports zero probability") {
    {
        std::ofstream cfg("/tmp/qprob_cli_disjoint.json");
        cfg << R"({"kind":"discrete","system":{"eigenvalues":[1.0,2.0,3.0],)"
            << R"("amplitudes":[[0.6,0.0],[0.0,0.8],[0.0,0.0]]},)"
            << R"("requests":[{"quantity":"CP","event":{"indices":[2]},"given":{"indices":[0,1]}}]})";
    }
    const auto r = run_cli("discrete --config /tmp/qprob_cli_disjoint.json",
                           "/tmp/qprob_cli_disjoint_out.json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["reports"][0]["value"].get<double>() == 0.0);
    CHECK(doc["reports"][0]["verdict"] == "ok");
}

TEST_CASE("noncomm command emits the refinement verdicts") {
    const auto r = run_cli("noncomm --config " + k_root + "/configs/noncomm_gaussian.json",
                           "/tmp/qprob_noncomm.json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    REQUIRE(doc.at("reports").size() >= 2);
    const auto& at_sigma = doc["reports"][0]["report"];
    CHECK(at_sigma.at("verdict") == "divergent");
    CHECK(at_sigma.at("x").get<double>() == 1.0);
    const auto& at_zero = doc["reports"][1]["report"];
    CHECK(at_zero.at("verdict") == "conditionally-zero");
}

TEST_CASE("tolerance scale environment variable relaxes verdict thresholds") {
    // the tolerance column scales with QPROB_TOLERANCE_SCALE
    const std::string cfg = k_root + "/configs/discrete_exact.json";
    const std::string cmd = "QPROB_TOLERANCE_SCALE=1000 " + k_cli + " discrete --config " +
                            cfg + " --out /tmp/qprob_scaled.json > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    REQUIRE(WEXITSTATUS(status) == 0);
    const auto doc = nlohmann::json::parse(slurp("/tmp/qprob_scaled.json"));
    CHECK(doc["reports"][0]["tolerance"].get<double>() == doctest::Approx(1e-9));
}

TEST_CASE("timing flag adds fields and is off by default") {
    const std::string cfg = k_root + "/configs/discrete_exact.json";
    const auto plain = run_cli("discrete --config " + cfg, "/tmp/qprob_notiming.json");
    REQUIRE(plain.exit_code == 0);
    CHECK(plain.output.find("elapsed_ms") == std::string::npos);

    const auto timed =
        run_cli("discrete --config " + cfg + " --timing", "/tmp/qprob_timing.json");
    REQUIRE(timed.exit_code == 0);
    CHECK(timed.output.find("elapsed_ms") != std::string::npos);
}

TEST_CASE("csv format is limited to row-shaped kinds") {
    const auto ok = run_cli("discrete --config " + k_root +
                                "/configs/discrete_exact.json --format csv",
                            "/tmp/qprob_rows.csv");
    REQUIRE(ok.exit_code == 0);
    CHECK(ok.output.starts_with(
        "quantity,event,given,value,route_definition,route_trace,discrepancy"));

    CHECK(run_cli("grid2d --config " + k_root +
                  "/configs/grid2d_bivariate.json --format csv")
              .exit_code == 2);
}

TEST_CASE("fock command cross-checks the partition function") {
    const auto r = run_cli("fock --config " + k_root + "/configs/fock_fermion.json",
                           "/tmp/qprob_fock.json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    const auto& zg = doc["reports"][0];
    CHECK(zg.at("verdict") == "ok");
    CHECK(zg.at("relative_discrepancy").get<double>() <= 1e-12);
    // pinned closed form for the three-mode preset
    const double closed = 2.0 * (1.0 + std::exp(-1.0)) * (1.0 + std::exp(-2.0));
    CHECK(std::abs(zg.at("value").get<double>() - closed) < 1e-12 * closed);
}
