#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "gsbc/json_io.hpp"

using namespace gsbc;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

const char* cli_path() {
    const char* path = std::getenv("GSBC_CLI");
    return path && *path ? path : nullptr;
}

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = std::string(cli_path()) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 512> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
        r.output.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_CASE("cli eval matches the documented fixture") {
    if (!cli_path())
        return; // driven through ctest, which provides GSBC_CLI
    RunResult r = run_cli("eval builtin:example1 --config '2,0,5,1,3;0' --window 0..4");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "output: 5 0 0 3 0\nradius: 2 0 5 1 3\n");
}

TEST_CASE("cli eval exit codes distinguish failure modes") {
    if (!cli_path())
        return;
    // The supremum prober scans forever on the all-zero configuration.
    RunResult budget = run_cli("eval builtin:example2-prober --config '0;0' --window 0..0");
    CHECK(budget.exit_code == 3);

    RunResult usage = run_cli("eval builtin:example1 --config not-a-config --window 0..0");
    CHECK(usage.exit_code == 2);

    RunResult unknown = run_cli("frobnicate");
    CHECK(unknown.exit_code == 2);

    RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
}

TEST_CASE("cli honors the GSBC_BUDGET environment variable") {
    if (!cli_path())
        return;
    std::string args = "eval builtin:example2-prober --config '0,0,0,0,0,0,0,0,1;0' --window 0..0";
    RunResult roomy = run_cli(args);
    CHECK(roomy.exit_code == 0);
    CHECK(roomy.output.find("output: 1") != std::string::npos);

    RunResult tight;
    {
        std::string cmd = "GSBC_BUDGET=4 " + std::string(cli_path()) + " " + args + " 2>&1";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::array<char, 512> buf{};
        while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
            tight.output.append(buf.data(), n);
        int status = pclose(pipe);
        tight.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    CHECK(tight.exit_code == 3);
}

TEST_CASE("cli eval on the supremum map prints no radius") {
    if (!cli_path())
        return;
    RunResult r = run_cli("eval 'builtin:example2?blocks=[[0,1]]' --config '0;0' --window 0..0");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "output: 0\nradius: -\n");
}

TEST_CASE("cli learn writes a partition file that validates cleanly") {
    if (!cli_path())
        return;
    std::string path = "learned_example1.json";
    RunResult learn = run_cli("learn builtin:example1 -R 3 -M 3 --out " + path);
    CHECK(learn.exit_code == 0);
    CHECK(learn.output.find("learned 13 cylinders") != std::string::npos);

    std::ifstream in(path);
    REQUIRE(in.good());
    json j = json::parse(in);
    ExplicitPartition p = partition_from_json(j);
    CHECK(p.cylinder_count() == 13);

    RunResult validate = run_cli("validate " + path + " -R 3 -M 3");
    CHECK(validate.exit_code == 0);
    CHECK(validate.output.find("disjoint: yes") != std::string::npos);
    CHECK(validate.output.find("covered at radius 3") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli learn on the supremum map reports the scale limit") {
    if (!cli_path())
        return;
    RunResult r = run_cli("learn builtin:example2 -R 4 -M 1");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("unresolved: 1 patterns") != std::string::npos);
}

TEST_CASE("cli validate flags conflicts with exit 1") {
    if (!cli_path())
        return;
    std::string path = "conflicted.json";
    {
        std::ofstream out(path);
        out << R"({"version":1,"monoid":"N","space":{"space":"full"},
                   "entries":[{"output":0,"cylinders":[{"indices":[0],"symbols":[0]}]},
                              {"output":1,"cylinders":[{"indices":[0],"symbols":[0]}]}]})";
    }
    RunResult r = run_cli("validate " + path + " -R 1 -M 1");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("disjoint: no") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli check subcommands") {
    if (!cli_path())
        return;
    RunResult commute = run_cli("check builtin:example1 --mode commute --samples 50 --shifts 0..4");
    CHECK(commute.exit_code == 0);
    CHECK(commute.output.find("pass") != std::string::npos);

    RunResult broken = run_cli("check builtin:broken --mode commute --samples 50");
    CHECK(broken.exit_code == 1);
    CHECK(broken.output.find("counterexample") != std::string::npos);

    RunResult split = run_cli("check builtin:example2 --mode determine --pattern 0@0,0@1 -M 1");
    CHECK(split.exit_code == 1);
    CHECK(split.output.find("split") != std::string::npos);

    RunResult det = run_cli("check builtin:example1 --mode determine --pattern 1@0,4@1 -M 4");
    CHECK(det.exit_code == 0);
    CHECK(det.output.find("determined: output 4") != std::string::npos);

    RunResult bounded = run_cli("check builtin:sum --mode radius -R 1 -M 2");
    CHECK(bounded.exit_code == 0);
    CHECK(bounded.output.find("bounded(1)") != std::string::npos);

    RunResult exceeds = run_cli("check builtin:example1 --mode radius -R 3 -M 5");
    CHECK(exceeds.exit_code == 1);
    CHECK(exceeds.output.find("exceeds(3)") != std::string::npos);
}

TEST_CASE("cli json mode emits parseable reports") {
    if (!cli_path())
        return;
    RunResult r = run_cli("--json check builtin:example1 --mode commute --samples 20");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["mode"] == "commute");
    CHECK(j["verdict"] == "pass");

    RunResult e = run_cli("--json eval builtin:example1 --config '2,0,5,1,3;0' --window 0..4");
    json je = json::parse(e.output);
    CHECK(je["outputs"] == json::array({"5", "0", "0", "3", "0"}));
}

TEST_CASE("cli demo is deterministic and honest at small scale") {
    if (!cli_path())
        return;
    RunResult a = run_cli("demo --seed 7");
    RunResult b = run_cli("demo --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("summary") != std::string::npos);

    RunResult tiny = run_cli("demo --seed 7 --max-radius 1");
    CHECK(tiny.output.find("unresolved") != std::string::npos);
    CHECK(tiny.output != a.output);
}
