#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_out.tmp";
    const std::string cmd = std::string(CCDP_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(out_path.c_str());
    return RunResult{WEXITSTATUS(status), ss.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("bounds command prints the point record") {
    const RunResult r = run_cli("bounds --model wrdp --P 7 --c2 4 --M 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"inner\":0.7924812504") != std::string::npos);
    CHECK(r.out.find("\"outer\":1.711999227") != std::string::npos);
    CHECK(r.out.find("\"gap\":0.9195179763") != std::string::npos);

    const RunResult wsfd = run_cli("bounds --model wsfd --P 3 --c2 1 --a 1");
    CHECK(wsfd.exit_code == 0);
    CHECK(wsfd.out.find("\"inner\":1,") != std::string::npos);
    CHECK(wsfd.out.find("\"outer\":1,") != std::string::npos);

    const RunResult es = run_cli("bounds --model ccdp-es --P 11 --c2 4 --rho 0.5");
    CHECK(es.exit_code == 0);
    CHECK(es.out.find("\"gap\":1,") != std::string::npos);
}

TEST_CASE("usage and precondition errors exit with code 2") {
    CHECK(run_cli("bounds --model unknown --P 1 --c2 1").exit_code == 2);
    CHECK(run_cli("bounds --model wrdp --P -3 --c2 1").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("bounds --model ccdp-es --P 1 --c2 1 --M 4 --rho -0.9").exit_code == 2);
}

TEST_CASE("gap command gates on the canonical claims") {
    {
        std::ofstream grid("cli_grid.tmp");
        grid << "P = log 0.5 1024 7\n";
        grid << "c2 = log 0.25 4096 9\n";
        grid << "a = list -1 1 2\n";
        grid << "M = list 2 4\n";
    }
    CHECK(run_cli("gap --model wrdp --grid cli_grid.tmp --out cli_rep.tmp").exit_code == 0);

    // Tightening the threshold below the known max gap must trip the gate.
    CHECK(run_cli("gap --model wrdp --grid cli_grid.tmp --threshold 0.5 --out cli_rep.tmp")
              .exit_code == 1);

    // A grid file syntax error carries the line number.
    {
        std::ofstream grid("cli_grid.tmp");
        grid << "P = log 0.5 1024 7\n";
        grid << "c2 = oops\n";
    }
    const RunResult bad = run_cli("gap --model wrdp --grid cli_grid.tmp");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find(":2:") != std::string::npos);
    std::remove("cli_grid.tmp");
    std::remove("cli_rep.tmp");
}

TEST_CASE("strong-fading gap rejects a failing spec with the condition name") {
    const RunResult r = run_cli("gap --model strong --count 20 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("wsfd-strong") != std::string::npos);

    // A spec given on the command line that fails its condition check is a
    // precondition error naming the violated condition.
    const RunResult bad = run_cli("gap --model strong --P 1 --c2 1 --a 0,1");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("c2*a2^2 > P+1") != std::string::npos);

    const RunResult good = run_cli("gap --model strong --P 3 --c2 16 --a 0,1,2");
    CHECK(good.exit_code == 0);
}

TEST_CASE("sweep output is byte-stable across runs") {
    {
        std::ofstream grid("cli_grid2.tmp");
        grid << "P = log 0.5 256 5\n";
        grid << "c2 = log 0.25 1024 7\n";
    }
    CHECK(run_cli("sweep --model ccdp-es --grid cli_grid2.tmp --format json --out cli_a.tmp "
                  "--printed")
              .exit_code == 0);
    CHECK(run_cli("sweep --model ccdp-es --grid cli_grid2.tmp --format json --out cli_b.tmp "
                  "--printed")
              .exit_code == 0);
    const std::string a = slurp("cli_a.tmp"), b = slurp("cli_b.tmp");
    CHECK(!a.empty());
    CHECK(a == b);

    // Capping the worker count must not change a single byte.
    const std::string env_cmd = "CCDP_THREADS=1 " + std::string(CCDP_CLI_PATH) +
                                " sweep --model ccdp-es --grid cli_grid2.tmp --format json"
                                " --out cli_c.tmp --printed";
    CHECK(std::system(env_cmd.c_str()) == 0);
    CHECK(slurp("cli_c.tmp") == a);
    std::remove("cli_c.tmp");
    std::remove("cli_grid2.tmp");
    std::remove("cli_a.tmp");
    std::remove("cli_b.tmp");
}

TEST_CASE("oracle command reports the best scheme point") {
    const RunResult r = run_cli("oracle --model wsfd --P 15 --c2 16 --a 1.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"rate\":") != std::string::npos);
    CHECK(r.out.find("\"alpha\":") != std::string::npos);
    CHECK(r.out.find("\"k\":") != std::string::npos);
}

TEST_CASE("lindet command emits the diagram and the condition verdict") {
    const RunResult r = run_cli("lindet --P 3 --c2 16 --a 0,1,2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("rx3") != std::string::npos);
    CHECK(r.out.find("disjoint: yes") != std::string::npos);
    CHECK(r.out.find("strong fading: PASS") != std::string::npos);

    const RunResult fail = run_cli("lindet --P 3 --c2 16 --a 0,1,1.1");
    CHECK(fail.exit_code == 0);
    CHECK(fail.out.find("disjoint: no") != std::string::npos);
    CHECK(fail.out.find("strong fading: FAIL") != std::string::npos);
}

TEST_CASE("simulate command reports z-scores deterministically") {
    const RunResult a = run_cli("simulate --model wrdp --M 2 --P 4 --c2 4 --n 100000 --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.out.find("\"z_scores\":") != std::string::npos);
    CHECK(a.out.find("\"pass\":true") != std::string::npos);
    const RunResult b = run_cli("simulate --model wrdp --M 2 --P 4 --c2 4 --n 100000 --seed 7");
    CHECK(a.out == b.out);
}
