#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SFTOOL_BIN
#error "SFTOOL_BIN must point at the built binary"
#endif

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    std::string out_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/sftool_out.txt";
    std::string cmd = std::string(SFTOOL_BIN) + " " + args + " > " + out_path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    return r;
}

std::string data_file(const std::string& name) { return std::string(SFTOOL_DATA) + "/" + name; }

}  // namespace

TEST_CASE("sft count on the golden mean def") {
    CliResult r = run_cli("sft count --def " + data_file("golden_mean.json") + " --n 4");
    CHECK(r.code == 0);
    CHECK(r.out.find("4\t1\t8\t") != std::string::npos);  // Fibonacci count 8 at n=4
}

TEST_CASE("byte determinism") {
    std::string args = "sft entropy-upper --def " + data_file("hard_squares.json") + " --n-max 5";
    CliResult a = run_cli(args);
    CliResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());

    CliResult g = run_cli("geom mseq --N 1");
    CHECK(g.code == 0);
    CHECK(g.out.find("1\t6\t5\t0") != std::string::npos);
    CHECK(g.out.find("2\t31\t21\t1") != std::string::npos);
}

TEST_CASE("input errors exit 1") {
    CliResult r = run_cli("sft count --def /nonexistent/missing.json --n 4");
    CHECK(r.code == 1);
    CliResult u = run_cli("sft count --def " + data_file("golden_mean.json") + " --n 4 --bogus-flag");
    CHECK(u.code == 1);
    CliResult n = run_cli("nonsense");
    CHECK(n.code == 1);
}

TEST_CASE("budget exhaustion exits 2") {
    CliResult r = run_cli("geom mseq --N 14");
    CHECK(r.code == 2);
}

TEST_CASE("prune run trace") {
    CliResult r = run_cli("prune run --levels 11 --r const:1/2 --max-N 8");
    CHECK(r.code == 0);
    CHECK(r.out.find("# halted at N=3") != std::string::npos);
    CHECK(r.out.find("3/4") != std::string::npos);
}

TEST_CASE("realize brackets") {
    CliResult r = run_cli("realize --target const:1/2 --h 1/2 --L 4 --N 8 --n 4,8,16");
    CHECK(r.code == 0);
    CHECK(r.out.find("1/2\t0.500000000000") != std::string::npos);
}

TEST_CASE("subst expand ascii") {
    CliResult r = run_cli("subst expand --rule 2net --seed '*' --n 1");
    CHECK(r.code == 0);
    CHECK(r.out.find(". *\n* .\n") != std::string::npos);
}

TEST_CASE("tm run and board") {
    CliResult r = run_cli("tm run --machine " + data_file("machines/scan_right.json") + " --input 001 --steps 50");
    CHECK(r.code == 0);
    CHECK(r.out.find("halted\t3") != std::string::npos);

    CliResult b = run_cli("tm board --machine " + data_file("machines/scan_right.json") + " --n 1 --input 1000");
    CHECK(b.code == 0);
    CHECK(b.out.find("infeasible\thalt_step=1") != std::string::npos);
}

TEST_CASE("entropy-1d") {
    CliResult r = run_cli("sft entropy-1d --def " + data_file("golden_mean.json") + " --tol 1/1000000000");
    CHECK(r.code == 0);
    CHECK(r.out.find("0.6942419131") != std::string::npos);
}

TEST_CASE("entropy-irreducible") {
    CliResult r = run_cli("sft entropy-irreducible --def " + data_file("hard_squares.json") + " --precision 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("\t1\n") != std::string::npos);  // success flag
}
