#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <doctest.h>

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(MADQUEUE_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe)) out += buf;
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST_CASE("bound prints provenance and a value") {
    const auto r = run("bound gg1-upper --arrival '{\"a\":0,\"b\":10,\"mu\":1,\"d\":1}' "
                       "--service '{\"a\":0,\"b\":10,\"mu\":0.5,\"d\":0.1}' --steady");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("# ", 0) == 0);
    CHECK(r.out.find("2.03136\n") != std::string::npos);
}

TEST_CASE("validation failures exit with 2 and a code") {
    const auto r = run("bound rw-upper --a 0 --b 1 --mu 0.5 --mad 0.9 --n 3");
    CHECK(r.status == 2);
    CHECK(r.out.rfind("error: InfeasibleMad:", 0) == 0);
    CHECK(run("bound nonsense").status == 2);
    CHECK(run("bound gg1-upper --arrival '{\"a\":0,\"b\":10,\"mu\":1,\"d\":1}' "
              "--service '{\"a\":0,\"b\":10,\"mu\":1,\"d\":0.1}' --steady")
              .status == 2);
}

TEST_CASE("I/O failures exit with 4") {
    const auto r = run("estimate --arrivals /nonexistent/u.txt --services /nonexistent/v.txt");
    CHECK(r.status == 4);
    CHECK(r.out.rfind("error: IoError:", 0) == 0);
}

TEST_CASE("table output is CSV with a header") {
    const auto r = run("table gg1_main --rho 0.5 --precision 3");
    CHECK(r.status == 0);
    CHECK(r.out.find("rho,tight,chen_whitt,daley,kingman\n0.500,2.031,3.638,4.250,5.500\n") != std::string::npos);
}

TEST_CASE("crosscheck") {
    const auto r = run("crosscheck --a -3 --b 2 --mu -1 --mad 0.8");
    CHECK(r.status == 0);
    CHECK(r.out.find("oracle,contour,abs_diff") != std::string::npos);
}
