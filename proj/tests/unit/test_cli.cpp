#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SMOOTHLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

nlohmann::json run_json(const std::string& args, int want_status = 0) {
    const auto r = run(args);
    REQUIRE(r.status == want_status);
    return nlohmann::json::parse(r.out);
}

const std::string zeros = std::string("--zeros ") + SMOOTHLAB_ZEROS_FIXTURE;

}  // namespace

TEST_CASE("psi and rho") {
    const auto j = run_json("psi --x 100 --y 5");
    CHECK(j["psi"] == 34);
    CHECK(j["params"]["x"] == 100.0);
    const auto r = run_json("rho --u 2");
    CHECK(std::fabs(r["values"][0]["rho"].get<double>() - 0.3068528194) <= 1e-8);
    CHECK(run("rho --u 2 --format text").out.find("0.30685281944") != std::string::npos);
    CHECK(run("psi --x 100 --y 5 --format csv").out == "x,y,strict_smooth,psi\n100,5,false,34\n");
}

TEST_CASE("find-smooth in theorem mode") {
    const auto j = run_json("find-smooth --x 100000000 --y 100 --theorem --B 1");
    CHECK(std::fabs(j["params"]["z"].get<double>() - 1.3035e5) <= 10);
    CHECK(j["params"]["B"] == 1.0);
    const auto count = j["count"].get<uint64_t>();
    CHECK(count >= 1);
    CHECK(j["smooth"].size() == count);
    CHECK(j["pass"] == true);
    for (const auto& n : j["smooth"]) {
        CHECK(n.get<uint64_t>() > 100000000u);
        CHECK(n.get<double>() <= 1e8 + j["params"]["z"].get<double>());
    }
    const auto plain = run_json("find-smooth --x 47 --y 10 --z 9");
    CHECK(plain["smooth"] == nlohmann::json::array({48, 49, 50, 54, 56}));
}

TEST_CASE("determinism and thread independence") {
    const std::string args = "explicit-i --x 1e6 --y 50 --z 1000 --t-zeros 1000 " + zeros;
    const auto a = run(args + " --threads 1");
    const auto b = run(args + " --threads 3");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == run(args + " --threads 1").out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["params"]["delta"].get<double>() == doctest::Approx(0.5 * std::log1p(1e-3)));
    CHECK(j["reports"][0]["support_size"] == 59);
}

TEST_CASE("verification subcommands") {
    CHECK(run_json("kernels verify --samples 10")["pass"] == true);
    CHECK(run_json("mv verify --x 1e4 --y 10")["pass"] == true);
    CHECK(run_json("zeros check " + zeros)["pass"] == true);
    CHECK(run_json("j2 --members 48 96 --delta 0.01")["nonpositive"] == true);
    CHECK(run_json("zero-sum-sin --x 1e6 --y 50 --z 1000 --t-zeros 10000 " + zeros)["pass"] == true);
    const auto s = run_json("support --x 1e4 --y 10");
    CHECK(s["members"] == nlohmann::json::array({48, 49, 50, 54, 56}));
    // At T far below n_max the mean square is nowhere near diagonal: status 1.
    const auto bad = run("mv verify --x 1e4 --y 10 --ratio-factor 0.01");
    CHECK(bad.status == 1);
    CHECK(nlohmann::json::parse(bad.out)["pass"] == false);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("psi --x 100 --y 5 --bogus").status == 2);
    CHECK(run("psi --x 100").status == 2);
    CHECK(run("nonsense").status == 2);
    CHECK(run("zeros check --zeros /nonexistent/zeros.txt").status == 2);
    CHECK(run("explicit-i --x 1e6 --y 50 --z 1000 --delta 0.1 " + zeros).status == 2);
    CHECK(run("psi --x 100 --y 5 --format yaml").status == 2);
}

TEST_CASE("zero table from the environment") {
    const std::string cmd = std::string("env SMOOTHLAB_ZEROS=") + SMOOTHLAB_ZEROS_FIXTURE + " " +
                            SMOOTHLAB_CLI_PATH + " zeros check > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    CHECK(WIFEXITED(raw));
    CHECK(WEXITSTATUS(raw) == 0);
    const std::string missing = std::string("env -u SMOOTHLAB_ZEROS ") + SMOOTHLAB_CLI_PATH +
                                " zeros check > /dev/null 2>&1";
    const int raw2 = std::system(missing.c_str());
    CHECK(WEXITSTATUS(raw2) == 2);
}
