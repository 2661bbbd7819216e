#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

// Runs the built tool with stdout captured to a file; stderr is discarded.
Run run_tool(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / ("relmachine_cli_" + std::to_string(::getpid()) + ".txt");
    const std::string cmd = std::string(RELMACHINE_TOOL) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    fs::remove(out);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

fs::path write_temp(const std::string& name, const std::string& text) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("cli: point writes csv with metadata header", "[cli]") {
    const auto r = run_tool("point");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# command=point\n# config_hash=", 0) == 0);
    CHECK(r.out.find("# tool_version=") != std::string::npos);
    CHECK(r.out.find("# timestamp=") != std::string::npos);
    CHECK(r.out.find("# table=point\nomega_A,omega_B,") != std::string::npos);
    CHECK(r.out.find("-0.05429962371407") != std::string::npos);
}

TEST_CASE("cli: json mirror and --out", "[cli]") {
    const fs::path out = fs::temp_directory_path() / "relmachine_cli_point.json";
    const auto r = run_tool("point --format json --out " + out.string());
    REQUIRE(r.code == 0);
    std::ifstream f(out);
    const auto j = nlohmann::json::parse(f);
    CHECK(j["metadata"]["command"] == "point");
    CHECK(j["tables"][0]["columns"][0] == "omega_A");
    CHECK(j["tables"][0]["rows"][0][8].get<double>() == Catch::Approx(-0.054299623714075157).epsilon(1e-15));
    fs::remove(out);
}

TEST_CASE("cli: config file, overrides and speeds", "[cli]") {
    const auto cfg = write_temp("relmachine_cli.cfg", "# moving hot qubit\nomega_B = 0.55\nT_A = 2\nT_B = 1\n");
    const auto a = run_tool("point --config " + cfg.string() + " --speeds 0.8,0");
    const auto b = run_tool("point --config " + cfg.string() + " --set speed_A=0.8 --set speed_B=0");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    // same data rows and hash; timestamps may differ
    CHECK(a.out.substr(a.out.find("# table=")) == b.out.substr(b.out.find("# table=")));
    CHECK(a.out.substr(0, a.out.find("# tool_version")) == b.out.substr(0, b.out.find("# tool_version")));
    fs::remove(cfg);

    const auto g = run_tool("fig1 --grid 5");
    REQUIRE(g.code == 0);
    std::size_t lines = 0;
    for (char c : g.out) lines += c == '\n';
    CHECK(lines == 4 + 1 + 1 + 10);  // metadata, table, header, 2 panels x 5
}

TEST_CASE("cli: every sweep subcommand runs", "[cli]") {
    CHECK(run_tool("fig2 --grid 7").code == 0);
    CHECK(run_tool("fig3 --grid 7 --set speed_count=5").code == 0);
    const auto o = run_tool("optimize --format json");
    REQUIRE(o.code == 0);
    CHECK(nlohmann::json::parse(o.out)["tables"][0]["name"] == "optimize");
}

TEST_CASE("cli: exit codes", "[cli]") {
    CHECK(run_tool("point --speeds 1.5,0").code == 2);
    CHECK(run_tool("point --set omega_A=abc").code == 2);
    CHECK(run_tool("point --set bogus=1").code == 2);
    CHECK(run_tool("point --config /nonexistent/file.cfg").code == 2);
    CHECK(run_tool("fig1 --grid 1").code == 2);
    CHECK(run_tool("optimize --set beta_eff_A=2 --set beta_eff_B=1").code == 3);
    CHECK(run_tool("nosuchcommand").code != 0);
}

TEST_CASE("cli: verify", "[cli]") {
    const auto ok = run_tool("verify --grid 200");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("verify: all families passed") != std::string::npos);

    const auto bad = run_tool("verify --inject-fault");
    CHECK(bad.code == 1);
    const auto line = bad.out.find("snr_identity");
    REQUIRE(line != std::string::npos);
    CHECK(bad.out.substr(line, bad.out.find('\n', line) - line).find("FAIL") != std::string::npos);
}

TEST_CASE("cli: thread cap does not change output", "[cli]") {
    const auto one = run_tool("fig2 --grid 50 --format json");
    ::setenv("RELMACHINE_THREADS", "1", 1);
    const auto single = run_tool("fig2 --grid 50 --format json");
    ::unsetenv("RELMACHINE_THREADS");
    REQUIRE(one.code == 0);
    REQUIRE(single.code == 0);
    CHECK(nlohmann::json::parse(one.out)["tables"] == nlohmann::json::parse(single.out)["tables"]);
}
