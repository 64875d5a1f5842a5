#include "support.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cli_runner.hpp"
#include "wka/constructors.hpp"
#include "wka/io.hpp"

using namespace wka;
using wka::testing::quote;
using wka::testing::run_command;

namespace fs = std::filesystem;

namespace {

struct Workspace {
    fs::path dir;
    std::string cli;

    Workspace()
    {
        const char* env = std::getenv("WKA_CLI");
        cli = env ? env : "wka";
        dir = fs::temp_directory_path() / ("wka_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }

    testing::CommandResult operator()(const std::string& args) const
    { return run_command(quote(cli) + " " + args); }
    std::string file(const std::string& name) const { return quote(dir / name); }
};

} // namespace

TEST_CASE("build and verify the dim-8 cube family")
{
    Workspace ws;
    CHECK(ws("build cube-family 2 -o " + ws.file("c2.wka")).exit_code == 0);
    const auto v = ws("verify " + ws.file("c2.wka"));
    INFO(v.output);
    CHECK(v.exit_code == 0);
    CHECK(v.output.find("verdict: pass") != std::string::npos);
}

TEST_CASE("fusion ring of an elementary algebra has one irreducible block")
{
    Workspace ws;
    CHECK(ws("build elementary 1,2 -o " + ws.file("m5.wka")).exit_code == 0);
    const auto d = ws("derive " + ws.file("m5.wka") + " --what fusion --format json");
    REQUIRE(d.exit_code == 0);
    const auto j = nlohmann::json::parse(d.output);
    CHECK(j["fusion"]["irreducibles"] == 1);
    CHECK(j["fusion"]["multiplicities"] == nlohmann::json::parse("[[[1]]]"));
}

TEST_CASE("zeroed counit fails verification with exit code 1")
{
    Workspace ws;
    const fs::path path = ws.dir / "zero.wka";
    const auto w = groupoid_function_algebra(pair_groupoid(2));
    write_wka_file(path.string(), w.with_counit(CVector::Zero(w.dim())));
    const auto v = ws("verify " + quote(path));
    CHECK(v.exit_code == 1);
    CHECK(v.output.find("FAIL  counit.left") != std::string::npos);
}

TEST_CASE("input errors exit with code 2")
{
    Workspace ws;
    const fs::path path = ws.dir / "bad.wka";
    WkaFile f = serialize(groupoid_function_algebra(pair_groupoid(2)));
    f.counit.push_back({{f.dim}, 1.0, 0.0});
    std::ofstream(path) << to_text(f);
    CHECK(ws("verify " + quote(path)).exit_code == 2);
    CHECK(ws("verify " + ws.file("missing.wka")).exit_code == 2);
    CHECK(ws("build no-such-thing 2 -o " + ws.file("x.wka")).exit_code == 2);
    CHECK(ws("build elementary 0,1 -o " + ws.file("x.wka")).exit_code == 2);
}

TEST_CASE("dual, generalized Kac check, counit recovery and report")
{
    Workspace ws;
    REQUIRE(ws("build group-algebra pair:2 -o " + ws.file("k2.wka")).exit_code == 0);
    CHECK(ws("dual " + ws.file("k2.wka") + " -o " + ws.file("dk2.wka")).exit_code == 0);
    CHECK(ws("verify " + ws.file("dk2.wka")).exit_code == 0);
    CHECK(ws("check-gen-kac " + ws.file("k2.wka") + " --trace normalized").exit_code == 0);
    CHECK(ws("check-gen-kac " + ws.file("k2.wka") + " --trace regular").exit_code == 0);
    CHECK(ws("recover-counit " + ws.file("k2.wka")).exit_code == 0);
    const auto r1 = ws("report " + ws.file("k2.wka") + " --format json");
    const auto r2 = ws("report " + ws.file("k2.wka") + " --format json");
    CHECK(r1.exit_code == 0);
    CHECK(r1.output == r2.output);
    CHECK_NOTHROW(nlohmann::json::parse(r1.output));
}

TEST_CASE("groupoid table files feed the constructors")
{
    Workspace ws;
    const fs::path g = ws.dir / "z2.txt";
    std::ofstream(g) << "units: e\nmorphisms: e g\n"
                        "compose: e e -> e\ncompose: e g -> g\ncompose: g e -> g\ncompose: g g -> e\n"
                        "inverse: e -> e\ninverse: g -> g\n";
    CHECK(ws("build function-algebra " + quote(g) + " -o " + ws.file("fz2.wka")).exit_code == 0);
    CHECK(ws("verify " + ws.file("fz2.wka")).exit_code == 0);
    const fs::path bad = ws.dir / "bad.txt";
    std::ofstream(bad) << "units: e\nmorphisms: e g\ncompose: e e -> e\ninverse: e -> e\n";
    CHECK(ws("build group-algebra " + quote(bad) + " -o " + ws.file("x.wka")).exit_code == 2);
}
