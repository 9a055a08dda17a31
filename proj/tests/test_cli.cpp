/**
 * End-to-end tests of the command-line tool.  Each case spawns the real
 * binary (path injected at compile time), captures its output and checks
 * the documented exit-code contract: 0 success, 1 expectation mismatch,
 * 2 usage or bad input, 3 internal failure.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::mt19937_64 rng(std::random_device{}());
        path = fs::temp_directory_path() / ("slncoh-cli-" + std::to_string(rng()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

/** Run the tool with the given arguments inside a scratch directory. */
RunResult run_cli(const TempDir& dir, const std::string& args) {
    const fs::path out = dir.path / "stdout.txt";
    const fs::path err = dir.path / "stderr.txt";
    const std::string cmd = "cd '" + dir.path.string() + "' && SLNCOH_CACHE='" +
                            (dir.path / "env-cache").string() + "' '" + SLNCOH_CLI_PATH + "' " +
                            args + " > '" + out.string() + "' 2> '" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

}  // namespace

TEST_CASE("usage errors exit with code two") {
    TempDir dir;
    CHECK(run_cli(dir, "").code == 2);
    CHECK(run_cli(dir, "certify").code == 2);            // missing --n
    CHECK(run_cli(dir, "certify --n 5").code == 2);      // out of range
    CHECK(run_cli(dir, "certify --n x").code == 2);      // not a number
    CHECK(run_cli(dir, "build --n 2").code == 2);        // missing --out
    CHECK(run_cli(dir, "frobnicate").code == 2);         // unknown subcommand
    const RunResult help = run_cli(dir, "--help");
    CHECK(help.code == 0);
    CHECK(help.out.find("certify") != std::string::npos);
}

TEST_CASE("build writes a parseable complex document") {
    TempDir dir;
    const RunResult r = run_cli(dir, "build --n 2 --out c2.json");
    CHECK(r.code == 0);
    CHECK(r.out.find("2 orbit(s)") != std::string::npos);
    const Json doc = Json::parse(slurp(dir.path / "c2.json"));
    CHECK(doc["N"] == 2);
    CHECK(doc["orbits"].size() == 2);

    const RunResult r3 = run_cli(dir, "build --n 3 --out c3.json");
    CHECK(r3.code == 0);
    const Json doc3 = Json::parse(slurp(dir.path / "c3.json"));
    CHECK(doc3["orbits"].front()["degree"] == 5);
    CHECK(doc3["orbits"].back()["degree"] == 2);

    // Two runs emit identical bytes.
    const std::string before = slurp(dir.path / "c2.json");
    CHECK(run_cli(dir, "build --n 2 --out c2b.json").code == 0);
    CHECK(slurp(dir.path / "c2b.json") == before);
}

TEST_CASE("laplacian writes the requested degree") {
    TempDir dir;
    REQUIRE(run_cli(dir, "build --n 2 --out c2.json").code == 0);

    const RunResult fresh = run_cli(dir, "laplacian --n 2 --degree 2");
    CHECK(fresh.code == 0);
    const Json doc = Json::parse(slurp(dir.path / "laplacian_n2_deg2.json"));
    CHECK(doc["N"] == 2);
    CHECK(doc["degree"] == 2);
    CHECK(doc["rows"] == 1);

    const RunResult loaded = run_cli(dir, "laplacian --n 2 --degree 1 --in c2.json --out l1.json");
    CHECK(loaded.code == 0);
    CHECK(Json::parse(slurp(dir.path / "l1.json"))["degree"] == 1);

    CHECK(run_cli(dir, "laplacian --n 2 --degree 99").code == 2);
    CHECK(run_cli(dir, "laplacian --n 3 --degree 3 --in c2.json").code == 2);  // rank mismatch
    CHECK(run_cli(dir, "laplacian --n 2 --degree 1 --in missing.json").code == 2);
}

TEST_CASE("rep writes the representation document") {
    TempDir dir;
    const RunResult to_stdout = run_cli(dir, "rep --n 2");
    CHECK(to_stdout.code == 0);
    CHECK(Json::parse(to_stdout.out)["dim"] == 1);
    const RunResult to_file = run_cli(dir, "rep --n 2 --out rep2.json");
    CHECK(to_file.code == 0);
    CHECK(Json::parse(slurp(dir.path / "rep2.json"))["p"] == 2);
}

TEST_CASE("certify honours the expectation flag") {
    TempDir dir;
    const RunResult ok = run_cli(dir, "certify --n 2 --expect 0 --cache-dir cache");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("corank:             0") != std::string::npos);
    CHECK(fs::exists(dir.path / "cache" / "certificate_n2.json"));

    const RunResult bad = run_cli(dir, "certify --n 2 --expect 7 --cache-dir cache");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("expected corank 7") != std::string::npos);

    const RunResult js = run_cli(dir, "certify --n 2 --json --no-cache");
    CHECK(js.code == 0);
    const Json doc = Json::parse(js.out);
    CHECK(doc["corank"] == 0);
    CHECK(doc["rank"] == 1);

    // --no-cache leaves no artifacts behind.
    CHECK(!fs::exists(dir.path / ".slncoh-cache"));
    CHECK(!fs::exists(dir.path / "env-cache"));
}

TEST_CASE("certify reports the rank-three theorem corank") {
    TempDir dir;
    const RunResult r = run_cli(dir, "certify --n 3 --expect 4 --cache-dir cache --json");
    CHECK(r.code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc["corank"] == 4);
    CHECK(doc["size"] == 312);

    // Mismatched expectation exits one even though the certificate is cached.
    CHECK(run_cli(dir, "certify --n 3 --expect 5 --cache-dir cache").code == 1);
}

TEST_CASE("verify runs the invariant suite") {
    TempDir dir;
    const RunResult r = run_cli(dir, "verify --n 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    const RunResult js = run_cli(dir, "verify --n 2 --json");
    CHECK(js.code == 0);
    CHECK(Json::parse(js.out)["ok"] == true);
}

TEST_CASE("reproduce runs the small pipeline end to end") {
    TempDir dir;
    const RunResult r = run_cli(dir, "reproduce --cache-dir cache");
    CHECK(r.code == 0);
    CHECK(r.out.find("== SL_2(Z) ==") != std::string::npos);
    CHECK(r.out.find("== SL_3(Z) ==") != std::string::npos);
    CHECK(r.out.find("== SL_4(Z) ==") == std::string::npos);
    CHECK(r.out.find("corank at degree 1: 0 (expected 0) ok") != std::string::npos);
    CHECK(r.out.find("corank at degree 3: 4 (expected 4) ok") != std::string::npos);
    CHECK(r.out.find("reproduction complete") != std::string::npos);
}
