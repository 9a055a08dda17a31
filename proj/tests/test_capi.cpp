/**
 * Tests for the C interface, exercised the way an external consumer
 * would use it: opaque handles, status codes, thread-local error text
 * and malloc'd string outputs.  Parsed documents are inspected with the
 * bundled JSON reader only; no core headers are included.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>
#include <string>

#include <json.hpp>

#include "slncoh.h"

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::mt19937_64 rng(std::random_device{}());
        path = fs::temp_directory_path() / ("slncoh-capi-" + std::to_string(rng()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

struct LibString {
    char* s = nullptr;
    ~LibString() { slncoh_string_free(s); }
};

struct Handle {
    slncoh_complex* c = nullptr;
    ~Handle() { slncoh_complex_free(c); }
};

}  // namespace

TEST_CASE("building and inspecting a complex through the C surface") {
    Handle h;
    REQUIRE(slncoh_complex_build(2, &h.c) == SLNCOH_OK);
    int n = 0;
    CHECK(slncoh_complex_rank(h.c, &n) == SLNCOH_OK);
    CHECK(n == 2);
    int bottom = 0, top = 0;
    CHECK(slncoh_complex_degree_range(h.c, &bottom, &top) == SLNCOH_OK);
    CHECK(bottom == 1);
    CHECK(top == 2);
    int count = -1;
    CHECK(slncoh_complex_orbit_count(h.c, 1, &count) == SLNCOH_OK);
    CHECK(count == 1);
    CHECK(slncoh_complex_orbit_count(h.c, 2, &count) == SLNCOH_OK);
    CHECK(count == 1);
    CHECK(slncoh_complex_orbit_count(h.c, 0, &count) == SLNCOH_OK);
    CHECK(count == 0);
    CHECK(slncoh_complex_orbit_count(h.c, 99, &count) == SLNCOH_OK);
    CHECK(count == 0);
}

TEST_CASE("complex documents round trip through the C surface") {
    Handle h;
    REQUIRE(slncoh_complex_build(2, &h.c) == SLNCOH_OK);
    LibString first;
    REQUIRE(slncoh_complex_to_json(h.c, &first.s) == SLNCOH_OK);

    Handle reparsed;
    REQUIRE(slncoh_complex_from_json(first.s, &reparsed.c) == SLNCOH_OK);
    LibString second;
    REQUIRE(slncoh_complex_to_json(reparsed.c, &second.s) == SLNCOH_OK);
    CHECK(std::string(first.s) == std::string(second.s));

    const Json doc = Json::parse(first.s);
    CHECK(doc["N"] == 2);
    CHECK(doc["orbits"].size() == 2);
}

TEST_CASE("invalid inputs produce usage errors with messages") {
    slncoh_complex* c = nullptr;
    CHECK(slncoh_complex_build(7, &c) == SLNCOH_USAGE);
    CHECK(c == nullptr);
    CHECK(std::string(slncoh_last_error()).find("2") != std::string::npos);

    CHECK(slncoh_complex_build(2, nullptr) == SLNCOH_USAGE);
    CHECK(slncoh_complex_from_json("{ not json", &c) == SLNCOH_USAGE);
    CHECK(c == nullptr);
    CHECK(slncoh_complex_from_json("{\"N\": 2}", &c) == SLNCOH_USAGE);
    CHECK(c == nullptr);

    // A structurally valid document with corrupted content is rejected.
    Handle h;
    REQUIRE(slncoh_complex_build(2, &h.c) == SLNCOH_OK);
    LibString json;
    REQUIRE(slncoh_complex_to_json(h.c, &json.s) == SLNCOH_OK);
    Json doc = Json::parse(json.s);
    doc["orbits"][0]["barycentre"][0][0] = "12345";
    CHECK(slncoh_complex_from_json(doc.dump().c_str(), &c) == SLNCOH_USAGE);
    CHECK(c == nullptr);
    CHECK(std::string(slncoh_last_error()).find("barycentre") != std::string::npos);
}

TEST_CASE("laplacian documents come out of the C surface") {
    Handle h;
    REQUIRE(slncoh_complex_build(2, &h.c) == SLNCOH_OK);
    LibString json;
    REQUIRE(slncoh_laplacian_to_json(h.c, 1, &json.s) == SLNCOH_OK);
    const Json doc = Json::parse(json.s);
    CHECK(doc["N"] == 2);
    CHECK(doc["degree"] == 1);
    CHECK(doc["rows"] == 1);
    CHECK(doc["cols"] == 1);

    char* out = nullptr;
    CHECK(slncoh_laplacian_to_json(h.c, 99, &out) == SLNCOH_USAGE);
    CHECK(out == nullptr);
}

TEST_CASE("certification through the C surface") {
    TempDir tmp;
    slncoh_certificate cert{};
    LibString json;
    REQUIRE(slncoh_certify(2, tmp.path.c_str(), 1, &cert, &json.s) == SLNCOH_OK);
    CHECK(cert.n == 2);
    CHECK(cert.q == 1);
    CHECK(cert.degree == 1);
    CHECK(cert.size == 1);
    CHECK(cert.rank == 1);
    CHECK(cert.corank == 0);
    CHECK(cert.from_cache == 0);
    const Json doc = Json::parse(json.s);
    CHECK(doc["corank"] == 0);
    CHECK(doc["rep"] == "trivial (dim 1)");

    slncoh_certificate again{};
    REQUIRE(slncoh_certify(2, tmp.path.c_str(), 1, &again, nullptr) == SLNCOH_OK);
    CHECK(again.from_cache == 1);
    CHECK(again.corank == 0);

    CHECK(slncoh_certify(9, nullptr, 0, &cert, nullptr) == SLNCOH_USAGE);
}

TEST_CASE("the rank-three theorem certificate through the C surface") {
    slncoh_certificate cert{};
    REQUIRE(slncoh_certify(3, nullptr, 0, &cert, nullptr) == SLNCOH_OK);
    CHECK(cert.size == 312);
    CHECK(cert.rank == 308);
    CHECK(cert.corank == 4);
    CHECK(cert.q == 2);
}

TEST_CASE("verification report through the C surface") {
    LibString report;
    int ok = 0;
    REQUIRE(slncoh_verify(2, &report.s, &ok) == SLNCOH_OK);
    CHECK(ok == 1);
    const Json doc = Json::parse(report.s);
    CHECK(doc["N"] == 2);
    CHECK(doc["ok"] == true);
    CHECK(doc["checks"].size() >= 8);
    CHECK(slncoh_verify(1, &report.s, &ok) == SLNCOH_USAGE);
}

TEST_CASE("representation document through the C surface") {
    LibString json;
    REQUIRE(slncoh_rep_to_json(2, &json.s) == SLNCOH_OK);
    const Json doc = Json::parse(json.s);
    CHECK(doc["p"] == 2);
    CHECK(doc["dim"] == 1);
    CHECK(doc["entries"].size() == 2);
    for (const Json& e : doc["entries"]) {
        CHECK(e["g"].size() == 2);
        CHECK(e["m"].size() == 1);
    }
    CHECK(slncoh_rep_to_json(0, &json.s) == SLNCOH_USAGE);
}

TEST_CASE("utility functions are safe on edge inputs") {
    CHECK(std::string(slncoh_version()) == "1.0.0");
    slncoh_string_free(nullptr);
    slncoh_complex_free(nullptr);
    CHECK(slncoh_last_error() != nullptr);
}
