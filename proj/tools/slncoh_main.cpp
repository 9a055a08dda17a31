/**
 * Command-line front end.  Links only the public C interface; JSON
 * pretty-reading and argument parsing are local conveniences.
 *
 * Exit codes: 0 success, 1 certified value differs from --expect,
 * 2 usage or malformed input, 3 internal invariant failure.
 */
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slncoh.h"

namespace {

using Json = nlohmann::ordered_json;

/** Owner for strings handed out by the library. */
struct LibString {
    char* s = nullptr;
    ~LibString() { slncoh_string_free(s); }
};

int fail(slncoh_status st) {
    std::cerr << "error: " << slncoh_last_error() << "\n";
    return static_cast<int>(st);
}

bool write_text(const std::string& path, const char* text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    return out.good();
}

struct CommonOptions {
    std::string cache_dir;
    bool no_cache = false;
    int threads = 0;  // accepted for interface stability; stages run sequentially
};

const char* cache_dir_arg(const CommonOptions& c) {
    return c.cache_dir.empty() ? nullptr : c.cache_dir.c_str();
}

int run_build(int n, const std::string& out_path) {
    slncoh_complex* c = nullptr;
    if (slncoh_status st = slncoh_complex_build(n, &c); st != SLNCOH_OK) return fail(st);
    LibString json;
    slncoh_status st = slncoh_complex_to_json(c, &json.s);
    int bottom = 0;
    int top = 0;
    int orbits = 0;
    if (st == SLNCOH_OK) st = slncoh_complex_degree_range(c, &bottom, &top);
    for (int deg = bottom; st == SLNCOH_OK && deg <= top; ++deg) {
        int count = 0;
        st = slncoh_complex_orbit_count(c, deg, &count);
        orbits += count;
    }
    slncoh_complex_free(c);
    if (st != SLNCOH_OK) return fail(st);
    if (!write_text(out_path, json.s)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
    }
    std::cout << "wrote " << out_path << ": " << orbits << " orbit(s) in degrees " << bottom
              << ".." << top << "\n";
    return 0;
}

int run_verify(int n, bool as_json) {
    LibString report;
    int ok = 0;
    if (slncoh_status st = slncoh_verify(n, &report.s, &ok); st != SLNCOH_OK) return fail(st);
    if (as_json) {
        std::cout << report.s;
    } else {
        const Json j = Json::parse(report.s);
        for (const Json& check : j["checks"])
            std::cout << (check["ok"].get<bool>() ? "ok   " : "FAIL ")
                      << check["name"].get<std::string>() << ": "
                      << check["detail"].get<std::string>() << "\n";
        std::cout << (ok ? "all checks passed" : "verification FAILED") << "\n";
    }
    return ok ? 0 : 3;
}

int run_laplacian(int n, int degree, const std::string& in_path, std::string out_path) {
    slncoh_complex* c = nullptr;
    if (in_path.empty()) {
        if (slncoh_status st = slncoh_complex_build(n, &c); st != SLNCOH_OK) return fail(st);
    } else {
        std::ifstream in(in_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read " << in_path << "\n";
            return 2;
        }
        const std::string bytes((std::istreambuf_iterator<char>(in)), {});
        if (slncoh_status st = slncoh_complex_from_json(bytes.c_str(), &c); st != SLNCOH_OK)
            return fail(st);
        int file_rank = 0;
        slncoh_complex_rank(c, &file_rank);
        if (file_rank != n) {
            slncoh_complex_free(c);
            std::cerr << "error: " << in_path << " holds a rank-" << file_rank
                      << " complex, not rank " << n << "\n";
            return 2;
        }
    }
    LibString json;
    const slncoh_status st = slncoh_laplacian_to_json(c, degree, &json.s);
    slncoh_complex_free(c);
    if (st != SLNCOH_OK) return fail(st);
    if (out_path.empty())
        out_path = "laplacian_n" + std::to_string(n) + "_deg" + std::to_string(degree) + ".json";
    if (!write_text(out_path, json.s)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
    }
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_rep(int n, const std::string& out_path) {
    LibString json;
    if (slncoh_status st = slncoh_rep_to_json(n, &json.s); st != SLNCOH_OK) return fail(st);
    if (out_path.empty()) {
        std::cout << json.s;
        return 0;
    }
    if (!write_text(out_path, json.s)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
    }
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_certify(int n, const CommonOptions& common, int expect, bool has_expect, bool as_json) {
    slncoh_certificate cert{};
    LibString json;
    if (slncoh_status st =
            slncoh_certify(n, cache_dir_arg(common), common.no_cache ? 0 : 1, &cert, &json.s);
        st != SLNCOH_OK)
        return fail(st);
    if (as_json) {
        std::cout << json.s;
    } else {
        const Json j = Json::parse(json.s);
        std::cout << "SL_" << cert.n << "(Z) cohomology certificate\n"
                  << "  representation:     " << j["rep"].get<std::string>() << "\n"
                  << "  homological degree: " << cert.degree << "\n"
                  << "  matrix size:        " << cert.size << "\n"
                  << "  exact rank:         " << cert.rank << "\n"
                  << "  corank:             " << cert.corank << "\n"
                  << "  dim H^" << cert.q << "(SL_" << cert.n << "(Z), rep) = " << cert.corank
                  << "\n";
        std::fprintf(stdout, "  time:               %.2fs%s\n", cert.seconds,
                     cert.from_cache ? " (from cache)" : "");
    }
    if (has_expect && cert.corank != expect) {
        std::cerr << "expected corank " << expect << ", certified " << cert.corank << "\n";
        return 1;
    }
    return 0;
}

int run_reproduce(const CommonOptions& common, bool extended) {
    const int expected_corank[] = {0, 0, 0, 4, 2};  // index by N
    std::vector<int> ranks = {2, 3};
    if (extended) ranks.push_back(4);
    bool all_ok = true;
    for (int n : ranks) {
        std::cout << "== SL_" << n << "(Z) ==\n";
        int ok = 0;
        LibString report;
        if (slncoh_status st = slncoh_verify(n, &report.s, &ok); st != SLNCOH_OK)
            return fail(st);
        std::cout << "verification: " << (ok ? "all checks passed" : "FAILED") << "\n";
        if (!ok) {
            const Json j = Json::parse(report.s);
            for (const Json& check : j["checks"])
                if (!check["ok"].get<bool>())
                    std::cout << "  FAIL " << check["name"].get<std::string>() << ": "
                              << check["detail"].get<std::string>() << "\n";
            all_ok = false;
            continue;
        }
        slncoh_certificate cert{};
        if (slncoh_status st =
                slncoh_certify(n, cache_dir_arg(common), common.no_cache ? 0 : 1, &cert, nullptr);
            st != SLNCOH_OK)
            return fail(st);
        const bool match = cert.corank == expected_corank[n];
        std::printf("corank at degree %d: %d (expected %d) %s [%.2fs]\n", cert.degree,
                    cert.corank, expected_corank[n], match ? "ok" : "MISMATCH", cert.seconds);
        all_ok = all_ok && match;
    }
    std::cout << (all_ok ? "reproduction complete" : "reproduction FAILED") << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact certification of cohomology classes for SL_N(Z), N = 2..4"};
    app.require_subcommand(1);
    CommonOptions common;
    app.add_option("--cache-dir", common.cache_dir,
                   "artifact cache directory (default: SLNCOH_CACHE or .slncoh-cache)");
    app.add_flag("--no-cache", common.no_cache, "disable reading and writing cached artifacts");
    app.add_option("--threads", common.threads,
                   "worker cap (accepted for compatibility; stages run sequentially)");

    int n = 0;
    const auto add_n = [&n](CLI::App* cmd) {
        cmd->add_option("--n", n, "rank N of SL_N(Z)")->required()->check(CLI::Range(2, 4));
    };

    CLI::App* build = app.add_subcommand("build", "build the cell complex and write its document");
    add_n(build);
    std::string out_path;
    build->add_option("--out", out_path, "output path for the complex document")->required();

    CLI::App* verify = app.add_subcommand("verify", "run every named invariant check");
    add_n(verify);
    bool verify_json = false;
    verify->add_flag("--json", verify_json, "emit the report as JSON");

    CLI::App* laplacian =
        app.add_subcommand("laplacian", "write the modified Laplacian of one degree");
    add_n(laplacian);
    int degree = 0;
    std::string in_path;
    std::string lap_out;
    laplacian->add_option("--degree", degree, "homological degree")->required();
    laplacian->add_option("--in", in_path, "complex document to load (default: build afresh)");
    laplacian->add_option("--out", lap_out, "output path (default: laplacian_n<N>_deg<D>.json)");

    CLI::App* rep = app.add_subcommand("rep", "write the certificate representation document");
    add_n(rep);
    std::string rep_out;
    rep->add_option("--out", rep_out, "output path (default: stdout)");

    CLI::App* certify = app.add_subcommand("certify", "certify the corank at the target degree");
    add_n(certify);
    int expect = 0;
    bool certify_json = false;
    CLI::Option* expect_opt =
        certify->add_option("--expect", expect, "fail with exit 1 unless the corank equals this");
    certify->add_flag("--json", certify_json, "emit the certificate as JSON");

    CLI::App* reproduce =
        app.add_subcommand("reproduce", "verify and certify rank 2 and 3 (and 4 with --extended)");
    bool extended = false;
    reproduce->add_flag("--extended", extended, "include the rank-4 run");

    for (CLI::App* sub : {build, verify, laplacian, rep, certify, reproduce}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (build->parsed()) return run_build(n, out_path);
    if (verify->parsed()) return run_verify(n, verify_json);
    if (laplacian->parsed()) return run_laplacian(n, degree, in_path, lap_out);
    if (rep->parsed()) return run_rep(n, rep_out);
    if (certify->parsed())
        return run_certify(n, common, expect, expect_opt->count() > 0, certify_json);
    if (reproduce->parsed()) return run_reproduce(common, extended);
    return 2;
}
