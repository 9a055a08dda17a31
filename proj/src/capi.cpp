#include "slncoh.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "engine.hpp"
#include "serialize.hpp"

using namespace slncoh;

/** The handle owns the canonical document form of a complex. */
struct slncoh_complex {
    ComplexDocument doc;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* msg) { g_last_error = msg ? msg : "unknown error"; }

template <typename F>
slncoh_status guarded(F&& f) noexcept {
    try {
        return f();
    } catch (const contract_error& e) {
        set_error(e.what());
        return SLNCOH_USAGE;
    } catch (const data_error& e) {
        set_error(e.what());
        return SLNCOH_USAGE;
    } catch (const internal_error& e) {
        set_error(e.what());
        return SLNCOH_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SLNCOH_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return SLNCOH_INTERNAL;
    }
}

slncoh_status require(bool cond, const char* msg) {
    if (cond) return SLNCOH_OK;
    set_error(msg);
    return SLNCOH_USAGE;
}

/** Copy into a malloc'd buffer for release via slncoh_string_free. */
char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

slncoh_status slncoh_complex_build(int n, slncoh_complex** out) {
    if (require(out != nullptr, "slncoh_complex_build: out is NULL") != SLNCOH_OK)
        return SLNCOH_USAGE;
    *out = nullptr;
    return guarded([&] {
        const Json j = complex_to_json(build_complex(n));
        auto handle = new slncoh_complex{complex_from_json(j)};
        *out = handle;
        return SLNCOH_OK;
    });
}

slncoh_status slncoh_complex_from_json(const char* json, slncoh_complex** out) {
    if (require(json != nullptr && out != nullptr,
                "slncoh_complex_from_json: NULL argument") != SLNCOH_OK)
        return SLNCOH_USAGE;
    *out = nullptr;
    return guarded([&] {
        const Json j = Json::parse(json, nullptr, false);
        if (j.is_discarded()) {
            set_error("slncoh_complex_from_json: not valid JSON");
            return SLNCOH_USAGE;
        }
        auto handle = new slncoh_complex{complex_from_json(j)};
        *out = handle;
        return SLNCOH_OK;
    });
}

slncoh_status slncoh_complex_to_json(const slncoh_complex* c, char** out_json) {
    if (require(c != nullptr && out_json != nullptr,
                "slncoh_complex_to_json: NULL argument") != SLNCOH_OK)
        return SLNCOH_USAGE;
    *out_json = nullptr;
    return guarded([&] {
        *out_json = copy_string(json_print(complex_to_json(c->doc)));
        return SLNCOH_OK;
    });
}

slncoh_status slncoh_complex_rank(const slncoh_complex* c, int* out_n) {
    if (require(c != nullptr && out_n != nullptr, "slncoh_complex_rank: NULL argument") !=
        SLNCOH_OK)
        return SLNCOH_USAGE;
    *out_n = c->doc.rank;
    return SLNCOH_OK;
}

slncoh_status slncoh_complex_orbit_count(const slncoh_complex* c, int degree, int* out_count) {
    if (require(c != nullptr && out_count != nullptr,
                "slncoh_complex_orbit_count: NULL argument") != SLNCOH_OK)
        return SLNCOH_USAGE;
    *out_count = c->doc.orbit_count(degree);
    return SLNCOH_OK;
}

slncoh_status slncoh_complex_degree_range(const slncoh_complex* c, int* out_bottom,
                                          int* out_top) {
    if (require(c != nullptr && out_bottom != nullptr && out_top != nullptr,
                "slncoh_complex_degree_range: NULL argument") != SLNCOH_OK)
        return SLNCOH_USAGE;
    *out_bottom = c->doc.bottom_degree();
    *out_top = c->doc.top_degree();
    return SLNCOH_OK;
}

slncoh_status slncoh_laplacian_to_json(const slncoh_complex* c, int degree, char** out_json) {
    if (require(c != nullptr && out_json != nullptr,
                "slncoh_laplacian_to_json: NULL argument") != SLNCOH_OK)
        return SLNCOH_USAGE;
    *out_json = nullptr;
    return guarded([&] {
        const GroupRingMatrix lp = document_laplacian_prime(c->doc, degree);
        *out_json = copy_string(json_print(ring_matrix_to_json(lp, c->doc.rank, degree)));
        return SLNCOH_OK;
    });
}

void slncoh_complex_free(slncoh_complex* c) { delete c; }

slncoh_status slncoh_certify(int n, const char* cache_dir, int use_cache,
                             slncoh_certificate* out_cert, char** out_json) {
    if (out_json) *out_json = nullptr;
    return guarded([&] {
        EngineOptions opts;
        opts.cache_dir = resolve_cache_dir(cache_dir ? cache_dir : "");
        opts.use_cache = use_cache != 0;
        const CohomologyCertificate cert = certify(n, opts);
        if (out_cert) {
            out_cert->n = cert.n;
            out_cert->q = cert.q;
            out_cert->degree = cert.degree;
            out_cert->size = cert.size;
            out_cert->rank = cert.rank;
            out_cert->corank = cert.corank;
            out_cert->seconds = cert.seconds;
            out_cert->from_cache = cert.from_cache ? 1 : 0;
        }
        if (out_json) {
            Json j;
            j["N"] = cert.n;
            j["q"] = cert.q;
            j["degree"] = cert.degree;
            j["rep"] = cert.rep;
            j["size"] = cert.size;
            j["rank"] = cert.rank;
            j["corank"] = cert.corank;
            *out_json = copy_string(json_print(j));
        }
        return SLNCOH_OK;
    });
}

slncoh_status slncoh_verify(int n, char** out_report_json, int* out_ok) {
    if (out_report_json) *out_report_json = nullptr;
    return guarded([&] {
        const VerifyReport report = verify_all(n);
        if (out_ok) *out_ok = report.ok ? 1 : 0;
        if (out_report_json) *out_report_json = copy_string(json_print(report_to_json(report)));
        return SLNCOH_OK;
    });
}

slncoh_status slncoh_rep_to_json(int n, char** out_json) {
    if (require(out_json != nullptr, "slncoh_rep_to_json: out is NULL") != SLNCOH_OK)
        return SLNCOH_USAGE;
    *out_json = nullptr;
    return guarded([&] {
        const OrthogonalRep rep = certificate_representation(n);
        std::vector<int> elems;
        for (const GroupElem& g : elementary_generators(n))
            elems.push_back(rep.group().reduce(g));
        *out_json = copy_string(json_print(rep_to_json(rep, elems)));
        return SLNCOH_OK;
    });
}

const char* slncoh_last_error(void) {
    if (g_last_error.empty()) g_last_error = "no error";
    return g_last_error.c_str();
}

void slncoh_string_free(char* s) { std::free(s); }

const char* slncoh_version(void) { return "1.0.0"; }

}  // extern "C"
