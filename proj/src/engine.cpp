#include "engine.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <functional>
#include <random>
#include <sstream>
#include <utility>

#include "bigrank.hpp"
#include "forms.hpp"

namespace slncoh {

namespace {

namespace fs = std::filesystem;

std::optional<std::string> read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) return std::nullopt;
    return buf.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
    const fs::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw data_error("cache: cannot write " + tmp.string());
        out << bytes;
        if (!out.good()) throw data_error("cache: short write to " + tmp.string());
    }
    fs::rename(tmp, p);
}

std::optional<Json> read_json(const fs::path& p) {
    const auto bytes = read_file(p);
    if (!bytes) return std::nullopt;
    Json j = Json::parse(*bytes, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    return j;
}

void require_rank(int n, const char* who) {
    if (n < 2 || n > kMaxGroupDim)
        throw contract_error(std::string(who) + ": N must be between 2 and 4");
}

/** Laplacian document: the ring matrix plus the hash of the complex it
 *  was computed from, so stale artifacts are detected and rebuilt. */
Json xi_doc(const GroupRingMatrix& xi, int n, int degree, const std::string& complex_hash) {
    Json out = ring_matrix_to_json(xi, n, degree);
    out["complex_hash"] = complex_hash;
    return out;
}

struct ComplexArtifact {
    ComplexDocument doc;
    std::string bytes;  // canonical serialized form
    std::string hash;
};

/** Load the cached complex document if present and intact, else build,
 *  serialize and (when caching) persist it. */
ComplexArtifact obtain_complex(int n, const EngineOptions& opts, const fs::path& dir) {
    const fs::path path = dir / ("complex_n" + std::to_string(n) + ".json");
    if (opts.use_cache) {
        if (const auto j = read_json(path)) {
            try {
                ComplexDocument doc = complex_from_json(*j);
                if (doc.rank == n) {
                    std::string bytes = json_print(complex_to_json(doc));
                    std::string hash = content_hash(bytes);
                    return {std::move(doc), std::move(bytes), std::move(hash)};
                }
            } catch (const data_error&) {
                // Stale or corrupted cache entry: fall through and rebuild.
            }
        }
    }
    const Json j = complex_to_json(build_complex(n));
    ComplexArtifact a;
    a.doc = complex_from_json(j);
    a.bytes = json_print(j);
    a.hash = content_hash(a.bytes);
    if (opts.use_cache) write_file(path, a.bytes);
    return a;
}

GroupRingMatrix obtain_xi(int n, int degree, const ComplexArtifact& complex,
                          const EngineOptions& opts, const fs::path& dir,
                          std::string* hash_out) {
    const fs::path path = dir / ("xi_n" + std::to_string(n) + ".json");
    if (opts.use_cache) {
        if (const auto j = read_json(path)) {
            try {
                if (j->value("complex_hash", std::string()) == complex.hash) {
                    int n_back = 0;
                    int deg_back = 0;
                    GroupRingMatrix xi = ring_matrix_from_json(*j, &n_back, &deg_back);
                    if (n_back == n && deg_back == degree) {
                        *hash_out = content_hash(json_print(xi_doc(xi, n, degree, complex.hash)));
                        return xi;
                    }
                }
            } catch (const data_error&) {
                // Stale or corrupted cache entry: fall through and recompute.
            }
        }
    }
    GroupRingMatrix xi = document_laplacian_prime(complex.doc, degree);
    const std::string bytes = json_print(xi_doc(xi, n, degree, complex.hash));
    *hash_out = content_hash(bytes);
    if (opts.use_cache) write_file(path, bytes);
    return xi;
}

std::optional<CohomologyCertificate> load_certificate(const fs::path& path, int n, int degree,
                                                      const std::string& complex_hash,
                                                      const std::string& xi_hash) {
    const auto j = read_json(path);
    if (!j) return std::nullopt;
    try {
        if (j->value("complex_hash", std::string()) != complex_hash) return std::nullopt;
        if (j->value("xi_hash", std::string()) != xi_hash) return std::nullopt;
        CohomologyCertificate c;
        c.n = j->at("N").get<int>();
        c.q = j->at("q").get<int>();
        c.degree = j->at("degree").get<int>();
        c.rep = j->at("rep").get<std::string>();
        c.size = j->at("size").get<int>();
        c.rank = j->at("rank").get<int>();
        c.corank = j->at("corank").get<int>();
        if (c.n != n || c.q != n - 1 || c.degree != degree) return std::nullopt;
        if (c.rep != representation_label(n)) return std::nullopt;
        if (c.corank != c.size - c.rank || c.rank < 0 || c.corank < 0) return std::nullopt;
        c.from_cache = true;
        return c;
    } catch (const Json::exception&) {
        return std::nullopt;
    }
}

}  // namespace

int target_degree(int n) {
    require_rank(n, "target_degree");
    return n * (n - 1) / 2;
}

OrthogonalRep certificate_representation(int n) {
    require_rank(n, "certificate_representation");
    return make_pi(n);
}

std::string representation_label(int n) {
    require_rank(n, "representation_label");
    if (n == 2) return "trivial (dim 1)";
    if (n == 3) return "pi_3: induced signed-permutation rep of SL_3(F_3), dim 156";
    return "pi_4: induced signed-permutation rep of SL_4(F_2), dim 105";
}

std::string resolve_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("SLNCOH_CACHE"); env && *env) return env;
    return ".slncoh-cache";
}

GroupRingMatrix document_laplacian_prime(const ComplexDocument& d, int degree) {
    if (degree < d.bottom_degree() || degree > d.top_degree())
        throw contract_error("document_laplacian_prime: degree out of range");
    const GroupRingMatrix& down = d.differentials[static_cast<std::size_t>(degree)];
    const GroupRingMatrix& up = d.differentials[static_cast<std::size_t>(degree) + 1];
    GroupRingMatrix lap = down.star() * down + up * up.star();
    const int size = d.orbit_count(degree);
    GroupRingMatrix correction = GroupRingMatrix::identity(size, d.rank);
    for (int k = 0; k < size; ++k)
        correction.at(k, k) = correction.at(k, k) -
                              d.orbits[static_cast<std::size_t>(degree)]
                                  [static_cast<std::size_t>(k)].idempotent;
    return lap + correction;
}

int hodge_kernel_dim(const CellComplex& c, int degree, const OrthogonalRep& rep) {
    if (degree < c.bottom_degree() || degree > c.top_degree())
        throw contract_error("hodge_kernel_dim: degree out of range");
    const GroupRingMatrix down = differential(c, degree);
    const GroupRingMatrix upstar = differential(c, degree + 1).star();
    const int size = c.orbit_count(degree);
    GroupRingMatrix complement = GroupRingMatrix::identity(size, c.rank);
    const GroupRingMatrix v = idempotent_diagonal(c, degree);
    for (int k = 0; k < size; ++k)
        complement.at(k, k) = complement.at(k, k) - v.at(k, k);

    const int rows = down.rows() + upstar.rows() + size;
    GroupRingMatrix stacked(rows, size);
    int base = 0;
    const GroupRingMatrix* parts[] = {&down, &upstar, &complement};
    for (const GroupRingMatrix* part : parts) {
        for (int i = 0; i < part->rows(); ++i)
            for (int j = 0; j < size; ++j) stacked.at(base + i, j) = part->at(i, j);
        base += part->rows();
    }
    const RatMat m = representing_matrix(stacked, rep);
    return size * rep.dim() - certified_rank(m).rank;
}

Json certificate_to_json(const CohomologyCertificate& c, const std::string& complex_hash,
                         const std::string& xi_hash) {
    Json out;
    out["N"] = c.n;
    out["q"] = c.q;
    out["degree"] = c.degree;
    out["rep"] = c.rep;
    out["size"] = c.size;
    out["rank"] = c.rank;
    out["corank"] = c.corank;
    out["complex_hash"] = complex_hash;
    out["xi_hash"] = xi_hash;
    return out;
}

CohomologyCertificate certify(int n, const EngineOptions& opts) {
    require_rank(n, "certify");
    const auto start = std::chrono::steady_clock::now();
    const int degree = target_degree(n);

    fs::path dir;
    if (opts.use_cache) {
        dir = resolve_cache_dir(opts.cache_dir);
        fs::create_directories(dir);
    }

    const ComplexArtifact complex = obtain_complex(n, opts, dir);
    std::string xi_hash;
    const GroupRingMatrix xi = obtain_xi(n, degree, complex, opts, dir, &xi_hash);
    const fs::path cert_path = dir / ("certificate_n" + std::to_string(n) + ".json");

    auto finish = [&](CohomologyCertificate c) {
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return c;
    };

    if (opts.use_cache)
        if (auto cached = load_certificate(cert_path, n, degree, complex.hash, xi_hash))
            return finish(*cached);

    const OrthogonalRep rep = certificate_representation(n);
    const RatMat m = representing_matrix(xi, rep);
    if (m != m.transpose())
        throw internal_error("certify: evaluated modified Laplacian is not symmetric");

    CohomologyCertificate c;
    c.n = n;
    c.q = n - 1;
    c.degree = degree;
    c.rep = representation_label(n);
    c.size = m.rows();
    c.rank = certified_rank(m).rank;
    c.corank = c.size - c.rank;
    if (opts.use_cache)
        write_file(cert_path, json_print(certificate_to_json(c, complex.hash, xi_hash)));
    return finish(c);
}

namespace {

using CheckOutcome = std::pair<bool, std::string>;

void run_check(VerifyReport& report, const std::string& name,
               const std::function<CheckOutcome()>& fn) {
    CheckResult r;
    r.name = name;
    try {
        const CheckOutcome out = fn();
        r.ok = out.first;
        r.detail = out.second;
    } catch (const std::exception& e) {
        r.ok = false;
        r.detail = e.what();
    }
    report.ok = report.ok && r.ok;
    report.checks.push_back(std::move(r));
}

}  // namespace

VerifyReport verify_all(int n) {
    require_rank(n, "verify_all");
    VerifyReport report;
    report.n = n;

    run_check(report, "perfect-seeds", [&]() -> CheckOutcome {
        const std::vector<IntMat> seeds = perfect_seeds(n);
        for (const IntMat& s : seeds)
            if (!is_perfect(to_rational(s))) return {false, "a seed form is not perfect"};
        if (n == 4 && seeds.size() != 2) return {false, "expected two rank-4 seed forms"};
        return {true, std::to_string(seeds.size()) + " seed form(s) perfect"};
    });

    CellComplex c;
    try {
        c = build_complex(n);
    } catch (const std::exception& e) {
        run_check(report, "complex-build", [&]() -> CheckOutcome { return {false, e.what()}; });
        return report;
    }
    run_check(report, "complex-build", [&]() -> CheckOutcome {
        int orbits = 0;
        for (int deg = c.bottom_degree(); deg <= c.top_degree(); ++deg)
            orbits += c.orbit_count(deg);
        return {true, std::to_string(orbits) + " orbit(s), degrees " +
                          std::to_string(c.bottom_degree()) + ".." +
                          std::to_string(c.top_degree())};
    });

    run_check(report, "chain-condition", [&]() -> CheckOutcome {
        int checked = 0;
        for (int deg = c.bottom_degree() + 1; deg < c.top_degree(); ++deg) {
            if (!(differential(c, deg) * differential(c, deg + 1)).is_zero())
                return {false, "d composed with d is nonzero at degree " + std::to_string(deg + 1)};
            ++checked;
        }
        return {true, std::to_string(checked) + " consecutive pair(s) compose to zero"};
    });

    run_check(report, "idempotents", [&]() -> CheckOutcome {
        int checked = 0;
        for (const auto& level : c.orbits)
            for (const CellOrbit& o : level) {
                if (o.idempotent * o.idempotent != o.idempotent)
                    return {false, "characteristic element is not idempotent"};
                if (o.idempotent.star() != o.idempotent)
                    return {false, "characteristic element is not star-symmetric"};
                ++checked;
            }
        return {true, std::to_string(checked) + " orbit idempotent(s)"};
    });

    run_check(report, "boundary-absorption", [&]() -> CheckOutcome {
        int checked = 0;
        for (int deg = c.bottom_degree() + 1; deg <= c.top_degree(); ++deg) {
            const GroupRingMatrix d = differential(c, deg);
            if (idempotent_diagonal(c, deg - 1) * d * idempotent_diagonal(c, deg) != d)
                return {false, "idempotent absorption fails at degree " + std::to_string(deg)};
            ++checked;
        }
        return {true, std::to_string(checked) + " boundary map(s) absorbed"};
    });

    run_check(report, "laplacian-symmetry", [&]() -> CheckOutcome {
        int checked = 0;
        for (int deg = c.bottom_degree(); deg <= c.top_degree(); ++deg) {
            const GroupRingMatrix lp = laplacian_prime(c, deg);
            if (lp.star() != lp)
                return {false, "modified Laplacian not star-symmetric at degree " +
                                   std::to_string(deg)};
            ++checked;
        }
        return {true, std::to_string(checked) + " degree(s) star-symmetric"};
    });

    run_check(report, "stabilizer-signs", [&]() -> CheckOutcome {
        std::mt19937 rng(2024);
        int checked = 0;
        for (const auto& level : c.orbits)
            for (const CellOrbit& o : level) {
                std::uniform_int_distribution<std::size_t> pick(0, o.stabilizer.size() - 1);
                const std::size_t samples = std::min<std::size_t>(o.stabilizer.size(), 16);
                for (std::size_t s = 0; s < samples; ++s) {
                    const std::size_t k = pick(rng);
                    if (eta_sign(o, o, o.stabilizer[k]) != o.eta[k])
                        return {false, "stored orientation sign disagrees with recomputation"};
                    ++checked;
                }
            }
        return {true, std::to_string(checked) + " stabilizer sign(s) recomputed"};
    });

    const OrthogonalRep rep = certificate_representation(n);

    run_check(report, "representation-homomorphism", [&]() -> CheckOutcome {
        std::mt19937 rng(2025);
        std::uniform_int_distribution<int> pick(0, rep.group().size() - 1);
        const int pairs = 2000;
        for (int k = 0; k < pairs; ++k) {
            const int a = pick(rng);
            const int b = pick(rng);
            const int ab = rep.group().multiply(a, b);
            for (int col = 0; col < rep.dim(); ++col) {
                if (rep.row_of(ab, col) != rep.row_of(a, rep.row_of(b, col)))
                    return {false, "monomial rows do not compose"};
                if (rep.sign_of(ab, col) !=
                    rep.sign_of(a, rep.row_of(b, col)) * rep.sign_of(b, col))
                    return {false, "monomial signs do not compose"};
            }
        }
        return {true, std::to_string(pairs) + " sampled pairs compose"};
    });

    run_check(report, "representation-invariants", [&]() -> CheckOutcome {
        std::vector<int> gens;
        for (const GroupElem& g : elementary_generators(n)) gens.push_back(rep.group().reduce(g));
        const int dim = invariant_vector_dim(rep, gens);
        const int expect = n == 2 ? 1 : 0;
        if (dim != expect)
            return {false, "invariant subspace has dimension " + std::to_string(dim) +
                               ", expected " + std::to_string(expect)};
        return {true, "invariant subspace dimension " + std::to_string(dim)};
    });

    run_check(report, "corank-cross-check", [&]() -> CheckOutcome {
        const int degree = target_degree(n);
        const GroupRingMatrix xi = laplacian_prime(c, degree);
        const RatMat m = representing_matrix(xi, rep);
        if (m != m.transpose()) return {false, "evaluated Laplacian is not symmetric"};
        const int direct = m.rows() - certified_rank(m).rank;
        const int hodge = hodge_kernel_dim(c, degree, rep);
        if (direct != hodge)
            return {false, "corank " + std::to_string(direct) + " vs kernel-intersection " +
                               std::to_string(hodge)};
        return {true, "corank " + std::to_string(direct) + " by both routes"};
    });

    return report;
}

Json report_to_json(const VerifyReport& r) {
    Json out;
    out["N"] = r.n;
    Json checks = Json::array();
    for (const CheckResult& c : r.checks) {
        Json e;
        e["name"] = c.name;
        e["ok"] = c.ok;
        e["detail"] = c.detail;
        checks.push_back(std::move(e));
    }
    out["checks"] = std::move(checks);
    out["ok"] = r.ok;
    return out;
}

}  // namespace slncoh
