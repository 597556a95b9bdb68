#include "lgring/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <thread>

#include "lgring/koszul.hpp"
#include "lgring/tables.hpp"

namespace lgring {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            while (true) {
                int i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Deterministic helpers on top of the standardized mt19937 stream.
int rand_below(std::mt19937& gen, int k) { return static_cast<int>(gen() % k); }

std::vector<int> random_subset(std::mt19937& gen, int n, int s) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (int i = 0; i < s; ++i) std::swap(all[i], all[i + rand_below(gen, n - i)]);
    all.resize(s);
    std::sort(all.begin(), all.end());
    return all;
}

Monomial random_monomial(std::mt19937& gen, int n, int d) {
    Monomial m;
    m.x.assign(n, 0);
    for (int i = 0; i < d; ++i) m.x[rand_below(gen, n)] += 1;
    return m;
}

OrderedJson table_json(const CohomologyTable& t) {
    OrderedJson j = OrderedJson::object();
    OrderedJson entries = OrderedJson::array();
    for (const auto& e : t.entries) {
        OrderedJson je = OrderedJson::object();
        je["index"] = e.index;
        je["dim"] = e.dim;
        je["label"] = label_text(e.label);
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    j["total"] = t.total();
    return j;
}

struct Prepared {
    Poly f;
    std::unique_ptr<JacobianRing> ring;
    IsolatedCertificate cert;
};

Prepared prepare(const RunConfig& cfg) {
    Prepared p;
    p.f = parse_poly(cfg.poly_text, cfg.n);
    p.ring = std::make_unique<JacobianRing>(p.f, cfg.cell_budget);
    p.cert = p.ring->certify_isolated();
    return p;
}

void start_report(Report& rep, const Prepared& p) {
    rep.poly = p.f.to_string();
    rep.n = p.f.n_vars();
    OrderedJson c = OrderedJson::object();
    c["ok"] = p.cert.isolated;
    c["socle_degree"] = p.ring->socle_degree();
    c["socle_dim"] = p.cert.socle_dim;
    c["vanishing_degree"] = p.cert.vanishing_degree;
    c["dim_at_vanishing"] = p.cert.dim_above_socle;
    rep.certificates["isolated"] = c;
    rep.checks.push_back({"isolated_certificate", p.cert.isolated ? "pass" : "fail", c});
}

// Hilbert scan, Milnor number, primitive dims and their identities.
void add_hilbert_section(Report& rep, const Prepared& p, const RunConfig& cfg) {
    auto t0 = Clock::now();
    const JacobianRing& ring = *p.ring;
    const int n = ring.n();
    const int top = ring.socle_degree() + 1;

    std::vector<long> hvals(top + 1, 0);
    parallel_for(top + 1, cfg.effective_threads(), [&](int m) { hvals[m] = ring.hilbert(m); });

    OrderedJson hj = OrderedJson::array();
    for (int m = 0; m <= top; ++m) hj.push_back(OrderedJson::array({m, hvals[m]}));
    rep.tables["hilbert"] = std::move(hj);

    // Euler identity sum x_i df/dx_i = n f, exact.
    Poly euler = Poly::zero(n);
    for (int i = 0; i < n; ++i)
        euler = euler + Poly::var_x(n, i) * p.f.derivative(VarRef::x(i));
    bool euler_ok = euler == p.f * Rat(n);
    rep.checks.push_back({"euler_identity", euler_ok ? "pass" : "fail",
                          OrderedJson::object({{"degree", n}})});

    if (!p.cert.isolated) {
        rep.checks.push_back({"milnor_number_formula", "skipped", OrderedJson()});
        rep.timings_ms["hilbert"] = ms_since(t0);
        return;
    }

    Int mu = ring.milnor_number();
    rep.certificates["milnor_number"] = mu.get_str();
    Int expect = 1;
    for (int i = 0; i < n; ++i) expect *= (n - 1);
    rep.checks.push_back({"milnor_number_formula", mu == expect ? "pass" : "fail",
                          OrderedJson::object({{"value", mu.get_str()},
                                               {"expected", expect.get_str()}})});

    std::vector<long> prim = ring.primitive_dims();
    rep.tables["primitive_dims"] = prim;
    long rw0 = 0;
    for (long d : prim) rw0 += d;
    rep.tables["rw0_dim"] = rw0;

    bool palin = true;
    for (int m = 0; m <= ring.socle_degree(); ++m)
        if (hvals[m] != hvals[ring.socle_degree() - m]) palin = false;
    rep.checks.push_back({"hilbert_palindrome", palin ? "pass" : "fail", OrderedJson()});

    bool prim_palin = true;
    for (size_t k = 0; k < prim.size(); ++k)
        if (prim[k] != prim[prim.size() - 1 - k]) prim_palin = false;
    rep.checks.push_back({"primitive_palindrome", prim_palin ? "pass" : "fail",
                          OrderedJson(prim)});

    std::vector<Rat> socle = ring.socle_class_coords();
    bool socle_ok = false;
    std::string socle_coeff = "0";
    for (const auto& v : socle)
        if (sgn(v) != 0) {
            socle_ok = true;
            socle_coeff = rat_to_string(v);
        }
    rep.checks.push_back({"socle_nonvanishing", socle_ok ? "pass" : "fail",
                          OrderedJson::object({{"hessian_class_coefficient", socle_coeff}})});
    rep.timings_ms["hilbert"] = ms_since(t0);
}

void add_koszul_section(Report& rep, const Prepared& p, const RunConfig& cfg) {
    auto t0 = Clock::now();
    const JacobianRing& ring = *p.ring;
    const int n = ring.n();
    const int cap = cfg.effective_weight_cap();

    std::vector<AntiDiagonalComplex> complexes(cap);
    parallel_for(cap, cfg.effective_threads(), [&](int i) {
        complexes[i] = build_antidiagonal(ring, i + 1, cfg.cell_budget);
    });

    OrderedJson list = OrderedJson::array();
    bool concentrated = true;
    OrderedJson conc_witness = OrderedJson::array();
    for (const auto& cx : complexes) {
        OrderedJson j = OrderedJson::object();
        j["k_top"] = cx.k_top;
        j["slot_dims"] = cx.slot_dims;
        j["cohomology"] = cx.cohomology;
        list.push_back(std::move(j));
        long expected_top = ring.hilbert((cx.k_top - 1) * n);
        bool ok = cx.cohomology[n] == expected_top;
        for (int s = 0; s < n; ++s)
            if (cx.cohomology[s] != 0) ok = false;
        if (!ok) concentrated = false;
        conc_witness.push_back(OrderedJson::object(
            {{"k_top", cx.k_top}, {"H_top", cx.cohomology[n]}, {"expected", expected_top}}));
    }
    rep.tables["koszul_antidiagonal"] = std::move(list);
    rep.checks.push_back(
        {"koszul_concentration", concentrated ? "pass" : "fail", std::move(conc_witness)});

    // d o d = 0 on every consecutive pair, as exact matrices.
    bool dd_zero = true;
    for (const auto& cx : complexes)
        for (size_t s = 0; s + 1 < cx.differentials.size(); ++s) {
            QMatrix prod = cx.differentials[s + 1].multiply(cx.differentials[s]);
            if (prod.nonzero_count() != 0) dd_zero = false;
        }
    rep.checks.push_back({"koszul_d_squared", dd_zero ? "pass" : "fail", OrderedJson()});

    // Chain-map identity on seeded random monomial forms per (s, k) cell.
    std::mt19937 gen(cfg.seed);
    long tested = 0;
    bool chain_ok = true;
    for (int s = 0; s <= n - 1 && chain_ok; ++s) {
        for (int k = (s == 0 ? 0 : 1); k <= cap; ++k) {
            int d = k * n - s;
            if (d < 0) continue;
            for (int rep_i = 0; rep_i < cfg.chain_samples; ++rep_i) {
                AlgForm w = AlgForm::term(Poly::monomial(random_monomial(gen, n, d), 1),
                                          random_subset(gen, n, s));
                if (!check_chain_map(p.f, w)) {
                    chain_ok = false;
                    break;
                }
                ++tested;
            }
        }
    }
    rep.checks.push_back({"chain_map_samples", chain_ok ? "pass" : "fail",
                          OrderedJson::object({{"forms_tested", tested}})});

    // Euler-contraction kernel dimensions against C(n,r) dim Q[x]_{wn-r}.
    const int wmax = std::min(n, cap);
    bool euler_ok = true;
    OrderedJson grid = OrderedJson::array();
    std::vector<std::vector<long>> kdims(n + 1, std::vector<long>(wmax + 1, 0));
    std::vector<std::pair<int, int>> cells;
    for (int r = 0; r <= n; ++r)
        for (int w = 0; w <= wmax; ++w) cells.emplace_back(r, w);
    parallel_for(static_cast<int>(cells.size()), cfg.effective_threads(), [&](int i) {
        auto [r, w] = cells[i];
        kdims[r][w] = euler_contraction_kernel_dim(n, r, w, cfg.cell_budget);
    });
    for (auto [r, w] : cells) {
        long expected = 0;
        if (w * n - r >= 0) {
            long binom = 1;
            for (int i = 1; i <= r; ++i) binom = binom * (n - i + 1) / i;
            expected = binom * monomial_count(n, w * n - r);
        }
        if (kdims[r][w] != expected) euler_ok = false;
        grid.push_back(OrderedJson::object(
            {{"r", r}, {"w", w}, {"kernel_dim", kdims[r][w]}, {"expected", expected}}));
    }
    rep.checks.push_back({"euler_contraction_dims", euler_ok ? "pass" : "fail", std::move(grid)});
    rep.timings_ms["koszul"] = ms_since(t0);
}

void add_cohomology_section(Report& rep, const Prepared& p, const RunConfig& cfg) {
    auto t0 = Clock::now();
    const JacobianRing& ring = *p.ring;
    const int n = ring.n();

    CohomologyTable betti = hypersurface_betti(ring);
    CohomologyTable pv = pv_cohomology_table(ring);
    CohomologyTable e2 = e2_table(ring);
    CohomologyTable bott = bott_table(n, 2 * n);
    rep.tables["hypersurface_betti"] = table_json(betti);
    rep.tables["pv"] = table_json(pv);
    rep.tables["e2"] = table_json(e2);
    rep.tables["bott"] = table_json(bott);

    long rw0 = rw0_dim(ring);
    bool total_ok = betti.total() == rw0 + n - 1;
    rep.checks.push_back({"betti_total_identity", total_ok ? "pass" : "fail",
                          OrderedJson::object({{"total", betti.total()},
                                               {"rw0_plus_n_minus_1", rw0 + n - 1}})});
    rep.checks.push_back({"pv_total_matches_hypersurface",
                          pv.total() == betti.total() ? "pass" : "fail",
                          OrderedJson::object({{"pv_total", pv.total()},
                                               {"hypersurface_total", betti.total()}})});

    long corner = 0;
    for (const auto& e : e2.entries)
        if (e.index[0] == n && e.index[1] == 0) corner = e.dim;
    rep.checks.push_back({"e2_corner_vs_primitive", corner == rw0 ? "pass" : "fail",
                          OrderedJson::object({{"corner", corner}, {"rw0", rw0}})});

    // Cross-check the corner against the Koszul-computed top cohomologies
    // when the weight cap reaches every nonzero level.
    const int cap = cfg.effective_weight_cap();
    if (rep.tables.contains("koszul_antidiagonal")) {
        long koszul_sum = 0;
        for (const auto& cx : rep.tables["koszul_antidiagonal"])
            koszul_sum += cx["cohomology"][n].get<long>();
        if (cap >= n - 1) {
            rep.checks.push_back({"e2_corner_vs_koszul", koszul_sum == corner ? "pass" : "fail",
                                  OrderedJson::object({{"koszul_sum", koszul_sum},
                                                       {"corner", corner}})});
        } else {
            rep.checks.push_back(
                {"e2_corner_vs_koszul", "skipped",
                 OrderedJson::object({{"reason", "weight cap below n-1"},
                                      {"partial_sum", koszul_sum},
                                      {"cap", cap}})});
        }
    }
    rep.timings_ms["cohomology"] = ms_since(t0);
}

OrderedJson config_json(const ModelConfig& cfg) {
    OrderedJson c = OrderedJson::object();
    for (const auto& [q, v] : cfg.c) c[std::to_string(q)] = rat_to_string(v);
    OrderedJson j = OrderedJson::object();
    j["c"] = std::move(c);
    j["trace_scale"] = rat_to_string(cfg.trace_scale);
    return j;
}

void add_frobenius_section(Report& rep, const Prepared& p, const RunConfig& cfg) {
    auto t0 = Clock::now();
    FrobAlgebra a(*p.ring, cfg.model_a);

    OrderedJson fj = OrderedJson::object();
    fj["dim"] = a.dim();
    long prim = 0;
    OrderedJson degs = OrderedJson::array();
    for (int i = 0; i < a.dim(); ++i) {
        if (std::holds_alternative<PrimitiveElem>(a.basis()[i]))
            ++prim;
        else
            degs.push_back(a.degree(i));
    }
    fj["primitive_dim"] = prim;
    fj["nonprimitive_degrees"] = std::move(degs);
    fj["config"] = config_json(a.config());

    AxiomReport ax = check_frobenius(a, cfg.effective_threads());
    QMatrix g = a.gram_matrix();
    long grank = rank(g);
    fj["gram_rank"] = grank;
    rep.frobenius = std::move(fj);

    rep.checks.push_back(
        {"frobenius_axioms",
         ax.associative && ax.graded_commutative && ax.unital && ax.trace_invariant ? "pass"
                                                                                    : "fail",
         OrderedJson::object({{"triples", ax.triples_checked},
                              {"first_failure", ax.first_failure}})});
    rep.checks.push_back({"gram_nondegenerate", grank == a.dim() ? "pass" : "fail",
                          OrderedJson::object({{"rank", grank}, {"dim", a.dim()}})});
    rep.checks.push_back({"pairing_parity", ax.parity_symmetry ? "pass" : "fail",
                          OrderedJson::object({{"parity", a.n() % 2}})});

    PhiIso phi = phi_ring_iso(*p.ring, a);
    rep.checks.push_back({"phi_multiplicative", phi.multiplicative ? "pass" : "fail",
                          OrderedJson::object({{"pairs", phi.pairs_checked}})});
    rep.timings_ms["frobenius"] = ms_since(t0);
}

void add_compare_section(Report& rep, const Prepared& p, const RunConfig& cfg) {
    auto t0 = Clock::now();
    FrobAlgebra a(*p.ring, cfg.model_a);
    FrobAlgebra b(*p.ring, cfg.model_b);
    ModelComparison cmp = compare_models(a, b);

    OrderedJson cj = OrderedJson::object();
    cj["model_a"] = config_json(a.config());
    cj["model_b"] = config_json(b.config());
    cj["requires_quadratic_extension"] = cmp.requires_extension;
    if (cmp.requires_extension) {
        cj["discriminant"] = rat_to_string(cmp.discriminant);
        rep.frobenius["comparison"] = std::move(cj);
        rep.checks.push_back(
            {"comparison_pairings", "skipped",
             OrderedJson::object({{"reason", "requires quadratic extension"},
                                  {"discriminant", rat_to_string(cmp.discriminant)}})});
        rep.timings_ms["compare"] = ms_since(t0);
        return;
    }
    cj["c_phi"] = rat_to_string(cmp.c_phi);
    OrderedJson lam = OrderedJson::object();
    for (const auto& [q, v] : cmp.lambda) lam[std::to_string(q)] = rat_to_string(v);
    cj["lambda"] = std::move(lam);
    rep.frobenius["comparison"] = std::move(cj);

    rep.checks.push_back({"comparison_pairings", cmp.pairings_match ? "pass" : "fail",
                          OrderedJson::object({{"c_phi", rat_to_string(cmp.c_phi)}})});
    rep.checks.push_back({"comparison_ring_map", cmp.ring_map ? "pass" : "fail", OrderedJson()});
    rep.timings_ms["compare"] = ms_since(t0);
}

}  // namespace

int RunConfig::effective_weight_cap() const {
    if (max_weight > 0) return max_weight;
    return n <= 4 ? n : 2;
}

int RunConfig::effective_threads() const {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

Report run_hilbert(const RunConfig& cfg) {
    Prepared p = prepare(cfg);
    Report rep;
    start_report(rep, p);
    add_hilbert_section(rep, p, cfg);
    return rep;
}

Report run_koszul(const RunConfig& cfg) {
    Prepared p = prepare(cfg);
    Report rep;
    start_report(rep, p);
    if (!p.cert.isolated) return rep;
    add_koszul_section(rep, p, cfg);
    return rep;
}

Report run_cohomology(const RunConfig& cfg) {
    Prepared p = prepare(cfg);
    Report rep;
    start_report(rep, p);
    if (!p.cert.isolated) return rep;
    add_hilbert_section(rep, p, cfg);
    add_cohomology_section(rep, p, cfg);
    return rep;
}

Report run_frobenius(const RunConfig& cfg) {
    Prepared p = prepare(cfg);
    Report rep;
    start_report(rep, p);
    if (!p.cert.isolated) return rep;
    add_hilbert_section(rep, p, cfg);
    add_frobenius_section(rep, p, cfg);
    return rep;
}

Report run_compare(const RunConfig& cfg) {
    Prepared p = prepare(cfg);
    Report rep;
    start_report(rep, p);
    if (!p.cert.isolated) return rep;
    add_compare_section(rep, p, cfg);
    return rep;
}

Report run_verify(const RunConfig& cfg) {
    auto t0 = Clock::now();
    Prepared p = prepare(cfg);
    Report rep;
    start_report(rep, p);
    if (!p.cert.isolated) return rep;
    add_hilbert_section(rep, p, cfg);
    add_koszul_section(rep, p, cfg);
    add_cohomology_section(rep, p, cfg);
    add_frobenius_section(rep, p, cfg);
    rep.timings_ms["total"] = ms_since(t0);
    return rep;
}

Report run_command(const std::string& command, const RunConfig& cfg) {
    if (command == "hilbert") return run_hilbert(cfg);
    if (command == "koszul") return run_koszul(cfg);
    if (command == "cohomology") return run_cohomology(cfg);
    if (command == "frobenius") return run_frobenius(cfg);
    if (command == "compare") return run_compare(cfg);
    if (command == "verify") return run_verify(cfg);
    throw std::invalid_argument("unknown command: " + command);
}

namespace {

ModelConfig model_from_json(const OrderedJson& j, const char* c_key, const char* t_key) {
    ModelConfig m;
    if (j.contains(c_key))
        for (auto it = j[c_key].begin(); it != j[c_key].end(); ++it)
            m.c[std::stoi(it.key())] = rat_from_string(it.value().get<std::string>());
    if (j.contains(t_key)) m.trace_scale = rat_from_string(j[t_key].get<std::string>());
    return m;
}

}  // namespace

Report run_batch(const OrderedJson& manifest, const RunConfig& base) {
    auto t0 = Clock::now();
    if (!manifest.is_array()) throw std::invalid_argument("manifest must be a JSON array");

    const int count = static_cast<int>(manifest.size());
    std::vector<Report> entry_reports(count);
    std::vector<std::string> entry_errors(count);

    parallel_for(count, base.effective_threads(), [&](int i) {
        const OrderedJson& e = manifest[i];
        try {
            RunConfig cfg = base;
            cfg.threads = 1;  // entries are the parallel unit
            cfg.poly_text = e.at("poly").get<std::string>();
            cfg.n = e.at("n").get<int>();
            if (e.contains("max_weight")) cfg.max_weight = e["max_weight"].get<int>();
            if (e.contains("cell_budget")) cfg.cell_budget = e["cell_budget"].get<long>();
            if (e.contains("chain_samples")) cfg.chain_samples = e["chain_samples"].get<int>();
            if (e.contains("seed")) cfg.seed = e["seed"].get<unsigned>();
            cfg.model_a = model_from_json(e, "c", "trace_scale");
            cfg.model_b = model_from_json(e, "c_b", "trace_scale_b");
            std::string command = e.value("command", std::string("verify"));
            entry_reports[i] = run_command(command, cfg);
        } catch (const std::exception& ex) {
            entry_errors[i] = ex.what();
        }
    });

    Report agg;
    agg.poly = "batch";
    agg.n = 0;
    OrderedJson entries = OrderedJson::array();
    for (int i = 0; i < count; ++i) {
        if (!entry_errors[i].empty()) {
            OrderedJson ej = OrderedJson::object();
            ej["error"] = entry_errors[i];
            entries.push_back(std::move(ej));
            agg.checks.push_back({"entry_" + std::to_string(i), "fail",
                                  OrderedJson::object({{"error", entry_errors[i]}})});
            continue;
        }
        const Report& er = entry_reports[i];
        entries.push_back(report_body_json(er));
        int code = er.exit_code();
        agg.checks.push_back({"entry_" + std::to_string(i), code == 0 ? "pass" : "fail",
                              OrderedJson::object({{"poly", er.poly}, {"exit", code}})});
    }
    agg.extra["entries"] = std::move(entries);
    agg.timings_ms["total"] = ms_since(t0);
    return agg;
}

}  // namespace lgring
