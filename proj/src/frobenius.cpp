#include "lgring/frobenius.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace lgring {

std::string basis_elem_name(const FrobBasisElem& e) {
    if (std::holds_alternative<NonPrimitiveElem>(e)) {
        int q = std::get<NonPrimitiveElem>(e).q;
        return "e_" + std::to_string(q);
    }
    const auto& pe = std::get<PrimitiveElem>(e);
    Monomial m = pe.mono;
    m.p = pe.k;
    std::ostringstream out;
    out << "[" << Poly::monomial(m, 1).to_string() << "]";
    return out.str();
}

FrobAlgebra::FrobAlgebra(const JacobianRing& ring, const ModelConfig& cfg)
    : n_(ring.n()), cfg_(cfg), poly_echo_(ring.f().to_string()) {
    if (!ring.certify_isolated().isolated)
        throw NotIsolatedError("Frobenius model requires an isolated singularity");
    if (sgn(cfg_.trace_scale) == 0)
        throw std::invalid_argument("trace scale must be nonzero");
    // Fill scalar defaults: q = 2i-n for i = 1..n-1, keyed by |q| (and 0).
    for (int i = 1; i <= n_ - 1; ++i) {
        int q = 2 * i - n_;
        if (q < 0) continue;
        if (!cfg_.c.count(q)) cfg_.c.emplace(q, Rat(1));
    }
    for (const auto& [q, v] : cfg_.c) {
        if (q < 0 || (q == 0 && n_ % 2 != 0) || (q > 0 && (q + n_) % 2 != 0) || q > n_ - 2)
            throw std::invalid_argument("config scalar c_" + std::to_string(q) +
                                        " does not match a non-primitive degree");
        if (sgn(v) == 0)
            throw std::invalid_argument("config scalar c_" + std::to_string(q) + " must be nonzero");
    }

    // Basis: primitive block in (k, monomial) order, then e_q by ascending q.
    for (int k = 0; k <= n_ - 2; ++k) {
        for (const auto& m : ring.standard_monomials(k * n_)) {
            basis_.push_back(PrimitiveElem{k, m});
            degrees_.push_back(0);
        }
    }
    const int primitive_count = static_cast<int>(basis_.size());
    for (int i = 1; i <= n_ - 1; ++i) {
        basis_.push_back(NonPrimitiveElem{2 * i - n_});
        degrees_.push_back(2 * i - n_);
    }

    // Unit and socle positions. std_monomials(0) = {1}; the socle slice is
    // one-dimensional for a certified input.
    for (int i = 0; i < primitive_count; ++i) {
        const auto& pe = std::get<PrimitiveElem>(basis_[i]);
        if (pe.k == 0) unit_index_ = i;
        if (pe.k == n_ - 2) socle_index_ = i;
    }
    if (unit_index_ != 0 || socle_index_ != primitive_count - 1)
        throw std::logic_error("unexpected basis layout");

    trace_vec_.assign(basis_.size(), Rat(0));
    trace_vec_[socle_index_] = cfg_.trace_scale;

    build_table(ring);
}

Rat FrobAlgebra::c_signed(int q) const {
    if (q >= 0) return cfg_.c.at(q);
    Rat c = cfg_.c.at(-q);
    return (n_ % 2 == 0) ? c : -c;
}

void FrobAlgebra::build_table(const JacobianRing& ring) {
    const int d = dim();
    // First basis index of each primitive level; levels are contiguous and
    // in standard-monomial order, matching normal_form_monomial indices.
    std::vector<int> level_base(n_ - 1, 0);
    int primitive_count = 0;
    for (int i = 0; i < d; ++i) {
        if (!std::holds_alternative<PrimitiveElem>(basis_[i])) continue;
        const auto& pe = std::get<PrimitiveElem>(basis_[i]);
        if (level_base[pe.k] == 0 && pe.k > 0) level_base[pe.k] = i;
        ++primitive_count;
    }
    auto nonprim_index = [&](int q) { return primitive_count + (q + n_ - 2) / 2; };

    table_.assign(d, std::vector<FrobVec>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            FrobVec prod;
            const bool pi = std::holds_alternative<PrimitiveElem>(basis_[i]);
            const bool pj = std::holds_alternative<PrimitiveElem>(basis_[j]);
            if (pi && pj) {
                const auto& a = std::get<PrimitiveElem>(basis_[i]);
                const auto& b = std::get<PrimitiveElem>(basis_[j]);
                const int k = a.k + b.k;
                if (k <= n_ - 2) {
                    Monomial m = a.mono;
                    for (int t = 0; t < n_; ++t) m.x[t] += b.mono.x[t];
                    for (const auto& [idx, c] : ring.normal_form_monomial(m))
                        prod.emplace(level_base[k] + idx, c);
                }
            } else if (pi != pj) {
                const auto& pe = std::get<PrimitiveElem>(pi ? basis_[i] : basis_[j]);
                const auto& ne = std::get<NonPrimitiveElem>(pi ? basis_[j] : basis_[i]);
                if (pe.k == 0) prod.emplace(nonprim_index(ne.q), Rat(1));
                // p-positive primitives annihilate every e_q.
            } else {
                const auto& a = std::get<NonPrimitiveElem>(basis_[i]);
                const auto& b = std::get<NonPrimitiveElem>(basis_[j]);
                if (a.q + b.q == 0) prod.emplace(socle_index_, c_signed(b.q));
            }
            table_[i][j] = prod;
            if (i != j) {
                // Graded commutativity fills the mirror entry.
                int sign = (degrees_[i] % 2 != 0 && degrees_[j] % 2 != 0) ? -1 : 1;
                FrobVec mirror;
                for (const auto& [idx, v] : prod) mirror.emplace(idx, sign > 0 ? v : -v);
                table_[j][i] = std::move(mirror);
            }
        }
    }
}

const FrobVec& FrobAlgebra::basis_product(int i, int j) const { return table_[i][j]; }

FrobVec FrobAlgebra::multiply(const FrobVec& a, const FrobVec& b) const {
    FrobVec out;
    for (const auto& [i, va] : a) {
        if (i < 0 || i >= dim()) throw std::invalid_argument("coefficient vector out of range");
        for (const auto& [j, vb] : b) {
            if (j < 0 || j >= dim()) throw std::invalid_argument("coefficient vector out of range");
            const Rat f = va * vb;
            for (const auto& [t, w] : table_[i][j]) {
                auto [it, inserted] = out.emplace(t, f * w);
                if (!inserted) {
                    it->second += f * w;
                    if (sgn(it->second) == 0) out.erase(it);
                }
            }
        }
    }
    return out;
}

Rat FrobAlgebra::trace(const FrobVec& a) const {
    auto it = a.find(socle_index_);
    return it == a.end() ? Rat(0) : it->second * cfg_.trace_scale;
}

QMatrix FrobAlgebra::gram_matrix() const {
    const int d = dim();
    std::vector<Triplet> t;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            auto it = table_[i][j].find(socle_index_);
            if (it != table_[i][j].end() && sgn(it->second) != 0)
                t.push_back({i, j, it->second * cfg_.trace_scale});
        }
    return QMatrix::from_triplets(d, d, std::move(t));
}

namespace {

bool vec_equal(const FrobVec& a, const FrobVec& b) { return a == b; }

}  // namespace

AxiomReport check_frobenius(const FrobAlgebra& a, int threads) {
    AxiomReport rep;
    const int d = a.dim();

    // Unit law.
    const int e = a.unit_index();
    for (int i = 0; i < d && rep.unital; ++i) {
        FrobVec expected{{i, Rat(1)}};
        if (!vec_equal(a.basis_product(e, i), expected) ||
            !vec_equal(a.basis_product(i, e), expected)) {
            rep.unital = false;
            rep.first_failure = "unit law at basis " + std::to_string(i);
        }
    }

    // Graded commutativity on pairs.
    for (int i = 0; i < d && rep.graded_commutative; ++i) {
        for (int j = 0; j < d; ++j) {
            int sign = (a.degree(i) % 2 != 0 && a.degree(j) % 2 != 0) ? -1 : 1;
            FrobVec mirrored;
            for (const auto& [t, v] : a.basis_product(j, i))
                mirrored.emplace(t, sign > 0 ? v : -v);
            if (!vec_equal(a.basis_product(i, j), mirrored)) {
                rep.graded_commutative = false;
                rep.first_failure =
                    "commutativity at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                break;
            }
        }
    }

    // Associativity and trace invariance over all triples. Parallel over
    // the first index; the smallest failing triple wins. Worker-local dense
    // accumulators keep the inner loop allocation-free.
    const long total = static_cast<long>(d) * d * d;
    rep.triples_checked = total;
    std::atomic<long> first_bad{total};
    int nthreads = std::max(1, threads);
    std::vector<std::thread> pool;
    std::atomic<int> next_i{0};
    auto worker = [&]() {
        std::vector<Rat> accl(d), accr(d);
        std::vector<int> touchl, touchr;
        auto clear = [](std::vector<Rat>& acc, std::vector<int>& touch) {
            for (int t : touch) acc[t] = 0;
            touch.clear();
        };
        while (true) {
            int i = next_i.fetch_add(1);
            if (i >= d) break;
            if (first_bad.load() < static_cast<long>(i) * d * d) continue;
            for (int j = 0; j < d; ++j) {
                const FrobVec& ij = a.basis_product(i, j);
                for (int k = 0; k < d; ++k) {
                    const FrobVec& jk = a.basis_product(j, k);
                    // left = (b_i b_j) b_k, right = b_i (b_j b_k)
                    for (const auto& [t, v] : ij)
                        for (const auto& [u, w] : a.basis_product(t, k)) {
                            if (sgn(accl[u]) == 0) touchl.push_back(u);
                            accl[u] += v * w;
                        }
                    for (const auto& [t, v] : jk)
                        for (const auto& [u, w] : a.basis_product(i, t)) {
                            if (sgn(accr[u]) == 0) touchr.push_back(u);
                            accr[u] += v * w;
                        }
                    bool ok = true;
                    for (int t : touchl)
                        if (accl[t] != accr[t]) ok = false;
                    for (int t : touchr)
                        if (accl[t] != accr[t]) ok = false;
                    clear(accl, touchl);
                    clear(accr, touchr);
                    if (!ok) {
                        long idx = (static_cast<long>(i) * d + j) * d + k;
                        long cur = first_bad.load();
                        while (idx < cur && !first_bad.compare_exchange_weak(cur, idx)) {
                        }
                        break;
                    }
                }
            }
        }
    };
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_bad.load() < total) {
        long idx = first_bad.load();
        rep.associative = false;
        rep.trace_invariant = false;
        rep.first_failure = "associativity/invariance at triple " + std::to_string(idx);
    }

    // Nondegeneracy.
    QMatrix g = a.gram_matrix();
    if (rank(g) != d) {
        rep.nondegenerate = false;
        if (rep.first_failure.empty()) rep.first_failure = "gram matrix is singular";
    }

    // Pairing parity on the non-primitive span: antisymmetric for odd n,
    // symmetric for even n.
    const int parity = a.n() % 2;
    for (int i = 0; i < d && rep.parity_symmetry; ++i) {
        if (std::holds_alternative<PrimitiveElem>(a.basis()[i])) continue;
        for (int j = 0; j < d; ++j) {
            if (std::holds_alternative<PrimitiveElem>(a.basis()[j])) continue;
            Rat kij = a.trace(a.basis_product(i, j));
            Rat kji = a.trace(a.basis_product(j, i));
            Rat expect = (parity == 1) ? Rat(-kji) : kji;
            if (kij != expect) {
                rep.parity_symmetry = false;
                rep.first_failure =
                    "pairing parity at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                break;
            }
        }
    }
    return rep;
}

PhiIso phi_ring_iso(const JacobianRing& ring, const FrobAlgebra& a) {
    const int n = ring.n();
    PhiIso iso;
    std::vector<std::vector<Monomial>> level(n - 1);
    std::vector<std::vector<int>> level_index(n - 1);  // algebra basis indices
    {
        int pos = 0;
        for (int k = 0; k <= n - 2; ++k) {
            level[k] = ring.standard_monomials(k * n);
            for (const auto& m : level[k]) {
                level_index[k].push_back(pos++);
                Monomial with_p = m;
                with_p.p = k;
                iso.mapping.emplace_back("[" + Poly::monomial(with_p, 1).to_string() + "]",
                                         "[" + Poly::monomial(m, 1).to_string() + "]");
            }
        }
    }

    // phi([p^j g]) = [g]: the algebra's truncated product must match the
    // Jacobian-ring product level by level. Levels with (j+k)n above the
    // socle degree vanish in R(f) by the certified degree-wise vanishing,
    // so only levels j+k <= n-2 need an explicit normal form.
    for (int j = 0; j <= n - 2; ++j) {
        for (int k = 0; k <= n - 2; ++k) {
            for (size_t gi = 0; gi < level[j].size(); ++gi) {
                for (size_t hi = 0; hi < level[k].size(); ++hi) {
                    const FrobVec& table_prod =
                        a.basis_product(level_index[j][gi], level_index[k][hi]);
                    if (j + k > n - 2) {
                        if (!table_prod.empty()) iso.multiplicative = false;
                    } else {
                        Monomial m = level[j][gi];
                        for (int t = 0; t < n; ++t) m.x[t] += level[k][hi].x[t];
                        FrobVec expect;
                        for (const auto& [idx, c] : ring.normal_form_monomial(m))
                            expect.emplace(level_index[j + k][idx], c);
                        if (table_prod != expect) iso.multiplicative = false;
                    }
                    ++iso.pairs_checked;
                }
            }
        }
    }
    return iso;
}

ModelComparison compare_models(const FrobAlgebra& a, const FrobAlgebra& b) {
    ModelComparison cmp;
    if (a.poly_echo() != b.poly_echo() || a.dim() != b.dim()) {
        cmp.same_f = false;
        return cmp;
    }
    const int n = a.n();
    cmp.c_phi = b.config().trace_scale / a.config().trace_scale;

    // lambda_q lambda_{-q} c_q^B = c_q^A for q > 0 (take lambda_{-q} = 1);
    // lambda_0^2 c_0^B = c_0^A for even n.
    for (int i = 1; i <= n - 1; ++i) {
        int q = 2 * i - n;
        if (q < 0) {
            cmp.lambda.emplace(q, Rat(1));
        } else if (q > 0) {
            cmp.lambda.emplace(q, a.config().c.at(q) / b.config().c.at(q));
        } else {
            Rat ratio = a.config().c.at(0) / b.config().c.at(0);
            auto root = rat_sqrt(ratio);
            if (!root) {
                cmp.requires_extension = true;
                cmp.discriminant = ratio;
                return cmp;
            }
            cmp.lambda.emplace(0, *root);
        }
    }

    // Phi is diagonal: identity on primitives, lambda_q on e_q.
    const int d = a.dim();
    std::vector<Rat> scale(d, Rat(1));
    for (int i = 0; i < d; ++i)
        if (std::holds_alternative<NonPrimitiveElem>(a.basis()[i]))
            scale[i] = cmp.lambda.at(std::get<NonPrimitiveElem>(a.basis()[i]).q);

    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            // Pairing: c_phi K_A(i, j) = K_B(Phi i, Phi j).
            Rat ka = a.trace(a.basis_product(i, j));
            Rat kb = b.trace(b.basis_product(i, j)) * scale[i] * scale[j];
            if (cmp.c_phi * ka != kb) cmp.pairings_match = false;
            // Ring map: Phi(e_i e_j) = Phi(e_i) Phi(e_j).
            FrobVec lhs;
            for (const auto& [t, v] : a.basis_product(i, j)) lhs.emplace(t, v * scale[t]);
            FrobVec rhs;
            for (const auto& [t, v] : b.basis_product(i, j)) {
                Rat w = v * scale[i] * scale[j];
                if (sgn(w) != 0) rhs.emplace(t, w);
            }
            if (lhs != rhs) cmp.ring_map = false;
        }
    }
    return cmp;
}

}  // namespace lgring
