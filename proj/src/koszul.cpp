#include "lgring/koszul.hpp"

#include <algorithm>

namespace lgring {

namespace {

// Sign of inserting index i into the sorted dx-set `key` from the left:
// (-1)^{number of set dx indices below i}. Returns 0 if i is present.
int insert_sign(FormKey key, int i, FormKey& out) {
    FormKey bit = FormKey(1) << i;
    if (key & bit) return 0;
    out = key | bit;
    int below = popcount(key & (bit - 1));
    return (below % 2 == 0) ? 1 : -1;
}

// Lex-ordered r-subsets of {0..n-1}.
std::vector<std::vector<int>> combinations(int n, int r) {
    std::vector<std::vector<int>> out;
    if (r < 0 || r > n) return out;
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (r == 0) out = {{}};
    return out;
}

FormKey key_of(const std::vector<int>& sorted_indices) {
    FormKey k = 0;
    for (int i : sorted_indices) k |= FormKey(1) << i;
    return k;
}

}  // namespace

AlgForm AlgForm::from_function(const Poly& g) {
    AlgForm w(g.n_vars(), 0);
    if (!g.is_zero()) w.comps_.emplace(FormKey(0), g);
    return w;
}

AlgForm AlgForm::term(const Poly& coeff, const std::vector<int>& dx_indices) {
    // Sort the tuple, tracking the permutation sign; duplicates kill the term.
    std::vector<int> idx = dx_indices;
    int sign = 1;
    for (size_t i = 0; i + 1 < idx.size(); ++i)
        for (size_t j = 0; j + 1 < idx.size() - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
    for (size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i] == idx[i + 1]) return AlgForm(coeff.n_vars(), static_cast<int>(dx_indices.size()));
    AlgForm w(coeff.n_vars(), static_cast<int>(idx.size()));
    Poly c = (sign > 0) ? coeff : -coeff;
    if (!c.is_zero()) w.comps_.emplace(key_of(idx), std::move(c));
    return w;
}

Poly AlgForm::component(FormKey key) const {
    auto it = comps_.find(key);
    return it == comps_.end() ? Poly::zero(n_) : it->second;
}

void AlgForm::add_component(FormKey key, const Poly& coeff) {
    if (coeff.is_zero()) return;
    if (popcount(key) != s_) throw std::invalid_argument("component degree mismatch");
    auto [it, inserted] = comps_.emplace(key, coeff);
    if (!inserted) {
        it->second = it->second + coeff;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

AlgForm AlgForm::operator+(const AlgForm& o) const {
    AlgForm r = *this;
    for (const auto& [k, c] : o.comps_) r.add_component(k, c);
    return r;
}

AlgForm AlgForm::operator*(const Rat& c) const {
    AlgForm r(n_, s_);
    if (sgn(c) == 0) return r;
    for (const auto& [k, q] : comps_) r.comps_.emplace(k, q * c);
    return r;
}

bool AlgForm::operator==(const AlgForm& o) const {
    return n_ == o.n_ && s_ == o.s_ && comps_ == o.comps_;
}

Poly XForm::component(FormKey key) const {
    auto it = comps_.find(key);
    return it == comps_.end() ? Poly::zero(n_) : it->second;
}

void XForm::add_component(FormKey key, const Poly& coeff) {
    if (coeff.is_zero()) return;
    if (popcount(key) != s_) throw std::invalid_argument("component degree mismatch");
    auto [it, inserted] = comps_.emplace(key, coeff);
    if (!inserted) {
        it->second = it->second + coeff;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

XForm XForm::operator+(const XForm& o) const {
    XForm r = *this;
    for (const auto& [k, c] : o.comps_) r.add_component(k, c);
    return r;
}

XForm XForm::operator-(const XForm& o) const {
    XForm r = *this;
    for (const auto& [k, c] : o.comps_) r.add_component(k, -c);
    return r;
}

bool XForm::operator==(const XForm& o) const {
    return n_ == o.n_ && s_ == o.s_ && comps_ == o.comps_;
}

XForm XForm::wedge_one_form(const std::vector<Poly>& dx_coeffs, const Poly& dp_coeff) const {
    XForm out(n_, s_ + 1);
    const FormKey dp = dp_bit();
    for (const auto& [key, c] : comps_) {
        // dx_i from the left: crosses the dx factors below i; dp stays last.
        for (int i = 0; i < n_; ++i) {
            if (dx_coeffs[i].is_zero()) continue;
            FormKey nk;
            int sg = insert_sign(key & ~dp, i, nk);
            if (sg == 0) continue;
            nk |= key & dp;
            Poly add = dx_coeffs[i] * c;
            out.add_component(nk, sg > 0 ? add : -add);
        }
        // dp from the left: crosses every dx factor.
        if (!dp_coeff.is_zero() && !(key & dp)) {
            int sg = (popcount(key) % 2 == 0) ? 1 : -1;
            Poly add = dp_coeff * c;
            out.add_component(key | dp, sg > 0 ? add : -add);
        }
    }
    return out;
}

AlgForm wedge_df(const Poly& f, const AlgForm& omega) {
    const int n = f.n_vars();
    AlgForm out(n, omega.degree() + 1);
    if (omega.degree() >= n) return out;  // top degree wedges to zero
    std::vector<Poly> partials;
    for (int i = 0; i < n; ++i) partials.push_back(f.derivative(VarRef::x(i)));
    for (const auto& [key, c] : omega.components()) {
        for (int i = 0; i < n; ++i) {
            if (partials[i].is_zero()) continue;
            FormKey nk;
            int sg = insert_sign(key, i, nk);
            if (sg == 0) continue;
            Poly add = partials[i] * c;
            out.add_component(nk, sg > 0 ? add : -add);
        }
    }
    return out;
}

std::vector<std::pair<std::vector<int>, Monomial>> koszul_slot_basis(int n, int s, int k) {
    std::vector<std::pair<std::vector<int>, Monomial>> out;
    if (k < 0) return out;
    const int coeff_deg = k * n - s;
    if (coeff_deg < 0) return out;
    auto subsets = combinations(n, s);
    auto monos = enumerate_monomials(n, coeff_deg);
    for (const auto& J : subsets)
        for (const auto& u : monos) out.emplace_back(J, u);
    return out;
}

AntiDiagonalComplex build_antidiagonal(const JacobianRing& ring, int k_top, long cell_budget) {
    const int n = ring.n();
    const Poly& f = ring.f();
    AntiDiagonalComplex cx;
    cx.k_top = k_top;
    cx.slot_dims.assign(n + 1, 0);
    cx.ranks.assign(n, 0);

    std::vector<std::vector<std::pair<std::vector<int>, Monomial>>> bases(n + 1);
    for (int s = 0; s <= n; ++s) {
        bases[s] = koszul_slot_basis(n, s, k_top - n + s);
        cx.slot_dims[s] = static_cast<long>(bases[s].size());
    }

    for (int s = 0; s < n; ++s) {
        const auto& dom = bases[s];
        const auto& cod = bases[s + 1];
        if (static_cast<long>(dom.size()) * static_cast<long>(cod.size()) > cell_budget)
            throw ResourceError("Koszul slot matrix for k_top=" + std::to_string(k_top) +
                                ", s=" + std::to_string(s) + " exceeds the cell budget");
        if (dom.empty() || cod.empty()) {
            cx.differentials.push_back(QMatrix::zero(static_cast<int>(cod.size()),
                                                     static_cast<int>(dom.size())));
            continue;
        }
        // Index lookup for the codomain: (subset key, monomial index).
        GradedSlice cod_slice = GradedSlice::of(n, (k_top - n + s + 1) * n - (s + 1));
        const long cod_monos = static_cast<long>(cod_slice.basis.size());
        std::map<FormKey, long> cod_subset_pos;
        {
            long pos = 0;
            auto subsets = combinations(n, s + 1);
            for (const auto& J : subsets) cod_subset_pos.emplace(key_of(J), pos++);
        }

        std::vector<Poly> partials;
        for (int i = 0; i < n; ++i) partials.push_back(f.derivative(VarRef::x(i)));

        std::vector<Triplet> t;
        for (long col = 0; col < static_cast<long>(dom.size()); ++col) {
            const auto& [J, u] = dom[col];
            FormKey jk = key_of(J);
            for (int i = 0; i < n; ++i) {
                FormKey nk;
                int sg = insert_sign(jk, i, nk);
                if (sg == 0) continue;
                long subset_base = cod_subset_pos.at(nk) * cod_monos;
                for (const auto& [mono, c] : partials[i].terms()) {
                    Monomial prod = mono;
                    for (int q = 0; q < n; ++q) prod.x[q] += u.x[q];
                    long row = subset_base + cod_slice.index_of(prod);
                    t.push_back({static_cast<int>(row), static_cast<int>(col),
                                 sg > 0 ? c : -c});
                }
            }
        }
        cx.differentials.push_back(QMatrix::from_triplets(static_cast<int>(cod.size()),
                                                          static_cast<int>(dom.size()),
                                                          std::move(t)));
    }

    for (int s = 0; s < n; ++s) cx.ranks[s] = rank(cx.differentials[s]);

    cx.cohomology.assign(n + 1, 0);
    for (int s = 0; s <= n; ++s) {
        long rank_out = (s < n) ? cx.ranks[s] : 0;
        long rank_in = (s > 0) ? cx.ranks[s - 1] : 0;
        cx.cohomology[s] = cx.slot_dims[s] - rank_out - rank_in;
    }
    return cx;
}

std::vector<long> antidiagonal_cohomology(const JacobianRing& ring, int k_top, long cell_budget) {
    if (k_top < 1) throw std::invalid_argument("k_top must be positive");
    if (!ring.certify_isolated().isolated)
        throw NotIsolatedError("antidiagonal cohomology requires an isolated singularity");
    return build_antidiagonal(ring, k_top, cell_budget).cohomology;
}

XForm homogenize_form(const AlgForm& omega) {
    const int n = omega.n_vars();
    const int s = omega.degree();
    XForm out(n, s);
    for (const auto& [key, coeff] : omega.components()) {
        // Decode the sorted dx tuple.
        std::vector<int> J;
        for (int i = 0; i < n; ++i)
            if (key & (FormKey(1) << i)) J.push_back(i);

        for (const auto& [mono, c] : coeff.terms()) {
            if (mono.p != 0) throw std::invalid_argument("homogenize_form: coefficients must be p-free");
            const int d = mono.x_degree();
            if ((d + s) % n != 0)
                throw std::invalid_argument("homogenize_form: coefficient degree " +
                                            std::to_string(d) + " is not -s mod n");
            const int k = (d + s) / n;
            if (s != 0 && k < 1)
                throw std::invalid_argument("homogenize_form: homogenized coefficient not "
                                            "divisible by p");
            // F-part: p^k * term on the dx tuple.
            Monomial fm = mono;
            fm.p = k;
            out.add_component(key, Poly::monomial(fm, c));
            // dp-parts: replace dx_{j_t} by dp in place, then move dp to the
            // end across s-t factors; the 1/(np) cancels into p^{k-1}/n.
            for (int t = 0; t < s; ++t) {
                Monomial gm = mono;
                gm.x[J[t]] += 1;
                gm.p = k - 1;
                int sg = ((s - 1 - t) % 2 == 0) ? 1 : -1;
                Rat cc = c / n;
                FormKey nk = (key & ~(FormKey(1) << J[t])) | (FormKey(1) << n);
                out.add_component(nk, Poly::monomial(gm, sg > 0 ? cc : -cc));
            }
        }
    }
    return out;
}

bool check_chain_map(const Poly& f, const AlgForm& omega) {
    const int n = f.n_vars();
    // dW = p df + f dp.
    std::vector<Poly> dx_coeffs;
    Poly p = Poly::var_p(n);
    for (int i = 0; i < n; ++i) dx_coeffs.push_back(p * f.derivative(VarRef::x(i)));
    XForm lhs = homogenize_form(omega).wedge_one_form(dx_coeffs, f);
    XForm rhs = homogenize_form(wedge_df(f, omega));
    return lhs == rhs;
}

namespace {

// Basis element of the charge-0 weight-w slice of Lambda^r over Q[x, p]:
// a factor tuple (dx's sorted, dp last when present) and a monomial.
struct ContractionBasis {
    std::vector<std::pair<FormKey, Monomial>> elems;
    std::map<FormKey, long> subset_base;  // key -> first index of its block
};

ContractionBasis contraction_slice_basis(int n, int r, int w) {
    ContractionBasis b;
    long pos = 0;
    // dx-only subsets: p-exponent w, x-degree nw - r.
    if (r >= 0 && r <= n && n * w - r >= 0) {
        auto monos = enumerate_monomials(n, n * w - r);
        for (const auto& J : combinations(n, r)) {
            FormKey key = key_of(J);
            b.subset_base.emplace(key, pos);
            for (const auto& u : monos) {
                Monomial m = u;
                m.p = w;
                b.elems.emplace_back(key, m);
                ++pos;
            }
        }
    }
    // dp subsets: r-1 dx factors, p-exponent w-1, x-degree nw - r + 1.
    if (r >= 1 && r - 1 <= n && w >= 1 && n * w - r + 1 >= 0) {
        auto monos = enumerate_monomials(n, n * w - r + 1);
        for (const auto& J : combinations(n, r - 1)) {
            FormKey key = key_of(J) | (FormKey(1) << n);
            b.subset_base.emplace(key, pos);
            for (const auto& u : monos) {
                Monomial m = u;
                m.p = w - 1;
                b.elems.emplace_back(key, m);
                ++pos;
            }
        }
    }
    return b;
}

}  // namespace

long euler_contraction_kernel_dim(int n, int r, int w, long cell_budget) {
    if (r < 0 || r > n + 1 || w < 0) throw std::invalid_argument("bad contraction slice");
    ContractionBasis dom = contraction_slice_basis(n, r, w);
    if (r == 0) return static_cast<long>(dom.elems.size());
    ContractionBasis cod = contraction_slice_basis(n, r - 1, w);
    if (static_cast<long>(dom.elems.size()) * static_cast<long>(cod.elems.size()) > cell_budget)
        throw ResourceError("contraction slice exceeds the cell budget");

    // Row index inside a codomain block = canonical index of the monomial's
    // x-part (every element of a block shares the p-exponent).
    std::map<int, GradedSlice> slices;  // x-degree -> slice
    auto row_of = [&](FormKey key, const Monomial& m) -> long {
        auto it = cod.subset_base.find(key);
        if (it == cod.subset_base.end())
            throw std::logic_error("contraction image left the graded slice");
        auto sit = slices.find(m.x_degree());
        if (sit == slices.end())
            sit = slices.emplace(m.x_degree(), GradedSlice::of(n, m.x_degree())).first;
        Monomial xpart = m;
        xpart.p = 0;
        int idx = sit->second.index_of(xpart);
        if (idx < 0) throw std::logic_error("contraction image left the graded slice");
        return it->second + idx;
    };

    const FormKey dp = FormKey(1) << n;
    std::vector<Triplet> t;
    for (long col = 0; col < static_cast<long>(dom.elems.size()); ++col) {
        const auto& [key, m] = dom.elems[col];
        // Contract each tuple factor in order: dx's ascending, dp last.
        int tpos = 0;
        for (int i = 0; i < n; ++i) {
            if (!(key & (FormKey(1) << i))) continue;
            int sg = (tpos % 2 == 0) ? 1 : -1;
            Monomial out = m;
            out.x[i] += 1;
            long row = row_of(key & ~(FormKey(1) << i), out);
            t.push_back({static_cast<int>(row), static_cast<int>(col), Rat(sg)});
            ++tpos;
        }
        if (key & dp) {
            int sg = (tpos % 2 == 0) ? 1 : -1;
            Monomial out = m;
            out.p += 1;
            long row = row_of(key & ~dp, out);
            t.push_back({static_cast<int>(row), static_cast<int>(col), Rat(-sg * n)});
        }
    }
    QMatrix mat = QMatrix::from_triplets(static_cast<int>(cod.elems.size()),
                                         static_cast<int>(dom.elems.size()), std::move(t));
    return static_cast<long>(dom.elems.size()) - rank(mat);
}

}  // namespace lgring
