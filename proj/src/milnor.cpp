#include "lgring/milnor.hpp"

#include <algorithm>

namespace lgring {

GradedSlice GradedSlice::of(int n, int degree) {
    GradedSlice s;
    s.degree = degree;
    s.basis = enumerate_monomials(n, degree);
    return s;
}

int GradedSlice::index_of(const Monomial& m) const {
    MonoLess less;
    auto it = std::lower_bound(basis.begin(), basis.end(), m, less);
    if (it != basis.end() && *it == m) return static_cast<int>(it - basis.begin());
    return -1;
}

namespace {

void check_input(const Poly& f) {
    int n = f.n_vars();
    if (n < 3)
        throw std::invalid_argument("n >= 3 required: the construction needs a "
                                    "positive-dimensional hypersurface");
    if (f.has_p()) throw std::invalid_argument("f must not involve p");
    if (f.is_zero() || !f.is_homogeneous(Grading::x_degree, n))
        throw std::invalid_argument("f must be homogeneous of x-degree n = " + std::to_string(n));
}

}  // namespace

QMatrix jacobian_slice_matrix(const Poly& f, int m) {
    check_input(f);
    const int n = f.n_vars();
    GradedSlice target = GradedSlice::of(n, m);
    const int rows = static_cast<int>(target.basis.size());
    if (m < n - 1) return QMatrix::zero(rows, 0);

    std::vector<Poly> partials;
    for (int i = 0; i < n; ++i) partials.push_back(f.derivative(VarRef::x(i)));

    std::vector<Monomial> gens = enumerate_monomials(n, m - n + 1);
    const int cols = n * static_cast<int>(gens.size());
    std::vector<Triplet> t;
    int col = 0;
    for (int i = 0; i < n; ++i) {
        for (const auto& u : gens) {
            for (const auto& [mono, c] : partials[i].terms()) {
                Monomial prod = mono;
                for (int k = 0; k < n; ++k) prod.x[k] += u.x[k];
                int row = target.index_of(prod);
                t.push_back({row, col, c});
            }
            ++col;
        }
    }
    return QMatrix::from_triplets(rows, cols, std::move(t));
}

JacobianRing::JacobianRing(Poly f, long cell_budget)
    : f_(std::move(f)), n_(f_.n_vars()), cell_budget_(cell_budget) {
    check_input(f_);
    for (int i = 0; i < n_; ++i) partials_.push_back(f_.derivative(VarRef::x(i)));
}

const JacobianRing::DegreeData& JacobianRing::degree_data(int m) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(m);
        if (it != cache_.end()) return it->second;
    }

    // Row arrangement: rows are the products u * df/dx_i expressed in the
    // monomial coordinates of Q[x]_m, so rref pivots mark the leading
    // monomials of J(f)_m and their complement is the standard basis.
    GradedSlice slice = GradedSlice::of(n_, m);
    const int cols = static_cast<int>(slice.basis.size());
    std::vector<Monomial> gens = enumerate_monomials(n_, m - n_ + 1);
    const int rows = n_ * static_cast<int>(gens.size());
    if (static_cast<long>(rows) * cols > cell_budget_)
        throw ResourceError("Jacobian slice at degree " + std::to_string(m) + " needs " +
                            std::to_string(rows) + "x" + std::to_string(cols) +
                            " cells; raise --cell-budget or lower the degree range");

    std::vector<Triplet> t;
    int row = 0;
    for (int i = 0; i < n_; ++i) {
        for (const auto& u : gens) {
            for (const auto& [mono, c] : partials_[i].terms()) {
                Monomial prod = mono;
                for (int k = 0; k < n_; ++k) prod.x[k] += u.x[k];
                t.push_back({row, slice.index_of(prod), c});
            }
            ++row;
        }
    }
    RrefResult r = rref(QMatrix::from_triplets(rows, cols, std::move(t)));

    DegreeData d;
    d.slice = std::move(slice);
    d.rank = r.rank;
    d.pivot_cols = r.pivot_cols;
    d.col_code.assign(cols, 0);
    for (int i = 0; i < r.rank; ++i) d.col_code[r.pivot_cols[i]] = ~i;
    for (int c = 0; c < cols; ++c)
        if (d.col_code[c] >= 0) {
            d.col_code[c] = static_cast<int>(d.std_cols.size());
            d.std_cols.push_back(c);
        }
    d.reduced_rows.reserve(r.rank);
    for (int i = 0; i < r.rank; ++i) d.reduced_rows.push_back(r.reduced.sparse_row(i));

    // Distinct degrees may be computed concurrently; a lost race just
    // discards an identical result.
    std::lock_guard<std::mutex> lock(mutex_);
    auto [pos, inserted] = cache_.emplace(m, std::move(d));
    return pos->second;
}

long JacobianRing::hilbert(int m) const {
    if (m < 0) return 0;
    const DegreeData& d = degree_data(m);
    return monomial_count(n_, m) - d.rank;
}

std::vector<Monomial> JacobianRing::standard_monomials(int m) const {
    const DegreeData& d = degree_data(m);
    std::vector<Monomial> out;
    out.reserve(d.std_cols.size());
    for (int c : d.std_cols) out.push_back(d.slice.basis[c]);
    return out;
}

std::vector<std::pair<int, Rat>> JacobianRing::normal_form_monomial(const Monomial& m) const {
    if (m.p != 0) throw std::invalid_argument("normal_form: monomial must be p-free");
    const DegreeData& d = degree_data(m.x_degree());
    int col = d.slice.index_of(m);
    if (col < 0) throw std::invalid_argument("monomial outside the graded slice");
    int code = d.col_code[col];
    if (code >= 0) return {{code, Rat(1)}};
    // Pivot column: subtract the (fully reduced) pivot row once. Its other
    // entries sit on standard columns only.
    std::vector<std::pair<int, Rat>> out;
    for (const auto& [c, w] : d.reduced_rows[~code]) {
        if (c == col) continue;
        out.emplace_back(d.col_code[c], -w);
    }
    return out;
}

std::vector<Rat> JacobianRing::normal_form(const Poly& g) const {
    if (g.has_p()) throw std::invalid_argument("normal_form: g must be p-free");
    if (g.is_zero()) return {};
    const int m = g.x_degree();
    if (!g.is_homogeneous(Grading::x_degree, m))
        throw std::invalid_argument("normal_form: g must be homogeneous");

    const DegreeData& d = degree_data(m);
    std::vector<Rat> coords(d.std_cols.size(), Rat(0));
    for (const auto& [mono, c] : g.terms())
        for (const auto& [idx, w] : normal_form_monomial(mono)) coords[idx] += c * w;
    return coords;
}

IsolatedCertificate JacobianRing::certify_isolated() const {
    IsolatedCertificate cert;
    cert.vanishing_degree = socle_degree() + 1;
    cert.dim_above_socle = hilbert(cert.vanishing_degree);
    cert.socle_dim = hilbert(socle_degree());
    // A graded quotient of Q[x] that vanishes in one degree vanishes in all
    // higher ones, so these two values certify finite dimension and a
    // one-dimensional socle.
    cert.isolated = cert.dim_above_socle == 0 && cert.socle_dim == 1;
    return cert;
}

void JacobianRing::require_isolated() const {
    IsolatedCertificate c = certify_isolated();
    if (!c.isolated)
        throw NotIsolatedError("singularity is not isolated: dim R(f)_" +
                               std::to_string(c.vanishing_degree) + " = " +
                               std::to_string(c.dim_above_socle) + ", socle dim = " +
                               std::to_string(c.socle_dim));
}

Int JacobianRing::milnor_number() const {
    require_isolated();
    Int total = 0;
    for (int m = 0; m <= socle_degree(); ++m) total += hilbert(m);
    return total;
}

std::vector<long> JacobianRing::primitive_dims() const {
    require_isolated();
    std::vector<long> out;
    for (int k = 0; k <= n_ - 2; ++k) out.push_back(hilbert(k * n_));
    return out;
}

std::vector<Rat> JacobianRing::socle_class_coords() const {
    require_isolated();
    return normal_form(hessian_det(f_));
}

}  // namespace lgring
