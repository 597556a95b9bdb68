#include "lgring/qmatrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lgring {

namespace {

// Working row for elimination: primitive integer sparse vector.
using IRow = std::vector<std::pair<int, Int>>;

// Divide the row by the gcd of its entries.
void make_primitive(IRow& r) {
    if (r.empty()) return;
    Int g = 0;
    for (auto& [c, v] : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) return;
    }
    if (g == 1 || g == 0) return;
    for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// r := a*r - b*p on merged support, then primitive. a = pivot value in p's
// leading column, b = r's value there; the leading entry cancels exactly.
// b is taken by value: callers pass references into r itself.
void eliminate(IRow& r, const IRow& piv, const Int& a, const Int b) {
    IRow out;
    out.reserve(r.size() + piv.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < piv.size()) {
        if (j == piv.size() || (i < r.size() && r[i].first < piv[j].first)) {
            out.emplace_back(r[i].first, a * r[i].second);
            ++i;
        } else if (i == r.size() || piv[j].first < r[i].first) {
            out.emplace_back(piv[j].first, -b * piv[j].second);
            ++j;
        } else {
            Int v = a * r[i].second - b * piv[j].second;
            if (v != 0) out.emplace_back(r[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    make_primitive(out);
    r = std::move(out);
}

// Scale a rational sparse row to a primitive integer row.
IRow integerize(const std::vector<std::pair<int, Rat>>& row) {
    Int lcm = 1;
    for (const auto& [c, v] : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    IRow out;
    out.reserve(row.size());
    for (const auto& [c, v] : row) {
        Int scaled = v.get_num() * (lcm / v.get_den());
        out.emplace_back(c, std::move(scaled));
    }
    make_primitive(out);
    return out;
}

}  // namespace

bool QMatrix::pick_sparse(int rows, int cols, long nnz) {
    long cells = static_cast<long>(rows) * cols;
    if (cells == 0) return false;
    return nnz * 10 < cells;
}

QMatrix::QMatrix(int rows, int cols, std::vector<Rat> dense_row_major)
    : rows_(rows), cols_(cols), sparse_(false), dense_(std::move(dense_row_major)) {
    if (static_cast<long>(dense_.size()) != static_cast<long>(rows) * cols)
        throw std::invalid_argument("dense storage size mismatch");
}

QMatrix QMatrix::zero(int rows, int cols) { return from_triplets(rows, cols, {}); }

QMatrix QMatrix::identity(int n) {
    std::vector<Triplet> t;
    t.reserve(n);
    for (int i = 0; i < n; ++i) t.push_back({i, i, Rat(1)});
    return from_triplets(n, n, std::move(t));
}

QMatrix QMatrix::from_triplets(int rows, int cols, std::vector<Triplet> entries) {
    std::map<std::pair<int, int>, Rat> acc;
    for (auto& e : entries) {
        if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
            throw std::out_of_range("triplet outside matrix");
        auto [it, inserted] = acc.emplace(std::make_pair(e.row, e.col), e.value);
        if (!inserted) it->second += e.value;
    }
    std::vector<Triplet> clean;
    clean.reserve(acc.size());
    for (auto& [rc, v] : acc)
        if (sgn(v) != 0) clean.push_back({rc.first, rc.second, std::move(v)});

    QMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    if (pick_sparse(rows, cols, static_cast<long>(clean.size()))) {
        m.sparse_ = true;
        m.entries_ = std::move(clean);
    } else {
        m.sparse_ = false;
        m.dense_.assign(static_cast<long>(rows) * cols, Rat(0));
        for (auto& e : clean) m.dense_[static_cast<long>(e.row) * cols + e.col] = std::move(e.value);
    }
    return m;
}

long QMatrix::nonzero_count() const {
    if (sparse_) return static_cast<long>(entries_.size());
    long n = 0;
    for (const auto& v : dense_)
        if (sgn(v) != 0) ++n;
    return n;
}

Rat QMatrix::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("QMatrix::at");
    if (!sparse_) return dense_[static_cast<long>(r) * cols_ + c];
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(r, c),
                               [](const Triplet& t, const std::pair<int, int>& key) {
                                   return std::make_pair(t.row, t.col) < key;
                               });
    if (it != entries_.end() && it->row == r && it->col == c) return it->value;
    return Rat(0);
}

std::vector<std::pair<int, Rat>> QMatrix::sparse_row(int r) const {
    std::vector<std::pair<int, Rat>> out;
    if (!sparse_) {
        for (int c = 0; c < cols_; ++c) {
            const Rat& v = dense_[static_cast<long>(r) * cols_ + c];
            if (sgn(v) != 0) out.emplace_back(c, v);
        }
        return out;
    }
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(r, 0),
                               [](const Triplet& t, const std::pair<int, int>& key) {
                                   return std::make_pair(t.row, t.col) < key;
                               });
    for (; it != entries_.end() && it->row == r; ++it) out.emplace_back(it->col, it->value);
    return out;
}

QMatrix QMatrix::transpose() const {
    std::vector<Triplet> t;
    if (sparse_) {
        t.reserve(entries_.size());
        for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
    } else {
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) {
                const Rat& v = dense_[static_cast<long>(r) * cols_ + c];
                if (sgn(v) != 0) t.push_back({c, r, v});
            }
    }
    return from_triplets(cols_, rows_, std::move(t));
}

QMatrix QMatrix::multiply(const QMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("multiply: shape mismatch");
    std::vector<Triplet> t;
    for (int r = 0; r < rows_; ++r) {
        std::map<int, Rat> acc;
        for (const auto& [k, v] : sparse_row(r)) {
            for (const auto& [c, w] : other.sparse_row(k)) {
                auto [it, inserted] = acc.emplace(c, v * w);
                if (!inserted) it->second += v * w;
            }
        }
        for (auto& [c, v] : acc)
            if (sgn(v) != 0) t.push_back({r, c, std::move(v)});
    }
    return from_triplets(rows_, other.cols_, std::move(t));
}

bool QMatrix::operator==(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (int r = 0; r < rows_; ++r)
        if (sparse_row(r) != o.sparse_row(r)) return false;
    return true;
}

RrefResult rref(const QMatrix& m) {
    const int rows = m.rows(), cols = m.cols();

    // Integerized working rows with their leading column; empty rows drop out.
    std::vector<IRow> work;
    work.reserve(rows);
    for (int r = 0; r < rows; ++r) {
        IRow ir = integerize(m.sparse_row(r));
        if (!ir.empty()) work.push_back(std::move(ir));
    }

    // Buckets: leading column -> original work-row indices, kept sorted so
    // the smallest original index is always chosen as pivot.
    std::vector<std::vector<int>> bucket(cols);
    for (int i = 0; i < static_cast<int>(work.size()); ++i)
        bucket[work[i].front().first].push_back(i);

    std::vector<int> pivot_rows;  // work indices, in pivot-column order
    std::vector<int> pivot_cols;
    for (int c = 0; c < cols; ++c) {
        auto& b = bucket[c];
        if (b.empty()) continue;
        std::sort(b.begin(), b.end());
        int piv = b.front();
        pivot_rows.push_back(piv);
        pivot_cols.push_back(c);
        const Int a = work[piv].front().second;
        for (size_t k = 1; k < b.size(); ++k) {
            int rowi = b[k];
            const Int bval = work[rowi].front().second;
            eliminate(work[rowi], work[piv], a, bval);
            if (!work[rowi].empty()) bucket[work[rowi].front().first].push_back(rowi);
        }
        b.clear();
    }

    const int rk = static_cast<int>(pivot_rows.size());

    // Back-substitution among pivot rows, then normalize leading entries to 1.
    for (int i = rk - 1; i >= 0; --i) {
        IRow& ri = work[pivot_rows[i]];
        for (int j = i + 1; j < rk; ++j) {
            const int cj = pivot_cols[j];
            auto it = std::lower_bound(ri.begin(), ri.end(), cj,
                                       [](const std::pair<int, Int>& e, int col) { return e.first < col; });
            if (it == ri.end() || it->first != cj) continue;
            const IRow& rj = work[pivot_rows[j]];
            eliminate(ri, rj, rj.front().second, it->second);
        }
    }

    std::vector<Triplet> out;
    for (int i = 0; i < rk; ++i) {
        const IRow& ri = work[pivot_rows[i]];
        const Int& lead = ri.front().second;
        for (const auto& [c, v] : ri) {
            Rat q(v, lead);
            q.canonicalize();
            out.push_back({i, c, std::move(q)});
        }
    }

    RrefResult res;
    res.reduced = QMatrix::from_triplets(rows, cols, std::move(out));
    res.pivot_cols = std::move(pivot_cols);
    res.rank = rk;
    return res;
}

std::vector<std::vector<Rat>> kernel_basis(const QMatrix& m) {
    RrefResult r = rref(m);
    const int cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int c : r.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (int free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free_c] = 1;
        for (int i = 0; i < r.rank; ++i) {
            Rat e = r.reduced.at(i, free_c);
            if (sgn(e) != 0) v[r.pivot_cols[i]] = -e;
        }
        // Scale so the first nonzero coordinate is 1.
        for (int c = 0; c < cols; ++c) {
            if (sgn(v[c]) != 0) {
                Rat lead = v[c];
                if (lead != 1)
                    for (int k = c; k < cols; ++k) v[k] /= lead;
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<int> cokernel_cols(const QMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    std::vector<int> out;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) out.push_back(c);
    return out;
}

int rank(const QMatrix& m) { return rref(m).rank; }

std::optional<int> rank_mod_p(const QMatrix& m, uint32_t p) {
    const int rows = m.rows(), cols = m.cols();
    auto inv_mod = [p](uint64_t a) {
        // Fermat: p prime.
        uint64_t r = 1, b = a % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::vector<std::vector<uint64_t>> a(rows, std::vector<uint64_t>(cols, 0));
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : m.sparse_row(r)) {
            uint64_t num = mpz_fdiv_ui(v.get_num().get_mpz_t(), p);
            uint64_t den = mpz_fdiv_ui(v.get_den().get_mpz_t(), p);
            if (den == 0) return std::nullopt;
            a[r][c] = num * inv_mod(den) % p;
        }
    int rk = 0;
    for (int c = 0; c < cols && rk < rows; ++c) {
        int piv = -1;
        for (int r = rk; r < rows; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[rk], a[piv]);
        uint64_t inv = inv_mod(a[rk][c]);
        for (int r = rk + 1; r < rows; ++r) {
            if (a[r][c] == 0) continue;
            uint64_t f = a[r][c] * inv % p;
            for (int k = c; k < cols; ++k) a[r][k] = (a[r][k] + (p - f) * a[rk][k]) % p;
        }
        ++rk;
    }
    return rk;
}

}  // namespace lgring
