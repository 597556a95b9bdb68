#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>

#include "lgring/qmatrix.hpp"

using namespace lgring;

namespace {

QMatrix random_matrix(std::mt19937& gen, int rows, int cols, int density_pct) {
    std::vector<Triplet> t;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (static_cast<int>(gen() % 100) >= density_pct) continue;
            long num = static_cast<long>(gen() % 21) - 10;
            long den = 1 + gen() % 5;
            if (num != 0) t.push_back({r, c, make_rat(num, den)});
        }
    return QMatrix::from_triplets(rows, cols, std::move(t));
}

}  // namespace

TEST_CASE("rref basics") {
    RrefResult id3 = rref(QMatrix::identity(3));
    CHECK(id3.rank == 3);
    CHECK(id3.pivot_cols == std::vector<int>({0, 1, 2}));

    QMatrix prop(2, 2, {Rat(1), Rat(2), Rat(2), Rat(4)});
    RrefResult r = rref(prop);
    CHECK(r.rank == 1);
    CHECK(r.pivot_cols == std::vector<int>({0}));
    CHECK(r.reduced.at(0, 0) == 1);
    CHECK(r.reduced.at(0, 1) == 2);

    RrefResult z = rref(QMatrix::zero(3, 4));
    CHECK(z.rank == 0);
    CHECK(z.pivot_cols.empty());

    RrefResult empty_cols = rref(QMatrix::zero(3, 0));
    CHECK(empty_cols.rank == 0);
}

TEST_CASE("rref normalizes pivots and clears pivot columns") {
    std::mt19937 gen(5);
    for (int rep = 0; rep < 50; ++rep) {
        QMatrix m = random_matrix(gen, 6, 8, 60);
        RrefResult r = rref(m);
        for (int i = 0; i < r.rank; ++i) {
            CHECK(r.reduced.at(i, r.pivot_cols[i]) == 1);
            for (int j = 0; j < r.rank; ++j)
                if (j != i) CHECK(r.reduced.at(j, r.pivot_cols[i]) == 0);
            // Nothing to the left of the pivot.
            for (int c = 0; c < r.pivot_cols[i]; ++c) CHECK(r.reduced.at(i, c) == 0);
        }
    }
}

TEST_CASE("kernel basics") {
    CHECK(kernel_basis(QMatrix::identity(4)).empty());

    QMatrix row(1, 2, {Rat(1), Rat(1)});
    auto kb = kernel_basis(row);
    REQUIRE(kb.size() == 1);
    CHECK(kb[0] == std::vector<Rat>({Rat(1), Rat(-1)}));

    QMatrix prop(2, 2, {Rat(1), Rat(2), Rat(2), Rat(4)});
    auto kb2 = kernel_basis(prop);
    REQUIRE(kb2.size() == 1);
    // Exact annihilation: v = (1, -1/2) up to normalization.
    CHECK(kb2[0][0] * Rat(1) + kb2[0][1] * Rat(2) == 0);
    CHECK(kb2[0][0] * Rat(2) + kb2[0][1] * Rat(4) == 0);
}

TEST_CASE("kernel vectors are exactly annihilated on random samples") {
    std::mt19937 gen(23);
    for (int rep = 0; rep < 40; ++rep) {
        QMatrix m = random_matrix(gen, 5, 9, 50);
        auto kb = kernel_basis(m);
        CHECK(static_cast<int>(kb.size()) == 9 - rref(m).rank);
        for (const auto& v : kb) {
            for (int r = 0; r < m.rows(); ++r) {
                Rat dot = 0;
                for (const auto& [c, w] : m.sparse_row(r)) dot += w * v[c];
                CHECK(dot == 0);
            }
        }
    }
}

TEST_CASE("cokernel columns") {
    // Rowspan the whole space -> empty set.
    CHECK(cokernel_cols(QMatrix::identity(3)).empty());
    // Zero matrix, ambient dim 4 -> everything.
    CHECK(cokernel_cols(QMatrix::zero(2, 4)) == std::vector<int>({0, 1, 2, 3}));
    // Rows e0, e2 in dim 4 -> {1, 3}.
    QMatrix m = QMatrix::from_triplets(2, 4, {{0, 0, Rat(1)}, {1, 2, Rat(1)}});
    CHECK(cokernel_cols(m) == std::vector<int>({1, 3}));
}

TEST_CASE("rank equals rank of transpose on random samples") {
    std::mt19937 gen(31);
    for (int rep = 0; rep < 40; ++rep) {
        QMatrix m = random_matrix(gen, 4 + gen() % 5, 4 + gen() % 5, 40);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("rational rank matches rank mod several large primes") {
    std::mt19937 gen(37);
    const uint32_t primes[] = {2147483647u, 2147483629u, 2147483587u};
    for (int rep = 0; rep < 30; ++rep) {
        QMatrix m = random_matrix(gen, 6, 7, 55);
        int rq = rank(m);
        for (uint32_t p : primes) {
            auto rp = rank_mod_p(m, p);
            REQUIRE(rp.has_value());
            // Mod-p rank is a lower bound; for random small matrices and
            // 31-bit primes it matches.
            CHECK(*rp == rq);
        }
    }
}

TEST_CASE("storage choice does not affect results") {
    std::mt19937 gen(41);
    for (int rep = 0; rep < 20; ++rep) {
        // Same entries, forced-dense vs auto (sparse) construction.
        std::vector<Triplet> t;
        for (int i = 0; i < 6; ++i)
            t.push_back({static_cast<int>(gen() % 10), static_cast<int>(gen() % 12),
                         make_rat(1 + gen() % 9)});
        QMatrix sparse = QMatrix::from_triplets(10, 12, t);
        std::vector<Rat> dense(10 * 12, Rat(0));
        for (const auto& e : t) dense[e.row * 12 + e.col] += e.value;
        QMatrix densem(10, 12, std::move(dense));
        CHECK(sparse.is_sparse());
        CHECK(!densem.is_sparse());
        RrefResult a = rref(sparse), b = rref(densem);
        CHECK(a.rank == b.rank);
        CHECK(a.pivot_cols == b.pivot_cols);
        CHECK(a.reduced == b.reduced);
    }
}

TEST_CASE("determinism: repeated runs give identical results") {
    std::mt19937 gen(43);
    QMatrix m = random_matrix(gen, 8, 10, 50);
    RrefResult a = rref(m);
    RrefResult b = rref(m);
    CHECK(a.reduced == b.reduced);
    CHECK(a.pivot_cols == b.pivot_cols);
}

namespace {

// Textbook rational Gauss-Jordan, dense, no fraction-free tricks: an
// independent oracle. The reduced row echelon form of a matrix is unique,
// so the two implementations must agree entry for entry.
std::pair<std::vector<std::vector<Rat>>, std::vector<int>> naive_rref(const QMatrix& m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols, Rat(0)));
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : m.sparse_row(r)) a[r][c] = v;
    std::vector<int> pivots;
    int lead = 0;
    for (int c = 0; c < cols && lead < rows; ++c) {
        int piv = -1;
        for (int r = lead; r < rows; ++r)
            if (sgn(a[r][c]) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[lead], a[piv]);
        Rat inv = a[lead][c];
        for (int k = 0; k < cols; ++k) a[lead][k] /= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == lead || sgn(a[r][c]) == 0) continue;
            Rat f = a[r][c];
            for (int k = 0; k < cols; ++k) a[r][k] -= f * a[lead][k];
        }
        pivots.push_back(c);
        ++lead;
    }
    return {a, pivots};
}

}  // namespace

TEST_CASE("fraction-free rref agrees with a naive rational elimination") {
    std::mt19937 gen(61);
    for (int rep = 0; rep < 60; ++rep) {
        QMatrix m = random_matrix(gen, 3 + gen() % 6, 3 + gen() % 7, 25 + gen() % 60);
        RrefResult fast = rref(m);
        auto [oracle, pivots] = naive_rref(m);
        REQUIRE(fast.pivot_cols == pivots);
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) CHECK(fast.reduced.at(r, c) == oracle[r][c]);
    }
}

TEST_CASE("rref is idempotent") {
    std::mt19937 gen(47);
    for (int rep = 0; rep < 20; ++rep) {
        QMatrix m = random_matrix(gen, 6, 8, 50);
        RrefResult r = rref(m);
        RrefResult again = rref(r.reduced);
        CHECK(again.reduced == r.reduced);
        CHECK(again.pivot_cols == r.pivot_cols);
    }
}

TEST_CASE("independent reductions run concurrently") {
    std::mt19937 gen(53);
    std::vector<QMatrix> ms;
    for (int i = 0; i < 8; ++i) ms.push_back(random_matrix(gen, 10, 12, 40));
    std::vector<RrefResult> serial;
    for (const auto& m : ms) serial.push_back(rref(m));
    std::vector<RrefResult> parallel(ms.size());
    std::vector<std::thread> pool;
    for (size_t i = 0; i < ms.size(); ++i)
        pool.emplace_back([&, i]() { parallel[i] = rref(ms[i]); });
    for (auto& t : pool) t.join();
    for (size_t i = 0; i < ms.size(); ++i) {
        CHECK(parallel[i].reduced == serial[i].reduced);
        CHECK(parallel[i].pivot_cols == serial[i].pivot_cols);
    }
}

TEST_CASE("multiply and transpose") {
    QMatrix a = QMatrix::from_triplets(2, 3, {{0, 0, Rat(1)}, {0, 2, Rat(2)}, {1, 1, Rat(3)}});
    QMatrix b = QMatrix::from_triplets(3, 2, {{0, 0, Rat(1)}, {2, 0, Rat(1)}, {1, 1, Rat(-1)}});
    QMatrix ab = a.multiply(b);
    CHECK(ab.at(0, 0) == 3);
    CHECK(ab.at(1, 1) == -3);
    CHECK(ab.at(0, 1) == 0);
    CHECK(a.transpose().transpose() == a);
}
