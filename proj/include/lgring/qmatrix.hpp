// Deterministic exact rational linear algebra. The elimination is
// fraction-free over integers (rows are scaled to primitive integer
// vectors, combined, and re-normalized by content) with a final pass that
// brings pivot rows to leading coefficient 1.
//
// Pivot rule, fixed for reproducibility: columns are scanned left to
// right; within a column the surviving row with the smallest original row
// index wins. No other heuristics.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lgring/rational.hpp"

namespace lgring {

struct Triplet {
    int row;
    int col;
    Rat value;
};

// Immutable exact rational matrix. Storage is dense row-major or sorted
// sparse triplets; the sparse form is auto-selected below 10% density.
// Storage never affects any computed result.
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(int rows, int cols, std::vector<Rat> dense_row_major);

    static QMatrix zero(int rows, int cols);
    static QMatrix identity(int n);
    // Builds from (row, col, value) entries; duplicate positions are summed.
    static QMatrix from_triplets(int rows, int cols, std::vector<Triplet> entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_sparse() const { return sparse_; }
    long nonzero_count() const;

    Rat at(int r, int c) const;

    // Row r as sorted (col, value) pairs.
    std::vector<std::pair<int, Rat>> sparse_row(int r) const;

    QMatrix transpose() const;
    QMatrix multiply(const QMatrix& other) const;

    bool operator==(const QMatrix& o) const;

  private:
    static bool pick_sparse(int rows, int cols, long nnz);

    int rows_ = 0;
    int cols_ = 0;
    bool sparse_ = false;
    std::vector<Rat> dense_;        // row-major, when !sparse_
    std::vector<Triplet> entries_;  // sorted by (row, col), when sparse_
};

struct RrefResult {
    QMatrix reduced;              // reduced row echelon form, pivot rows first
    std::vector<int> pivot_cols;  // strictly increasing
    int rank = 0;
};

RrefResult rref(const QMatrix& m);

// Basis of the right null space; size cols - rank. Each vector is scaled
// so its first nonzero coordinate is 1.
std::vector<std::vector<Rat>> kernel_basis(const QMatrix& m);

// Treats the rows of m as spanning a subspace of Q^cols and returns the
// column indices not hit by rref pivots; these label a basis of the
// quotient (the "standard" coordinates).
std::vector<int> cokernel_cols(const QMatrix& m);

int rank(const QMatrix& m);

// Rank of the matrix reduced mod a prime p (< 2^31). Returns nullopt when
// some denominator vanishes mod p (bad prime). Always a lower bound on
// the rational rank: used by the cross-check harness.
std::optional<int> rank_mod_p(const QMatrix& m, uint32_t p);

}  // namespace lgring
