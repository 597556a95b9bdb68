// Graded Jacobian ring R(f) = Q[x]/J(f) for f homogeneous of degree n in
// n variables: per-degree slice matrices, Hilbert function, standard
// monomial bases, normal forms, and the isolated-singularity certificate
// (vanishing in degree n(n-2)+1 plus a one-dimensional socle).
#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "lgring/poly.hpp"
#include "lgring/qmatrix.hpp"

namespace lgring {

struct NotIsolatedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordered monomial basis of one graded piece of Q[x].
struct GradedSlice {
    int degree = 0;
    std::vector<Monomial> basis;  // canonical order

    static GradedSlice of(int n, int degree);
    // Index of m in basis; -1 if absent.
    int index_of(const Monomial& m) const;
};

struct IsolatedCertificate {
    bool isolated = false;
    int vanishing_degree = 0;  // n(n-2)+1
    long dim_above_socle = 0;  // hilbert at vanishing_degree, 0 when isolated
    long socle_dim = 0;        // hilbert at n(n-2), 1 when isolated
};

// Matrix of (g_1,...,g_n) -> sum g_i * df/dx_i from (Q[x]_{m-n+1})^n to
// Q[x]_m in canonical bases (generator-major column order). Zero columns
// when m < n-1.
QMatrix jacobian_slice_matrix(const Poly& f, int m);

// Caches the per-degree reductions of J(f). Immutable from the outside;
// lazy internally, guarded for concurrent reads by a mutex.
class JacobianRing {
  public:
    // Throws std::invalid_argument unless f is p-free, homogeneous of
    // x-degree n in n >= 3 variables.
    explicit JacobianRing(Poly f, long cell_budget = 100000000L);

    const Poly& f() const { return f_; }
    int n() const { return n_; }
    int socle_degree() const { return n_ * (n_ - 2); }

    long hilbert(int m) const;
    std::vector<Monomial> standard_monomials(int m) const;

    // Coordinates of [g] over standard_monomials(m), m = deg g. g must be
    // p-free homogeneous.
    std::vector<Rat> normal_form(const Poly& g) const;

    // Sparse normal form of a single monomial class, as (standard-monomial
    // index, coefficient) pairs. A monomial reduces in one step against the
    // fully reduced row echelon form.
    std::vector<std::pair<int, Rat>> normal_form_monomial(const Monomial& m) const;

    IsolatedCertificate certify_isolated() const;

    // Sum of all Hilbert values; equals (n-1)^n for certified inputs.
    Int milnor_number() const;

    // dim R(f)_{kn} for k = 0..n-2. Requires the certificate.
    std::vector<long> primitive_dims() const;

    // Coordinates of the Hessian determinant class in the socle degree.
    std::vector<Rat> socle_class_coords() const;

  private:
    struct DegreeData {
        GradedSlice slice;
        long rank = 0;
        std::vector<int> pivot_cols;            // monomial indices hit by J(f)_m
        std::vector<int> std_cols;              // complement, the standard monomials
        // col -> standard position (>= 0) or ~(pivot row index) (< 0)
        std::vector<int> col_code;
        std::vector<std::vector<std::pair<int, Rat>>> reduced_rows;  // lead coeff 1
    };

    const DegreeData& degree_data(int m) const;
    void require_isolated() const;

    Poly f_;
    int n_;
    long cell_budget_;
    std::vector<Poly> partials_;
    mutable std::map<int, DegreeData> cache_;
    mutable std::mutex mutex_;
};

}  // namespace lgring
