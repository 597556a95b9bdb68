// The algebraic differential-form layer: the Koszul subcomplex
// (directsum_k (Omega^s_{Q[x]})_{kn}, df wedge), its finite anti-diagonal
// pieces obtained by fixing the weight of the top slot, the homogenization
// chain map into forms on x, p, dp, and the Euler-contraction model whose
// kernel dimensions shadow the global-sections description.
//
// Antisymmetry bookkeeping: a component is stored on the sorted index
// tuple (dx_{j_1}, ..., dx_{j_s}) with j_1 < ... < j_s, and for XForm the
// dp factor always sits last. Unsorted tuples pick up the permutation
// sign.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "lgring/milnor.hpp"
#include "lgring/poly.hpp"
#include "lgring/qmatrix.hpp"

namespace lgring {

// Subsets of {0..n-1} as bitmasks; for XForm bit n marks dp.
using FormKey = uint32_t;

inline int popcount(FormKey k) { return __builtin_popcount(k); }

// Algebraic s-form over Q[x]: sum_J F_J dx_J with p-free coefficients.
class AlgForm {
  public:
    AlgForm() = default;
    AlgForm(int n_vars, int degree) : n_(n_vars), s_(degree) {}

    static AlgForm from_function(const Poly& g);  // s = 0
    // coefficient * dx_{j_1} ^ ... ^ dx_{j_s}; indices 0-based, any order,
    // repeated index gives 0.
    static AlgForm term(const Poly& coeff, const std::vector<int>& dx_indices);

    int n_vars() const { return n_; }
    int degree() const { return s_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<FormKey, Poly>& components() const { return comps_; }
    Poly component(FormKey key) const;

    void add_component(FormKey key, const Poly& coeff);
    AlgForm operator+(const AlgForm& o) const;
    AlgForm operator*(const Rat& c) const;
    bool operator==(const AlgForm& o) const;

  private:
    int n_ = 0;
    int s_ = 0;
    std::map<FormKey, Poly> comps_;
};

// Form in x, p with factors among dx_1..dx_n, dp; coefficients may
// involve p.
class XForm {
  public:
    XForm() = default;
    XForm(int n_vars, int degree) : n_(n_vars), s_(degree) {}

    int n_vars() const { return n_; }
    int degree() const { return s_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<FormKey, Poly>& components() const { return comps_; }
    Poly component(FormKey key) const;
    FormKey dp_bit() const { return FormKey(1) << n_; }

    void add_component(FormKey key, const Poly& coeff);
    XForm operator+(const XForm& o) const;
    XForm operator-(const XForm& o) const;
    bool operator==(const XForm& o) const;

    // Wedge with the 1-form sum_i dx_coeffs[i] dx_i + dp_coeff dp.
    XForm wedge_one_form(const std::vector<Poly>& dx_coeffs, const Poly& dp_coeff) const;

  private:
    int n_ = 0;
    int s_ = 0;
    std::map<FormKey, Poly> comps_;
};

// df ^ omega, raising the form degree by one. s = n input yields 0.
AlgForm wedge_df(const Poly& f, const AlgForm& omega);

struct AntiDiagonalComplex {
    int k_top = 0;
    std::vector<long> slot_dims;          // s = 0..n
    std::vector<QMatrix> differentials;   // d_s : slot s -> slot s+1, s = 0..n-1
    std::vector<long> ranks;              // rank of d_s
    std::vector<long> cohomology;         // dim H^s, s = 0..n
};

// Ordered basis of (Omega^s)_{kn}: subset-major over the lex-ordered
// s-subsets of {0..n-1}, monomials of degree kn-s in canonical order
// inside each subset. Empty when k < 0 or kn-s < 0.
std::vector<std::pair<std::vector<int>, Monomial>> koszul_slot_basis(int n, int s, int k);

AntiDiagonalComplex build_antidiagonal(const JacobianRing& ring, int k_top,
                                       long cell_budget = 100000000L);

// dim H^s for s = 0..n of the anti-diagonal complex with top weight k_top.
std::vector<long> antidiagonal_cohomology(const JacobianRing& ring, int k_top,
                                          long cell_budget = 100000000L);

// The lift omega': each coefficient of x-degree kn-s contributes
// p^k * coeff on the dx part and the exact p-division (1/n) x_{j_t} p^{k-1}
// * coeff on the dp components. Every coefficient degree must be = -s
// mod n, with k >= 1 when s > 0.
XForm homogenize_form(const AlgForm& omega);

// Exact identity dW ^ omega' = (df ^ omega)' with dW = p df + f dp.
bool check_chain_map(const Poly& f, const AlgForm& omega);

// Kernel dimension of the interior contraction dx_k -> x_k, dp -> -n p
// (with Koszul signs) on the charge-0, weight-w slice of
// Lambda^r(dx_1..dx_n, dp) over Q[x, p]. Equals C(n,r) * dim Q[x]_{wn-r}.
long euler_contraction_kernel_dim(int n, int r, int w, long cell_budget = 100000000L);

}  // namespace lgring
