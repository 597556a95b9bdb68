// Model Frobenius algebras on the basis "standard monomials of the
// primitive part directsum_k R(f)_{kn}" plus one abstract generator e_q
// per non-primitive degree q in {2i-n : i = 1..n-1}. Multiplication:
//
//   [p^j g][p^k h] = [p^{j+k} nf(gh)]         (0 when j+k >= n-1)
//   [p^j g] e_q    = 0 for j > 0, scalar e_q for j = 0
//   e_a e_b        = 0 for a+b != 0
//   e_a e_{-a}     = C(-a) * [p^{n-2} socle],  C(q) = c_q for q > 0,
//                    C(-q) = (-1)^{n} c_q, C(0) = c_0 (n even)
//
// The trace is supported on the top socle class only. Two models over the
// same f differ exactly in the scalars c_q and the trace scale; the
// comparison map rescales the e_q and reproduces the pairing up to the
// constant t_B / t_A.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lgring/milnor.hpp"
#include "lgring/qmatrix.hpp"

namespace lgring {

struct PrimitiveElem {
    int k = 0;      // p-exponent, 0..n-2
    Monomial mono;  // standard monomial of R(f)_{kn}
};

struct NonPrimitiveElem {
    int q = 0;  // degree, in {2i-n : i = 1..n-1}
};

using FrobBasisElem = std::variant<PrimitiveElem, NonPrimitiveElem>;

std::string basis_elem_name(const FrobBasisElem& e);

struct ModelConfig {
    // c_q for q > 0, plus q = 0 when n is even. Missing entries default to 1.
    std::map<int, Rat> c;
    Rat trace_scale = Rat(1);

    static ModelConfig defaults() { return ModelConfig{}; }
};

// Sparse vector over the algebra basis.
using FrobVec = std::map<int, Rat>;

class FrobAlgebra {
  public:
    // Requires ring certified isolated; throws on zero scalars.
    FrobAlgebra(const JacobianRing& ring, const ModelConfig& cfg);

    int dim() const { return static_cast<int>(basis_.size()); }
    int n() const { return n_; }
    const std::vector<FrobBasisElem>& basis() const { return basis_; }
    int degree(int i) const { return degrees_[i]; }
    int socle_index() const { return socle_index_; }
    int unit_index() const { return unit_index_; }
    const ModelConfig& config() const { return cfg_; }
    std::string poly_echo() const { return poly_echo_; }

    // Signed structure constant scalar C(q) for any non-primitive degree q.
    Rat c_signed(int q) const;

    const FrobVec& basis_product(int i, int j) const;
    FrobVec multiply(const FrobVec& a, const FrobVec& b) const;
    Rat trace(const FrobVec& a) const;
    Rat trace_basis(int i) const { return trace_vec_[i]; }

    QMatrix gram_matrix() const;

  private:
    void build_table(const JacobianRing& ring);

    int n_;
    ModelConfig cfg_;
    std::string poly_echo_;
    std::vector<FrobBasisElem> basis_;
    std::vector<int> degrees_;
    std::vector<Rat> trace_vec_;
    int unit_index_ = -1;
    int socle_index_ = -1;
    std::vector<std::vector<FrobVec>> table_;  // basis products
};

struct AxiomReport {
    bool associative = true;
    bool graded_commutative = true;
    bool unital = true;
    bool trace_invariant = true;
    bool nondegenerate = true;
    bool parity_symmetry = true;  // pairing on the e_q span matches n mod 2
    long triples_checked = 0;
    std::string first_failure;  // empty when everything passed

    bool all_passed() const {
        return associative && graded_commutative && unital && trace_invariant &&
               nondegenerate && parity_symmetry;
    }
};

// Exhaustive scan over all basis triples plus the gram-rank and parity
// checks. Deterministic: the reported failure is the lexicographically
// first offending triple.
AxiomReport check_frobenius(const FrobAlgebra& a, int threads = 1);

struct PhiIso {
    // Primitive basis labels [p^k m] -> [m]; index-aligned with the
    // algebra's primitive block.
    std::vector<std::pair<std::string, std::string>> mapping;
    bool multiplicative = true;
    long pairs_checked = 0;
};

// The identification of the charge-0 ring with the direct sum of the
// primitive slices, checked multiplicatively on all standard-monomial
// pairs: the algebra's truncated product table must agree with the
// Jacobian-ring product, whose high levels vanish by the certificate.
PhiIso phi_ring_iso(const JacobianRing& ring, const FrobAlgebra& a);

struct ModelComparison {
    bool same_f = true;
    bool requires_extension = false;
    Rat discriminant;           // c0 ratio when the extension flag fires
    std::map<int, Rat> lambda;  // e_q rescalings, q over non-primitive degrees
    Rat c_phi;                  // t_B / t_A
    bool pairings_match = true; // c_phi * K_A = K_B on all basis pairs
    bool ring_map = true;       // Phi(ab) = Phi(a) Phi(b) on all basis pairs
};

ModelComparison compare_models(const FrobAlgebra& a, const FrobAlgebra& b);

}  // namespace lgring
