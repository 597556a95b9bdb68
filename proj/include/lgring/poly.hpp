// Sparse multivariate polynomials over Q in x_1..x_n and an auxiliary
// variable p, with the two gradings used throughout: charge (ch x_i = 1,
// ch p = -n) and weight (wt x_i = 0, wt p = 1).
//
// Terms are kept in a canonical order: ascending total x-degree, then
// ascending p-exponent, then descending lexicographic exponent vector
// (so x1^2 precedes x1*x2 precedes x2^2). All basis enumerations and all
// matrix index spaces downstream follow this order.
#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgring/rational.hpp"

namespace lgring {

struct Monomial {
    std::vector<int> x;  // exponent of x_i at index i, size = n_vars
    int p = 0;           // exponent of p

    int x_degree() const {
        int d = 0;
        for (int e : x) d += e;
        return d;
    }
    bool operator==(const Monomial& o) const { return p == o.p && x == o.x; }
};

// Canonical term order (see file header). Strict weak order.
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.x_degree(), db = b.x_degree();
        if (da != db) return da < db;
        if (a.p != b.p) return a.p < b.p;
        return a.x > b.x;  // larger exponent vector first
    }
};

enum class Grading { charge, weight, x_degree };

int grading_value(const Monomial& m, Grading g, int n);

// Variable reference: x index in [0, n) or p.
struct VarRef {
    bool is_p = false;
    int index = 0;
    static VarRef x(int i) { return VarRef{false, i}; }
    static VarRef p() { return VarRef{true, 0}; }
};

class Poly {
  public:
    using TermMap = std::map<Monomial, Rat, MonoLess>;

    Poly() = default;
    explicit Poly(int n_vars) : n_(n_vars) {}

    static Poly zero(int n_vars) { return Poly(n_vars); }
    static Poly constant(int n_vars, const Rat& c);
    static Poly monomial(const Monomial& m, const Rat& c);
    // x_i as a polynomial, i in [0, n).
    static Poly var_x(int n_vars, int i);
    static Poly var_p(int n_vars);

    int n_vars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rat coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const Rat& c);  // accumulates, drops zeros

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    bool operator==(const Poly& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative(VarRef v) const;

    // Sum of the terms whose grading equals value.
    Poly homogeneous_part(Grading g, int value) const;
    // True when every term has the same given grading value (zero poly: true).
    bool is_homogeneous(Grading g, int value) const;
    bool has_p() const;
    // Max total x-degree over terms, -1 for the zero polynomial.
    int x_degree() const;

    std::string to_string() const;

  private:
    int n_ = 0;
    TermMap terms_;
};

struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

// Grammar:  expr   := '-'? term (('+'|'-') term)*
//           term   := coeff ('*' factor)* | factor ('*' factor)*
//           factor := var ('^' uint)?
//           var    := 'x' uint | 'p'
//           coeff  := int ('/' uint)?
// Whitespace is ignored. Variable indices are 1-based in the text.
Poly parse_poly(const std::string& text, int n_vars);

// Determinant of the n x n matrix of second partials of f. Requires f
// p-free and homogeneous of x-degree n in n variables; the result is
// homogeneous of degree n(n-2).
Poly hessian_det(const Poly& f);

// Number of monomials of total degree d in n variables: C(d+n-1, n-1).
long monomial_count(int n, int d);

// All degree-d monomials in n variables (p = 0), in canonical order.
std::vector<Monomial> enumerate_monomials(int n, int d);

}  // namespace lgring
