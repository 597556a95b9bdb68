#include "lgring/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lgring {

int grading_value(const Monomial& m, Grading g, int n) {
    switch (g) {
        case Grading::charge:
            return m.x_degree() - n * m.p;
        case Grading::weight:
            return m.p;
        case Grading::x_degree:
            return m.x_degree();
    }
    return 0;
}

Poly Poly::constant(int n_vars, const Rat& c) {
    Poly q(n_vars);
    Monomial one;
    one.x.assign(n_vars, 0);
    q.add_term(one, c);
    return q;
}

Poly Poly::monomial(const Monomial& m, const Rat& c) {
    Poly q(static_cast<int>(m.x.size()));
    q.add_term(m, c);
    return q;
}

Poly Poly::var_x(int n_vars, int i) {
    Monomial m;
    m.x.assign(n_vars, 0);
    m.x[i] = 1;
    return monomial(m, 1);
}

Poly Poly::var_p(int n_vars) {
    Monomial m;
    m.x.assign(n_vars, 0);
    m.p = 1;
    return monomial(m, 1);
}

Rat Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
    if (sgn(c) == 0) return;
    if (static_cast<int>(m.x.size()) != n_)
        throw std::invalid_argument("monomial arity mismatch");
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("polynomial arity mismatch");
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("polynomial arity mismatch");
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("polynomial arity mismatch");
    Poly r(n_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m;
            m.x.resize(n_);
            for (int i = 0; i < n_; ++i) m.x[i] = ma.x[i] + mb.x[i];
            m.p = ma.p + mb.p;
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::operator*(const Rat& c) const {
    Poly r(n_);
    if (sgn(c) == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Poly Poly::derivative(VarRef v) const {
    if (!v.is_p && (v.index < 0 || v.index >= n_))
        throw std::invalid_argument("unknown variable in derivative");
    Poly r(n_);
    for (const auto& [m, c] : terms_) {
        int e = v.is_p ? m.p : m.x[v.index];
        if (e == 0) continue;
        Monomial d = m;
        if (v.is_p)
            d.p -= 1;
        else
            d.x[v.index] -= 1;
        r.add_term(d, c * e);
    }
    return r;
}

Poly Poly::homogeneous_part(Grading g, int value) const {
    Poly r(n_);
    for (const auto& [m, c] : terms_)
        if (grading_value(m, g, n_) == value) r.terms_.emplace(m, c);
    return r;
}

bool Poly::is_homogeneous(Grading g, int value) const {
    for (const auto& [m, c] : terms_)
        if (grading_value(m, g, n_) != value) return false;
    return true;
}

bool Poly::has_p() const {
    for (const auto& [m, c] : terms_)
        if (m.p != 0) return true;
    return false;
}

int Poly::x_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.x_degree());
    return d;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (sgn(a) < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (sgn(a) < 0 ? "-" : "+");
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        bool has_factor = m.p != 0 || m.x_degree() != 0;
        bool printed = false;
        if (a != 1 || !has_factor) {
            out << rat_to_string(a);
            printed = true;
        }
        for (int i = 0; i < n_; ++i) {
            if (m.x[i] == 0) continue;
            if (printed) out << "*";
            out << "x" << (i + 1);
            if (m.x[i] > 1) out << "^" << m.x[i];
            printed = true;
        }
        if (m.p != 0) {
            if (printed) out << "*";
            out << "p";
            if (m.p > 1) out << "^" << m.p;
        }
    }
    return out.str();
}

namespace {

// Recursive-descent parser for the grammar in the header.
class Parser {
  public:
    Parser(const std::string& text, int n_vars) : s_(text), n_(n_vars) {}

    Poly run() {
        Poly acc(n_);
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        Poly t = parse_term();
        acc = neg ? -t : t;
        skip_ws();
        while (pos_ < s_.size()) {
            char op = s_[pos_];
            if (op != '+' && op != '-') throw ParseError("expected '+' or '-'", pos_);
            size_t op_pos = pos_;
            ++pos_;
            skip_ws();
            if (pos_ >= s_.size()) throw ParseError("missing term after operator", op_pos);
            Poly u = parse_term();
            acc = (op == '-') ? acc - u : acc + u;
            skip_ws();
        }
        return acc;
    }

  private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    std::string parse_digits() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("expected an unsigned integer", pos_);
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            digits.push_back(s_[pos_++]);
        return digits;
    }

    // Bounded uint for exponents and variable indices.
    unsigned long parse_uint() {
        size_t start = pos_;
        std::string digits = parse_digits();
        if (digits.size() > 9) throw ParseError("integer literal too large", start);
        return std::stoul(digits);
    }

    // coeff := int ('/' uint)?, arbitrary precision.
    Rat parse_coeff() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
            skip_ws();
        }
        Int num(parse_digits(), 10);
        Int den = 1;
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            size_t den_pos = pos_;
            den = Int(parse_digits(), 10);
            if (den == 0) throw ParseError("zero-denominator literal", den_pos);
        }
        Rat q(neg ? Int(-num) : num, den);
        q.canonicalize();
        return q;
    }

    // factor := var ('^' uint)?, applied multiplicatively onto m.
    void parse_factor(Monomial& m) {
        skip_ws();
        char c = peek();
        size_t var_pos = pos_;
        int xi = -1;
        bool is_p = false;
        if (c == 'x') {
            ++pos_;
            size_t idx_pos = pos_;
            unsigned long idx = parse_uint();
            if (idx < 1 || static_cast<int>(idx) > n_)
                throw ParseError("variable index out of range (n=" + std::to_string(n_) + ")",
                                 idx_pos);
            xi = static_cast<int>(idx) - 1;
        } else if (c == 'p') {
            ++pos_;
            is_p = true;
        } else {
            throw ParseError("expected a variable", var_pos);
        }
        int exp = 1;
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            exp = static_cast<int>(parse_uint());
        }
        if (is_p)
            m.p += exp;
        else
            m.x[xi] += exp;
    }

    Poly parse_term() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("expected a term", pos_);
        Rat coeff = 1;
        Monomial m;
        m.x.assign(n_, 0);
        char c = peek();
        bool saw_any = false;
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
            coeff = parse_coeff();
            saw_any = true;
        } else {
            parse_factor(m);
            saw_any = true;
        }
        skip_ws();
        while (peek() == '*') {
            ++pos_;
            skip_ws();
            if (pos_ >= s_.size()) throw ParseError("expected a factor after '*'", pos_ - 1);
            parse_factor(m);
        }
        if (!saw_any) throw ParseError("expected a term", pos_);
        return Poly::monomial(m, coeff);
    }

    const std::string& s_;
    int n_;
    size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, int n_vars) {
    if (n_vars < 1) throw std::invalid_argument("n_vars must be positive");
    Parser p(text, n_vars);
    return p.run();
}

namespace {

// Laplace expansion along the first remaining row, memoized on the column
// mask. Fine for the n <= 8 envelope.
Poly det_rec(const std::vector<std::vector<Poly>>& a, int row, unsigned cols_left,
             std::map<unsigned, Poly>& memo, int n) {
    if (row == n) return Poly::constant(n, 1);
    auto it = memo.find(cols_left);
    if (it != memo.end()) return it->second;
    Poly acc(n);
    int sign = 1;
    for (int c = 0; c < n; ++c) {
        if (!(cols_left & (1u << c))) continue;
        if (!a[row][c].is_zero()) {
            Poly sub = det_rec(a, row + 1, cols_left & ~(1u << c), memo, n);
            Poly contrib = a[row][c] * sub;
            acc = (sign > 0) ? acc + contrib : acc - contrib;
        }
        sign = -sign;
    }
    memo.emplace(cols_left, acc);
    return acc;
}

}  // namespace

Poly hessian_det(const Poly& f) {
    int n = f.n_vars();
    if (f.has_p()) throw std::invalid_argument("hessian_det: input must be p-free");
    if (f.is_zero() || !f.is_homogeneous(Grading::x_degree, n))
        throw std::invalid_argument("hessian_det: input must be homogeneous of degree n");
    std::vector<std::vector<Poly>> h(n, std::vector<Poly>(n, Poly(n)));
    for (int i = 0; i < n; ++i) {
        Poly di = f.derivative(VarRef::x(i));
        for (int j = 0; j < n; ++j) h[i][j] = di.derivative(VarRef::x(j));
    }
    std::map<unsigned, Poly> memo;
    return det_rec(h, 0, (1u << n) - 1, memo, n);
}

long monomial_count(int n, int d) {
    if (d < 0) return 0;
    // C(d+n-1, n-1)
    long r = 1;
    for (int i = 1; i <= n - 1; ++i) r = r * (d + i) / i;
    return r;
}

std::vector<Monomial> enumerate_monomials(int n, int d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial m;
    m.x.assign(n, 0);
    m.x[0] = d;
    while (true) {
        out.push_back(m);
        // Next composition in descending-lex order: find the last position
        // before the final slot with a positive entry, decrement it, and
        // move everything after it into that position's successor.
        int k = -1;
        for (int i = n - 2; i >= 0; --i)
            if (m.x[i] > 0) {
                k = i;
                break;
            }
        if (k < 0) break;
        int tail = m.x[n - 1];
        m.x[k] -= 1;
        m.x[n - 1] = 0;
        m.x[k + 1] = tail + 1;
        for (int i = k + 2; i < n; ++i) {
            m.x[k + 1] += m.x[i];
            m.x[i] = 0;
        }
    }
    return out;
}

}  // namespace lgring
