#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "lgring/poly.hpp"

using namespace lgring;

namespace {

Poly random_poly(std::mt19937& gen, int n, int max_terms) {
    Poly q(n);
    int terms = 1 + gen() % max_terms;
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        m.x.assign(n, 0);
        for (int i = 0; i < n; ++i) m.x[i] = gen() % 4;
        m.p = gen() % 3;
        long num = static_cast<long>(gen() % 19) - 9;
        long den = 1 + gen() % 7;
        q.add_term(m, make_rat(num, den));
    }
    return q;
}

}  // namespace

TEST_CASE("parse literals") {
    Poly fermat = parse_poly("x1^3+x2^3+x3^3", 3);
    CHECK(fermat.term_count() == 3);
    for (const auto& [m, c] : fermat.terms()) CHECK(c == 1);

    Poly q = parse_poly("2/3*x1*x2", 3);
    CHECK(q.term_count() == 1);
    Monomial m;
    m.x = {1, 1, 0};
    CHECK(q.coeff(m) == make_rat(2, 3));

    CHECK(parse_poly("  - x1 + x1 ", 3).is_zero());
    CHECK(parse_poly("p^2*x1^3", 1).term_count() == 1);
}

TEST_CASE("parse errors carry offsets") {
    CHECK_THROWS_AS(parse_poly("x1^2 -", 3), ParseError);
    try {
        parse_poly("x1^2 -", 3);
    } catch (const ParseError& e) {
        CHECK(e.offset == 5);
    }
    try {
        parse_poly("x4+x1", 3);
    } catch (const ParseError& e) {
        CHECK(e.offset == 1);  // the index digit
    }
    CHECK_THROWS_AS(parse_poly("x4+x1", 3), ParseError);
    CHECK_THROWS_AS(parse_poly("1/0*x1", 3), ParseError);
    CHECK_THROWS_AS(parse_poly("x1 x2", 3), ParseError);
    CHECK_THROWS_AS(parse_poly("2x1", 3), ParseError);
    CHECK_THROWS_AS(parse_poly("", 3), ParseError);
}

TEST_CASE("print-parse fixed point") {
    std::mt19937 gen(7);
    for (int rep = 0; rep < 200; ++rep) {
        Poly q = random_poly(gen, 3, 6);
        Poly back = parse_poly(q.to_string(), 3);
        CHECK(back == q);
        CHECK(back.to_string() == q.to_string());
    }
}

TEST_CASE("ring axioms on random samples") {
    std::mt19937 gen(11);
    for (int rep = 0; rep < 100; ++rep) {
        Poly a = random_poly(gen, 3, 5);
        Poly b = random_poly(gen, 3, 5);
        Poly c = random_poly(gen, 3, 5);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a - a == Poly::zero(3));
    }
}

TEST_CASE("derivatives") {
    Poly f = parse_poly("x1^3", 3);
    CHECK(f.derivative(VarRef::x(0)) == parse_poly("3*x1^2", 3));

    Poly g = parse_poly("x1^3+x2^3+x3^3", 3);
    Poly pf = Poly::var_p(3) * g;
    CHECK(pf.derivative(VarRef::p()) == g);

    CHECK(Poly::constant(3, 5).derivative(VarRef::x(0)).is_zero());
    CHECK_THROWS_AS(f.derivative(VarRef::x(7)), std::invalid_argument);
}

TEST_CASE("grading values") {
    Monomial m;
    m.x = {1, 1, 0};
    CHECK(grading_value(m, Grading::charge, 3) == 2);
    Monomial p;
    p.x = {0, 0, 0};
    p.p = 1;
    CHECK(grading_value(p, Grading::charge, 3) == -3);
    Monomial w;  // p^2 x1
    w.x = {1, 0, 0};
    w.p = 2;
    CHECK(grading_value(w, Grading::weight, 3) == 2);
    CHECK(grading_value(w, Grading::x_degree, 3) == 1);
    CHECK(grading_value(p, Grading::x_degree, 3) == 0);
}

TEST_CASE("grading is additive under monomial multiplication") {
    std::mt19937 gen(13);
    for (int rep = 0; rep < 100; ++rep) {
        Monomial a, b;
        a.x = {int(gen() % 4), int(gen() % 4), int(gen() % 4)};
        a.p = gen() % 3;
        b.x = {int(gen() % 4), int(gen() % 4), int(gen() % 4)};
        b.p = gen() % 3;
        Monomial ab;
        ab.x = {a.x[0] + b.x[0], a.x[1] + b.x[1], a.x[2] + b.x[2]};
        ab.p = a.p + b.p;
        for (Grading g : {Grading::charge, Grading::weight, Grading::x_degree})
            CHECK(grading_value(ab, g, 3) ==
                  grading_value(a, g, 3) + grading_value(b, g, 3));
    }
}

TEST_CASE("homogeneous parts") {
    Poly q = parse_poly("1+p*x1^3+x1", 3);
    Poly charge0 = q.homogeneous_part(Grading::charge, 0);
    CHECK(charge0 == parse_poly("1+p*x1^3", 3));
    CHECK(q.homogeneous_part(Grading::charge, 99).is_zero());

    Poly fermat = parse_poly("x1^3+x2^3+x3^3", 3);
    CHECK(fermat.homogeneous_part(Grading::x_degree, 3) == fermat);

    // Parts over all attained values reassemble q.
    Poly sum = Poly::zero(3);
    for (int v = -20; v <= 20; ++v) sum = sum + q.homogeneous_part(Grading::charge, v);
    CHECK(sum == q);
}

TEST_CASE("euler identity for homogeneous f") {
    std::mt19937 gen(17);
    for (int rep = 0; rep < 30; ++rep) {
        // Random homogeneous cubic in 3 variables.
        Poly f(3);
        for (const auto& m : enumerate_monomials(3, 3)) {
            long c = static_cast<long>(gen() % 11) - 5;
            if (c != 0) f.add_term(m, Rat(c));
        }
        if (f.is_zero()) continue;
        Poly lhs = Poly::zero(3);
        for (int i = 0; i < 3; ++i)
            lhs = lhs + Poly::var_x(3, i) * f.derivative(VarRef::x(i));
        CHECK(lhs == f * Rat(3));
    }
}

TEST_CASE("scaling by a formal root of unity multiplies degree-n forms by its n-th power") {
    // Substitute x_i -> z x_i with z a formal marker: the result is the map
    // "power of z" -> polynomial part. f(z x) = z^n f(x) iff that map is
    // concentrated at n with value f.
    auto scale = [](const Poly& f) {
        std::map<int, Poly> out;
        for (const auto& [m, c] : f.terms()) {
            auto [it, inserted] = out.emplace(m.x_degree(), Poly::zero(f.n_vars()));
            it->second.add_term(m, c);
        }
        return out;
    };

    std::mt19937 gen(29);
    for (int rep = 0; rep < 20; ++rep) {
        Poly f(3);
        for (const auto& m : enumerate_monomials(3, 3))
            f.add_term(m, Rat(static_cast<long>(gen() % 9) - 4));
        if (f.is_zero()) continue;
        auto parts = scale(f);
        REQUIRE(parts.size() == 1);
        CHECK(parts.begin()->first == 3);
        CHECK(parts.begin()->second == f);
    }

    // A mixed-degree polynomial is not invariant.
    auto mixed = scale(parse_poly("x1^3+x1", 3));
    CHECK(mixed.size() == 2);
}

TEST_CASE("hessian determinants") {
    Poly cubic = parse_poly("x1^3+x2^3+x3^3", 3);
    CHECK(hessian_det(cubic) == parse_poly("216*x1*x2*x3", 3));

    Poly quartic = parse_poly("x1^4+x2^4+x3^4+x4^4", 4);
    CHECK(hessian_det(quartic) == parse_poly("20736*x1^2*x2^2*x3^2*x4^2", 4));

    // Degree law deg = n(n-2) on a non-diagonal example.
    Poly hesse = parse_poly("x1^3+x2^3+x3^3-6*x1*x2*x3", 3);
    Poly h = hessian_det(hesse);
    CHECK(h.is_homogeneous(Grading::x_degree, 3));
    CHECK(!h.is_zero());

    CHECK_THROWS_AS(hessian_det(parse_poly("x1^2", 3)), std::invalid_argument);
    CHECK_THROWS_AS(hessian_det(parse_poly("p*x1^3", 3)), std::invalid_argument);
}

TEST_CASE("monomial enumeration is canonical and complete") {
    auto monos = enumerate_monomials(3, 2);
    REQUIRE(monos.size() == 6);
    CHECK(monos[0].x == std::vector<int>({2, 0, 0}));
    CHECK(monos[1].x == std::vector<int>({1, 1, 0}));
    CHECK(monos[2].x == std::vector<int>({1, 0, 1}));
    CHECK(monos[3].x == std::vector<int>({0, 2, 0}));
    CHECK(monos[4].x == std::vector<int>({0, 1, 1}));
    CHECK(monos[5].x == std::vector<int>({0, 0, 2}));
    for (int n = 1; n <= 5; ++n)
        for (int d = 0; d <= 6; ++d)
            CHECK(static_cast<long>(enumerate_monomials(n, d).size()) == monomial_count(n, d));
}

TEST_CASE("parser survives garbage without crashing") {
    std::mt19937 gen(97);
    const std::string alphabet = "x123p^*/+- ()q";
    for (int rep = 0; rep < 500; ++rep) {
        std::string s;
        int len = gen() % 12;
        for (int i = 0; i < len; ++i) s.push_back(alphabet[gen() % alphabet.size()]);
        try {
            Poly q = parse_poly(s, 3);
            // Whatever parsed must round-trip.
            CHECK(parse_poly(q.to_string(), 3) == q);
        } catch (const ParseError& e) {
            CHECK(e.offset <= s.size());
        }
    }
}

TEST_CASE("rational helpers") {
    CHECK(rat_to_string(make_rat(2, 4)) == "1/2");
    CHECK(rat_from_string("-6/4") == make_rat(-3, 2));
    CHECK(*rat_sqrt(make_rat(4, 9)) == make_rat(2, 3));
    CHECK(!rat_sqrt(make_rat(2, 1)).has_value());
    CHECK(!rat_sqrt(make_rat(-4, 1)).has_value());
    CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
}
