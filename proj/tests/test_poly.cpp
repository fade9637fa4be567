#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace hmstab;
using hmstab_test::Gen;

namespace {

Monomial mono(std::initializer_list<int> es) {
    Monomial m(static_cast<Eigen::Index>(es.size()));
    Eigen::Index i = 0;
    for (int e : es) m(i++) = e;
    return m;
}

} // namespace

TEST_CASE("parser accepts the documented grammar") {
    auto f = parse_poly_q("X1^2*X2 - X0^3", 3);
    CHECK(f.degree() == 3);
    CHECK(f.n_vars() == 3);
    CHECK(f.term_count() == 2);
    CHECK(f.coefficient(mono({0, 2, 1})) == Rational(1));
    CHECK(f.coefficient(mono({3, 0, 0})) == Rational(-1));

    auto g = parse_poly_q("2/3*X0^2 + X1^2", 2);
    CHECK(g.coefficient(mono({2, 0})) == Rational(2) / 3);
    CHECK(g.coefficient(mono({0, 2})) == Rational(1));

    // Optional '*' after the coefficient, repeated variables multiply out,
    // case-insensitive variable letter, arbitrary whitespace.
    auto h = parse_poly_q(" 2x0 * X0 ^ 2+x1^3 ", 2);
    CHECK(h.coefficient(mono({3, 0})) == Rational(2));
    CHECK(h.coefficient(mono({0, 3})) == Rational(1));
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_poly_q("X0^2 + X1^3", 2), ParseError);     // mixed degrees
    CHECK_THROWS_AS(parse_poly_q("X3^2", 3), ParseError);            // index out of range
    CHECK_THROWS_AS(parse_poly_q("", 2), ParseError);
    CHECK_THROWS_AS(parse_poly_q("X0 +", 2), ParseError);
    CHECK_THROWS_AS(parse_poly_q("X0 X1", 2), ParseError);           // missing '*'
    CHECK_THROWS_AS(parse_poly_q("3*", 2), ParseError);
    CHECK_THROWS_AS(parse_poly_q("1/0*X0", 2), ParseError);
    CHECK_THROWS_AS(parse_poly_fp("1/7*X0", 2, 7), ParseError);      // denominator 0 mod p
    CHECK_THROWS_AS(parse_poly_fp("X0^2", 2, 6), DomainError);       // modulus not prime
    try {
        parse_poly_q("X0^2 + X1^3", 2);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("mixed degrees") != std::string::npos);
    }
}

TEST_CASE("cancellation yields the zero polynomial, degree retained") {
    auto z = parse_poly_q("X0^2 - X0^2", 2);
    CHECK(z.is_zero());
    CHECK(z.degree() == 2);
    CHECK(to_string(z) == "0");
}

TEST_CASE("canonical printing") {
    CHECK(to_string(parse_poly_q("X1^2*X2 - X0^3", 3)) == "-X0^3 + X1^2*X2");
    CHECK(to_string(parse_poly_q("2/3*X0^2 + X1^2", 2)) == "2/3*X0^2 + X1^2");
    CHECK(to_string(parse_poly_fp("X0^2 - X1^2", 2, 7)) == "X0^2 + 6*X1^2");
}

TEST_CASE("parse/print round-trip is the identity on canonical forms") {
    Gen gen(2024);
    for (int t = 0; t < 200; ++t) {
        int n = static_cast<int>(gen.uniform(2, 4));
        long d = gen.uniform(1, 5);
        auto f = gen.nonzero_poly_q(n, d, static_cast<int>(gen.uniform(1, 6)));
        CHECK(parse_poly_q(to_string(f), n) == f);
    }
    for (int t = 0; t < 200; ++t) {
        int n = static_cast<int>(gen.uniform(2, 4));
        long d = gen.uniform(1, 5);
        auto f = gen.nonzero_poly_fp(n, d, static_cast<int>(gen.uniform(1, 6)), 7);
        CHECK(parse_poly_fp(to_string(f), n, 7) == f);
    }
}

TEST_CASE("linear change: permutation example and composition law") {
    // Swap X0 and X2: the cusp maps to X1^2*X0 - X2^3.
    MatrixXq swap02 = MatrixXq::Zero(3, 3);
    swap02(0, 2) = swap02(1, 1) = swap02(2, 0) = Rational(1);
    LinearChange<Rational> g(swap02);
    auto f = parse_poly_q("X1^2*X2 - X0^3", 3);
    CHECK(apply_linear_change(f, g) == parse_poly_q("X1^2*X0 - X2^3", 3));

    // Identity fixes everything.
    CHECK(apply_linear_change(f, LinearChange<Rational>::identity(3)) == f);

    // (F o g) o h = F o (g*h), degree preserved throughout.
    Gen gen(77);
    for (int t = 0; t < 50; ++t) {
        auto F = gen.nonzero_poly_q(3, gen.uniform(1, 4), 4);
        auto G = gen.unimodular_change_q(3);
        auto H = gen.unimodular_change_q(3);
        auto lhs = apply_linear_change(apply_linear_change(F, G), H);
        auto rhs = apply_linear_change(F, G * H);
        CHECK(lhs == rhs);
        CHECK(lhs.degree() == F.degree());
    }
    for (int t = 0; t < 30; ++t) {
        auto F = gen.nonzero_poly_fp(3, gen.uniform(1, 4), 4, 11);
        auto G = gen.invertible_change_fp(3, 11);
        auto H = gen.invertible_change_fp(3, 11);
        CHECK(apply_linear_change(apply_linear_change(F, G), H) ==
              apply_linear_change(F, G * H));
    }
}

TEST_CASE("linear change evaluation compatibility") {
    // (F o g)(x) = F(g x) pointwise.
    Gen gen(31);
    for (int t = 0; t < 50; ++t) {
        auto F = gen.nonzero_poly_q(3, gen.uniform(1, 4), 4);
        auto G = gen.unimodular_change_q(3);
        auto x = gen.point_q(3);
        CHECK(evaluate(apply_linear_change(F, G), x) == evaluate(F, VectorXq(G.apply(x))));
    }
}

TEST_CASE("singular substitution is rejected") {
    MatrixXq m = MatrixXq::Zero(2, 2);
    m(0, 0) = Rational(1);
    m(0, 1) = Rational(2);
    m(1, 0) = Rational(2);
    m(1, 1) = Rational(4);
    CHECK_THROWS_AS((void)LinearChange<Rational>{m}, DomainError);
}

TEST_CASE("partial derivatives") {
    auto f = parse_poly_q("X0^3", 2);
    CHECK(partial_derivative(f, 0) == parse_poly_q("3*X0^2", 2));
    CHECK(partial_derivative(f, 1).is_zero());
    CHECK(partial_derivative(f, 1).degree() == 2);

    // Characteristic kills the coefficient: d(X0^7)/dX0 = 0 over F_7.
    auto g = parse_poly_fp("X0^7", 2, 7);
    CHECK(partial_derivative(g, 0).is_zero());
    CHECK(partial_derivative(g, 0).degree() == 6);
}

TEST_CASE("Euler identity sum X_i dF/dX_i = d*F") {
    Gen gen(55);
    for (int t = 0; t < 100; ++t) {
        int n = static_cast<int>(gen.uniform(2, 4));
        long d = gen.uniform(1, 5);
        auto F = gen.nonzero_poly_q(n, d, 4);
        HomogeneousPoly<Rational> acc(n, d);
        for (int i = 0; i < n; ++i) {
            HomogeneousPoly<Rational> xi(n, 1);
            Monomial m = Monomial::Zero(n);
            m(i) = 1;
            xi.add_term(m, Rational(1));
            acc = acc + xi * partial_derivative(F, i);
        }
        CHECK(acc == Rational(d) * F);
    }
    // Holds as a formal identity in characteristic p as well (both sides 0
    // when p | d).
    for (int t = 0; t < 50; ++t) {
        int n = static_cast<int>(gen.uniform(2, 3));
        long d = gen.uniform(1, 7);
        auto F = gen.nonzero_poly_fp(n, d, 4, 7);
        HomogeneousPoly<Fp> acc(n, d);
        for (int i = 0; i < n; ++i) {
            HomogeneousPoly<Fp> xi(n, 1);
            Monomial m = Monomial::Zero(n);
            m(i) = 1;
            xi.add_term(m, Fp(1, 7));
            acc = acc + xi * partial_derivative(F, i);
        }
        CHECK(acc == Fp(d, 7) * F);
    }
}

TEST_CASE("dehomogenize drops the chosen variable") {
    auto f = parse_poly_q("X1^2*X2 - X0^3 - X0^2*X2", 3);
    auto loc = dehomogenize(f, 2); // local equation at X2 = 1 in (X0, X1)
    CHECK(loc.n_vars() == 2);
    CHECK(loc.coefficient(mono({0, 2})) == Rational(1));
    CHECK(loc.coefficient(mono({3, 0})) == Rational(-1));
    CHECK(loc.coefficient(mono({2, 0})) == Rational(-1));
    CHECK(loc.min_total_degree() == 2);
    CHECK(loc.max_total_degree() == 3);
}

TEST_CASE("dehomogenize/evaluate consistency") {
    Gen gen(99);
    for (int t = 0; t < 100; ++t) {
        int n = static_cast<int>(gen.uniform(2, 4));
        auto F = gen.nonzero_poly_q(n, gen.uniform(1, 4), 4);
        int i = static_cast<int>(gen.uniform(0, n - 1));
        auto f = dehomogenize(F, i);
        VectorXq affine = gen.point_q(n - 1);
        VectorXq full(n);
        Eigen::Index k = 0;
        for (Eigen::Index j = 0; j < n; ++j) full(j) = (j == i) ? Rational(1) : affine(k++);
        CHECK(evaluate(f, affine) == evaluate(F, full));
    }
}

TEST_CASE("homogeneous components of a local equation") {
    auto f = dehomogenize(parse_poly_q("X1^2*X2 - X0^3 - X0^2*X2", 3), 2);
    auto c2 = homogeneous_component(f, 2);
    auto c3 = homogeneous_component(f, 3);
    CHECK(c2.coefficient(mono({0, 2})) == Rational(1));
    CHECK(c2.coefficient(mono({2, 0})) == Rational(-1));
    CHECK(c2.term_count() == 2);
    CHECK(c3.coefficient(mono({3, 0})) == Rational(-1));
    CHECK(c3.term_count() == 1);
    CHECK(homogeneous_component(f, 1).is_zero());
}

TEST_CASE("tail decomposition: frozen example") {
    auto f = parse_poly_q("X1^2*X2 - X0^3", 3);
    auto parts = tail_decomposition(f);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == parse_poly_q("-X0^2", 3));
    CHECK(parts[1] == parse_poly_q("X1*X2", 3));
    CHECK(parts[2].is_zero());
}

TEST_CASE("tail decomposition: reconstruction and variable support") {
    Gen gen(123);
    auto check_field = [&](auto make_poly, auto one) {
        for (int t = 0; t < 80; ++t) {
            int n = static_cast<int>(gen.uniform(2, 4));
            long d = gen.uniform(1, 5);
            auto F = make_poly(n, d);
            auto parts = tail_decomposition(F);
            REQUIRE(static_cast<int>(parts.size()) == n);
            auto acc = decltype(F)(n, d);
            for (int i = 0; i < n; ++i) {
                // P_i must not involve variables below i.
                for (const auto& [m, c] : parts[static_cast<size_t>(i)].terms())
                    for (int j = 0; j < i; ++j) CHECK(m(j) == 0);
                decltype(F) xi(n, 1);
                Monomial mm = Monomial::Zero(n);
                mm(i) = 1;
                xi.add_term(mm, one);
                acc = acc + xi * parts[static_cast<size_t>(i)];
            }
            CHECK(acc == F);
        }
    };
    check_field([&](int n, long d) { return gen.nonzero_poly_q(n, d, 5); }, Rational(1));
    check_field([&](int n, long d) { return gen.nonzero_poly_fp(n, d, 5, 5); }, Fp(1, 5));
    // Zero polynomial decomposes to an all-zero list.
    auto zero_parts = tail_decomposition(HomogeneousPoly<Rational>(3, 2));
    for (const auto& p : zero_parts) CHECK(p.is_zero());
}

TEST_CASE("projective point text") {
    auto x = parse_point_q("[0:0:1]", 3);
    CHECK(is_zero(x(0)));
    CHECK(x(2) == Rational(1));
    CHECK(point_to_string(x) == "[0:0:1]");
    auto y = parse_point_q("[-1:2/3:1]", 3);
    CHECK(y(1) == Rational(2) / 3);
    CHECK_THROWS_AS(parse_point_q("[0:0:0]", 3), ParseError);
    CHECK_THROWS_AS(parse_point_q("[1:2]", 3), ParseError);
    CHECK_THROWS_AS(parse_point_q("1:2:3", 3), ParseError);
    auto z = parse_point_fp("[3:1/2:1]", 3, 7);
    CHECK(z(0).value() == 3);
    CHECK(z(1).value() == 4); // 1/2 = 4 mod 7
    CHECK_THROWS_AS(parse_point_fp("[7:14:21]", 3, 7), ParseError); // all zero mod 7
}
