#include <doctest.h>

#include "cfx/random.hpp"
#include "cfx/spinor.hpp"

using namespace cfx;

namespace {

RingPtr R3() { return make_ring({"x1", "x2", "x3", "t1"}); }

Poly X(const RingPtr &r, const char *n) { return Poly::var(r, n); }

// element of ⊙^σC² as an honest polynomial in s^{0'}, s^{1'} (one scalar slot per basis vector)
Poly as_spinor_poly(const RingPtr &sr, const SpinorField &F, int comp_blade = 0) {
    Poly s0 = Poly::var(sr, "u0"), s1 = Poly::var(sr, "u1");
    Poly out(sr);
    const int sig = F.sigma();
    for (int a = 0; a <= sig; ++a) {
        Cq c = F.slot(a).coeff(Blade(comp_blade)).constant_term();
        if (c.is_zero()) continue;
        Poly b(sr, Cq(1));
        if (F.basis() == Basis::S) {
            for (int i = 0; i < sig - a; ++i) b = b * s0;
            for (int i = 0; i < a; ++i) b = b * s1;
            b *= Cq(1 / (factorial(sig - a) * factorial(a)));
        } else {
            // s_{0'} = -s^{1'}, s_{1'} = s^{0'}
            for (int i = 0; i < sig - a; ++i) b = b * (-s1);
            for (int i = 0; i < a; ++i) b = b * s0;
        }
        out += b * c;
    }
    return out;
}

SpinorField constant_field(Basis b, const std::vector<Cq> &cs, const RingPtr &r) {
    std::vector<ExtForm> s;
    for (auto &c : cs) s.push_back(ExtForm::scalar(Poly(r, c), 2));
    return SpinorField(b, int(cs.size()) - 1, s);
}

} // namespace

TEST_CASE("poly_diff follows the power rule and names unknown variables") {
    auto r = R3();
    Poly x1 = X(r, "x1"), x2 = X(r, "x2"), t1 = X(r, "t1");
    CHECK(poly_diff(x1 * x1 * x2, "x1") == x1 * x2 * Cq(2));
    CHECK(poly_diff(x1, "x3").is_zero());
    CHECK(poly_diff(x1 * t1 + t1 * t1, "t1") == x1 + t1 * Cq(2));
    CHECK_THROWS_WITH_AS(poly_diff(x1, "y7"), doctest::Contains("y7"), std::invalid_argument);
}

TEST_CASE("poly Leibniz on random data") {
    auto r = R3();
    Sampler s(11);
    for (int t = 0; t < 30; ++t) {
        Poly p = s.poly(r, 3, 4), q = s.poly(r, 3, 4);
        for (int v = 0; v < r->size(); ++v) CHECK((p * q).diff(v) == p.diff(v) * q + p * q.diff(v));
    }
}

TEST_CASE("degree cap is enforced") {
    auto r = make_ring({"x"}, 3);
    Poly x = Poly::var(r, 0);
    CHECK_NOTHROW(x * x * x);
    CHECK_THROWS_AS(x * x * x * x, DegreeCapError);
}

TEST_CASE("poly json round trip") {
    auto r = R3();
    Poly p = X(r, "x1") * X(r, "t1") * Cq(mpq_class(3, 4), mpq_class(-1, 2)) + Poly(r, Cq(2));
    auto j = p.to_json();
    CHECK(j["terms"].size() == 2);
    CHECK(Poly::from_json(j) == p.recast(make_ring(r->names())));
    CHECK(Poly::from_json(j, r) == p);
    nlohmann::json bad = {{"vars", {"x1"}}, {"terms", {{{"c", {"1/0", "0"}}, {"e", {1}}}}}};
    CHECK_THROWS(Poly::from_json(bad));
}

TEST_CASE("wedge signs and bilinearity") {
    auto r = R3();
    auto w = [&](std::vector<int> i) { return ExtForm::basis(r, 3, i); };
    CHECK(wedge(w({0}), w({1})) == w({0, 1}));
    CHECK(wedge(w({1}), w({0})) == -w({0, 1}));
    CHECK(wedge(w({0}), w({0})).is_zero());
    ExtForm f = X(r, "x1") * w({0});
    ExtForm g = X(r, "x2") * w({1}) + w({2});
    CHECK(wedge(f, g) == (X(r, "x1") * X(r, "x2")) * w({0, 1}) + X(r, "x1") * w({0, 2}));
    CHECK_THROWS(wedge(ExtForm(r, 3, 1), ExtForm(r, 4, 1)));
    // over-degree product is the zero form of that degree
    CHECK(wedge(w({0, 1}), w({0, 1, 2})).degree() == 5);
}

TEST_CASE("graded commutativity on random forms") {
    auto r = R3();
    Sampler s(5);
    for (int t = 0; t < 40; ++t) {
        int p = s.uniform(0, 3), q = s.uniform(0, 5 - p);
        ExtForm f = s.form(r, 5, p, 2), g = s.form(r, 5, q, 2);
        ExtForm lhs = wedge(f, g), rhs = wedge(g, f);
        if ((p * q) % 2) rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("raising and lowering primed indices") {
    auto e = epsilon();
    CHECK(e.lower[0][1] == 1);
    CHECK(e.lower[1][0] == -1);
    CHECK(e.upper[0][1] == -1);
    // upper is the inverse of lower
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpq_class s = 0;
            for (int k = 0; k < 2; ++k) s += e.lower[i][k] * e.upper[k][j];
            CHECK(s == (i == j ? 1 : 0));
        }
    auto up = raise_primed(std::pair<long, long>{1, 2});
    CHECK(up == std::pair<long, long>{2, -1});
    CHECK(raise_primed(std::pair<long, long>{0, 0}) == std::pair<long, long>{0, 0});
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b) {
            std::pair<long, long> v{a, b};
            CHECK(lower_primed(raise_primed(v)) == v);
            CHECK(raise_primed(lower_primed(v)) == v);
        }
    // agrees with contracting against ε^{B'A'}
    long f0 = 3, f1 = -5;
    long up0 = f0 * e.upper[0][0].get_num().get_si() + f1 * e.upper[1][0].get_num().get_si();
    long up1 = f0 * e.upper[0][1].get_num().get_si() + f1 * e.upper[1][1].get_num().get_si();
    CHECK(raise_primed(std::pair<long, long>{f0, f1}) == std::pair<long, long>{up0, up1});
}

TEST_CASE("S basis derivative table") {
    CHECK(sym_basis_derivative(0, 2, Primed::P0) == SymBasisElem{0, 1});
    CHECK_FALSE(sym_basis_derivative(0, 2, Primed::P1).has_value());
    CHECK(sym_basis_derivative(2, 2, Primed::P1) == SymBasisElem{1, 1});
    CHECK_FALSE(sym_basis_derivative(2, 2, Primed::P0).has_value());
    CHECK_THROWS_AS(sym_basis_derivative(3, 2, Primed::P0), std::out_of_range);
    CHECK(tilde_basis_multiply(1, 1, Primed::P0) == SymBasisElem{1, 2});
    CHECK(tilde_basis_multiply(1, 1, Primed::P1) == SymBasisElem{2, 2});
    CHECK_THROWS(tilde_basis_multiply(-1, 1, Primed::P1));
}

TEST_CASE("basis operators agree with honest polynomials in s") {
    auto r = R3();
    auto sr = make_ring({"u0", "u1"}, 12);
    Sampler smp(3);
    for (int sig = 0; sig <= 4; ++sig) {
        std::vector<Cq> cs;
        for (int a = 0; a <= sig; ++a) cs.push_back(smp.small_coeff());
        SpinorField S = constant_field(Basis::S, cs, r);
        SpinorField T = constant_field(Basis::TildeS, cs, r);
        // conversion S <-> tilde preserves the polynomial
        CHECK(as_spinor_poly(sr, s_to_tilde(S)) == as_spinor_poly(sr, S));
        CHECK(as_spinor_poly(sr, tilde_to_s(T)) == as_spinor_poly(sr, T));
        CHECK(tilde_to_s(s_to_tilde(S)) == S);
        // ∂_{A'} = d/ds^{A'}
        if (sig > 0) {
            CHECK(as_spinor_poly(sr, partial(Primed::P0, S)) == as_spinor_poly(sr, S).diff(0));
            CHECK(as_spinor_poly(sr, partial(Primed::P1, S)) == as_spinor_poly(sr, S).diff(1));
        }
        // s_{0'} = -s^{1'}, s_{1'} = s^{0'}
        CHECK(as_spinor_poly(sr, multiply_s(Primed::P0, T)) == as_spinor_poly(sr, T) * (-Poly::var(sr, 1)));
        CHECK(as_spinor_poly(sr, multiply_s(Primed::P1, T)) == as_spinor_poly(sr, T) * Poly::var(sr, 0));
    }
}

TEST_CASE("multiply then differentiate: Leibniz through basis conversion") {
    auto r = R3();
    Sampler smp(8);
    auto eps = epsilon();
    for (int sig = 0; sig <= 3; ++sig) {
        SpinorField T = smp.field(Basis::TildeS, sig, r, 3, 1, 2);
        for (Primed A : kPrimed)
            for (Primed B : kPrimed) {
                // ∂_{B'}(s_{A'}F) = ε_{B'A'}F + s_{A'}∂_{B'}F
                SpinorField lhs = partial(B, tilde_to_s(multiply_s(A, T)));
                SpinorField rhs = tilde_to_s(T).map([&](const ExtForm &f) { return f * Cq(eps.lower[o(B)][o(A)]); });
                if (sig > 0) rhs += tilde_to_s(multiply_s(A, s_to_tilde(partial(B, tilde_to_s(T)))));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("tuple conversions commute with ∂ and s") {
    auto r = R3();
    Sampler smp(21);
    for (int sig = 1; sig <= 4; ++sig) {
        SpinorField S = smp.field(Basis::S, sig, r, 3, 1, 2);
        CHECK(tuple_to_s(s_to_tuple(S)) == S);
        for (Primed A : kPrimed) CHECK(tuple_to_s(partial_tuple(A, s_to_tuple(S))) == partial(A, S));
        SpinorField T = smp.field(Basis::TildeS, sig, r, 3, 1, 2);
        CHECK(tuple_to_tilde(tilde_to_tuple(T)) == T);
        for (Primed A : kPrimed) CHECK(tuple_to_tilde(multiply_s_tuple(A, tilde_to_tuple(T))) == multiply_s(A, T));
    }
}

TEST_CASE("symmetrization") {
    auto r = R3();
    auto one = ExtForm::scalar(Poly(r, Cq(1)), 2);
    auto zero = ExtForm(r, 2, 0);
    // σ=2: f_{0'1'} = 1 (mask bit0=0, bit1=1 -> 0b10), others 0
    SpinorField f(Basis::Tuple, 2, {zero, zero, one, zero});
    SpinorField s = symmetrize(f);
    CHECK(s.slot(0b01) == one * Cq(mpq_class(1, 2)));
    CHECK(s.slot(0b10) == one * Cq(mpq_class(1, 2)));
    CHECK(s.slot(0b00).is_zero());
    CHECK(symmetrize(s) == s);
    CHECK(is_symmetric(s));
    CHECK_FALSE(is_symmetric(f));
    CHECK_THROWS(tuple_to_s(f));

    Sampler smp(4);
    for (int sig = 1; sig <= 4; ++sig) {
        // random tuple that is symmetric in the tail positions only
        SpinorField tail = smp.field(Basis::Tuple, sig - 1, r, 2, 1, 2);
        SpinorField other = smp.field(Basis::Tuple, sig - 1, r, 2, 1, 2);
        std::vector<ExtForm> g;
        for (unsigned m = 0; m < (1u << sig); ++m) g.push_back((m & 1) ? other.slot(m >> 1) : tail.slot(m >> 1));
        SpinorField G(Basis::Tuple, sig, g);
        CHECK(symmetrize_tail_symmetric(G) == symmetrize(G));
        CHECK(symmetrize(symmetrize(G)) == symmetrize(G));
    }
}
