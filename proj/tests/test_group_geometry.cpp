#include <doctest.h>

#include "cfx/group.hpp"
#include "cfx/random.hpp"

using namespace cfx;

namespace {

QMat diag_blocks(int n, const QMat &b) {
    QMat m(4 * n, 4 * n);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(4 * l + i, 4 * l + j) = b(i, j);
    return m;
}

} // namespace

TEST_CASE("quaternion relations of both triples") {
    const auto &q = quaternion_basis();
    QMat mId = mpq_class(-1) * identity4();
    for (auto *T : {&q.I, &q.J})
        for (int a = 0; a < 3; ++a) {
            CHECK((*T)[a] * (*T)[a] == mId);
            CHECK((*T)[a].transpose() == mpq_class(-1) * (*T)[a]);
        }
    const auto &I = q.I;
    CHECK(I[0] * I[1] == I[2]);
    CHECK(I[1] * I[2] == I[0]);
    CHECK(I[2] * I[0] == I[1]);
    CHECK(I[1] * I[0] == mpq_class(-1) * I[2]);
    // the J triple as tabulated is a quaternion triple of the opposite orientation
    const auto &J = q.J;
    CHECK(J[1] * J[0] == J[2]);
    CHECK(J[2] * J[1] == J[0]);
    CHECK(J[0] * J[2] == J[1]);
    CHECK(J[0] * J[1] == mpq_class(-1) * J[2]);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(q.I[a] * q.J[b] == q.J[b] * q.I[a]);
}

TEST_CASE("phi to S and B") {
    auto R = group_ring(1);
    GroupSpec r = group_from_phi(rightQH_phi(1, R));
    CHECK(r.S() == rightQH(1).S());
    // B^β = -2 diag(J^β)
    const auto &q = quaternion_basis();
    for (int b = 0; b < 3; ++b) CHECK(r.B(b) == mpq_class(-2) * q.J[b]);
    GroupSpec l = leftQH(2);
    for (int b = 0; b < 3; ++b) CHECK(l.B(b) == mpq_class(2) * diag_blocks(2, q.I[b]));
    Poly x1 = Poly::var(R, "x1"), x2 = Poly::var(R, "x2");
    GroupSpec g = group_from_phi(x1 * x2 * Cq(3));
    CHECK(g.S()(0, 1) == mpq_class(3, 2));
    CHECK(g.S()(1, 0) == mpq_class(3, 2));
    GroupSpec z = group_from_phi(Poly(R));
    for (int b = 0; b < 3; ++b) CHECK(z.B(b).is_zero());
    CHECK_THROWS(group_from_phi(x1 * x1 * x1));
    CHECK_THROWS(group_from_phi(x1 + x1 * x1));
    CHECK_THROWS(group_from_phi(Poly::var(R, "t1") * x1));
    CHECK_THROWS(group_from_phi(x1 * x1 * Cq::I()));
}

TEST_CASE("S validation") {
    QMat s(4, 4);
    s(0, 1) = 1;
    CHECK_THROWS(GroupSpec(s));
    CHECK_THROWS(GroupSpec(QMat(3, 3)));
}

TEST_CASE("right type verdicts on the canonical groups") {
    CHECK(is_right_type(rightQH(2)).right_type);
    CHECK(is_right_type_via_E(rightQH(2)));
    auto left = is_right_type(leftQH(1));
    CHECK_FALSE(left.right_type);
    CHECK_FALSE(left.offending().empty());
    CHECK_FALSE(is_right_type_via_E(leftQH(1)));
    CHECK(is_right_type(abelian(2)).right_type);
    CHECK(is_right_type_via_E(abelian(2)));
    // right QH: B = -2J exactly, coefficients (−2,0,0,0) on B^1
    auto r = is_right_type(rightQH(1));
    CHECK(r.blocks[0].coeffs[0] == -2);
    CHECK(r.blocks[0].coeffs[3] == 0);
}

TEST_CASE("both right type routes agree on random S") {
    Sampler s(2024);
    int agree = 0, right = 0;
    for (int t = 0; t < 200; ++t) {
        int n = 1 + t % 3;
        QMat S = (t % 2) ? random_right_type(s, n) : random_symmetric(s, n);
        GroupSpec g(S);
        bool a = is_right_type(g).right_type, b = is_right_type_via_E(g);
        CHECK(a == b);
        agree += a == b;
        right += a;
        if (t % 2) CHECK(a);
    }
    CHECK(agree == 200);
    CHECK(right >= 100);
}

TEST_CASE("block identity, explicit B1 table and skew symmetry") {
    Sampler s(7);
    const auto &q = quaternion_basis();
    for (int t = 0; t < 30; ++t) {
        int n = 1 + t % 3;
        GroupSpec g(random_symmetric(s, n));
        for (int b = 0; b < 3; ++b) CHECK(g.B(b).transpose() == mpq_class(-1) * g.B(b));
        for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m) {
                QMat Sb = g.S_block(l, m);
                for (int b = 0; b < 3; ++b) CHECK(g.B_block(b, l, m) == q.I[b] * Sb + Sb * q.I[b]);
                CHECK(g.B_block(0, l, m) == explicit_B1_block(Sb));
            }
        // diagonal blocks have no identity component
        auto rt = is_right_type(g);
        for (auto &c : rt.blocks)
            if (c.l == c.m) CHECK(c.coeffs[3] == 0);
    }
}

TEST_CASE("right type blocks expand in J and identity as read off S") {
    Sampler s(8);
    const auto &q = quaternion_basis();
    for (int t = 0; t < 30; ++t) {
        int n = 1 + t % 3;
        GroupSpec g(random_right_type(s, n));
        for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m)
                for (int b = 0; b < 3; ++b) {
                    auto c = right_type_coefficients(g.S_block(l, m), b);
                    QMat want = c[0] * q.J[0] + c[1] * q.J[1] + c[2] * q.J[2] + c[3] * identity4();
                    CHECK(g.B_block(b, l, m) == want);
                }
    }
}

TEST_CASE("curvature matrix") {
    CHECK(curvature_matrix(rightQH(2)).is_zero());
    CHECK(curvature_matrix(abelian(1)).is_zero());
    CMat e = curvature_matrix(leftQH(1));
    CHECK(e(0, 1) == Cq(4));
    CHECK(e(1, 0) == Cq(-4));
    Sampler s(3);
    for (int t = 0; t < 40; ++t) {
        int n = 1 + t % 3;
        GroupSpec g(t % 2 ? random_right_type(s, n) : random_symmetric(s, n));
        CMat c = curvature_matrix(g);
        CHECK(c.transpose() == Cq(-1) * c);
        for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m) CHECK(c(2 * l + 1, 2 * m + 1) == c(2 * l, 2 * m).conj());
        CHECK(c.is_zero() == is_right_type_via_E(g));
    }
}

TEST_CASE("horizontal fields and brackets") {
    auto R = group_ring(1);
    auto X = horizontal_fields(abelian(1), R);
    for (int b = 0; b < 4; ++b) CHECK(X[b] == VectorField::partial(R, b));
    CHECK(verify_brackets(abelian(1)).pass);
    CHECK(verify_brackets(rightQH(1)).pass);
    CHECK(verify_brackets(leftQH(2)).pass);
    Sampler s(5);
    CHECK(verify_brackets(GroupSpec(random_symmetric(s, 2))).pass);
    // right QH: [X1,X2] = 2 B^1_{12} ∂t1 = -4 ∂t1
    auto Y = horizontal_fields(rightQH(1), R);
    CHECK(bracket(Y[0], Y[1]) == VectorField::partial(R, R->index("t1"), Cq(-4)));
    CHECK(bracket(Y[1], Y[0]) == VectorField::partial(R, R->index("t1"), Cq(4)));
}

TEST_CASE("stratified") {
    CHECK(is_stratified(rightQH(1)));
    CHECK(is_stratified(leftQH(2)));
    CHECK_FALSE(is_stratified(abelian(1)));
    // diag(1,1,-1,-1) anticommutes with I^2, I^3: only B^1 survives
    QMat S(4, 4);
    S(0, 0) = S(1, 1) = 1;
    S(2, 2) = S(3, 3) = -1;
    GroupSpec g(S);
    CHECK_FALSE(g.B(0).is_zero());
    CHECK(g.B(1).is_zero());
    CHECK(g.B(2).is_zero());
    CHECK_FALSE(is_stratified(g));
}

TEST_CASE("condition H") {
    auto r = check_condition_H(rightQH(1));
    CHECK(r.details["verdict"] == "sampled-true");
    // det of Σλ(−2J) block = 16|λ|⁴
    auto P = condition_H_determinant(rightQH(1));
    RingPtr L = P.ring();
    Poly l1 = Poly::var(L, 0), l2 = Poly::var(L, 1), l3 = Poly::var(L, 2);
    Poly s2 = l1 * l1 + l2 * l2 + l3 * l3;
    CHECK(P == s2 * s2 * Cq(16));
    auto a = check_condition_H(abelian(1));
    CHECK(a.details["verdict"] == "false");
    CHECK(check_condition_H(leftQH(2), false).details["verdict"] == "sampled-true");
    QMat S(4, 4);
    S(0, 0) = S(1, 1) = 1;
    S(2, 2) = S(3, 3) = -1;
    auto h = check_condition_H(GroupSpec(S));
    CHECK(h.details["verdict"] == "false");
    CHECK(h.details["witness"] == nlohmann::json({"0", "1", "0"}));
}
