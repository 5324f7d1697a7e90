#include <doctest.h>

#include "cfx/boundary.hpp"
#include "cfx/random.hpp"

using namespace cfx;

TEST_CASE("tangent frame agrees with the ambient construction") {
    for (auto g : {abelian(1), rightQH(1), leftQH(1), rightQH(2), leftQH(2)}) {
        auto r = verify_tangent_frame(g);
        INFO(r.to_json().dump());
        CHECK(r.pass);
    }
    Sampler s(11);
    auto r = verify_tangent_frame(GroupSpec(random_symmetric(s, 2)));
    INFO(r.to_json().dump());
    CHECK(r.pass);
}

TEST_CASE("frak d on coordinates") {
    TangentFrame fr(abelian(1));
    const auto &R = fr.ring();
    ExtForm x1 = ExtForm::scalar(Poly::var(R, "x1"), 2);
    // row 1 of the raised pattern carries X_1 in the 0' column
    CHECK(frak_d(fr, Primed::P0, x1) == ExtForm::basis(R, 2, {1}));
    CHECK(frak_d(fr, Primed::P1, x1) == -ExtForm::basis(R, 2, {0}));
    CHECK(frak_d_lower(fr, Primed::P1, x1) == frak_d(fr, Primed::P0, x1));
    // 𝔡 of a constant form vanishes
    CHECK(frak_d(fr, Primed::P0, ExtForm::basis(R, 2, {0})).is_zero());
}

TEST_CASE("frak d Leibniz rule") {
    TangentFrame fr(leftQH(1));
    Sampler s(3);
    for (int t = 0; t < 10; ++t) {
        ExtForm f = s.form(fr.ring(), 2, 0, 2), g = s.form(fr.ring(), 2, 1, 2);
        for (Primed A : kPrimed) CHECK(frak_d(fr, A, wedge(f, g)) == wedge(frak_d(fr, A, f), g) + wedge(f, frak_d(fr, A, g)));
    }
}

TEST_CASE("curvature") {
    CHECK(curvature(TangentFrame(rightQH(2))).vanishes());
    CHECK(curvature(TangentFrame(abelian(2))).vanishes());
    TangentFrame l(leftQH(1));
    auto c = curvature(l);
    CHECK_FALSE(c.vanishes());
    CHECK(c.E_primed[0].is_zero());
    CHECK(c.E01.is_zero());
    CHECK(l.E_matrix()(0, 1) == Cq(4));
    CHECK(l.E().coeff(blade_of({0, 1})) == Poly(l.ring(), Cq(8)));
}

TEST_CASE("level table") {
    TangentFrame fr(rightQH(2));
    BoundarySpec sp(fr, 2);
    CHECK(sp.top_level() == 3);
    CHECK(sp.first(0).sigma == 2);
    CHECK(sp.first(0).tau == 0);
    CHECK_FALSE(sp.second(0));
    CHECK(sp.second(1)->sigma == 0);
    CHECK(sp.second(1)->tau == 0);
    CHECK(sp.second(2)->sigma == 0);
    CHECK(sp.second(2)->tau == 2);
    CHECK(sp.first(3).basis == Basis::TildeS);
    CHECK(sp.first(3).sigma == 0);
    CHECK(sp.first(3).tau == 4);
    CHECK(sp.second(3)->tau == 3);
    BoundarySpec z(fr, 0);
    CHECK(z.second(0)->tau == 0);
    CHECK_THROWS(sp.first(4));
    BoundaryField F = zero_boundary_field(sp, 1);
    CHECK_THROWS(boundary_Dj(sp, 0, F));
}

TEST_CASE("boundary complex composes to zero") {
    // n = 1 has a single operator; compositions start at n = 2
    for (auto g : {rightQH(2), leftQH(2)})
        for (int k : {0, 1, 2, 3}) {
            TangentFrame fr(g);
            BoundarySpec sp(fr, k);
            auto r = verify_boundary_composition(sp, 5, 99, 3);
            INFO(g.name() << " k=" << k << " " << r.to_json().dump());
            CHECK(r.pass);
            CHECK(r.details["nonzero_images"].get<int>() > 0);
        }
    Sampler s(21);
    TangentFrame fr(GroupSpec(random_symmetric(s, 2)));
    CHECK(verify_boundary_composition(BoundarySpec(fr, 1), 3, 5, 2).pass);
}

TEST_CASE("boundary complex composes to zero for n = 3") {
    TangentFrame fr(leftQH(3));
    for (int k : {1, 3}) {
        auto r = verify_boundary_composition(BoundarySpec(fr, k), 1, 4, 2);
        INFO(r.to_json().dump());
        CHECK(r.pass);
        CHECK(r.details["branches"].size() >= 3);
    }
}

TEST_CASE("right type subcomplex") {
    for (auto g : {rightQH(1), rightQH(2), abelian(2)})
        for (int k : {1, 2}) {
            TangentFrame fr(g);
            BoundarySpec sp(fr, k);
            auto r = verify_subcomplex_composition(sp, 3, 7, 3);
            INFO(r.to_json().dump());
            CHECK(r.pass);
        }
    TangentFrame l(leftQH(1));
    CHECK_THROWS(verify_subcomplex_composition(BoundarySpec(l, 1), 1, 1));
}

TEST_CASE("symmetrized square of frak d") {
    auto r = verify_anticommute(TangentFrame(rightQH(2)), 6, 1, 3);
    CHECK(r.pass);
    CHECK(r.details["residual_nonzero"] == false);
    for (auto g : {leftQH(1), leftQH(2)}) {
        auto l = verify_anticommute(TangentFrame(g), 6, 2, 3);
        INFO(l.to_json().dump());
        CHECK(l.pass);
        CHECK(l.details["residual_nonzero"] == true);
        CHECK(l.details["equals_plus_E_wedge_T"] == true);
        CHECK(l.details["equals_minus_E_wedge_T"] == false);
    }
}

TEST_CASE("bracket identities") {
    for (auto g : {rightQH(1), leftQH(1), leftQH(2)}) {
        TangentFrame fr(g);
        auto b = bracket_identity(fr);
        INFO(b.to_json().dump());
        CHECK(b.pass);
    }
    Sampler s(4);
    CHECK(bracket_identity(TangentFrame(GroupSpec(random_symmetric(s, 2)))).pass);
}

TEST_CASE("XX cancellation on right type groups") {
    CHECK(verify_XX_identity(TangentFrame(rightQH(1))).pass);
    CHECK(verify_XX_identity(TangentFrame(rightQH(3))).pass);
    Sampler s(4);
    CHECK(verify_XX_identity(TangentFrame(GroupSpec(random_right_type(s, 2)))).pass);
    // the cancellation is exactly the vanishing of ℰ_{2l,2l+1}
    TangentFrame l(leftQH(1));
    CHECK_FALSE(verify_XX_identity(l).pass);
    VectorField v = bracket(l.Z(0, Primed::P0), l.Z(1, Primed::P1)) + bracket(l.Z(0, Primed::P1), l.Z(1, Primed::P0));
    CHECK(v == (l.T_upper(Primed::P0, Primed::P1) + l.T_upper(Primed::P1, Primed::P0)) * (l.E_matrix()(0, 1) * Cq(2)));
}

TEST_CASE("hodge diagonal") {
    for (auto g : {rightQH(1), rightQH(2)})
        for (int k : {1, 2}) {
            auto r = hodge_diag(TangentFrame(g), k, 3, 12, 3);
            INFO(r.to_json().dump());
            CHECK(r.pass);
        }
    auto r = hodge_diag(TangentFrame(rightQH(1)), 3, 1, 1, 3);
    CHECK(r.details["weights"] == nlohmann::json({1, 2, 2, 1}));
    CHECK_THROWS(hodge_diag(TangentFrame(leftQH(1)), 1, 1, 1));
}
