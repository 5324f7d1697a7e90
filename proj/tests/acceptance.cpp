// acceptance: one PASS/FAIL line per criterion, nonzero exit if any fails
#include "cfx/boundary.hpp"
#include "cfx/flat_complex.hpp"
#include "cfx/group.hpp"
#include "cfx/monge_ampere.hpp"
#include "cfx/random.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace cfx;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream why;
    void need(bool ok, const std::string &what) {
        if (!ok) {
            if (!pass) why << "; ";
            why << what;
            pass = false;
        }
    }
};

const std::vector<std::pair<int, int>> kFlatSet{{1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};

std::vector<mpq_class> random_covector(Sampler &s, int len) {
    for (;;) {
        std::vector<mpq_class> v;
        bool zero = true;
        for (int i = 0; i < len; ++i) {
            v.push_back(s.small_rational());
            zero = zero && sgn(v.back()) == 0;
        }
        if (!zero) return v;
    }
}

void c1(Outcome &o) {
    for (auto [n, k] : kFlatSet) {
        auto r = verify_flat_composition(ComplexSpec(n, k), 20, 101, 3);
        o.need(r.pass, "(" + std::to_string(n) + "," + std::to_string(k) + ") " + r.residual);
    }
}

void c2(Outcome &o) {
    for (auto [n, k] : kFlatSet) {
        auto r = verify_tuple_equivalence(ComplexSpec(n, k), 20, 102, 3);
        o.need(r.pass, "(" + std::to_string(n) + "," + std::to_string(k) + ") " + r.residual);
    }
}

void c3(Outcome &o) {
    ComplexSpec s11(1, 1);
    std::vector<mpq_class> e1(8, mpq_class(0));
    e1[0] = 1;
    auto r = exactness(s11, e1);
    o.need(r.dims == std::vector<long>{2, 4, 4, 2}, "dims at e1");
    o.need(r.ranks == std::vector<int>{2, 2, 2}, "ranks at e1");
    o.need(r.all_exact() && r.products_zero, "exactness at e1");
    Sampler s(103);
    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 1}}) {
        ComplexSpec spec(n, k);
        for (int t = 0; t < 10; ++t) {
            auto v = random_covector(s, 4 * n + 4);
            auto x = exactness(spec, v);
            bool ranks_ok = true;
            for (size_t j = 0; j + 1 < x.ranks.size(); ++j) ranks_ok = ranks_ok && x.ranks[j] + x.ranks[j + 1] == x.dims[j + 1];
            o.need(x.all_exact() && x.products_zero && ranks_ok, "random v for (" + std::to_string(n) + "," + std::to_string(k) + ")");
        }
    }
}

void c4(Outcome &o) {
    for (int n = 1; n <= 3; ++n) {
        o.need(is_right_type(rightQH(n)).right_type, "rightQH(" + std::to_string(n) + ") not right type");
        o.need(!is_right_type(leftQH(n)).right_type, "leftQH(" + std::to_string(n) + ") right type");
    }
    Sampler s(104);
    int disagree = 0;
    for (int t = 0; t < 200; ++t) {
        int n = 1 + t % 3;
        GroupSpec g((t % 2) ? random_right_type(s, n) : random_symmetric(s, n));
        disagree += is_right_type(g).right_type != is_right_type_via_E(g);
    }
    o.need(disagree == 0, std::to_string(disagree) + " disagreements on random S");
    // literal relations: squares −Id, T1T2 = T3 (cyclic), I commutes with J
    const auto &q = quaternion_basis();
    QMat mId = mpq_class(-1) * identity4();
    for (auto [T, label] : {std::pair{&q.I, "I"}, std::pair{&q.J, "J"}}) {
        const auto &X = *T;
        bool sq = X[0] * X[0] == mId && X[1] * X[1] == mId && X[2] * X[2] == mId;
        bool cyc = X[0] * X[1] == X[2] && X[1] * X[2] == X[0] && X[2] * X[0] == X[1];
        o.need(sq, std::string(label) + " squares");
        o.need(cyc, std::string(label) + "1" + label + "2 = " + label + "3 fails" + (X[1] * X[0] == X[2] ? " (holds with the opposite orientation)" : ""));
    }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) o.need(q.I[a] * q.J[b] == q.J[b] * q.I[a], "I/J do not commute");
}

void c5(Outcome &o) {
    for (auto g : {rightQH(2), leftQH(2)}) {
        TangentFrame fr(g);
        std::set<std::string> seen;
        for (int k : {1, 2}) {
            auto r = verify_boundary_composition(BoundarySpec(fr, k), 10, 105, 3);
            o.need(r.pass, g.name() + " k=" + std::to_string(k) + " " + r.residual);
            o.need(r.details["nonzero_images"].get<int>() > 0, g.name() + " only trivial images");
            for (auto &b : r.details["branches"]) seen.insert(b.get<std::string>());
        }
        o.need(seen.size() == 4, g.name() + " covered " + std::to_string(seen.size()) + " of 4 branches");
    }
}

void c6(Outcome &o) {
    // leftQH: the stated law 𝔡𝔡 + ℰ∧𝐓 = 0, i.e. the minus sign
    TangentFrame l(leftQH(2));
    auto r = verify_anticommute(l, 10, 106, 3);
    o.need(r.details["residual_nonzero"] == true, "leftQH symmetrized square vanishes");
    o.need(r.details["equals_minus_E_wedge_T"] == true,
           std::string("leftQH: d(A'd B')f + E^T(A'B')f != 0; found d(A'd B')f = ") + (r.details["equals_plus_E_wedge_T"] == true ? "+" : "?") + "E^T(A'B')f");
    for (int n : {1, 2}) {
        auto q = verify_anticommute(TangentFrame(rightQH(n)), 10, 106, 3);
        o.need(q.pass && q.details["residual_nonzero"] == false, "rightQH(" + std::to_string(n) + ") residual " + q.residual);
    }
}

void c7(Outcome &o) {
    for (int n : {1, 2}) {
        TangentFrame fr(rightQH(n));
        for (int k : {1, 2}) {
            auto r = hodge_diag(fr, k, 10, 107, 3);
            o.need(r.pass, "n=" + std::to_string(n) + " k=" + std::to_string(k) + " " + r.residual);
        }
    }
}

void c8(Outcome &o) {
    TangentFrame fr(rightQH(2), 16);
    Sampler s(108);
    for (int t = 0; t < 5; ++t) {
        auto r = key_identity_check({random_psh_quadratic(fr.ring(), 2, s), random_psh_quadratic(fr.ring(), 2, s)}, fr);
        o.need(r.pass, "trial " + std::to_string(t) + " " + r.residual);
    }
}

void c9(Outcome &o) {
    TangentFrame fr(rightQH(2), 16);
    const auto &R = fr.ring();
    Region unit = Region::cube(11, 0, 1);
    double worst = 0;
    for (int t = 0; t < 5; ++t) {
        Sampler s(derive_seed(109, t));
        std::vector<Poly> TA;
        for (int A = 0; A < 4; ++A) TA.push_back(s.poly(R, 4, 3));
        auto r = stokes_check(s.poly(R, 4, 3), from_hat_components(TA, 4), unit, fr);
        worst = std::max(worst, r.details["relative_residual"].get<double>());
        o.need(r.pass, "Stokes trial " + std::to_string(t) + " " + r.residual);
    }
    o.need(worst <= 1e-9, "Stokes relative residual " + std::to_string(worst));
    Region K = Region::cube(11, -1, 1), L = Region::cube(11, mpq_class(-1, 2), mpq_class(1, 2));
    Sampler s(1109);
    for (int p : {1, 2}) {
        std::vector<Poly> us;
        for (int i = 0; i < p; ++i) us.push_back(random_psh_quadratic(R, 2, s));
        auto r = cln_experiment(us, fr, K, L);
        double rel = r.details["relative_agreement"].get<double>();
        o.need(r.pass && rel <= 1e-6, "CLN p=" + std::to_string(p) + " agreement " + std::to_string(rel));
    }
}

void c10(Outcome &o) {
    TangentFrame fr(rightQH(2), 16);
    const auto &R = fr.ring();
    // fixed psh q = |q_1|² + 2|q_2|²
    Poly q(R);
    for (int a = 0; a < 8; ++a) q += Poly::var(R, a) * Poly::var(R, a) * Cq(a < 4 ? 1 : 2);
    auto r = ma_convergence(q, fr, Region::cube(11, mpq_class(-1, 4), mpq_class(1, 4)), 64, 1e-4);
    o.need(r.details["monotone"] == true, "differences not monotone");
    o.need(r.pass, r.residual);
    if (r.details.contains("first_below_threshold")) o.why << (o.pass ? "" : "; ") << "first below 1e-4 at j=" << r.details["first_below_threshold"].dump();
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria{
        {"flat complex law", c1},
        {"tuple/polynomial operator equivalence", c2},
        {"symbol exactness", c3},
        {"right-type classification and quaternion tables", c4},
        {"boundary complex law", c5},
        {"symmetrized square of d on leftQH/rightQH", c6},
        {"Hodge diagonal", c7},
        {"key identity", c8},
        {"Stokes quadrature and CLN double evaluation", c9},
        {"MA mass convergence", c10},
    };
    int failed = 0, i = 0;
    for (auto &[name, run] : criteria) {
        ++i;
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            run(o);
        } catch (const std::exception &e) {
            o.need(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string why = o.why.str();
        std::printf("%s %2d %s (%.1fs)%s%s\n", o.pass ? "PASS" : "FAIL", i, name.c_str(), secs, why.empty() ? "" : ": ", why.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
