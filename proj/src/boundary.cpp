#include "cfx/boundary.hpp"

#include "cfx/random.hpp"

namespace cfx {

namespace {

VectorField dT(const RingPtr &R, int beta, const Cq &c) { return VectorField::partial(R, R->index("t" + std::to_string(beta)), c); }

// ambient poly in x_1..x_{4n+4} -> group ring (x_{4n+2..4n+4} -> t_{1..3}); x_{4n+1} must not occur
Poly to_group(const Poly &p, const RingPtr &G, int n) {
    Poly out(G);
    for (auto &[m, c] : p.terms()) {
        Monomial g;
        for (int i = 0; i < 4 * n; ++i) g.e[i] = m.e[i];
        if (m.e[4 * n]) throw std::logic_error("coefficient depends on x_{4n+1}");
        for (int b = 0; b < 3; ++b) g.e[4 * n + b] = m.e[4 * n + 1 + b];
        out += Poly::monomial(G, g, c);
    }
    return out;
}

// ambient field restricted to functions independent of x_{4n+1}
VectorField to_group(const VectorField &X, const RingPtr &G, int n) {
    VectorField out(G);
    for (auto &[v, c] : X.coeffs()) {
        if (v == 4 * n) continue;
        int gv = v < 4 * n ? v : 4 * n + (v - 4 * n - 1);
        out.add(gv, to_group(c, G, n));
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------- frame

TangentFrame::TangentFrame(GroupSpec g, int degree_cap)
    : g_(std::move(g)), ring_(group_ring(g_.n(), degree_cap)),
      Tu_{{{VectorField(ring_), VectorField(ring_)}, {VectorField(ring_), VectorField(ring_)}}},
      Tm_(Tu_), E_(ring_, 2 * g_.n(), 2) {
    const int n = g_.n();
    X_ = horizontal_fields(g_, ring_);
    const Cq I = Cq::I();
    auto x = [&](int b) { return X_.at(b - 1); };
    for (int l = 0; l < n; ++l) {
        const int b = 4 * l;
        // raised pattern
        Zu_.push_back({x(b + 3) * Cq(-1) + x(b + 4) * (-I), x(b + 1) * Cq(-1) + x(b + 2) * (-I)});
        Zu_.push_back({x(b + 1) + x(b + 2) * (-I), x(b + 3) * Cq(-1) + x(b + 4) * I});
    }
    // Z_{A0'} = −Z_A^{1'}, Z_{A1'} = Z_A^{0'}
    for (auto &r : Zu_) Zl_.push_back({r[1] * Cq(-1), r[0]});

    // 𝐓_{B'}^{A'} in ∂_{t}: rows B', columns A'
    Tm_[0][0] = dT(ring_, 1, -I);
    Tm_[0][1] = dT(ring_, 2, -1) + dT(ring_, 3, I);
    Tm_[1][0] = dT(ring_, 2, 1) + dT(ring_, 3, I);
    Tm_[1][1] = dT(ring_, 1, I);
    // 𝐓^{A'B'} = ε^{A'C'} 𝐓_{C'}^{B'}: 𝐓^{A'0'} = 𝐓_{1'}^{A'}, 𝐓^{A'1'} = −𝐓_{0'}^{A'}
    for (int a = 0; a < 2; ++a) {
        Tu_[a][0] = Tm_[1][a];
        Tu_[a][1] = Tm_[0][a] * Cq(-1);
    }

    Em_ = curvature_matrix(g_);
    for (int A = 0; A < 2 * n; ++A)
        for (int B = A + 1; B < 2 * n; ++B)
            if (!Em_(A, B).is_zero()) E_.add(blade_of({A, B}), Poly(ring_, Em_(A, B) * Cq(2)));
}

std::vector<VectorField> TangentFrame::Z_column(Primed Ap) const {
    std::vector<VectorField> c;
    for (auto &r : Zu_) c.push_back(r[o(Ap)]);
    return c;
}

ExtForm frak_d(const TangentFrame &fr, Primed A, const ExtForm &f) {
    if (f.dim() != fr.dim()) throw std::invalid_argument("frak_d: form dimension must be 2n");
    return exterior_apply(fr.Z_column(A), f);
}

ExtForm frak_d_lower(const TangentFrame &fr, Primed A, const ExtForm &f) {
    if (A == Primed::P0) return -frak_d(fr, Primed::P1, f);
    return frak_d(fr, Primed::P0, f);
}

CurvatureForm curvature(const TangentFrame &fr) {
    ExtForm z1(fr.ring(), fr.dim(), 1), z2(fr.ring(), fr.dim(), 2);
    return {fr.E(), {z1, z1}, z2};
}

// ---------------------------------------------------------------- ambient cross-check

AmbientFrame ambient_frame(const GroupSpec &g) {
    const int n = g.n();
    RingPtr R = coordinate_ring(4 * n + 4);
    auto nabla = std::make_shared<NablaMatrix>(n, R);
    Poly phi(R);
    for (int i = 0; i < 4 * n; ++i)
        for (int j = 0; j < 4 * n; ++j)
            if (sgn(g.S()(i, j))) phi += Poly::var(R, i) * Poly::var(R, j) * Cq(g.S()(i, j));
    Poly rho = Poly::var(R, 4 * n) - phi;
    const NablaMatrix &nb = *nabla;
    std::array<std::array<Poly, 2>, 2> N_rho{{{Poly(R), Poly(R)}, {Poly(R), Poly(R)}}};
    for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) N_rho[b][c] = nb.lower(2 * n + b, kPrimed[c])(rho);
    // rigid: 𝐍ϱ = Id, so n_{AB'} = ∇_{AB'}ϱ
    std::vector<std::array<Poly, 2>> nn;
    std::vector<std::array<VectorField, 2>> Z;
    for (int A = 0; A < 2 * n; ++A) {
        nn.push_back({nb.lower(A, Primed::P0)(rho), nb.lower(A, Primed::P1)(rho)});
        std::array<VectorField, 2> z{VectorField(R), VectorField(R)};
        for (Primed Ap : kPrimed) {
            VectorField f = nb.upper(A, Ap);
            for (int B = 0; B < 2; ++B) {
                const VectorField &N = nb.upper(2 * n + B, Ap);
                for (auto &[v, c] : N.coeffs()) f.add(v, -(nn[A][B] * c));
            }
            z[o(Ap)] = f;
        }
        Z.push_back(z);
    }
    ExtForm r0 = ExtForm::scalar(rho, 2 * n + 2);
    std::array<ExtForm, 2> up{d_upper(nb, Primed::P0, r0), d_upper(nb, Primed::P1, r0)};
    std::array<ExtForm, 2> low{-up[1], up[0]};
    ExtForm E = -d_upper(nb, Primed::P0, d_upper(nb, Primed::P1, r0));
    return AmbientFrame{R, nabla, rho, Z, nn, N_rho, up, low, E};
}

Report verify_tangent_frame(const GroupSpec &g) {
    const int n = g.n();
    Report rep("boundary.tangent_frame", {{"n", n}, {"group", g.name()}});
    AmbientFrame a = ambient_frame(g);
    TangentFrame fr(g);
    for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
            if (a.N_rho[b][c] != Poly(a.ring, Cq(b == c ? 1 : 0))) rep.fail("N rho is not the identity");
    for (int A = 0; A < 2 * n; ++A)
        for (Primed Ap : kPrimed) {
            Poly zr = a.Z[A][o(Ap)](a.rho);
            if (!zr.is_zero()) rep.fail("Z rho = " + zr.str());
            VectorField zg = to_group(a.Z[A][o(Ap)], fr.ring(), n);
            if (!(zg == fr.Z(A, Ap))) rep.fail("ambient Z differs from X-field Z at A=" + std::to_string(A) + ": " + (zg - fr.Z(A, Ap)).str());
        }
    // ℰ: ω^A∧ω^B part with A,B < 2n equals the closed form; the rest vanishes
    for (auto &[bl, p] : a.E_flat.components()) {
        auto idx = indices_of(bl);
        if (!p.is_constant()) rep.fail("curvature coefficient not constant");
        if (idx[1] >= 2 * n) {
            rep.fail("curvature has a normal component");
            continue;
        }
        if (p.constant_term() != fr.E().coeff(bl).constant_term()) rep.fail("curvature differs from closed form at " + std::to_string(idx[0]) + "," + std::to_string(idx[1]));
    }
    for (auto &[bl, p] : fr.E().components())
        if (a.E_flat.coeff(bl).is_zero()) rep.fail("closed-form curvature has extra component");
    // Ω_{A'} = ω^{2n+o(A')} + n_{BA'} ω^B
    for (Primed Ap : kPrimed) {
        ExtForm want = ExtForm::basis(a.ring, 2 * n + 2, {2 * n + o(Ap)});
        for (int B = 0; B < 2 * n; ++B) want += a.n[B][o(Ap)] * ExtForm::basis(a.ring, 2 * n + 2, {B});
        if (a.Omega_lower[o(Ap)] != want) rep.fail("lowered Omega mismatch");
    }
    rep.details["right_type"] = fr.right_type();
    return rep;
}

// ---------------------------------------------------------------- levels

BoundarySpec::BoundarySpec(const TangentFrame &fr, int k) : fr_(&fr), k_(k) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    if (2 * fr.n() - 1 < 1) throw std::invalid_argument("boundary complex needs n >= 1");
}

int BoundarySpec::sigma(int j) const {
    if (j < 0 || j > top_level() + 1) throw std::out_of_range("boundary level out of range");
    return j <= k_ ? k_ - j : j - k_ - 1;
}

int BoundarySpec::tau(int j) const {
    if (j < 0 || j > top_level() + 1) throw std::out_of_range("boundary level out of range");
    return j <= k_ ? j : j + 1;
}

LevelShape BoundarySpec::first(int j) const {
    if (j < 0 || j > top_level()) throw std::out_of_range("boundary level out of range");
    return {sigma(j), tau(j), j <= k_ ? Basis::S : Basis::TildeS};
}

std::optional<LevelShape> BoundarySpec::second(int j) const {
    if (j < 0 || j > top_level()) throw std::out_of_range("boundary level out of range");
    if (j == k_) return LevelShape{0, k_, Basis::S};
    if (j == 0) return std::nullopt;
    return LevelShape{sigma(j + 1), tau(j) - 1, j < k_ ? Basis::S : Basis::TildeS};
}

std::string BoundaryField::str() const {
    std::string s = "level " + std::to_string(level) + ": (" + F1.str();
    if (F2) s += ", " + F2->str();
    return s + ")";
}

nlohmann::json BoundaryField::to_json() const {
    nlohmann::json j{{"level", level}, {"F1", F1.to_json()}};
    j["F2"] = F2 ? F2->to_json() : nlohmann::json(nullptr);
    return j;
}

namespace {

SpinorField zero_of(const BoundarySpec &sp, const LevelShape &sh) {
    return SpinorField::zero(sh.basis, sh.sigma, sp.frame().ring(), sp.dim(), sh.tau);
}

bool has_shape(const SpinorField &F, const LevelShape &sh, int dim) {
    return F.basis() == sh.basis && F.sigma() == sh.sigma && F.tau() == sh.tau && F.dim() == dim;
}

void check_field(const BoundarySpec &sp, int j, const BoundaryField &F) {
    if (F.level != j) throw std::invalid_argument("field is at level " + std::to_string(F.level) + ", not " + std::to_string(j));
    if (!has_shape(F.F1, sp.first(j), sp.dim())) throw std::invalid_argument("first slot has the wrong shape");
    auto s2 = sp.second(j);
    if (bool(s2) != bool(F.F2)) throw std::invalid_argument("second slot presence does not match level");
    if (s2 && !has_shape(*F.F2, *s2, sp.dim())) throw std::invalid_argument("second slot has the wrong shape");
}

// slotwise ℰ∧
SpinorField E_wedge(const TangentFrame &fr, const SpinorField &F) {
    return F.map([&](const ExtForm &f) { return wedge(fr.E(), f); });
}

} // namespace

BoundaryField zero_boundary_field(const BoundarySpec &spec, int j) {
    BoundaryField F{j, zero_of(spec, spec.first(j)), std::nullopt};
    if (auto s2 = spec.second(j)) F.F2 = zero_of(spec, *s2);
    return F;
}

BoundaryField random_boundary_field(const BoundarySpec &spec, int j, Sampler &s, int max_degree, bool second_slot) {
    const auto &R = spec.frame().ring();
    auto s1 = spec.first(j);
    BoundaryField F{j, s.field(s1.basis, s1.sigma, R, spec.dim(), s1.tau, max_degree), std::nullopt};
    if (auto s2 = spec.second(j)) F.F2 = second_slot ? s.field(s2->basis, s2->sigma, R, spec.dim(), s2->tau, max_degree) : zero_of(spec, *s2);
    return F;
}

BoundaryField boundary_Dj(const BoundarySpec &sp, int j, const BoundaryField &F) {
    if (j < 0 || j > sp.top_level() - 1) throw std::out_of_range("boundary operator level must be in 0..2n-2");
    check_field(sp, j, F);
    const TangentFrame &fr = sp.frame();
    const int k = sp.k();
    PrimedOp dd = [&](Primed A, const ExtForm &f) { return frak_d(fr, A, f); };
    auto T = [&](Primed A, Primed B, const ExtForm &f) { return f.apply(fr.T_upper(A, B)); };
    const SpinorField &F1 = F.F1;
    BoundaryField out = zero_boundary_field(sp, j + 1);
    SpinorField F2 = F.F2 ? *F.F2 : out.F1; // absent second slot acts as zero (only degree matters below)
    const bool has2 = bool(F.F2);

    if (j < k - 1) {
        out.F1 = contract_partial(dd, F1);
        if (has2) out.F1 += E_wedge(fr, F2);
        // −∂_{A'}𝔡^{A'}F2 − ∂_{A'}∂_{B'}𝐓^{A'B'}F1
        SpinorField s2 = *out.F2;
        std::vector<ExtForm> slots = s2.slots();
        for (int b = 0; b < s2.slot_count(); ++b)
            for (Primed A : kPrimed)
                for (Primed B : kPrimed) slots[b] -= T(A, B, F1.slot(b + o(A) + o(B)));
        SpinorField acc(s2.basis(), s2.sigma(), slots);
        if (has2) acc -= contract_partial(dd, F2);
        out.F2 = acc;
    } else if (j == k - 1) {
        out.F1 = contract_partial(dd, F1);
        ExtForm g(fr.ring(), sp.dim(), k);
        if (has2) {
            out.F1 += E_wedge(fr, F2);
            const ExtForm &f2 = F2.slot(0);
            ExtForm d01 = frak_d(fr, Primed::P0, frak_d(fr, Primed::P1, f2));
            ExtForm d10 = frak_d(fr, Primed::P1, frak_d(fr, Primed::P0, f2));
            g += (d01 - d10) * Cq(mpq_class(1, 2));
            ExtForm Tskew = (T(Primed::P0, Primed::P1, f2) - T(Primed::P1, Primed::P0, f2)) * Cq(mpq_class(1, 2));
            g += wedge(fr.E(), Tskew);
        }
        // −∂_{A'}𝔡^{B'}𝐓_{B'}^{A'}F1, F1 in S basis of degree 1: ∂_{A'} picks slot o(A')
        for (Primed A : kPrimed)
            for (Primed B : kPrimed) g -= frak_d(fr, B, F1.slot(o(A)).apply(fr.T_mixed(B, A)));
        out.F2 = SpinorField(Basis::S, 0, {g});
    } else if (j == k) {
        const ExtForm &f1 = F1.slot(0);
        ExtForm f2 = has2 ? F2.slot(0) : ExtForm(fr.ring(), sp.dim(), k);
        ExtForm first = frak_d(fr, Primed::P0, frak_d(fr, Primed::P1, f1)) - wedge(fr.E(), T(Primed::P1, Primed::P0, f1) + f2);
        out.F1 = SpinorField(Basis::TildeS, 0, {first});
        ExtForm d0f1 = frak_d(fr, Primed::P0, f1), d1f1 = frak_d(fr, Primed::P1, f1);
        auto Tu = [&](int a, int b, const ExtForm &f) { return f.apply(fr.T_upper(kPrimed[a], kPrimed[b])); };
        // G_{A'} = −𝔡_{A'}F2 + 𝐓_{A'}^{0'}𝔡^{1'}F1 − 𝐓_{A'}^{1'}𝔡^{0'}F1, written with raised 𝐓
        ExtForm G0 = frak_d(fr, Primed::P1, f2) - Tu(0, 1, d1f1) + Tu(1, 1, d0f1);
        ExtForm G1 = -frak_d(fr, Primed::P0, f2) + Tu(0, 0, d1f1) - Tu(1, 0, d0f1);
        // G_{A'}s^{A'} in the tilde basis: slot 0 ← −G_{1'}, slot 1 ← G_{0'}
        out.F2 = SpinorField(Basis::TildeS, 1, {-G1, G0});
    } else {
        out.F1 = contract_s(dd, F1);
        if (has2) out.F1 += E_wedge(fr, F2);
        // −s_{A'}𝔡^{A'}F2 − s_{A'}s_{B'}𝐓^{A'B'}F1
        SpinorField s2 = *out.F2;
        std::vector<ExtForm> slots = s2.slots();
        for (int c = 0; c < s2.slot_count(); ++c)
            for (Primed A : kPrimed)
                for (Primed B : kPrimed) {
                    int src = c - o(A) - o(B);
                    if (src >= 0 && src <= F1.sigma()) slots[c] -= T(A, B, F1.slot(src));
                }
        SpinorField acc(s2.basis(), s2.sigma(), slots);
        if (has2) acc -= contract_s(dd, F2);
        out.F2 = acc;
    }
    return out;
}

SpinorField subcomplex_Dj(const BoundarySpec &sp, int j, const SpinorField &F1) {
    if (j < 0 || j > sp.top_level() - 1) throw std::out_of_range("boundary operator level must be in 0..2n-2");
    if (!has_shape(F1, sp.first(j), sp.dim())) throw std::invalid_argument("first slot has the wrong shape");
    const TangentFrame &fr = sp.frame();
    PrimedOp dd = [&](Primed A, const ExtForm &f) { return frak_d(fr, A, f); };
    if (j < sp.k()) return contract_partial(dd, F1);
    if (j > sp.k()) return contract_s(dd, F1);
    return SpinorField(Basis::TildeS, 0, {frak_d(fr, Primed::P0, frak_d(fr, Primed::P1, F1.slot(0)))});
}

Report verify_boundary_composition(const BoundarySpec &sp, int trials, std::uint64_t seed, int max_degree) {
    const auto &g = sp.frame().group();
    Report rep("boundary.composition", {{"n", sp.n()}, {"k", sp.k()}, {"group", g.name()}, {"trials", trials}, {"max_degree", max_degree}}, seed);
    int checked = 0, nonzero = 0;
    nlohmann::json branches = nlohmann::json::array();
    for (int j = 0; j + 1 <= sp.top_level() - 1; ++j) {
        for (int jj : {j, j + 1}) {
            std::string b = jj < sp.k() - 1 ? "j<k-1" : jj == sp.k() - 1 ? "j=k-1" : jj == sp.k() ? "j=k" : "j>=k+1";
            if (std::find(branches.begin(), branches.end(), b) == branches.end()) branches.push_back(b);
        }
        for (int t = 0; t < trials; ++t) {
            Sampler s(derive_seed(seed, std::uint64_t(j) * 100000 + t));
            BoundaryField F = random_boundary_field(sp, j, s, max_degree);
            BoundaryField DF = boundary_Dj(sp, j, F);
            BoundaryField G = boundary_Dj(sp, j + 1, DF);
            ++checked;
            nonzero += !DF.is_zero();
            if (!G.is_zero()) rep.fail("j=" + std::to_string(j) + ": " + G.str());
        }
    }
    rep.details["checked"] = checked;
    rep.details["nonzero_images"] = nonzero;
    rep.details["branches"] = branches;
    return rep;
}

Report verify_subcomplex_composition(const BoundarySpec &sp, int trials, std::uint64_t seed, int max_degree) {
    const auto &g = sp.frame().group();
    Report rep("boundary.subcomplex_composition", {{"n", sp.n()}, {"k", sp.k()}, {"group", g.name()}, {"trials", trials}}, seed);
    if (!sp.frame().right_type()) throw std::invalid_argument("subcomplex needs a right-type group");
    for (int j = 0; j + 1 <= sp.top_level() - 1; ++j)
        for (int t = 0; t < trials; ++t) {
            Sampler s(derive_seed(seed, std::uint64_t(j) * 100000 + t));
            auto sh = sp.first(j);
            SpinorField F = s.field(sh.basis, sh.sigma, sp.frame().ring(), sp.dim(), sh.tau, max_degree);
            SpinorField G = subcomplex_Dj(sp, j + 1, subcomplex_Dj(sp, j, F));
            if (!G.is_zero()) rep.fail("j=" + std::to_string(j) + ": " + G.str());
            // with F2 = 0 the full operator's first slot is the subcomplex operator
            BoundaryField in = zero_boundary_field(sp, j);
            in.F1 = F;
            BoundaryField full = boundary_Dj(sp, j, in);
            if (full.F1 != subcomplex_Dj(sp, j, F)) rep.fail("first slot differs from subcomplex operator at j=" + std::to_string(j));
        }
    return rep;
}

// ---------------------------------------------------------------- 𝔡 identities

Report verify_anticommute(const TangentFrame &fr, int trials, std::uint64_t seed, int max_degree) {
    Report rep("boundary.anticommute", {{"n", fr.n()}, {"group", fr.group().name()}, {"trials", trials}}, seed);
    bool plus = true, minus = true, nonzero = false;
    const int m = fr.dim();
    for (int t = 0; t < trials; ++t) {
        Sampler s(derive_seed(seed, t));
        int tau = s.uniform(0, m - 2);
        ExtForm f = s.form(fr.ring(), m, tau, max_degree);
        for (int a = 0; a < 2; ++a)
            for (int b = a; b < 2; ++b) {
                Primed A = kPrimed[a], B = kPrimed[b];
                ExtForm lhs = (frak_d(fr, A, frak_d(fr, B, f)) + frak_d(fr, B, frak_d(fr, A, f))) * Cq(mpq_class(1, 2));
                ExtForm Tf = (f.apply(fr.T_upper(A, B)) + f.apply(fr.T_upper(B, A))) * Cq(mpq_class(1, 2));
                ExtForm rhs = wedge(fr.E(), Tf);
                if (!lhs.is_zero()) nonzero = true;
                if (lhs != rhs) plus = false;
                if (lhs != -rhs) minus = false;
                if (fr.right_type() && !lhs.is_zero()) rep.fail("nonzero symmetrized square on a right-type group: " + lhs.str());
            }
        if (fr.right_type()) {
            // lowered form: 𝔡_{0'}² = 𝔡_{1'}² = 0, 𝔡_{0'}𝔡_{1'} = −𝔡_{1'}𝔡_{0'}
            ExtForm s0 = frak_d_lower(fr, Primed::P0, frak_d_lower(fr, Primed::P0, f));
            ExtForm s1 = frak_d_lower(fr, Primed::P1, frak_d_lower(fr, Primed::P1, f));
            ExtForm ac = frak_d_lower(fr, Primed::P0, frak_d_lower(fr, Primed::P1, f)) + frak_d_lower(fr, Primed::P1, frak_d_lower(fr, Primed::P0, f));
            if (!s0.is_zero() || !s1.is_zero() || !ac.is_zero()) rep.fail("lowered anticommutation fails");
        }
    }
    rep.details["residual_nonzero"] = nonzero;
    rep.details["equals_plus_E_wedge_T"] = plus;
    rep.details["equals_minus_E_wedge_T"] = minus;
    if (!plus) rep.fail("symmetrized square differs from +E^T");
    return rep;
}

Report bracket_identity(const TangentFrame &fr) {
    Report rep("boundary.bracket_identity", {{"n", fr.n()}, {"group", fr.group().name()}});
    bool plus = true, minus = true;
    const int m = fr.dim();
    for (int A = 0; A < m; ++A)
        for (int B = 0; B < m; ++B)
            for (int a = 0; a < 2; ++a)
                for (int b = a; b < 2; ++b) {
                    Primed Ap = kPrimed[a], Bp = kPrimed[b];
                    VectorField K = (bracket(fr.Z(A, Ap), fr.Z(B, Bp)) + bracket(fr.Z(A, Bp), fr.Z(B, Ap))) * Cq(mpq_class(1, 4));
                    VectorField Ts = (fr.T_upper(Ap, Bp) + fr.T_upper(Bp, Ap)) * Cq(mpq_class(1, 2));
                    VectorField rhs = Ts * fr.E_matrix()(A, B);
                    if (!(K == rhs)) plus = false;
                    if (!(K == rhs * Cq(-1))) minus = false;
                }
    rep.details["equals_plus_E_T"] = plus;
    rep.details["equals_minus_E_T"] = minus;
    if (!plus) rep.fail("bracket differs from +E_AB T");
    return rep;
}

Report verify_XX_identity(const TangentFrame &fr) {
    Report rep("boundary.XX_identity", {{"n", fr.n()}, {"group", fr.group().name()}});
    rep.details["right_type"] = fr.right_type();
    for (int l = 0; l < fr.n(); ++l) {
        VectorField v = bracket(fr.Z(2 * l, Primed::P0), fr.Z(2 * l + 1, Primed::P1)) + bracket(fr.Z(2 * l, Primed::P1), fr.Z(2 * l + 1, Primed::P0));
        if (!v.is_zero()) rep.fail("l=" + std::to_string(l) + ": " + v.str());
    }
    return rep;
}

// ---------------------------------------------------------------- Hodge diagonal

Poly sublaplacian(const TangentFrame &fr, const Poly &u) {
    Poly out(fr.ring());
    for (auto &X : fr.X()) out -= X(X(u));
    return out;
}

SpinorField D0_first(const TangentFrame &fr, int k, const SpinorField &f) {
    if (f.basis() != Basis::S || f.sigma() != k || f.tau() != 0 || f.dim() != fr.dim()) throw std::invalid_argument("D0_first: need S-basis ⊙^k-valued function");
    PrimedOp dd = [&](Primed A, const ExtForm &x) { return frak_d(fr, A, x); };
    return contract_partial(dd, f);
}

SpinorField D0_first_adjoint(const TangentFrame &fr, int k, const SpinorField &g) {
    if (g.basis() != Basis::S || g.sigma() != k - 1 || g.tau() != 1) throw std::invalid_argument("D0_first_adjoint: need S-basis ⊙^{k-1}⊗∧^1 section");
    const int m = fr.dim();
    std::vector<VectorField> c0, c1;
    for (int A = 0; A < m; ++A) {
        c0.push_back(fr.Z(A, Primed::P0).conj());
        c1.push_back(fr.Z(A, Primed::P1).conj());
    }
    std::vector<ExtForm> out;
    for (int a = 0; a <= k; ++a) {
        Poly acc(fr.ring());
        for (int A = 0; A < m; ++A) {
            if (a <= k - 1) acc -= c0[A](g.slot(a).coeff(blade_of({A})));
            if (a >= 1) acc -= c1[A](g.slot(a - 1).coeff(blade_of({A})));
        }
        out.push_back(ExtForm::scalar(acc, m));
    }
    return SpinorField(Basis::S, k, std::move(out));
}

Report hodge_diag(const TangentFrame &fr, int k, int trials, std::uint64_t seed, int max_degree) {
    if (!fr.right_type()) throw std::invalid_argument("hodge_diag needs a right-type group");
    if (k < 1) throw std::invalid_argument("hodge_diag needs k >= 1");
    Report rep("boundary.hodge_diagonal", {{"n", fr.n()}, {"k", k}, {"group", fr.group().name()}, {"trials", trials}}, seed);
    nlohmann::json weights = nlohmann::json::array();
    for (int a = 0; a <= k; ++a) weights.push_back(a == 0 || a == k ? 1 : 2);
    rep.details["weights"] = weights;
    for (int t = 0; t < trials; ++t) {
        Sampler s(derive_seed(seed, t));
        SpinorField f = s.field(Basis::S, k, fr.ring(), fr.dim(), 0, max_degree);
        SpinorField L = D0_first_adjoint(fr, k, D0_first(fr, k, f));
        for (int a = 0; a <= k; ++a) {
            Poly want = sublaplacian(fr, f.slot(a).coeff(0)) * Cq(weights[a].get<int>());
            Poly got = L.slot(a).coeff(0);
            if (got != want) rep.fail("slot " + std::to_string(a) + ": " + (got - want).str());
        }
    }
    return rep;
}

} // namespace cfx
