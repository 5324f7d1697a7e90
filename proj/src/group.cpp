#include "cfx/group.hpp"

#include "cfx/random.hpp"

#include <cmath>
#include <regex>

namespace cfx {

namespace {

QMat from_rows(const std::vector<std::vector<int>> &r) {
    QMat m(int(r.size()), int(r[0].size()));
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < r[i].size(); ++j) m(int(i), int(j)) = r[i][j];
    return m;
}

QuaternionBasis build_basis() {
    QuaternionBasis q;
    q.I[0] = from_rows({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
    q.I[1] = from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}});
    q.I[2] = from_rows({{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}});
    q.J[0] = from_rows({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}});
    q.J[1] = from_rows({{0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}});
    q.J[2] = from_rows({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}});
    return q;
}

// 1-based entry of a 4×4 block
const mpq_class &E(const QMat &s, int a, int b) { return s(a - 1, b - 1); }

mpq_class frob(const QMat &a, const QMat &b) {
    mpq_class s = 0;
    for (size_t i = 0; i < a.a.size(); ++i) s += a.a[i] * b.a[i];
    return s;
}

} // namespace

const QuaternionBasis &quaternion_basis() {
    static const QuaternionBasis q = build_basis();
    return q;
}

QMat identity4() { return QMat::identity(4); }

QMat big_I(int n, int beta) {
    QMat m(4 * n, 4 * n);
    const QMat &I = quaternion_basis().I.at(beta);
    for (int l = 0; l < n; ++l)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) m(4 * l + a, 4 * l + b) = I(a, b);
    return m;
}

GroupSpec::GroupSpec(QMat S, std::string name) : S_(std::move(S)), name_(std::move(name)) {
    if (S_.rows != S_.cols || S_.rows == 0 || S_.rows % 4) throw std::invalid_argument("S must be a 4n×4n matrix");
    if (!(S_.transpose() == S_)) throw std::invalid_argument("S must be symmetric");
    n_ = S_.rows / 4;
    if (n_ > 3) throw std::invalid_argument("n must be at most 3");
    for (int b = 0; b < 3; ++b) {
        QMat I = big_I(n_, b);
        B_[b] = S_ * I + I * S_;
    }
}

QMat GroupSpec::block(const QMat &M, int l, int m) {
    QMat r(4, 4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) r(a, b) = M(4 * l + a, 4 * m + b);
    return r;
}

nlohmann::json GroupSpec::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < S_.rows; ++i) {
        nlohmann::json r = nlohmann::json::array();
        for (int j = 0; j < S_.cols; ++j) r.push_back(rational_str(S_(i, j)));
        rows.push_back(r);
    }
    nlohmann::json j{{"n", n_}, {"S", rows}};
    if (!name_.empty()) j["name"] = name_;
    return j;
}

GroupSpec GroupSpec::from_json(const nlohmann::json &j) {
    if (!j.is_object()) throw std::invalid_argument("group JSON must be an object");
    if (j.contains("phi")) return group_from_phi(Poly::from_json(j.at("phi")));
    if (j.contains("S")) {
        const auto &rows = j.at("S");
        if (!rows.is_array() || rows.empty()) throw std::invalid_argument("S must be a non-empty array of rows");
        const int N = int(rows.size());
        QMat S(N, N);
        for (int i = 0; i < N; ++i) {
            if (!rows[i].is_array() || int(rows[i].size()) != N) throw std::invalid_argument("S must be square");
            for (int k = 0; k < N; ++k) {
                const auto &v = rows[i][k];
                if (v.is_string()) S(i, k) = parse_rational(v.get<std::string>());
                else if (v.is_number_integer()) S(i, k) = v.get<long>();
                else throw std::invalid_argument("S entries must be integers or rational strings");
            }
        }
        if (j.contains("n") && j.at("n").get<int>() * 4 != N) throw std::invalid_argument("n does not match size of S");
        return GroupSpec(S, j.value("name", std::string()));
    }
    if (j.contains("name")) return named_group(j.at("name").get<std::string>(), j.value("n", 1));
    throw std::invalid_argument("group JSON needs \"S\", \"phi\" or \"name\"");
}

GroupSpec group_from_phi(const Poly &phi) {
    const Ring &R = *phi.ring();
    static const std::regex xname("x([0-9]+)");
    std::vector<int> xidx(R.size(), -1);
    int maxx = 0;
    for (int v = 0; v < R.size(); ++v) {
        std::smatch m;
        if (std::regex_match(R.name(v), m, xname)) {
            xidx[v] = std::stoi(m[1]) - 1;
            maxx = std::max(maxx, xidx[v] + 1);
        }
    }
    if (maxx == 0 || maxx % 4) throw std::invalid_argument("phi must live on variables x1..x_{4n}");
    QMat S(maxx, maxx);
    for (auto &[mono, c] : phi.terms()) {
        if (!c.is_real()) throw std::invalid_argument("phi must have real coefficients");
        if (mono.degree() != 2) throw std::invalid_argument("phi must be a homogeneous quadratic");
        std::vector<int> at;
        for (int v = 0; v < R.size(); ++v)
            for (int e = 0; e < mono.e[v]; ++e) {
                if (xidx[v] < 0) throw std::invalid_argument("phi depends on non-x variable " + R.name(v));
                at.push_back(xidx[v]);
            }
        if (at[0] == at[1]) S(at[0], at[0]) += c.re;
        else {
            S(at[0], at[1]) += c.re / 2;
            S(at[1], at[0]) += c.re / 2;
        }
    }
    return GroupSpec(S);
}

Poly rightQH_phi(int n, RingPtr ring) {
    if (!ring) ring = group_ring(n);
    Poly p(ring);
    for (int i = 1; i <= 4 * n; ++i) {
        Poly x = Poly::var(ring, "x" + std::to_string(i));
        p += x * x * Cq(i % 4 == 1 ? -3 : 1);
    }
    return p;
}

GroupSpec rightQH(int n) {
    QMat S(4 * n, 4 * n);
    for (int i = 0; i < 4 * n; ++i) S(i, i) = (i % 4 == 0) ? -3 : 1;
    return GroupSpec(S, "rightQH");
}

GroupSpec leftQH(int n) { return GroupSpec(QMat::identity(4 * n), "leftQH"); }

GroupSpec abelian(int n) { return GroupSpec(QMat(4 * n, 4 * n), "abelian"); }

GroupSpec named_group(const std::string &name, int n) {
    if (name == "rightQH") return rightQH(n);
    if (name == "leftQH") return leftQH(n);
    if (name == "abelian") return abelian(n);
    throw std::invalid_argument("unknown group '" + name + "'");
}

// ---------------------------------------------------------------- block formulas

QMat explicit_B1_block(const QMat &s) {
    QMat b(4, 4);
    auto S = [&](int i, int j) { return E(s, i, j); };
    b(0, 0) = S(2, 1) - S(1, 2);
    b(0, 1) = S(2, 2) + S(1, 1);
    b(0, 2) = S(2, 3) + S(1, 4);
    b(0, 3) = S(2, 4) - S(1, 3);
    b(1, 0) = -S(1, 1) - S(2, 2);
    b(1, 1) = -S(1, 2) + S(2, 1);
    b(1, 2) = -S(1, 3) + S(2, 4);
    b(1, 3) = -S(1, 4) - S(2, 3);
    b(2, 0) = -S(4, 1) - S(3, 2);
    b(2, 1) = -S(4, 2) + S(3, 1);
    b(2, 2) = -S(4, 3) + S(3, 4);
    b(2, 3) = -S(4, 4) - S(3, 3);
    b(3, 0) = S(3, 1) - S(4, 2);
    b(3, 1) = S(3, 2) + S(4, 1);
    b(3, 2) = S(3, 3) + S(4, 4);
    b(3, 3) = S(3, 4) - S(4, 3);
    return b;
}

std::array<mpq_class, 4> right_type_coefficients(const QMat &s, int beta) {
    auto S = [&](int i, int j) { return E(s, i, j); };
    switch (beta) {
    case 0: return {S(1, 1) + S(2, 2), S(1, 4) + S(2, 3), S(2, 4) - S(1, 3), S(2, 1) - S(1, 2)};
    case 1: return {S(3, 2) - S(1, 4), S(1, 1) + S(3, 3), S(1, 2) + S(3, 4), S(3, 1) - S(1, 3)};
    // the J^1, J^2 coefficients here read S31, S21 (transposed from S13, S12); only equal on diagonal blocks
    case 2: return {S(3, 1) + S(2, 4), S(3, 4) - S(2, 1), S(1, 1) + S(4, 4), S(4, 1) - S(1, 4)};
    }
    throw std::out_of_range("beta must be 0..2");
}

// ---------------------------------------------------------------- right type

nlohmann::json BlockCertificate::to_json() const {
    nlohmann::json c = nlohmann::json::array();
    for (auto &x : coeffs) c.push_back(rational_str(x));
    nlohmann::json j{{"l", l}, {"m", m}, {"beta", beta + 1}, {"in_span", in_span}, {"coeffs", c}};
    if (!in_span) {
        nlohmann::json r = nlohmann::json::array();
        for (int a = 0; a < 4; ++a) {
            nlohmann::json row = nlohmann::json::array();
            for (int b = 0; b < 4; ++b) row.push_back(rational_str(residual(a, b)));
            r.push_back(row);
        }
        j["residual"] = r;
    }
    return j;
}

std::vector<BlockCertificate> RightTypeResult::offending() const {
    std::vector<BlockCertificate> o;
    for (auto &b : blocks)
        if (!b.in_span) o.push_back(b);
    return o;
}

RightTypeResult is_right_type(const GroupSpec &g) {
    const auto &q = quaternion_basis();
    const std::array<QMat, 4> basis{q.J[0], q.J[1], q.J[2], identity4()};
    // 16×4 system: columns are the flattened basis matrices
    QMat A(16, 4);
    for (int c = 0; c < 4; ++c)
        for (int i = 0; i < 16; ++i) A(i, c) = basis[c].a[i];
    RightTypeResult res;
    for (int l = 0; l < g.n(); ++l)
        for (int m = 0; m < g.n(); ++m)
            for (int beta = 0; beta < 3; ++beta) {
                QMat Bb = g.B_block(beta, l, m);
                BlockCertificate cert{l, m, beta, false, {}, QMat(4, 4)};
                std::vector<mpq_class> x;
                cert.in_span = solve(A, Bb.a, x);
                // the four basis matrices are Frobenius-orthogonal with norm² 4
                QMat proj(4, 4);
                for (int c = 0; c < 4; ++c) {
                    cert.coeffs[c] = cert.in_span ? x[c] : frob(Bb, basis[c]) / 4;
                    proj = proj + cert.coeffs[c] * basis[c];
                }
                cert.residual = Bb - proj;
                if (!cert.in_span) res.right_type = false;
                res.blocks.push_back(std::move(cert));
            }
    return res;
}

bool is_right_type_via_E(const GroupSpec &g) {
    for (int l = 0; l < g.n(); ++l)
        for (int m = 0; m < g.n(); ++m) {
            QMat s = g.S_block(l, m);
            auto S = [&](int i, int j) { return E(s, i, j); };
            if (sgn(S(1, 1) + S(2, 2) + S(3, 3) + S(4, 4))) return false;
            if (sgn(S(1, 2) - S(2, 1) + S(3, 4) - S(4, 3))) return false;
            if (sgn(S(1, 3) - S(3, 1) - S(2, 4) + S(4, 2))) return false;
            if (sgn(S(1, 4) - S(4, 1) + S(2, 3) - S(3, 2))) return false;
        }
    return true;
}

CMat curvature_matrix(const GroupSpec &g) {
    const int n = g.n();
    CMat e(2 * n, 2 * n);
    auto even_even = [&](int l, int m) {
        QMat s = g.S_block(l, m);
        auto S = [&](int i, int j) { return E(s, i, j); };
        return Cq(S(3, 1) - S(1, 3) - S(4, 2) + S(2, 4), -(S(1, 4) - S(4, 1) + S(2, 3) - S(3, 2)));
    };
    auto even_odd = [&](int l, int m) {
        QMat s = g.S_block(l, m);
        auto S = [&](int i, int j) { return E(s, i, j); };
        return Cq(S(1, 1) + S(2, 2) + S(3, 3) + S(4, 4), S(4, 3) - S(3, 4) - S(1, 2) + S(2, 1));
    };
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
            e(2 * l, 2 * m) = even_even(l, m);
            e(2 * l + 1, 2 * m + 1) = even_even(l, m).conj();
            e(2 * l, 2 * m + 1) = even_odd(l, m);
            e(2 * m + 1, 2 * l) = -even_odd(l, m);
        }
    return e;
}

// ---------------------------------------------------------------- fields

std::vector<VectorField> horizontal_fields(const GroupSpec &g, RingPtr ring) {
    const int n = g.n();
    if (!ring) ring = group_ring(n);
    for (int i = 1; i <= 4 * n; ++i) ring->index("x" + std::to_string(i));
    std::array<int, 3> t{ring->index("t1"), ring->index("t2"), ring->index("t3")};
    std::vector<QMat> SI;
    for (int b = 0; b < 3; ++b) SI.push_back(g.S() * big_I(n, b));
    std::vector<VectorField> X;
    for (int b = 0; b < 4 * n; ++b) {
        VectorField f = VectorField::partial(ring, ring->index("x" + std::to_string(b + 1)));
        for (int beta = 0; beta < 3; ++beta) {
            Poly c(ring);
            for (int a = 0; a < 4 * n; ++a)
                if (sgn(SI[beta](a, b))) c += Poly::var(ring, "x" + std::to_string(a + 1)) * Cq(2 * SI[beta](a, b));
            if (!c.is_zero()) f.add(t[beta], c);
        }
        X.push_back(std::move(f));
    }
    return X;
}

Report verify_brackets(const GroupSpec &g) {
    Report rep("group.horizontal_brackets", {{"n", g.n()}, {"group", g.name()}});
    RingPtr R = group_ring(g.n());
    auto X = horizontal_fields(g, R);
    for (int a = 0; a < 4 * g.n(); ++a)
        for (int b = 0; b < 4 * g.n(); ++b) {
            VectorField want(R);
            for (int beta = 0; beta < 3; ++beta)
                if (sgn(g.B(beta)(a, b))) want.add(R->index("t" + std::to_string(beta + 1)), Poly(R, Cq(2 * g.B(beta)(a, b))));
            VectorField got = bracket(X[a], X[b]);
            if (!(got == want)) rep.fail("[X" + std::to_string(a + 1) + ",X" + std::to_string(b + 1) + "] = " + got.str());
        }
    return rep;
}

bool is_stratified(const GroupSpec &g) {
    const int N = 4 * g.n();
    QMat M(3, N * N);
    for (int beta = 0; beta < 3; ++beta)
        for (int i = 0; i < N * N; ++i) M(beta, i) = g.B(beta).a[i];
    return rank(M) == 3;
}

// ---------------------------------------------------------------- condition (H)

namespace {

QMat pencil(const GroupSpec &g, const std::array<mpq_class, 3> &lam) {
    QMat m(4 * g.n(), 4 * g.n());
    for (int b = 0; b < 3; ++b)
        if (sgn(lam[b])) m = m + lam[b] * g.B(b);
    return m;
}

} // namespace

Poly condition_H_determinant(const GroupSpec &g) {
    const int D = 4 * g.n();
    RingPtr L = make_ring({"l1", "l2", "l3"}, D);
    // dehomogenize at l3 = 1 and interpolate on the principal lattice {(i,j): i+j <= D}
    std::vector<std::pair<int, int>> exps, pts;
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j) {
            exps.push_back({i, j});
            pts.push_back({i, j});
        }
    const int N = int(exps.size());
    QMat V(N, N);
    std::vector<mpq_class> rhs(N);
    for (int r = 0; r < N; ++r) {
        mpq_class x = pts[r].first, y = pts[r].second;
        for (int c = 0; c < N; ++c) {
            mpq_class v = 1;
            for (int e = 0; e < exps[c].first; ++e) v *= x;
            for (int e = 0; e < exps[c].second; ++e) v *= y;
            V(r, c) = v;
        }
        rhs[r] = det(pencil(g, {x, y, 1}));
    }
    std::vector<mpq_class> coef;
    if (!solve(V, rhs, coef)) throw std::logic_error("interpolation system is singular");
    Poly p(L);
    for (int c = 0; c < N; ++c) {
        if (!sgn(coef[c])) continue;
        Monomial m;
        m.e[0] = std::uint8_t(exps[c].first);
        m.e[1] = std::uint8_t(exps[c].second);
        m.e[2] = std::uint8_t(D - exps[c].first - exps[c].second);
        p += Poly::monomial(L, m, Cq(coef[c]));
    }
    return p;
}

Report check_condition_H(const GroupSpec &g, bool exact, int grid) {
    if (grid < 1) throw std::invalid_argument("grid must be >= 1");
    Report rep("group.condition_H", {{"n", g.n()}, {"group", g.name()}, {"mode", exact ? "exact" : "sampled"}, {"grid", grid}});
    auto verdict = [&](const std::string &v) { rep.details["verdict"] = v; };
    auto witness = [&](const std::array<mpq_class, 3> &l) {
        rep.details["witness"] = {rational_str(l[0]), rational_str(l[1]), rational_str(l[2])};
    };
    std::optional<Poly> P;
    if (exact) {
        P = condition_H_determinant(g);
        rep.details["determinant"] = P->str();
        if (P->is_zero()) {
            verdict("false");
            witness({1, 0, 0});
            rep.fail("determinant vanishes identically");
            return rep;
        }
    }
    auto value = [&](const std::array<mpq_class, 3> &l) -> mpq_class {
        if (P) return P->eval({Cq(l[0]), Cq(l[1]), Cq(l[2])}).re;
        return det(pencil(g, l));
    };
    // axes, then integer points on the surface of the cube [-grid, grid]^3 (up to ±: det is even)
    std::vector<std::array<mpq_class, 3>> samples{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int i = -grid; i <= grid; ++i)
        for (int j = -grid; j <= grid; ++j)
            for (int k = 0; k <= grid; ++k) {
                int mx = std::max({std::abs(i), std::abs(j), k});
                if (mx == grid) samples.push_back({i, j, k});
            }
    mpq_class lo = 0, hi = 0;
    bool first = true, pos = false, neg = false;
    for (auto &l : samples) {
        // compare on the unit sphere: det scales as |λ|^{4n}
        mpq_class v = value(l);
        if (sgn(v) == 0) {
            verdict("false");
            witness(l);
            rep.fail("degenerate at sampled covector");
            rep.details["samples"] = samples.size();
            return rep;
        }
        (sgn(v) > 0 ? pos : neg) = true;
        mpq_class r2 = l[0] * l[0] + l[1] * l[1] + l[2] * l[2], scale = 1;
        for (int e = 0; e < 2 * g.n(); ++e) scale *= r2;
        mpq_class nv = v / scale;
        if (first || nv < lo) lo = nv;
        if (first || nv > hi) hi = nv;
        first = false;
    }
    rep.details["samples"] = samples.size();
    rep.details["min_on_sphere"] = lo.get_d();
    rep.details["max_on_sphere"] = hi.get_d();
    if (pos && neg) {
        // the sphere is connected, so a sign change forces a zero
        verdict("false");
        rep.fail("determinant changes sign");
        return rep;
    }
    double ratio = std::abs(lo.get_d()) / std::abs(hi.get_d());
    if (ratio < 1e-9) {
        verdict("inconclusive");
        rep.fail("near-degenerate samples");
        return rep;
    }
    verdict("sampled-true");
    return rep;
}

// ---------------------------------------------------------------- random matrices

QMat random_symmetric(Sampler &s, int n) {
    QMat S(4 * n, 4 * n);
    for (int i = 0; i < 4 * n; ++i)
        for (int j = i; j < 4 * n; ++j) {
            mpq_class v = s.uniform(0, 2) ? mpq_class(s.uniform(-3, 3)) : mpq_class(0);
            S(i, j) = S(j, i) = v;
        }
    return S;
}

QMat random_right_type(Sampler &s, int n) {
    QMat S = random_symmetric(s, n);
    auto at = [&](int l, int m, int a, int b) -> mpq_class & { return S(4 * l + a - 1, 4 * m + b - 1); };
    for (int l = 0; l < n; ++l)
        for (int m = l; m < n; ++m) {
            at(l, m, 4, 4) = -(at(l, m, 1, 1) + at(l, m, 2, 2) + at(l, m, 3, 3));
            if (l != m) {
                at(l, m, 4, 3) = at(l, m, 1, 2) - at(l, m, 2, 1) + at(l, m, 3, 4);
                at(l, m, 4, 2) = -at(l, m, 1, 3) + at(l, m, 3, 1) + at(l, m, 2, 4);
                at(l, m, 4, 1) = at(l, m, 1, 4) + at(l, m, 2, 3) - at(l, m, 3, 2);
            }
            for (int a = 1; a <= 4; ++a)
                for (int b = 1; b <= 4; ++b) at(m, l, b, a) = at(l, m, a, b);
        }
    return S;
}

} // namespace cfx
