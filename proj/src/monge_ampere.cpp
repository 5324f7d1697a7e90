#include "cfx/monge_ampere.hpp"

#include "cfx/random.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace cfx {

namespace {

void need_right_type(const TangentFrame &fr) {
    if (!fr.right_type()) throw PreconditionError("group " + fr.group().name() + " is not right-type: △ is not defined there");
}

std::complex<double> to_complex(const Cq &c) { return {c.re.get_d(), c.im.get_d()}; }

nlohmann::json cq_json(const Cq &c) { return nlohmann::json::array({rational_str(c.re), rational_str(c.im)}); }

// univariate polys with rational coefficients, low degree first
using UPoly = std::vector<mpq_class>;

UPoly umul(const UPoly &a, const UPoly &b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

UPoly uderiv(const UPoly &a) {
    UPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * int(i));
    return r;
}

mpq_class upow(const mpq_class &x, int e) {
    mpq_class r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

mpq_class uint_exact(const UPoly &a, const mpq_class &lo, const mpq_class &hi) {
    mpq_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * (upow(hi, int(i) + 1) - upow(lo, int(i) + 1)) / int(i + 1);
    return s;
}

double ueval(const UPoly &a, double x) {
    double r = 0;
    for (size_t i = a.size(); i-- > 0;) r = r * x + a[i].get_d();
    return r;
}

double uint_gauss(const UPoly &a, const mpq_class &lo, const mpq_class &hi, int resolution) {
    int deg = std::max<int>(0, int(a.size()) - 1);
    const GaussRule &g = gauss_legendre(std::max(resolution, deg / 2 + 1));
    double l = lo.get_d(), h = hi.get_d(), mid = (l + h) / 2, half = (h - l) / 2, s = 0;
    for (size_t k = 0; k < g.x.size(); ++k) s += g.w[k] * ueval(a, mid + half * g.x[k]);
    return s * half;
}

UPoly xpow(int e) {
    UPoly r(e + 1, mpq_class(0));
    r[e] = 1;
    return r;
}

void check_dims(const RingPtr &R, const Region &r) {
    r.validate();
    if (R->size() != r.dims()) throw std::invalid_argument("region has " + std::to_string(r.dims()) + " axes but the ring has " + std::to_string(R->size()) + " variables");
}

// χ-jets: Σ_α F_α ∂^αχ with form coefficients, α a sorted multiset of variables
using Jet = std::map<std::vector<int>, ExtForm>;

void jet_add(Jet &j, std::vector<int> a, const ExtForm &f) {
    if (f.is_zero()) return;
    std::sort(a.begin(), a.end());
    auto it = j.find(a);
    if (it == j.end()) j.emplace(a, f);
    else it->second += f;
}

Jet jet_d_lower(const TangentFrame &fr, Primed Ap, const Jet &in) {
    Jet out;
    const int m = fr.dim();
    for (auto &[a, F] : in) {
        jet_add(out, a, frak_d_lower(fr, Ap, F));
        for (int A = 0; A < m; ++A) {
            ExtForm wA = wedge(ExtForm::basis(fr.ring(), m, {A}), F);
            for (auto &[v, c] : fr.Z_lower(A, Ap).coeffs()) {
                auto b = a;
                b.push_back(v);
                jet_add(out, b, c * wA);
            }
        }
    }
    return out;
}

Jet jet_map(const Jet &in, const std::function<ExtForm(const ExtForm &)> &fn) {
    Jet out;
    for (auto &[a, F] : in) jet_add(out, a, fn(F));
    return out;
}

// per-axis bump factor g_i and its derivatives
struct AxisBump {
    std::array<UPoly, 3> g;
};

std::vector<AxisBump> axis_bumps(const Region &K) {
    std::vector<AxisBump> out;
    for (int i = 0; i < K.dims(); ++i) {
        mpq_class w = K.hi[i] - K.lo[i];
        UPoly s{-(K.lo[i] + K.hi[i]) / w, mpq_class(2) / w};
        UPoly one_minus = umul(s, s);
        for (auto &c : one_minus) c = -c;
        one_minus[0] += 1;
        AxisBump b;
        b.g[0] = umul(one_minus, one_minus);
        b.g[1] = uderiv(b.g[0]);
        b.g[2] = uderiv(b.g[1]);
        out.push_back(b);
    }
    return out;
}

struct Both {
    Cq exact;
    std::complex<double> quad;
};

// ∫_K p ∂^αχ dV with χ = Π g_i, exactly and by Gauss rules
Both integrate_against_bump(const Poly &p, const std::vector<int> &alpha, const std::vector<AxisBump> &bumps, const Region &K) {
    std::vector<int> d(K.dims(), 0);
    for (int v : alpha) ++d[v];
    for (int x : d)
        if (x > 2) throw std::logic_error("bump derivative order above 2");
    Both r{Cq(0), {0, 0}};
    for (auto &[mono, c] : p.terms()) {
        mpq_class ex = 1;
        double q = 1;
        for (int i = 0; i < K.dims(); ++i) {
            UPoly f = umul(xpow(mono.e[i]), bumps[i].g[d[i]]);
            ex *= uint_exact(f, K.lo[i], K.hi[i]);
            q *= uint_gauss(f, K.lo[i], K.hi[i], K.resolution);
        }
        r.exact += c * Cq(ex);
        r.quad += to_complex(c) * q;
    }
    return r;
}

Both integrate_jet(const Jet &j, const std::vector<AxisBump> &bumps, const Region &K, const mpq_class &scale) {
    Both r{Cq(0), {0, 0}};
    for (auto &[a, F] : j) {
        Both b = integrate_against_bump(top_coefficient(F), a, bumps, K);
        r.exact += b.exact;
        r.quad += b.quad;
    }
    r.exact *= Cq(scale);
    r.quad *= scale.get_d();
    return r;
}

double rel_diff(std::complex<double> a, std::complex<double> b) {
    double s = std::max(std::abs(a), std::abs(b));
    return s == 0 ? 0.0 : std::abs(a - b) / s;
}

nlohmann::json complex_json(std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); }

} // namespace

// ---------------------------------------------------------------- △

ExtForm triangle(const Poly &u, const TangentFrame &fr) {
    need_right_type(fr);
    ExtForm s = ExtForm::scalar(u, fr.dim());
    return frak_d_lower(fr, Primed::P0, frak_d_lower(fr, Primed::P1, s));
}

ExtForm triangle_expanded(const Poly &u, const TangentFrame &fr) {
    need_right_type(fr);
    const int m = fr.dim();
    ExtForm out(fr.ring(), m, 2);
    for (int A = 0; A < m; ++A)
        for (int B = A + 1; B < m; ++B) {
            Poly c = fr.Z_lower(A, Primed::P0)(fr.Z_lower(B, Primed::P1)(u)) - fr.Z_lower(B, Primed::P0)(fr.Z_lower(A, Primed::P1)(u));
            if (!c.is_zero()) out.add(blade_of({A, B}), c);
        }
    return out;
}

ExtForm ma_power(const std::vector<Poly> &us, const TangentFrame &fr, std::string *notice) {
    need_right_type(fr);
    const int m = fr.dim();
    if (int(us.size()) > fr.n()) {
        if (notice) *notice = "power " + std::to_string(us.size()) + " exceeds n = " + std::to_string(fr.n()) + ": the wedge vanishes";
        return ExtForm(fr.ring(), m, m);
    }
    ExtForm acc = ExtForm::scalar(Poly(fr.ring(), Cq(1)), m);
    for (auto &u : us) acc = wedge(acc, triangle(u, fr));
    return acc;
}

ExtForm beta_form(const RingPtr &ring, int n) {
    ExtForm b(ring, 2 * n, 2);
    for (int l = 0; l < n; ++l) b += ExtForm::basis(ring, 2 * n, {2 * l, 2 * l + 1});
    return b;
}

ExtForm beta_power(const RingPtr &ring, int n, int p) {
    ExtForm acc = ExtForm::scalar(Poly(ring, Cq(1)), 2 * n);
    ExtForm b = beta_form(ring, n);
    for (int i = 0; i < p; ++i) acc = wedge(acc, b);
    return acc;
}

Poly top_coefficient(const ExtForm &F) {
    if (F.degree() != F.dim()) throw std::invalid_argument("form of degree " + std::to_string(F.degree()) + " is not top degree " + std::to_string(F.dim()));
    std::vector<int> all(F.dim());
    for (int i = 0; i < F.dim(); ++i) all[i] = i;
    return F.coeff(all);
}

Report key_identity_check(const std::vector<Poly> &us, const TangentFrame &fr) {
    need_right_type(fr);
    const int n = fr.n(), m = fr.dim();
    if (int(us.size()) != n) throw std::invalid_argument("key identity needs exactly n functions");
    Report rep("ma.key_identity", {{"n", n}, {"group", fr.group().name()}});
    std::vector<ExtForm> tri;
    for (auto &u : us) {
        tri.push_back(triangle(u, fr));
        // 𝔡_{A'}△ = 0
        for (Primed A : kPrimed)
            if (!frak_d_lower(fr, A, tri.back()).is_zero()) rep.fail("△u is not closed");
        if (tri.back() != triangle_expanded(u, fr)) rep.fail("△u differs from its expansion");
    }
    ExtForm R = ExtForm::scalar(Poly(fr.ring(), Cq(1)), m);
    for (int i = 1; i < n; ++i) R = wedge(R, tri[i]);
    ExtForm u1 = ExtForm::scalar(us[0], m);
    ExtForm lhs = wedge(tri[0], R);
    std::vector<ExtForm> rhs;
    rhs.push_back(frak_d_lower(fr, Primed::P0, wedge(frak_d_lower(fr, Primed::P1, u1), R)));
    rhs.push_back(-frak_d_lower(fr, Primed::P1, wedge(frak_d_lower(fr, Primed::P0, u1), R)));
    ExtForm u1R = us[0] * R;
    rhs.push_back(frak_d_lower(fr, Primed::P0, frak_d_lower(fr, Primed::P1, u1R)));
    // △ applied through the lowered Z columns directly
    std::vector<VectorField> c0, c1;
    for (int A = 0; A < m; ++A) {
        c0.push_back(fr.Z_lower(A, Primed::P0));
        c1.push_back(fr.Z_lower(A, Primed::P1));
    }
    rhs.push_back(exterior_apply(c0, exterior_apply(c1, u1R)));
    nlohmann::json agree = nlohmann::json::array();
    for (size_t i = 0; i < rhs.size(); ++i) {
        bool ok = rhs[i] == lhs;
        agree.push_back(ok);
        if (!ok) rep.fail("expression " + std::to_string(i + 1) + " differs: " + (rhs[i] - lhs).str());
    }
    rep.details["agree"] = agree;
    rep.details["top_coefficient"] = top_coefficient(lhs).str();
    return rep;
}

// ---------------------------------------------------------------- regions and quadrature

Region Region::cube(int dims, const mpq_class &lo, const mpq_class &hi, int resolution) {
    Region r{std::vector<mpq_class>(dims, lo), std::vector<mpq_class>(dims, hi), resolution};
    r.validate();
    return r;
}

mpq_class Region::volume() const {
    mpq_class v = 1;
    for (int i = 0; i < dims(); ++i) v *= hi[i] - lo[i];
    return v;
}

void Region::validate() const {
    if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("region bounds must have equal, nonzero length");
    for (int i = 0; i < dims(); ++i)
        if (!(lo[i] < hi[i])) throw std::invalid_argument("region axis " + std::to_string(i) + " has nonpositive length");
    if (resolution < 2) throw std::invalid_argument("quadrature resolution must be at least 2");
}

bool Region::contains_strictly(const Region &in) const {
    if (in.dims() != dims()) return false;
    for (int i = 0; i < dims(); ++i)
        if (!(lo[i] < in.lo[i] && in.hi[i] < hi[i])) return false;
    return true;
}

nlohmann::json Region::to_json() const {
    nlohmann::json l = nlohmann::json::array(), h = nlohmann::json::array();
    for (int i = 0; i < dims(); ++i) {
        l.push_back(rational_str(lo[i]));
        h.push_back(rational_str(hi[i]));
    }
    return {{"lo", l}, {"hi", h}, {"resolution", resolution}};
}

Region Region::from_json(const nlohmann::json &j) {
    Region r;
    auto num = [](const nlohmann::json &x) { return x.is_string() ? parse_rational(x.get<std::string>()) : mpq_class(x.get<long>()); };
    for (auto &x : j.at("lo")) r.lo.push_back(num(x));
    for (auto &x : j.at("hi")) r.hi.push_back(num(x));
    r.resolution = j.value("resolution", 4);
    r.validate();
    return r;
}

const GaussRule &gauss_legendre(int points) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (points < 1) throw std::invalid_argument("Gauss rule needs at least one point");
    auto it = cache.find(points);
    if (it != cache.end()) return it->second;
    GaussRule g;
    for (double z : boost::math::legendre_p_zeros<double>(points)) {
        double dp = boost::math::legendre_p_prime(points, z);
        double w = 2.0 / ((1 - z * z) * dp * dp);
        g.x.push_back(z);
        g.w.push_back(w);
        if (z != 0) {
            g.x.push_back(-z);
            g.w.push_back(w);
        }
    }
    return cache.emplace(points, std::move(g)).first->second;
}

Cq integrate_poly_exact(const Poly &f, const Region &r) {
    check_dims(f.ring(), r);
    Cq s(0);
    for (auto &[m, c] : f.terms()) {
        mpq_class v = 1;
        for (int i = 0; i < r.dims(); ++i) v *= uint_exact(xpow(m.e[i]), r.lo[i], r.hi[i]);
        s += c * Cq(v);
    }
    return s;
}

std::complex<double> integrate_poly(const Poly &f, const Region &r) {
    check_dims(f.ring(), r);
    std::complex<double> s = 0;
    for (auto &[m, c] : f.terms()) {
        double v = 1;
        for (int i = 0; i < r.dims(); ++i) v *= uint_gauss(xpow(m.e[i]), r.lo[i], r.hi[i], r.resolution);
        s += to_complex(c) * v;
    }
    return s;
}

Cq integrate_top_exact(const ExtForm &F, const Region &r) { return integrate_poly_exact(top_coefficient(F), r); }
std::complex<double> integrate_top(const ExtForm &F, const Region &r) { return integrate_poly(top_coefficient(F), r); }

namespace {

Cq integrate_face_exact(const Poly &f, const Region &r, int var, const mpq_class &value) {
    Cq s(0);
    for (auto &[m, c] : f.terms()) {
        mpq_class v = upow(value, m.e[var]);
        for (int i = 0; i < r.dims(); ++i)
            if (i != var) v *= uint_exact(xpow(m.e[i]), r.lo[i], r.hi[i]);
        s += c * Cq(v);
    }
    return s;
}

} // namespace

std::complex<double> integrate_face(const Poly &f, const Region &r, int var, const mpq_class &value) {
    check_dims(f.ring(), r);
    std::complex<double> s = 0;
    for (auto &[m, c] : f.terms()) {
        double v = std::pow(value.get_d(), m.e[var]);
        for (int i = 0; i < r.dims(); ++i)
            if (i != var) v *= uint_gauss(xpow(m.e[i]), r.lo[i], r.hi[i], r.resolution);
        s += to_complex(c) * v;
    }
    return s;
}

std::vector<Poly> hat_components(const ExtForm &T) {
    const int m = T.dim();
    if (T.degree() != m - 1) throw std::invalid_argument("hat components need a form of degree 2n-1");
    std::vector<Poly> out;
    for (int A = 0; A < m; ++A) {
        std::vector<int> idx;
        for (int i = 0; i < m; ++i)
            if (i != A) idx.push_back(i);
        Poly c = T.coeff(idx);
        out.push_back(A % 2 ? -c : c);
    }
    return out;
}

ExtForm from_hat_components(const std::vector<Poly> &TA, int dim) {
    if (int(TA.size()) != dim) throw std::invalid_argument("need one component per index");
    ExtForm T(TA.at(0).ring(), dim, dim - 1);
    for (int A = 0; A < dim; ++A) {
        std::vector<int> idx;
        for (int i = 0; i < dim; ++i)
            if (i != A) idx.push_back(i);
        if (!TA[A].is_zero()) T.add(blade_of(idx), A % 2 ? -TA[A] : TA[A]);
    }
    return T;
}

Report stokes_check(const Poly &h, const ExtForm &T, const Region &r, const TangentFrame &fr) {
    check_dims(fr.ring(), r);
    const int m = fr.dim();
    Report rep("ma.stokes", {{"n", fr.n()}, {"group", fr.group().name()}, {"region", r.to_json()}});
    auto TA = hat_components(T);
    double worst = 0;
    nlohmann::json per = nlohmann::json::object();
    for (Primed Ap : kPrimed) {
        Poly lhs_f = h * top_coefficient(frak_d(fr, Ap, T));
        Poly int_f = -top_coefficient(wedge(frak_d(fr, Ap, ExtForm::scalar(h, m)), T));
        std::complex<double> lhs = integrate_poly(lhs_f, r), inner = integrate_poly(int_f, r), bnd = 0;
        Cq lhs_x = integrate_poly_exact(lhs_f, r), rhs_x = integrate_poly_exact(int_f, r);
        for (int A = 0; A < m; ++A) {
            Poly hT = h * TA[A];
            // outward unit normals: Z_A^{A'}ρ is ± the coefficient of ∂_i
            for (auto &[v, c] : fr.Z(A, Ap).coeffs()) {
                Poly g = hT * c;
                bnd += integrate_face(g, r, v, r.hi[v]) - integrate_face(g, r, v, r.lo[v]);
                rhs_x += integrate_face_exact(g, r, v, r.hi[v]) - integrate_face_exact(g, r, v, r.lo[v]);
            }
        }
        double scale = std::max({std::abs(lhs), std::abs(inner), std::abs(bnd)});
        double rel = scale == 0 ? 0.0 : std::abs(lhs - inner - bnd) / scale;
        worst = std::max(worst, rel);
        per[Ap == Primed::P0 ? "0'" : "1'"] = {{"lhs", complex_json(lhs)}, {"interior", complex_json(inner)}, {"boundary", complex_json(bnd)}, {"relative_residual", rel}, {"exact_equal", lhs_x == rhs_x}};
        if (!(lhs_x == rhs_x)) rep.fail("exact Stokes sides differ");
    }
    rep.details["terms"] = per;
    rep.details["relative_residual"] = worst;
    rep.details["tolerance"] = 1e-9;
    if (worst > 1e-9) rep.fail("relative residual " + std::to_string(worst));
    return rep;
}

// ---------------------------------------------------------------- positivity

std::array<std::array<Cq, 2>, 2> quaternion_matrix(const std::array<mpq_class, 4> &a) {
    return {{{Cq(a[0], a[1]), Cq(-a[2], -a[3])}, {Cq(a[2], -a[3]), Cq(a[0], -a[1])}}};
}

ExtForm pullback_omega(const RingPtr &ring, const QuaternionRow &eta, int B) {
    const int n = int(eta.size());
    ExtForm f(ring, 2 * n, 1);
    for (int l = 0; l < n; ++l) {
        auto M = quaternion_matrix(eta[l]);
        for (int a = 0; a < 2; ++a)
            if (!M[a][B].is_zero()) f.add(blade_of({2 * l + a}), Poly(ring, M[a][B]));
    }
    return f;
}

nlohmann::json PositiveConeSample::to_json() const {
    nlohmann::json g = nlohmann::json::array();
    for (auto &row : generators) {
        nlohmann::json r = nlohmann::json::array();
        for (auto &q : row) r.push_back({rational_str(q[0]), rational_str(q[1]), rational_str(q[2]), rational_str(q[3])});
        g.push_back(r);
    }
    return {{"generators", g}, {"form", form.str()}};
}

PositiveConeSample elementary_strongly_positive(const RingPtr &ring, int n, const std::vector<QuaternionRow> &maps) {
    ExtForm f = ExtForm::scalar(Poly(ring, Cq(1)), 2 * n);
    for (auto &eta : maps) {
        if (int(eta.size()) != n) throw std::invalid_argument("map must have one quaternion per coordinate");
        f = wedge(f, wedge(pullback_omega(ring, eta, 0), pullback_omega(ring, eta, 1)));
    }
    return {maps, f};
}

PositiveConeSample random_strongly_positive(const RingPtr &ring, int n, int p, Sampler &s) {
    std::vector<QuaternionRow> maps;
    for (int j = 0; j < p; ++j) {
        QuaternionRow row;
        for (int l = 0; l < n; ++l) row.push_back({s.uniform(-3, 3), s.uniform(-3, 3), s.uniform(-3, 3), s.uniform(-3, 3)});
        maps.push_back(row);
    }
    return elementary_strongly_positive(ring, n, maps);
}

Report positivity_check(const ExtForm &F, int samples, std::uint64_t seed) {
    if (F.dim() % 2 || F.degree() % 2) throw std::invalid_argument("positivity needs an even form on C^{2n}");
    for (auto &[b, c] : F.components())
        if (!c.is_constant()) throw std::invalid_argument("positivity check needs constant coefficients");
    const int n = F.dim() / 2, p = F.degree() / 2, q = n - p;
    Report rep("ma.positivity", {{"n", n}, {"p", p}, {"samples", samples}}, seed);
    Sampler s(seed);
    auto test = [&](int index, const PositiveConeSample &eta) {
        Cq c = top_coefficient(wedge(F, eta.form)).constant_term();
        if (c.is_real() && sgn(c.re) >= 0) return true;
        nlohmann::json w = eta.to_json();
        w["index"] = index;
        w["pairing"] = cq_json(c);
        if (q == 0) w["form"] = "1";
        rep.details["witness"] = w;
        rep.fail("negative pairing " + c.str());
        return false;
    };
    // β^q first: always in the cone
    PositiveConeSample b{{}, beta_power(F.ring(), n, q)};
    bool ok = test(0, b);
    for (int i = 1; ok && q > 0 && i <= samples; ++i) ok = test(i, random_strongly_positive(F.ring(), n, q, s));
    rep.details["verdict"] = ok ? "positive-on-samples" : "not-positive";
    return rep;
}

Poly random_psh_quadratic(const RingPtr &ring, int n, Sampler &s, int terms) {
    const auto &J = quaternion_basis().J;
    Poly u(ring);
    for (int t = 0; t < terms; ++t) {
        std::array<Poly, 4> y{Poly(ring), Poly(ring), Poly(ring), Poly(ring)};
        for (int l = 0; l < n; ++l) {
            std::array<int, 4> a{s.uniform(-2, 2), s.uniform(-2, 2), s.uniform(-2, 2), s.uniform(-2, 2)};
            QMat L = mpq_class(a[0]) * identity4();
            for (int b = 0; b < 3; ++b) L = L + mpq_class(a[b + 1]) * J[b];
            for (int k = 0; k < 4; ++k)
                for (int j = 0; j < 4; ++j)
                    if (sgn(L(k, j))) y[k] += Poly::var(ring, 4 * l + j) * Cq(L(k, j));
        }
        for (auto &yk : y) u += yk * yk;
    }
    return u;
}

// ---------------------------------------------------------------- mass estimates

Bump Bump::for_regions(const Region &K, const Region &L) {
    K.validate();
    L.validate();
    if (!K.contains_strictly(L)) throw std::invalid_argument("L must lie strictly inside K");
    mpq_class m = 1;
    for (int i = 0; i < K.dims(); ++i) {
        mpq_class w = K.hi[i] - K.lo[i];
        auto s = [&](const mpq_class &x) -> mpq_class { return (2 * x - K.lo[i] - K.hi[i]) / w; };
        mpq_class a = abs(s(L.lo[i])), b = abs(s(L.hi[i]));
        mpq_class smax = a > b ? a : b;
        mpq_class f = 1 - smax * smax;
        m *= f * f;
    }
    return {K, 1 / m};
}

Poly Bump::expand(const RingPtr &ring) const {
    check_dims(ring, K);
    auto bumps = axis_bumps(K);
    Poly chi(ring, Cq(scale));
    for (int i = 0; i < K.dims(); ++i) {
        Poly g(ring), x = Poly::var(ring, i), xp(ring, Cq(1));
        for (auto &c : bumps[i].g[0]) {
            g += xp * Cq(c);
            xp = xp * x;
        }
        chi = chi * g;
    }
    return chi;
}

Report cln_experiment(const std::vector<Poly> &us, const TangentFrame &fr, const Region &K, const Region &L, int sup_grid) {
    need_right_type(fr);
    check_dims(fr.ring(), K);
    const int n = fr.n(), m = fr.dim(), p = int(us.size());
    if (p < 1 || p > n) throw std::invalid_argument("cln experiment needs 1 <= p <= n");
    if (sup_grid < 2) throw std::invalid_argument("sup-norm grid needs at least 2 points per axis");
    Bump chi = Bump::for_regions(K, L);
    auto bumps = axis_bumps(K);
    Report rep("ma.cln", {{"n", n}, {"p", p}, {"group", fr.group().name()}, {"K", K.to_json()}, {"L", L.to_json()}});

    ExtForm R = beta_power(fr.ring(), n, n - p);
    for (int i = 1; i < p; ++i) R = wedge(triangle(us[i], fr), R);
    ExtForm one = ExtForm::scalar(Poly(fr.ring(), Cq(1)), m);
    ExtForm tri1 = triangle(us[0], fr);
    Jet chi0{{{}, one}};

    std::vector<Both> I;
    I.push_back(integrate_jet(Jet{{{}, wedge(tri1, R)}}, bumps, K, chi.scale));
    ExtForm d1u = frak_d_lower(fr, Primed::P1, ExtForm::scalar(us[0], m));
    I.push_back(integrate_jet(jet_map(jet_d_lower(fr, Primed::P0, chi0), [&](const ExtForm &f) { return -wedge(wedge(f, d1u), R); }), bumps, K, chi.scale));
    I.push_back(integrate_jet(jet_map(jet_d_lower(fr, Primed::P1, jet_d_lower(fr, Primed::P0, chi0)), [&](const ExtForm &f) { return -(us[0] * wedge(f, R)); }), bumps, K, chi.scale));
    I.push_back(integrate_jet(jet_map(jet_d_lower(fr, Primed::P0, jet_d_lower(fr, Primed::P1, chi0)), [&](const ExtForm &f) { return us[0] * wedge(f, R); }), bumps, K, chi.scale));

    nlohmann::json vals = nlohmann::json::array();
    double worst = 0;
    bool exact = true;
    for (auto &b : I) {
        vals.push_back(complex_json(b.quad));
        worst = std::max(worst, rel_diff(b.quad, I[0].quad));
        exact = exact && b.exact == I[0].exact;
    }
    rep.details["mass_chi"] = vals;
    rep.details["relative_agreement"] = worst;
    rep.details["exact_agree"] = exact;
    rep.details["chi_scale"] = rational_str(chi.scale);
    if (worst > 1e-6) rep.fail("integration by parts disagrees, relative " + std::to_string(worst));

    // ‖△u_1∧…∧△u_p‖_L, bounded by ∫χ… since χ ≥ 1 on L and the integrand is positive
    ExtForm top = wedge(tri1, R);
    std::complex<double> mass_L = integrate_top(top, L);
    rep.details["mass_direct"] = complex_json(mass_L);
    rep.details["mass_ibp"] = complex_json(I[3].quad);
    rep.details["chi_dominates"] = mass_L.real() <= I[0].quad.real() * (1 + 1e-12);

    // sup norms over K on a uniform grid
    nlohmann::json sups = nlohmann::json::array();
    double prod = 1;
    const int d = K.dims();
    for (auto &u : us) {
        double best = 0;
        std::vector<int> idx(d, 0);
        std::vector<double> pt(d);
        while (true) {
            for (int i = 0; i < d; ++i) pt[i] = K.lo[i].get_d() + mpq_class(K.hi[i] - K.lo[i]).get_d() * idx[i] / (sup_grid - 1);
            best = std::max(best, std::abs(u.eval(pt)));
            int i = 0;
            while (i < d && ++idx[i] == sup_grid) idx[i++] = 0;
            if (i == d) break;
        }
        sups.push_back(best);
        prod *= best;
    }
    rep.details["sup_norms"] = sups;
    rep.details["sup_grid"] = sup_grid;
    rep.details["empirical_C"] = prod == 0 ? nlohmann::json(nullptr) : nlohmann::json(mass_L.real() / prod);
    return rep;
}

Report ma_convergence(const Poly &q, const TangentFrame &fr, const Region &L, int jmax, double threshold) {
    need_right_type(fr);
    check_dims(fr.ring(), L);
    if (jmax < 3) throw std::invalid_argument("need at least three terms");
    const int n = fr.n();
    Report rep("ma.convergence", {{"n", n}, {"group", fr.group().name()}, {"L", L.to_json()}, {"jmax", jmax}, {"threshold", threshold}});
    Poly sq(fr.ring());
    for (int a = 0; a < 4 * n; ++a) sq += Poly::var(fr.ring(), a) * Poly::var(fr.ring(), a);
    auto pos = positivity_check(triangle(q, fr), 20, 1);
    rep.details["q_positive_on_samples"] = pos.pass;
    std::vector<double> mass;
    for (int j = 1; j <= jmax; ++j) {
        Poly u = q + sq * Cq(mpq_class(1, j));
        std::vector<Poly> us(n, u);
        Cq mj = integrate_top_exact(ma_power(us, fr), L);
        if (!mj.is_real()) rep.fail("complex mass at j=" + std::to_string(j));
        mass.push_back(mj.re.get_d());
    }
    std::vector<double> diff;
    for (int j = 0; j + 1 < jmax; ++j) diff.push_back(std::abs(mass[j] - mass[j + 1]));
    bool mono = true;
    for (size_t j = 0; j + 1 < diff.size(); ++j) mono = mono && diff[j + 1] < diff[j];
    int first_below = -1;
    for (size_t j = 0; j < diff.size(); ++j)
        if (diff[j] < threshold) {
            first_below = int(j) + 1;
            break;
        }
    rep.details["masses"] = mass;
    rep.details["differences"] = diff;
    rep.details["monotone"] = mono;
    rep.details["first_below_threshold"] = first_below;
    rep.details["last_difference"] = diff.back();
    if (!mono) rep.fail("successive differences are not decreasing");
    if (!(diff.back() < threshold)) rep.fail("last difference " + std::to_string(diff.back()) + " above threshold");
    return rep;
}

} // namespace cfx
