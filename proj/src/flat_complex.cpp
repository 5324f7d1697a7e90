#include "cfx/flat_complex.hpp"

#include "cfx/random.hpp"

#include <map>
#include <tuple>

namespace cfx {

// ---------------------------------------------------------------- ∇

NablaMatrix::NablaMatrix(int n, RingPtr ring) : n_(n), ring_(std::move(ring)) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (ring_->size() < 4 * n + 4) throw std::invalid_argument("ring too small for H^{n+1}");
    const Cq I = Cq::I();
    auto P = [&](int var1, const Cq &c) { return VectorField::partial(ring_, var1 - 1, c); };
    for (int l = 0; l <= n; ++l) {
        const int b = 4 * l;
        // row 2l:   ( d1 + i d2 ,  -d3 - i d4 )
        // row 2l+1: ( d3 - i d4 ,   d1 - i d2 )
        std::array<VectorField, 2> even{P(b + 1, 1) + P(b + 2, I), P(b + 3, -1) + P(b + 4, -I)};
        std::array<VectorField, 2> odd{P(b + 3, 1) + P(b + 4, -I), P(b + 1, 1) + P(b + 2, -I)};
        lower_.push_back(even);
        lower_.push_back(odd);
    }
    for (auto &row : lower_) upper_.push_back({row[1], row[0] * Cq(-1)});
}

std::vector<VectorField> NablaMatrix::upper_column(Primed A) const {
    std::vector<VectorField> c;
    for (auto &row : upper_) c.push_back(row[o(A)]);
    return c;
}

// ---------------------------------------------------------------- spec

ComplexSpec::ComplexSpec(int n, int k) : n_(n), k_(k) {
    if (n < 1 || n > 3) throw std::invalid_argument("n must be in 1..3");
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    ring_ = coordinate_ring(4 * n + 4);
    nabla_ = std::make_shared<NablaMatrix>(n, ring_);
}

int ComplexSpec::sigma(int j) const {
    if (j < 0 || j > 2 * n_ + 1) throw std::out_of_range("level out of range");
    return j <= k_ ? k_ - j : j - k_ - 1;
}

int ComplexSpec::tau(int j) const {
    if (j < 0 || j > 2 * n_ + 1) throw std::out_of_range("level out of range");
    return j <= k_ ? j : j + 1;
}

long ComplexSpec::level_dim(int j) const {
    int t = tau(j);
    if (t > dim()) return 0;
    return (sigma(j) + 1) * binomial(dim(), t).get_num().get_si();
}

SpinorField ComplexSpec::zero_section(int j) const {
    return SpinorField::zero(basis(j), sigma(j), ring_, dim(), tau(j));
}

// ---------------------------------------------------------------- d

ExtForm d_upper(const NablaMatrix &nabla, Primed A, const ExtForm &f) {
    if (f.dim() != nabla.rows()) throw std::invalid_argument("d_upper: form dimension must be 2n+2");
    return exterior_apply(nabla.upper_column(A), f);
}

ExtForm d_lower(const NablaMatrix &nabla, Primed A, const ExtForm &f) {
    if (A == Primed::P0) return -d_upper(nabla, Primed::P1, f);
    return d_upper(nabla, Primed::P0, f);
}

SpinorField contract_partial(const PrimedOp &D, const SpinorField &F) {
    if (F.basis() != Basis::S || F.sigma() < 1) throw std::invalid_argument("contract_partial: need S basis, sigma >= 1");
    std::vector<ExtForm> out;
    for (int b = 0; b < F.sigma(); ++b) out.push_back(D(Primed::P0, F.slot(b)) + D(Primed::P1, F.slot(b + 1)));
    return SpinorField(Basis::S, F.sigma() - 1, std::move(out));
}

SpinorField contract_s(const PrimedOp &D, const SpinorField &F) {
    if (F.basis() != Basis::TildeS) throw std::invalid_argument("contract_s: need tilde basis");
    const int s = F.sigma();
    std::vector<ExtForm> d0, d1;
    for (int c = 0; c <= s; ++c) {
        d0.push_back(D(Primed::P0, F.slot(c)));
        d1.push_back(D(Primed::P1, F.slot(c)));
    }
    std::vector<ExtForm> out;
    for (int c = 0; c <= s + 1; ++c) {
        ExtForm acc(F.ring(), F.dim(), F.tau() + 1);
        if (c <= s) acc += d0[c];
        if (c >= 1) acc += d1[c - 1];
        out.push_back(acc);
    }
    return SpinorField(Basis::TildeS, s + 1, std::move(out));
}

namespace {

void check_shape(const ComplexSpec &spec, int j, const SpinorField &F, Basis basis) {
    if (F.basis() != basis || F.sigma() != spec.sigma(j) || F.tau() != spec.tau(j) || F.dim() != spec.dim())
        throw std::invalid_argument("section does not lie in level " + std::to_string(j));
}

void check_level(const ComplexSpec &spec, int j) {
    if (j < 0 || j > 2 * spec.n()) throw std::out_of_range("operator level must be in 0..2n");
}

} // namespace

FlatOperator::FlatOperator(const ComplexSpec &spec, int j) : spec_(&spec), j_(j) { check_level(spec, j); }

SpinorField FlatOperator::operator()(const SpinorField &F) const {
    const ComplexSpec &sp = *spec_;
    check_shape(sp, j_, F, sp.basis(j_));
    const NablaMatrix &nb = sp.nabla();
    PrimedOp d = [&](Primed A, const ExtForm &f) { return d_upper(nb, A, f); };
    if (j_ < sp.k()) return contract_partial(d, F);
    if (j_ > sp.k()) return contract_s(d, F);
    ExtForm g = d_upper(nb, Primed::P0, d_upper(nb, Primed::P1, F.slot(0)));
    return SpinorField(Basis::TildeS, 0, {g});
}

FlatOperator make_Dj(const ComplexSpec &spec, int j) { return FlatOperator(spec, j); }

FlatTupleOperator::FlatTupleOperator(const ComplexSpec &spec, int j) : spec_(&spec), j_(j) { check_level(spec, j); }

SpinorField FlatTupleOperator::operator()(const SpinorField &F) const {
    const ComplexSpec &sp = *spec_;
    check_shape(sp, j_, F, Basis::Tuple);
    const NablaMatrix &nb = sp.nabla();
    const int s = F.sigma();
    if (j_ == sp.k()) {
        ExtForm g = d_upper(nb, Primed::P0, d_upper(nb, Primed::P1, F.slot(0)));
        return SpinorField(Basis::Tuple, 0, {g});
    }
    if (j_ < sp.k()) {
        // (𝒟f)_{𝐀'} = Σ_{A'} d^{A'} f_{A'𝐀'}
        std::vector<ExtForm> out;
        for (unsigned m = 0; m < (1u << (s - 1)); ++m)
            out.push_back(d_upper(nb, Primed::P0, F.slot(0u | (m << 1))) + d_upper(nb, Primed::P1, F.slot(1u | (m << 1))));
        return SpinorField(Basis::Tuple, s - 1, std::move(out));
    }
    // (𝒟f)^{A'𝐀'} = d^{(A'} f^{𝐀')}
    std::vector<ExtForm> g;
    for (unsigned M = 0; M < (1u << (s + 1)); ++M)
        g.push_back(d_upper(nb, (M & 1u) ? Primed::P1 : Primed::P0, F.slot(M >> 1)));
    return symmetrize(SpinorField(Basis::Tuple, s + 1, std::move(g)));
}

FlatTupleOperator make_Dj_tuple(const ComplexSpec &spec, int j) { return FlatTupleOperator(spec, j); }

SpinorField pi_dot(const ComplexSpec &spec, int j, const SpinorField &tuple) {
    return spec.basis(j) == Basis::S ? tuple_to_s(tuple) : tuple_to_tilde(tuple);
}

SpinorField pi_dot_inverse(const ComplexSpec &spec, int j, const SpinorField &native) {
    return spec.basis(j) == Basis::S ? s_to_tuple(native) : tilde_to_tuple(native);
}

// ---------------------------------------------------------------- symbols

std::vector<Cq> section_coordinates(const ComplexSpec &spec, int j, const SpinorField &F) {
    check_shape(spec, j, F, spec.basis(j));
    std::vector<Cq> c;
    auto bs = blades(spec.dim(), spec.tau(j));
    for (int a = 0; a <= spec.sigma(j); ++a)
        for (auto b : bs) {
            Poly p = F.slot(a).coeff(b);
            if (!p.is_constant()) throw std::logic_error("section_coordinates: non-constant coefficient");
            c.push_back(p.constant_term());
        }
    return c;
}

SymbolMatrix symbol_at(const ComplexSpec &spec, int j, const std::vector<mpq_class> &v) {
    check_level(spec, j);
    const RingPtr &R = spec.ring();
    if (static_cast<int>(v.size()) != 4 * spec.n() + 4) throw std::invalid_argument("symbol vector must have 4n+4 entries");
    Poly L(R);
    for (size_t i = 0; i < v.size(); ++i) L += Poly::var(R, int(i)) * Cq(v[i]);
    const int m = spec.order(j);
    Poly P = (m == 1) ? L : (L * L) * Cq(mpq_class(1, 2));

    const auto in_blades = blades(spec.dim(), spec.tau(j));
    const int nb = static_cast<int>(in_blades.size());
    const int cols = (spec.sigma(j) + 1) * nb;
    const int rows = static_cast<int>(spec.level_dim(j + 1));
    SymbolMatrix S{v, j, CMat(rows, cols)};
    FlatOperator D(spec, j);
    for (int a = 0; a <= spec.sigma(j); ++a)
        for (int bi = 0; bi < nb; ++bi) {
            SpinorField F = spec.zero_section(j);
            std::vector<ExtForm> slots = F.slots();
            slots[a] = ExtForm(R, spec.dim(), spec.tau(j)).add(in_blades[bi], P);
            auto col = section_coordinates(spec, j + 1, D(SpinorField(F.basis(), F.sigma(), slots)));
            for (int r = 0; r < rows; ++r) S.matrix(r, a * nb + bi) = col[r];
        }
    return S;
}

bool ExactnessResult::all_exact() const {
    for (bool b : exact_at)
        if (!b) return false;
    return products_zero;
}

ExactnessResult exactness(const ComplexSpec &spec, const std::vector<mpq_class> &v) {
    bool nonzero = false;
    for (auto &x : v) nonzero |= sgn(x) != 0;
    if (!nonzero) throw std::invalid_argument("exactness needs v != 0");
    ExactnessResult r;
    const int top = 2 * spec.n();
    std::vector<CMat> M;
    for (int j = 0; j <= top + 1; ++j) r.dims.push_back(spec.level_dim(j));
    for (int j = 0; j <= top; ++j) {
        M.push_back(symbol_at(spec, j, v).matrix);
        r.ranks.push_back(rank(M.back()));
    }
    for (int j = 0; j + 1 <= top; ++j)
        if (!(M[j + 1] * M[j]).is_zero()) r.products_zero = false;
    r.exact_at.push_back(r.ranks[0] == r.dims[0]);
    for (int j = 1; j <= top; ++j) r.exact_at.push_back(r.ranks[j - 1] + r.ranks[j] == r.dims[j]);
    r.exact_at.push_back(r.ranks[top] == r.dims[top + 1]);
    return r;
}

Report check_exactness(const ComplexSpec &spec, const std::vector<mpq_class> &v) {
    std::vector<std::string> vs;
    for (auto &x : v) vs.push_back(rational_str(x));
    Report rep("flat.symbol_exactness", {{"n", spec.n()}, {"k", spec.k()}, {"v", vs}});
    auto r = exactness(spec, v);
    rep.details["dims"] = r.dims;
    rep.details["ranks"] = r.ranks;
    rep.details["exact_at"] = r.exact_at;
    rep.details["products_zero"] = r.products_zero;
    if (!r.products_zero) rep.fail("symbol product nonzero");
    for (size_t j = 0; j < r.exact_at.size(); ++j)
        if (!r.exact_at[j]) rep.fail("not exact at level " + std::to_string(j));
    return rep;
}

// ---------------------------------------------------------------- randomized checks

Report verify_flat_composition(const ComplexSpec &spec, int trials, std::uint64_t seed, int max_degree) {
    Report rep("flat.composition", {{"n", spec.n()}, {"k", spec.k()}, {"trials", trials}, {"max_degree", max_degree}}, seed);
    int checked = 0;
    for (int j = 0; j + 1 <= 2 * spec.n(); ++j) {
        FlatOperator D0(spec, j), D1(spec, j + 1);
        for (int t = 0; t < trials; ++t) {
            Sampler smp(derive_seed(seed, std::uint64_t(j) * 100000 + t));
            auto sh = spec.shape(j);
            SpinorField F = smp.field(sh.basis, sh.sigma, spec.ring(), spec.dim(), sh.tau, max_degree);
            SpinorField G = D1(D0(F));
            ++checked;
            if (!G.is_zero()) rep.fail("j=" + std::to_string(j) + ": " + G.str());
        }
    }
    rep.details["checked"] = checked;
    return rep;
}

Report verify_tuple_equivalence(const ComplexSpec &spec, int trials, std::uint64_t seed, int max_degree) {
    Report rep("flat.tuple_equivalence", {{"n", spec.n()}, {"k", spec.k()}, {"trials", trials}, {"max_degree", max_degree}}, seed);
    int checked = 0;
    for (int j = 0; j <= 2 * spec.n(); ++j) {
        FlatOperator D(spec, j);
        FlatTupleOperator Dt(spec, j);
        for (int t = 0; t < trials; ++t) {
            Sampler smp(derive_seed(seed, std::uint64_t(j) * 100000 + t));
            auto sh = spec.shape(j);
            SpinorField F = smp.field(sh.basis, sh.sigma, spec.ring(), spec.dim(), sh.tau, max_degree);
            SpinorField viaTuple = pi_dot(spec, j + 1, Dt(pi_dot_inverse(spec, j, F)));
            SpinorField direct = D(F);
            ++checked;
            if (viaTuple != direct) rep.fail("j=" + std::to_string(j) + ": " + (viaTuple - direct).str());
        }
    }
    rep.details["checked"] = checked;
    return rep;
}

namespace {

std::vector<Monomial> monomials_of_degree(int nvars, int d) {
    std::vector<Monomial> out;
    Monomial m;
    std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == nvars - 1) {
            m.e[var] = static_cast<std::uint8_t>(left);
            out.push_back(m);
            m.e[var] = 0;
            return;
        }
        for (int e = left; e >= 0; --e) {
            m.e[var] = static_cast<std::uint8_t>(e);
            rec(var + 1, left - e);
        }
        m.e[var] = 0;
    };
    rec(0, d);
    return out;
}

} // namespace

Report verify_harmonic(const ComplexSpec &spec, int max_degree) {
    Report rep("flat.regular_is_harmonic", {{"n", spec.n()}, {"k", spec.k()}, {"max_degree", max_degree}});
    const RingPtr &R = spec.ring();
    const int nv = R->size();
    const int slots = spec.sigma(0) + 1;
    FlatOperator D(spec, 0);
    nlohmann::json dims = nlohmann::json::array();
    for (int d = 1; d <= max_degree; ++d) {
        auto monos = monomials_of_degree(nv, d);
        const int cols = slots * int(monos.size());
        // rows keyed by (slot, blade, monomial) of the output
        std::map<std::tuple<int, Blade, Monomial>, int> rowid;
        std::vector<std::vector<std::pair<int, Cq>>> colent(cols);
        for (int a = 0; a < slots; ++a)
            for (size_t mi = 0; mi < monos.size(); ++mi) {
                SpinorField F = spec.zero_section(0);
                auto s = F.slots();
                s[a] = ExtForm::scalar(Poly::monomial(R, monos[mi], Cq(1)), spec.dim());
                SpinorField G = D(SpinorField(F.basis(), F.sigma(), s));
                int c = a * int(monos.size()) + int(mi);
                for (int b = 0; b < G.slot_count(); ++b)
                    for (auto &[bl, p] : G.slot(b).components())
                        for (auto &[mm, cf] : p.terms()) {
                            auto key = std::make_tuple(b, bl, mm);
                            auto it = rowid.find(key);
                            int r = it == rowid.end() ? (rowid[key] = int(rowid.size())) : it->second;
                            colent[c].push_back({r, cf});
                        }
            }
        CMat M(int(rowid.size()), cols);
        for (int c = 0; c < cols; ++c)
            for (auto &[r, v] : colent[c]) M(r, c) += v;
        auto null = nullspace(M);
        dims.push_back(null.size());
        for (auto &vec : null) {
            for (int a = 0; a < slots; ++a) {
                Poly f(R);
                for (size_t mi = 0; mi < monos.size(); ++mi) {
                    const Cq &cf = vec[a * monos.size() + mi];
                    if (!cf.is_zero()) f += Poly::monomial(R, monos[mi], cf);
                }
                Poly lap(R);
                for (int i = 0; i < nv; ++i) lap += f.diff(i).diff(i);
                if (!lap.is_zero()) rep.fail("degree " + std::to_string(d) + " slot " + std::to_string(a) + ": " + lap.str());
            }
        }
    }
    rep.details["kernel_dims"] = dims;
    return rep;
}

Report verify_flat_d(const ComplexSpec &spec, int trials, std::uint64_t seed) {
    Report rep("flat.d_algebra", {{"n", spec.n()}, {"trials", trials}}, seed);
    const NablaMatrix &nb = spec.nabla();
    const int m = spec.dim();
    for (int t = 0; t < trials; ++t) {
        Sampler smp(derive_seed(seed, t));
        int p = smp.uniform(0, m - 2), q = smp.uniform(0, m - 1 - p);
        ExtForm F = smp.form(spec.ring(), m, p, 3), G = smp.form(spec.ring(), m, q, 3);
        for (Primed A : kPrimed) {
            ExtForm lhs = d_upper(nb, A, wedge(F, G));
            ExtForm rhs = wedge(d_upper(nb, A, F), G);
            ExtForm r2 = wedge(F, d_upper(nb, A, G));
            rhs += (p % 2 ? -r2 : r2);
            if (lhs != rhs) rep.fail("Leibniz: " + (lhs - rhs).str());
            ExtForm sq = d_upper(nb, A, d_upper(nb, A, F));
            if (!sq.is_zero()) rep.fail("d^2: " + sq.str());
        }
        ExtForm ac = d_upper(nb, Primed::P0, d_upper(nb, Primed::P1, F)) + d_upper(nb, Primed::P1, d_upper(nb, Primed::P0, F));
        if (!ac.is_zero()) rep.fail("anticommutator: " + ac.str());
    }
    return rep;
}

} // namespace cfx
