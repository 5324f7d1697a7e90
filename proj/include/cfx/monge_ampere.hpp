#pragma once

#include "cfx/boundary.hpp"

#include <complex>

namespace cfx {

// ---------------------------------------------------------------- △ and wedge powers

// △u = 𝔡_{0'}𝔡_{1'}u; throws PreconditionError off right type
ExtForm triangle(const Poly &u, const TangentFrame &fr);
// same thing written out as Σ_{A,B} Z_{A0'}Z_{B1'}u ω^A∧ω^B
ExtForm triangle_expanded(const Poly &u, const TangentFrame &fr);
// △u_1∧…∧△u_p; p > n gives the zero form and a notice
ExtForm ma_power(const std::vector<Poly> &us, const TangentFrame &fr, std::string *notice = nullptr);

// β_n = Σ ω^{2l}∧ω^{2l+1} and its powers; Ω_{2n} is volume_form(ring, 2n)
ExtForm beta_form(const RingPtr &ring, int n);
ExtForm beta_power(const RingPtr &ring, int n, int p);
// f with F = f Ω_{2n}; throws unless F has top degree
Poly top_coefficient(const ExtForm &F);

// the four right-hand sides of the key identity against △u_1∧…∧△u_n
Report key_identity_check(const std::vector<Poly> &us, const TangentFrame &fr);

// ---------------------------------------------------------------- integration

// axis-aligned box in (x, t); resolution = Gauss points per axis (raised when the degree needs more)
struct Region {
    std::vector<mpq_class> lo, hi;
    int resolution = 4;

    static Region cube(int dims, const mpq_class &lo, const mpq_class &hi, int resolution = 4);
    int dims() const { return int(lo.size()); }
    mpq_class volume() const;
    void validate() const;
    bool contains_strictly(const Region &inner) const;
    nlohmann::json to_json() const;
    static Region from_json(const nlohmann::json &j);
};

// Gauss–Legendre nodes and weights on [-1, 1]
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule &gauss_legendre(int points);

Cq integrate_poly_exact(const Poly &f, const Region &r);
std::complex<double> integrate_poly(const Poly &f, const Region &r);
// ∫F := ∫f dV for F = fΩ_{2n}
Cq integrate_top_exact(const ExtForm &F, const Region &r);
std::complex<double> integrate_top(const ExtForm &F, const Region &r);
// face x_var = value of the box, surface measure
std::complex<double> integrate_face(const Poly &f, const Region &r, int var, const mpq_class &value);

// T = Σ T_A ω^Â with ω^Â = ω^A ⌋ Ω_{2n}
std::vector<Poly> hat_components(const ExtForm &T);
ExtForm from_hat_components(const std::vector<Poly> &TA, int dim);

// ∫h𝔡^{A'}T = −∫𝔡^{A'}h∧T + Σ_A ∫_∂ h T_A Z_A^{A'}ρ dS on a box, for both A'
Report stokes_check(const Poly &h, const ExtForm &T, const Region &r, const TangentFrame &fr);

// ---------------------------------------------------------------- positivity

// a right H-linear map H^n → H, q ↦ Σ a_l q_l; a_l = (a0, a1, a2, a3) acting by a0 + Σ a_β J^β
using QuaternionRow = std::vector<std::array<mpq_class, 4>>;
// complex 2×2 matrix of a quaternion on the unprimed index
std::array<std::array<Cq, 2>, 2> quaternion_matrix(const std::array<mpq_class, 4> &a);
// η^*ω̃^B as a constant 1-form on C^{2n}
ExtForm pullback_omega(const RingPtr &ring, const QuaternionRow &eta, int B);

struct PositiveConeSample {
    std::vector<QuaternionRow> generators;
    ExtForm form; // η_1^*ω̃^0∧η_1^*ω̃^1∧…
    nlohmann::json to_json() const;
};
PositiveConeSample elementary_strongly_positive(const RingPtr &ring, int n, const std::vector<QuaternionRow> &maps);
PositiveConeSample random_strongly_positive(const RingPtr &ring, int n, int p, Sampler &s);

// wedge a constant 2p-form against sampled strongly positive (2n−2p)-forms; details.verdict is
// "positive-on-samples" or "not-positive" (with witness). Sampling is a semi-decision, not a proof.
Report positivity_check(const ExtForm &F, int samples, std::uint64_t seed);

// Σ_i |η_i(x)|² for random right H-linear η_i; plurisubharmonic on every right-type group
Poly random_psh_quadratic(const RingPtr &ring, int n, Sampler &s, int terms = 2);

// ---------------------------------------------------------------- mass estimates

// χ = c Π_i (1 − s_i²)², s_i the affine coordinate of K mapped to [-1, 1]; c makes χ ≥ 1 on L
struct Bump {
    Region K;
    mpq_class scale;
    static Bump for_regions(const Region &K, const Region &L);
    Poly expand(const RingPtr &ring) const; // only for small rings; degree 4·dims
};

// ∫_K χ△u_1∧R, −∫𝔡_{0'}χ∧𝔡_{1'}u_1∧R, −∫u_1𝔡_{1'}𝔡_{0'}χ∧R, ∫u_1△χ∧R with R = △u_2∧…∧β^{n−p},
// plus ‖△u_1∧…∧△u_p‖_L and the sampled sup norms over K
Report cln_experiment(const std::vector<Poly> &us, const TangentFrame &fr, const Region &K, const Region &L, int sup_grid = 3);

// masses ∫_L(△u_j)^n for u_j = q + (1/j)Σx², j = 1..jmax
Report ma_convergence(const Poly &q, const TangentFrame &fr, const Region &L, int jmax = 64, double threshold = 1e-4);

} // namespace cfx
