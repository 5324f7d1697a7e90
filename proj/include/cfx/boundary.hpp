#pragma once

#include "cfx/flat_complex.hpp"
#include "cfx/group.hpp"

#include <optional>

namespace cfx {

// Tangential frame of a rigid quadratic hypersurface, written in group coordinates (x_1..x_{4n}, t_1..t_3).
class TangentFrame {
public:
    explicit TangentFrame(GroupSpec g, int degree_cap = kDefaultDegreeCap);

    const GroupSpec &group() const { return g_; }
    int n() const { return g_.n(); }
    int dim() const { return 2 * g_.n(); }
    const RingPtr &ring() const { return ring_; }
    const std::vector<VectorField> &X() const { return X_; }

    // Z_A^{A'} (raised) and Z_{AA'} (lowered)
    const VectorField &Z(int A, Primed Ap) const { return Zu_.at(A)[o(Ap)]; }
    const VectorField &Z_lower(int A, Primed Ap) const { return Zl_.at(A)[o(Ap)]; }
    std::vector<VectorField> Z_column(Primed Ap) const;

    // 𝐓^{A'B'} and 𝐓_{B'}^{A'}
    const VectorField &T_upper(Primed A, Primed B) const { return Tu_[o(A)][o(B)]; }
    const VectorField &T_mixed(Primed B, Primed A) const { return Tm_[o(B)][o(A)]; }

    // ℰ as a constant 2-form on C^{2n}, and its matrix ℰ_{AB}
    const ExtForm &E() const { return E_; }
    const CMat &E_matrix() const { return Em_; }
    bool right_type() const { return E_.is_zero(); }

private:
    GroupSpec g_;
    RingPtr ring_;
    std::vector<VectorField> X_;
    std::vector<std::array<VectorField, 2>> Zu_, Zl_;
    std::array<std::array<VectorField, 2>, 2> Tu_, Tm_;
    ExtForm E_;
    CMat Em_;
};

// 𝔡^{A'} f = Σ Z_A^{A'} f_𝐀 ω^A∧ω^𝐀
ExtForm frak_d(const TangentFrame &fr, Primed A, const ExtForm &f);
// 𝔡_{0'} = −𝔡^{1'}, 𝔡_{1'} = 𝔡^{0'}
ExtForm frak_d_lower(const TangentFrame &fr, Primed A, const ExtForm &f);

struct CurvatureForm {
    ExtForm E0;                     // ℰ_0 (= ℰ in the rigid case)
    std::array<ExtForm, 2> E_primed; // ℰ_{A'}; zero in the rigid case
    ExtForm E01;                    // ℰ_{0'1'}; zero in the rigid case
    bool vanishes() const { return E0.is_zero(); }
};
CurvatureForm curvature(const TangentFrame &fr);

// The same objects computed in ambient H^{n+1} from ϱ = x_{4n+1} − φ with the flat ∇.
struct AmbientFrame {
    RingPtr ring;
    std::shared_ptr<NablaMatrix> nabla;
    Poly rho;
    std::vector<std::array<VectorField, 2>> Z; // Z_A^{A'} = ∇_A^{A'} − n_{AB'} 𝐍_{B'}^{A'}
    std::vector<std::array<Poly, 2>> n;        // n_{AB'}
    std::array<std::array<Poly, 2>, 2> N_rho;  // 𝐍_{B'C'}ϱ
    std::array<ExtForm, 2> Omega_upper, Omega_lower;
    ExtForm E_flat; // −d^{0'}d^{1'}ϱ on C^{2n+2}
};
AmbientFrame ambient_frame(const GroupSpec &g);
// Zϱ = 0, 𝐍ϱ = Id, ambient Z ↔ X-field Z, ℰ from ∇ ↔ closed form, lowered Ω
Report verify_tangent_frame(const GroupSpec &g);

// level table of the boundary complex; levels 0..2n−1, operators 0..2n−2
class BoundarySpec {
public:
    BoundarySpec(const TangentFrame &fr, int k);

    const TangentFrame &frame() const { return *fr_; }
    int n() const { return fr_->n(); }
    int k() const { return k_; }
    int dim() const { return fr_->dim(); }
    int top_level() const { return 2 * n() - 1; }
    int sigma(int j) const;
    int tau(int j) const;
    LevelShape first(int j) const;
    std::optional<LevelShape> second(int j) const; // empty at j = 0 when k ≥ 1

private:
    const TangentFrame *fr_;
    int k_;
};

struct BoundaryField {
    int level;
    SpinorField F1;
    std::optional<SpinorField> F2;

    bool is_zero() const { return F1.is_zero() && (!F2 || F2->is_zero()); }
    std::string str() const;
    nlohmann::json to_json() const;
};

BoundaryField zero_boundary_field(const BoundarySpec &spec, int j);
BoundaryField random_boundary_field(const BoundarySpec &spec, int j, Sampler &s, int max_degree, bool second_slot = true);

BoundaryField boundary_Dj(const BoundarySpec &spec, int j, const BoundaryField &F);
// first-slot operators of the right-type subcomplex (ℰ-free)
SpinorField subcomplex_Dj(const BoundarySpec &spec, int j, const SpinorField &F1);

// 𝒟_{j+1}∘𝒟_j = 0 on random fields, every j
Report verify_boundary_composition(const BoundarySpec &spec, int trials, std::uint64_t seed, int max_degree = 3);
Report verify_subcomplex_composition(const BoundarySpec &spec, int trials, std::uint64_t seed, int max_degree = 3);

// 𝔡^{(A'}𝔡^{B')}f against ±ℰ∧𝐓^{(A'B')}f; details record which sign holds.
// pass = the sign derived by the engine (+), and on right-type groups all residuals must vanish.
Report verify_anticommute(const TangentFrame &fr, int trials, std::uint64_t seed, int max_degree = 3);
// Z_{[A}^{(A'}Z_{B]}^{B')} against ±ℰ_{AB}𝐓^{(A'B')}, as vector fields
Report bracket_identity(const TangentFrame &fr);
// [Z_{2l}^{0'},Z_{2l+1}^{1'}] + [Z_{2l}^{1'},Z_{2l+1}^{0'}] = 0; holds on right-type groups (equals 4ℰ_{2l,2l+1}𝐓^{(0'1')} in general)
Report verify_XX_identity(const TangentFrame &fr);

// 𝒟_0^{(1)}: Z_A^{A'} f_{b+o(A')} 𝐒^b_{k−1} ω^A, and its formal adjoint
SpinorField D0_first(const TangentFrame &fr, int k, const SpinorField &f);
SpinorField D0_first_adjoint(const TangentFrame &fr, int k, const SpinorField &g);
// 𝒟_0^{(1)*}𝒟_0^{(1)} = diag(△_b, 2△_b, …, 2△_b, △_b) on random sections
Report hodge_diag(const TangentFrame &fr, int k, int trials, std::uint64_t seed, int max_degree = 3);
// △_b = −Σ X_a²
Poly sublaplacian(const TangentFrame &fr, const Poly &u);

} // namespace cfx
