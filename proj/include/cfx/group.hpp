#pragma once

#include "cfx/linalg.hpp"
#include "cfx/poly.hpp"
#include "cfx/report.hpp"

#include <array>
#include <optional>

namespace cfx {

class Sampler;

// The two commuting sp(1) triples inside so(4).
struct QuaternionBasis {
    std::array<QMat, 3> I, J;
};
const QuaternionBasis &quaternion_basis();
QMat identity4();

// Step-two group attached to φ(x) = xᵀ𝕊x. B^β = 𝕊𝕀^β + 𝕀^β𝕊.
class GroupSpec {
public:
    explicit GroupSpec(QMat S, std::string name = "");

    int n() const { return n_; }
    const QMat &S() const { return S_; }
    const QMat &B(int beta) const { return B_.at(beta); } // beta = 0,1,2
    const std::string &name() const { return name_; }

    // 4×4 block (l,m), 0-based
    static QMat block(const QMat &M, int l, int m);
    QMat S_block(int l, int m) const { return block(S_, l, m); }
    QMat B_block(int beta, int l, int m) const { return block(B_.at(beta), l, m); }

    nlohmann::json to_json() const;
    // {"n":.., "S":[[..]]} or {"phi": <poly json>} or {"name": "rightQH", "n": ..}
    static GroupSpec from_json(const nlohmann::json &j);

private:
    int n_;
    QMat S_;
    std::array<QMat, 3> B_;
    std::string name_;
};

// 𝕀^β = diag(I^β, ..., I^β)
QMat big_I(int n, int beta);

GroupSpec group_from_phi(const Poly &phi);
// φ = Σ_l (−3x²_{4l+1} + x²_{4l+2} + x²_{4l+3} + x²_{4l+4})
Poly rightQH_phi(int n, RingPtr ring = nullptr);
GroupSpec rightQH(int n);
// φ = |x|²
GroupSpec leftQH(int n);
GroupSpec abelian(int n);
GroupSpec named_group(const std::string &name, int n);

// the entrywise table for B^1 of one block, transcribed from the hand computation
QMat explicit_B1_block(const QMat &Sblk);
// coefficients (J^1, J^2, J^3, I_4) of B^β_{lm} when the block is right type, read off 𝕊
std::array<mpq_class, 4> right_type_coefficients(const QMat &Sblk, int beta);

struct BlockCertificate {
    int l, m, beta;
    bool in_span;
    std::array<mpq_class, 4> coeffs; // least-norm J^1,J^2,J^3,I_4 part (exact projection)
    QMat residual;                   // B - projection; zero iff in span
    nlohmann::json to_json() const;
};

struct RightTypeResult {
    bool right_type = true;
    std::vector<BlockCertificate> blocks; // every (l,m,β)
    std::vector<BlockCertificate> offending() const;
};

RightTypeResult is_right_type(const GroupSpec &g);
// the four linear conditions on each block of 𝕊
bool is_right_type_via_E(const GroupSpec &g);

// ℰ_{AB}, A,B = 0..2n−1, antisymmetric, from the closed-form block expressions
CMat curvature_matrix(const GroupSpec &g);

// X_b = ∂_{x_b} + 2 Σ_β Σ_a (𝕊𝕀^β)_{ab} x_a ∂_{t_β}; ring must be group_ring(n)
std::vector<VectorField> horizontal_fields(const GroupSpec &g, RingPtr ring = nullptr);
Report verify_brackets(const GroupSpec &g);

bool is_stratified(const GroupSpec &g);

// det(Σ λ_β B^β) as a homogeneous polynomial in l1,l2,l3
Poly condition_H_determinant(const GroupSpec &g);
// verdict in details["verdict"]: "false" | "inconclusive" | "sampled-true"
Report check_condition_H(const GroupSpec &g, bool exact = true, int grid = 8);

// random test matrices
QMat random_symmetric(Sampler &s, int n);
// random 𝕊 satisfying the four block conditions
QMat random_right_type(Sampler &s, int n);

} // namespace cfx
