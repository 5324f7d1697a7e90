#pragma once

#include "cfx/linalg.hpp"
#include "cfx/report.hpp"
#include "cfx/spinor.hpp"

#include <functional>

namespace cfx {

// ∇_{ȦA'} on H^{n+1}: (2n+2)×2 constant-coefficient vector fields in x1..x_{4n+4}
class NablaMatrix {
public:
    NablaMatrix(int n, RingPtr ring);

    int n() const { return n_; }
    int rows() const { return 2 * n_ + 2; }
    const RingPtr &ring() const { return ring_; }
    const VectorField &lower(int row, Primed A) const { return lower_.at(row)[o(A)]; }
    const VectorField &upper(int row, Primed A) const { return upper_.at(row)[o(A)]; }
    // column of raised entries, one field per row
    std::vector<VectorField> upper_column(Primed A) const;

private:
    int n_;
    RingPtr ring_;
    std::vector<std::array<VectorField, 2>> lower_, upper_;
};

struct LevelShape {
    int sigma, tau;
    Basis basis;
};

class ComplexSpec {
public:
    ComplexSpec(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    int dim() const { return 2 * n_ + 2; }   // C^{2n+2}
    int levels() const { return 2 * n_ + 2; } // j = 0..2n+1
    int sigma(int j) const;
    int tau(int j) const;
    Basis basis(int j) const { return j <= k_ ? Basis::S : Basis::TildeS; }
    LevelShape shape(int j) const { return {sigma(j), tau(j), basis(j)}; }
    // dim 𝒱_j = (σ_j + 1)·C(2n+2, τ_j)
    long level_dim(int j) const;
    // order of 𝒟_j as a differential operator
    int order(int j) const { return j == k_ ? 2 : 1; }

    const RingPtr &ring() const { return ring_; }
    const NablaMatrix &nabla() const { return *nabla_; }

    SpinorField zero_section(int j) const;

private:
    int n_, k_;
    RingPtr ring_;
    std::shared_ptr<NablaMatrix> nabla_;
};

// d^{A'} f = ∇^{A'}_Ȧ f_𝐀 ω^Ȧ∧ω^𝐀
ExtForm d_upper(const NablaMatrix &nabla, Primed A, const ExtForm &f);
// d_{A'} = d^{B'} ε_{B'A'}: d_{0'} = -d^{1'}, d_{1'} = d^{0'}
ExtForm d_lower(const NablaMatrix &nabla, Primed A, const ExtForm &f);

// primed exterior operator used to assemble the spinor-level operators (flat d or tangential 𝔡)
using PrimedOp = std::function<ExtForm(Primed, const ExtForm &)>;

// ∂_{A'} D^{A'} on S basis: out_b = D^{0'}F_b + D^{1'}F_{b+1}
SpinorField contract_partial(const PrimedOp &D, const SpinorField &F);
// s_{A'} D^{A'} on tilde basis: out_c = D^{0'}F_c + D^{1'}F_{c-1}
SpinorField contract_s(const PrimedOp &D, const SpinorField &F);

class FlatOperator {
public:
    FlatOperator(const ComplexSpec &spec, int j);
    SpinorField operator()(const SpinorField &F) const;
    int level() const { return j_; }

private:
    const ComplexSpec *spec_;
    int j_;
};

FlatOperator make_Dj(const ComplexSpec &spec, int j);

// tuple realization; input/output in Basis::Tuple (lower indices for j<k, upper for j>k)
class FlatTupleOperator {
public:
    FlatTupleOperator(const ComplexSpec &spec, int j);
    SpinorField operator()(const SpinorField &F) const;

private:
    const ComplexSpec *spec_;
    int j_;
};

FlatTupleOperator make_Dj_tuple(const ComplexSpec &spec, int j);

// Π̇_j : tuple -> native basis of level j, and its inverse
SpinorField pi_dot(const ComplexSpec &spec, int j, const SpinorField &tuple);
SpinorField pi_dot_inverse(const ComplexSpec &spec, int j, const SpinorField &native);

struct SymbolMatrix {
    std::vector<mpq_class> v;
    int j;
    CMat matrix; // rows: 𝒱_{j+1} coordinates, cols: 𝒱_j coordinates
};

// coordinates of a constant section: slot-major, blades in index order
std::vector<Cq> section_coordinates(const ComplexSpec &spec, int j, const SpinorField &F);

SymbolMatrix symbol_at(const ComplexSpec &spec, int j, const std::vector<mpq_class> &v);

struct ExactnessResult {
    std::vector<long> dims;
    std::vector<int> ranks;
    std::vector<bool> exact_at; // per level 0..2n+1
    bool products_zero = true;
    bool all_exact() const;
};

ExactnessResult exactness(const ComplexSpec &spec, const std::vector<mpq_class> &v);
Report check_exactness(const ComplexSpec &spec, const std::vector<mpq_class> &v);

// random trials of 𝒟_{j+1}∘𝒟_j = 0
Report verify_flat_composition(const ComplexSpec &spec, int trials, std::uint64_t seed, int max_degree = 3);
// Π̇_{j+1}∘𝒟^{tuple}_j = 𝒟_j∘Π̇_j
Report verify_tuple_equivalence(const ComplexSpec &spec, int trials, std::uint64_t seed, int max_degree = 3);
// 𝒟_0-closed homogeneous sections of degree <= max_degree (exact nullspace) are harmonic
Report verify_harmonic(const ComplexSpec &spec, int max_degree);
// Leibniz and anticommutation of d^{A'}
Report verify_flat_d(const ComplexSpec &spec, int trials, std::uint64_t seed);

} // namespace cfx
