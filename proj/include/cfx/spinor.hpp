#pragma once

#include "cfx/ext_form.hpp"

#include <array>
#include <optional>
#include <utility>

namespace cfx {

// primed index 0' / 1'
enum class Primed : int { P0 = 0, P1 = 1 };
inline int o(Primed p) { return static_cast<int>(p); }
constexpr std::array<Primed, 2> kPrimed{Primed::P0, Primed::P1};

struct EpsilonTable {
    std::array<std::array<mpq_class, 2>, 2> lower; // ε_{A'B'}
    std::array<std::array<mpq_class, 2>, 2> upper; // ε^{A'B'}
};
const EpsilonTable &epsilon();

// f^{A'} = f_{B'} ε^{B'A'}  ->  (f_{1'}, -f_{0'})
template <class T> std::pair<T, T> raise_primed(const std::pair<T, T> &f) {
    return {f.second, -f.first};
}
// inverse: f_{A'} = f^{B'} ε_{B'A'}  ->  (-f^{1'}, f^{0'})
template <class T> std::pair<T, T> lower_primed(const std::pair<T, T> &f) {
    return {-f.second, f.first};
}

struct SymBasisElem {
    int a, sigma;
    bool operator==(const SymBasisElem &) const = default;
};
// ∂_{A'} S^a_σ ; nullopt means zero
std::optional<SymBasisElem> sym_basis_derivative(int a, int sigma, Primed A);
// s_{A'} ~S^a_σ
SymBasisElem tilde_basis_multiply(int a, int sigma, Primed A);

mpq_class binomial(int n, int k);
mpq_class factorial(int n);

enum class Basis { S, TildeS, Tuple };
const char *basis_name(Basis b);

// Section of ⊙^σ C² ⊗ ∧^τ C^m in one of three bases.
//  S/TildeS: slot a = coefficient of S^a_σ (resp. ~S^a_σ), a = 0..σ.
//  Tuple:    slot mask = component with primed multi-index whose i-th entry is 1' iff bit i set.
class SpinorField {
public:
    SpinorField(Basis basis, int sigma, std::vector<ExtForm> slots);
    static SpinorField zero(Basis basis, int sigma, RingPtr ring, int dim, int tau);

    Basis basis() const { return basis_; }
    int sigma() const { return sigma_; }
    int slot_count() const { return static_cast<int>(slots_.size()); }
    const std::vector<ExtForm> &slots() const { return slots_; }
    const ExtForm &slot(int i) const { return slots_.at(i); }
    const RingPtr &ring() const { return slots_.front().ring(); }
    int dim() const { return slots_.front().dim(); }
    int tau() const { return slots_.front().degree(); }
    bool is_zero() const;

    SpinorField operator-() const;
    SpinorField &operator+=(const SpinorField &o);
    SpinorField &operator-=(const SpinorField &o);
    friend SpinorField operator+(SpinorField a, const SpinorField &b) { return a += b; }
    friend SpinorField operator-(SpinorField a, const SpinorField &b) { return a -= b; }
    friend bool operator==(const SpinorField &a, const SpinorField &b);

    // slotwise form map (result degree may differ)
    SpinorField map(const std::function<ExtForm(const ExtForm &)> &fn) const;

    std::string str() const;
    nlohmann::json to_json() const;

private:
    void check(const SpinorField &o) const;

    Basis basis_;
    int sigma_;
    std::vector<ExtForm> slots_;
};

// ∂_{A'} on the S basis: (∂_{0'}F)_b = F_b, (∂_{1'}F)_b = F_{b+1}
SpinorField partial(Primed A, const SpinorField &F);
// s_{A'} on the tilde basis: (s_{0'}F)_c = F_c, (s_{1'}F)_c = F_{c-1}
SpinorField multiply_s(Primed A, const SpinorField &F);
// tuple versions: lower-index contraction f_{A'𝐁'} and symmetrized product
SpinorField partial_tuple(Primed A, const SpinorField &F);
SpinorField multiply_s_tuple(Primed A, const SpinorField &F);

// basis conversions
SpinorField s_to_tuple(const SpinorField &F);
SpinorField tuple_to_s(const SpinorField &F);
SpinorField tilde_to_tuple(const SpinorField &F);
SpinorField tuple_to_tilde(const SpinorField &F);
SpinorField s_to_tilde(const SpinorField &F);
SpinorField tilde_to_s(const SpinorField &F);

// average over all σ! permutations of primed positions
SpinorField symmetrize(const SpinorField &F);
// for F already symmetric in positions 2..σ: (1/σ) Σ_i (move position i to the front)
SpinorField symmetrize_tail_symmetric(const SpinorField &F);
bool is_symmetric(const SpinorField &F);

} // namespace cfx
