#include "cfx/spinor.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace cfx {

const EpsilonTable &epsilon() {
    static const EpsilonTable t{{{{mpq_class(0), mpq_class(1)}, {mpq_class(-1), mpq_class(0)}}},
                                {{{mpq_class(0), mpq_class(-1)}, {mpq_class(1), mpq_class(0)}}}};
    return t;
}

std::optional<SymBasisElem> sym_basis_derivative(int a, int sigma, Primed A) {
    if (sigma < 0 || a < 0 || a > sigma) throw std::out_of_range("basis index a out of range 0..sigma");
    int na = (A == Primed::P0) ? a : a - 1;
    int ns = sigma - 1;
    if (ns < 0 || na < 0 || na > ns) return std::nullopt;
    return SymBasisElem{na, ns};
}

SymBasisElem tilde_basis_multiply(int a, int sigma, Primed A) {
    if (sigma < 0 || a < 0 || a > sigma) throw std::out_of_range("basis index a out of range 0..sigma");
    return SymBasisElem{A == Primed::P0 ? a : a + 1, sigma + 1};
}

mpq_class factorial(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return mpq_class(r);
}

mpq_class binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return mpq_class(r);
}

const char *basis_name(Basis b) {
    switch (b) {
    case Basis::S: return "S";
    case Basis::TildeS: return "tildeS";
    case Basis::Tuple: return "tuple";
    }
    return "?";
}

// ---------------------------------------------------------------- SpinorField

SpinorField::SpinorField(Basis basis, int sigma, std::vector<ExtForm> slots)
    : basis_(basis), sigma_(sigma), slots_(std::move(slots)) {
    if (sigma < 0) throw std::invalid_argument("negative symmetric degree");
    size_t want = basis == Basis::Tuple ? (size_t(1) << sigma) : size_t(sigma + 1);
    if (slots_.size() != want) throw std::invalid_argument("slot count does not match basis and sigma");
    for (auto &s : slots_)
        if (s.dim() != slots_[0].dim() || s.degree() != slots_[0].degree())
            throw std::invalid_argument("slots of different shape");
}

SpinorField SpinorField::zero(Basis basis, int sigma, RingPtr ring, int dim, int tau) {
    size_t cnt = basis == Basis::Tuple ? (size_t(1) << sigma) : size_t(sigma + 1);
    return SpinorField(basis, sigma, std::vector<ExtForm>(cnt, ExtForm(ring, dim, tau)));
}

bool SpinorField::is_zero() const {
    return std::all_of(slots_.begin(), slots_.end(), [](const ExtForm &f) { return f.is_zero(); });
}

void SpinorField::check(const SpinorField &o) const {
    if (basis_ != o.basis_ || sigma_ != o.sigma_) throw std::invalid_argument("spinor fields in different spaces");
}

SpinorField SpinorField::operator-() const {
    auto r = *this;
    for (auto &s : r.slots_) s = -s;
    return r;
}

SpinorField &SpinorField::operator+=(const SpinorField &o) {
    check(o);
    for (size_t i = 0; i < slots_.size(); ++i) slots_[i] += o.slots_[i];
    return *this;
}

SpinorField &SpinorField::operator-=(const SpinorField &o) {
    check(o);
    for (size_t i = 0; i < slots_.size(); ++i) slots_[i] -= o.slots_[i];
    return *this;
}

bool operator==(const SpinorField &a, const SpinorField &b) {
    return a.basis_ == b.basis_ && a.sigma_ == b.sigma_ && a.slots_ == b.slots_;
}

SpinorField SpinorField::map(const std::function<ExtForm(const ExtForm &)> &fn) const {
    std::vector<ExtForm> out;
    out.reserve(slots_.size());
    for (auto &s : slots_) out.push_back(fn(s));
    return SpinorField(basis_, sigma_, std::move(out));
}

std::string SpinorField::str() const {
    std::ostringstream os;
    os << basis_name(basis_) << "[sigma=" << sigma_ << "]{";
    for (size_t i = 0; i < slots_.size(); ++i) {
        if (i) os << "; ";
        os << i << ": " << slots_[i].str();
    }
    os << "}";
    return os.str();
}

nlohmann::json SpinorField::to_json() const {
    nlohmann::json j;
    j["basis"] = basis_name(basis_);
    j["sigma"] = sigma_;
    auto s = nlohmann::json::array();
    for (auto &f : slots_) s.push_back(f.to_json());
    j["slots"] = s;
    return j;
}

// ---------------------------------------------------------------- basis operators

namespace {

void want(const SpinorField &F, Basis b, const char *what) {
    if (F.basis() != b) throw std::invalid_argument(std::string(what) + ": wrong basis " + basis_name(F.basis()));
}

ExtForm scaled(const ExtForm &f, const mpq_class &q) { return f * Cq(q); }

// remove position i from a multi-index mask
unsigned drop_bit(unsigned m, int i) {
    unsigned lo = m & ((1u << i) - 1);
    unsigned hi = m >> (i + 1);
    return lo | (hi << i);
}

unsigned canonical_mask(int a) { return (1u << a) - 1; }

} // namespace

SpinorField partial(Primed A, const SpinorField &F) {
    want(F, Basis::S, "partial");
    const int s = F.sigma();
    if (s == 0) throw std::invalid_argument("partial: sigma = 0");
    std::vector<ExtForm> out;
    for (int b = 0; b <= s - 1; ++b) out.push_back(F.slot(A == Primed::P0 ? b : b + 1));
    return SpinorField(Basis::S, s - 1, std::move(out));
}

SpinorField multiply_s(Primed A, const SpinorField &F) {
    want(F, Basis::TildeS, "multiply_s");
    const int s = F.sigma();
    ExtForm z(F.ring(), F.dim(), F.tau());
    std::vector<ExtForm> out;
    for (int c = 0; c <= s + 1; ++c) {
        int src = (A == Primed::P0) ? c : c - 1;
        out.push_back(src >= 0 && src <= s ? F.slot(src) : z);
    }
    return SpinorField(Basis::TildeS, s + 1, std::move(out));
}

SpinorField partial_tuple(Primed A, const SpinorField &F) {
    want(F, Basis::Tuple, "partial_tuple");
    const int s = F.sigma();
    if (s == 0) throw std::invalid_argument("partial_tuple: sigma = 0");
    std::vector<ExtForm> out;
    for (unsigned m = 0; m < (1u << (s - 1)); ++m) out.push_back(F.slot(unsigned(o(A)) | (m << 1)));
    return SpinorField(Basis::Tuple, s - 1, std::move(out));
}

SpinorField multiply_s_tuple(Primed A, const SpinorField &F) {
    want(F, Basis::Tuple, "multiply_s_tuple");
    const int s = F.sigma();
    mpq_class w(1, s + 1);
    std::vector<ExtForm> out;
    for (unsigned M = 0; M < (1u << (s + 1)); ++M) {
        ExtForm acc(F.ring(), F.dim(), F.tau());
        for (int i = 0; i <= s; ++i)
            if (int((M >> i) & 1) == o(A)) acc += F.slot(drop_bit(M, i));
        out.push_back(scaled(acc, w));
    }
    return SpinorField(Basis::Tuple, s + 1, std::move(out));
}

SpinorField s_to_tuple(const SpinorField &F) {
    want(F, Basis::S, "s_to_tuple");
    std::vector<ExtForm> out;
    for (unsigned m = 0; m < (1u << F.sigma()); ++m) out.push_back(F.slot(std::popcount(m)));
    return SpinorField(Basis::Tuple, F.sigma(), std::move(out));
}

SpinorField tuple_to_s(const SpinorField &F) {
    want(F, Basis::Tuple, "tuple_to_s");
    if (!is_symmetric(F)) throw std::invalid_argument("tuple_to_s: input not symmetric");
    std::vector<ExtForm> out;
    for (int a = 0; a <= F.sigma(); ++a) out.push_back(F.slot(canonical_mask(a)));
    return SpinorField(Basis::S, F.sigma(), std::move(out));
}

SpinorField tilde_to_tuple(const SpinorField &F) {
    want(F, Basis::TildeS, "tilde_to_tuple");
    const int s = F.sigma();
    std::vector<ExtForm> out;
    for (unsigned m = 0; m < (1u << s); ++m) {
        int a = std::popcount(m);
        out.push_back(scaled(F.slot(a), 1 / binomial(s, a)));
    }
    return SpinorField(Basis::Tuple, s, std::move(out));
}

SpinorField tuple_to_tilde(const SpinorField &F) {
    want(F, Basis::Tuple, "tuple_to_tilde");
    if (!is_symmetric(F)) throw std::invalid_argument("tuple_to_tilde: input not symmetric");
    const int s = F.sigma();
    std::vector<ExtForm> out;
    for (int a = 0; a <= s; ++a) out.push_back(scaled(F.slot(canonical_mask(a)), binomial(s, a)));
    return SpinorField(Basis::TildeS, s, std::move(out));
}

// ~S^a = (-1)^{σ-a} a!(σ-a)! S^{σ-a}
SpinorField s_to_tilde(const SpinorField &F) {
    want(F, Basis::S, "s_to_tilde");
    const int s = F.sigma();
    std::vector<ExtForm> out;
    for (int a = 0; a <= s; ++a) {
        mpq_class w = 1 / (factorial(s - a) * factorial(a));
        if ((s - a) & 1) w = -w;
        out.push_back(scaled(F.slot(s - a), w));
    }
    return SpinorField(Basis::TildeS, s, std::move(out));
}

SpinorField tilde_to_s(const SpinorField &F) {
    want(F, Basis::TildeS, "tilde_to_s");
    const int s = F.sigma();
    std::vector<ExtForm> out;
    for (int b = 0; b <= s; ++b) {
        mpq_class w = factorial(s - b) * factorial(b);
        if (b & 1) w = -w;
        out.push_back(scaled(F.slot(s - b), w));
    }
    return SpinorField(Basis::S, s, std::move(out));
}

SpinorField symmetrize(const SpinorField &F) {
    want(F, Basis::Tuple, "symmetrize");
    const int s = F.sigma();
    std::vector<int> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    mpq_class w = 1 / factorial(s);
    std::vector<ExtForm> out;
    for (unsigned m = 0; m < (1u << s); ++m) {
        ExtForm acc(F.ring(), F.dim(), F.tau());
        for (auto &p : perms) {
            unsigned pm = 0;
            for (int i = 0; i < s; ++i) pm |= ((m >> p[i]) & 1u) << i;
            acc += F.slot(pm);
        }
        out.push_back(scaled(acc, w));
    }
    return SpinorField(Basis::Tuple, s, std::move(out));
}

SpinorField symmetrize_tail_symmetric(const SpinorField &F) {
    want(F, Basis::Tuple, "symmetrize_tail_symmetric");
    const int s = F.sigma();
    if (s == 0) return F;
    mpq_class w(1, s);
    std::vector<ExtForm> out;
    for (unsigned m = 0; m < (1u << s); ++m) {
        ExtForm acc(F.ring(), F.dim(), F.tau());
        for (int i = 0; i < s; ++i) {
            unsigned moved = ((m >> i) & 1u) | (drop_bit(m, i) << 1);
            acc += F.slot(moved);
        }
        out.push_back(scaled(acc, w));
    }
    return SpinorField(Basis::Tuple, s, std::move(out));
}

bool is_symmetric(const SpinorField &F) {
    want(F, Basis::Tuple, "is_symmetric");
    for (unsigned m = 0; m < (1u << F.sigma()); ++m)
        if (F.slot(m) != F.slot(canonical_mask(std::popcount(m)))) return false;
    return true;
}

} // namespace cfx
