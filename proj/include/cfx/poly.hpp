#pragma once

#include "cfx/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfx {

constexpr int kMaxVars = 16;
constexpr int kDefaultDegreeCap = 6;

struct DegreeCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordered variable table plus a total-degree cap. Shared by all polys built on it.
class Ring {
public:
    explicit Ring(std::vector<std::string> names, int degree_cap = kDefaultDegreeCap);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string &name(int i) const { return names_.at(i); }
    const std::vector<std::string> &names() const { return names_; }
    int index(const std::string &name) const; // throws naming the variable
    bool has(const std::string &name) const;
    int degree_cap() const { return cap_; }

    bool compatible(const Ring &o) const { return this == &o || names_ == o.names_; }

private:
    std::vector<std::string> names_;
    int cap_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names, int degree_cap = kDefaultDegreeCap);
// x1..xm
RingPtr coordinate_ring(int m, int degree_cap = kDefaultDegreeCap);
// x1..x_{4n}, t1..t3
RingPtr group_ring(int n, int degree_cap = kDefaultDegreeCap);

struct Monomial {
    std::array<std::uint8_t, kMaxVars> e{};
    int degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }
    auto operator<=>(const Monomial &) const = default;
};

class Poly {
public:
    using Terms = std::map<Monomial, Cq>;

    explicit Poly(RingPtr ring);
    Poly(RingPtr ring, const Cq &c);

    static Poly var(RingPtr ring, int i);
    static Poly var(RingPtr ring, const std::string &name);
    static Poly monomial(RingPtr ring, const Monomial &m, const Cq &c);

    const RingPtr &ring() const { return ring_; }
    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Cq constant_term() const;
    int total_degree() const; // -1 for zero
    int degree_in(int var) const;

    Poly operator-() const;
    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    Poly &operator*=(const Cq &c);
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator*(Poly a, const Cq &c) { return a *= c; }
    friend Poly operator*(const Cq &c, Poly a) { return a *= c; }
    friend Poly operator*(const Poly &a, const Poly &b);
    friend bool operator==(const Poly &a, const Poly &b);
    friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }

    Poly diff(int var) const;
    Poly conj() const;
    Poly substitute(int var, const mpq_class &value) const;
    // same names, other cap
    Poly recast(RingPtr ring) const;

    Cq eval(const std::vector<Cq> &point) const;
    std::complex<double> eval(const std::vector<double> &point) const;

    std::string str() const;

    // {"vars":[...], "terms":[{"c":["p/q","r/s"],"e":[...]}]}
    nlohmann::json to_json() const;
    static Poly from_json(const nlohmann::json &j, RingPtr ring = nullptr);

private:
    void add_term(const Monomial &m, const Cq &c);
    void check_ring(const Poly &o) const;

    RingPtr ring_;
    Terms terms_;
};

Poly poly_diff(const Poly &p, const std::string &var);

// first-order operator sum_i c_i(x) d/dx_i
class VectorField {
public:
    explicit VectorField(RingPtr ring);

    static VectorField partial(RingPtr ring, int var, const Cq &c = Cq(1));

    const RingPtr &ring() const { return ring_; }
    const std::map<int, Poly> &coeffs() const { return coeffs_; }
    Poly coeff(int var) const;
    bool is_zero() const { return coeffs_.empty(); }

    Poly operator()(const Poly &p) const;

    VectorField &add(int var, const Poly &c);
    VectorField &operator+=(const VectorField &o);
    VectorField &operator-=(const VectorField &o);
    VectorField &operator*=(const Cq &c);
    friend VectorField operator+(VectorField a, const VectorField &b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField &b) { return a -= b; }
    friend VectorField operator*(VectorField a, const Cq &c) { return a *= c; }
    friend VectorField operator*(const Cq &c, VectorField a) { return a *= c; }
    friend bool operator==(const VectorField &a, const VectorField &b);

    VectorField conj() const;
    std::string str() const;

private:
    RingPtr ring_;
    std::map<int, Poly> coeffs_;
};

// [X, Y] = sum_i (X(Y^i) - Y(X^i)) d_i
VectorField bracket(const VectorField &X, const VectorField &Y);

} // namespace cfx
