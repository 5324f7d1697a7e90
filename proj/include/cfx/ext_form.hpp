#pragma once

#include "cfx/poly.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace cfx {

// Blade = bitmask of a strictly increasing index tuple.
using Blade = std::uint32_t;

Blade blade_of(const std::vector<int> &idx); // throws unless strictly increasing
std::vector<int> indices_of(Blade b);
int blade_degree(Blade b);
// all blades of degree tau in dimension m, increasing order of the index tuple
std::vector<Blade> blades(int m, int tau);
// sign of e_a ∧ e_b merge (0 if they overlap)
int wedge_sign(Blade a, Blade b);

// Exterior form of fixed degree over omega^0..omega^{m-1} with Poly coefficients.
class ExtForm {
public:
    ExtForm(RingPtr ring, int dim, int degree);

    static ExtForm basis(RingPtr ring, int dim, const std::vector<int> &idx, const Poly &c);
    static ExtForm basis(RingPtr ring, int dim, const std::vector<int> &idx);
    static ExtForm scalar(const Poly &p, int dim);

    const RingPtr &ring() const { return ring_; }
    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const std::map<Blade, Poly> &components() const { return comps_; }
    Poly coeff(Blade b) const;
    Poly coeff(const std::vector<int> &idx) const { return coeff(blade_of(idx)); }
    bool is_zero() const { return comps_.empty(); }

    // builder; only used while constructing
    ExtForm &add(Blade b, const Poly &c);

    ExtForm operator-() const;
    ExtForm &operator+=(const ExtForm &o);
    ExtForm &operator-=(const ExtForm &o);
    ExtForm &operator*=(const Cq &c);
    friend ExtForm operator+(ExtForm a, const ExtForm &b) { return a += b; }
    friend ExtForm operator-(ExtForm a, const ExtForm &b) { return a -= b; }
    friend ExtForm operator*(ExtForm a, const Cq &c) { return a *= c; }
    friend ExtForm operator*(const Cq &c, ExtForm a) { return a *= c; }
    friend ExtForm operator*(const Poly &p, const ExtForm &f);
    friend bool operator==(const ExtForm &a, const ExtForm &b);
    friend bool operator!=(const ExtForm &a, const ExtForm &b) { return !(a == b); }

    // apply a coefficient map componentwise
    ExtForm map(const std::function<Poly(const Poly &)> &fn) const;
    ExtForm apply(const VectorField &X) const { return map([&](const Poly &p) { return X(p); }); }

    std::string str() const;
    nlohmann::json to_json() const;

private:
    void check(const ExtForm &o) const;

    RingPtr ring_;
    int dim_, degree_;
    std::map<Blade, Poly> comps_;
};

ExtForm wedge(const ExtForm &f, const ExtForm &g);

// sum_A omega^A ∧ fields[A](f); fields.size() must equal f.dim()
ExtForm exterior_apply(const std::vector<VectorField> &fields, const ExtForm &f);

// omega^0 ∧ ... ∧ omega^{m-1}
ExtForm volume_form(RingPtr ring, int m);

} // namespace cfx
