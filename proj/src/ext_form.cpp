#include "cfx/ext_form.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace cfx {

Blade blade_of(const std::vector<int> &idx) {
    Blade b = 0;
    int prev = -1;
    for (int i : idx) {
        if (i <= prev) throw std::invalid_argument("index tuple not strictly increasing");
        if (i >= 32) throw std::invalid_argument("form index too large");
        b |= (Blade(1) << i);
        prev = i;
    }
    return b;
}

std::vector<int> indices_of(Blade b) {
    std::vector<int> r;
    for (int i = 0; b; ++i, b >>= 1)
        if (b & 1) r.push_back(i);
    return r;
}

int blade_degree(Blade b) { return std::popcount(b); }

std::vector<Blade> blades(int m, int tau) {
    std::vector<Blade> r;
    if (tau < 0 || tau > m) return r;
    for (Blade b = 0; b < (Blade(1) << m); ++b)
        if (blade_degree(b) == tau) r.push_back(b);
    // order by index tuple (lexicographic), which matches the usual omega^{A1...} listing
    std::sort(r.begin(), r.end(), [](Blade a, Blade c) { return indices_of(a) < indices_of(c); });
    return r;
}

int wedge_sign(Blade a, Blade b) {
    if (a & b) return 0;
    // each index of b must hop over the indices of a that are larger than it
    int swaps = 0;
    for (Blade bb = b; bb; bb &= bb - 1) {
        int j = std::countr_zero(bb);
        Blade above = a & ~((Blade(2) << j) - 1);
        swaps += std::popcount(above);
    }
    return (swaps & 1) ? -1 : 1;
}

ExtForm::ExtForm(RingPtr ring, int dim, int degree) : ring_(std::move(ring)), dim_(dim), degree_(degree) {
    if (!ring_) throw std::invalid_argument("form needs a ring");
    if (dim < 0 || dim > 31) throw std::invalid_argument("bad form dimension");
    if (degree < 0) throw std::invalid_argument("negative form degree");
}

ExtForm ExtForm::basis(RingPtr ring, int dim, const std::vector<int> &idx, const Poly &c) {
    ExtForm f(ring, dim, static_cast<int>(idx.size()));
    for (int i : idx)
        if (i >= dim) throw std::invalid_argument("form index out of range");
    f.add(blade_of(idx), c);
    return f;
}

ExtForm ExtForm::basis(RingPtr ring, int dim, const std::vector<int> &idx) {
    return basis(ring, dim, idx, Poly(ring, Cq(1)));
}

ExtForm ExtForm::scalar(const Poly &p, int dim) {
    ExtForm f(p.ring(), dim, 0);
    f.add(0, p);
    return f;
}

Poly ExtForm::coeff(Blade b) const {
    auto it = comps_.find(b);
    return it == comps_.end() ? Poly(ring_) : it->second;
}

ExtForm &ExtForm::add(Blade b, const Poly &c) {
    if (blade_degree(b) != degree_) throw std::invalid_argument("component degree mismatch");
    if (b >> dim_) throw std::invalid_argument("component index out of range");
    if (c.is_zero()) return *this;
    auto it = comps_.find(b);
    if (it == comps_.end()) {
        comps_.emplace(b, c);
        return *this;
    }
    it->second += c;
    if (it->second.is_zero()) comps_.erase(it);
    return *this;
}

void ExtForm::check(const ExtForm &o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("form dimension mismatch");
    if (degree_ != o.degree_) throw std::invalid_argument("form degree mismatch");
}

ExtForm ExtForm::operator-() const {
    ExtForm r(*this);
    for (auto &[b, c] : r.comps_) c = -c;
    return r;
}

ExtForm &ExtForm::operator+=(const ExtForm &o) {
    check(o);
    for (auto &[b, c] : o.comps_) add(b, c);
    return *this;
}

ExtForm &ExtForm::operator-=(const ExtForm &o) {
    check(o);
    for (auto &[b, c] : o.comps_) add(b, -c);
    return *this;
}

ExtForm &ExtForm::operator*=(const Cq &c) {
    if (c.is_zero()) {
        comps_.clear();
        return *this;
    }
    for (auto &[b, p] : comps_) p *= c;
    return *this;
}

ExtForm operator*(const Poly &p, const ExtForm &f) {
    ExtForm r(f.ring_, f.dim_, f.degree_);
    for (auto &[b, c] : f.comps_) r.add(b, p * c);
    return r;
}

bool operator==(const ExtForm &a, const ExtForm &b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

ExtForm ExtForm::map(const std::function<Poly(const Poly &)> &fn) const {
    ExtForm r(ring_, dim_, degree_);
    for (auto &[b, c] : comps_) r.add(b, fn(c));
    return r;
}

std::string ExtForm::str() const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto &[b, c] : comps_) {
        if (!first) os << " + ";
        os << "(" << c.str() << ")";
        if (b) {
            os << " w^";
            for (int i : indices_of(b)) os << i;
        }
        first = false;
    }
    return os.str();
}

nlohmann::json ExtForm::to_json() const {
    nlohmann::json j;
    j["dim"] = dim_;
    j["degree"] = degree_;
    auto comps = nlohmann::json::array();
    for (auto &[b, c] : comps_) comps.push_back({{"idx", indices_of(b)}, {"poly", c.to_json()}});
    j["components"] = comps;
    return j;
}

ExtForm wedge(const ExtForm &f, const ExtForm &g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    ExtForm r(f.ring(), f.dim(), f.degree() + g.degree());
    if (f.degree() + g.degree() > f.dim()) return r;
    for (auto &[a, ca] : f.components()) {
        for (auto &[b, cb] : g.components()) {
            int s = wedge_sign(a, b);
            if (!s) continue;
            Poly p = ca * cb;
            if (s < 0) p = -p;
            r.add(a | b, p);
        }
    }
    return r;
}

ExtForm exterior_apply(const std::vector<VectorField> &fields, const ExtForm &f) {
    if (static_cast<int>(fields.size()) != f.dim()) throw std::invalid_argument("frame size does not match form dimension");
    ExtForm r(f.ring(), f.dim(), f.degree() + 1);
    if (f.degree() + 1 > f.dim()) return r;
    for (auto &[b, c] : f.components()) {
        for (int A = 0; A < f.dim(); ++A) {
            Blade e = Blade(1) << A;
            if (b & e) continue;
            Poly d = fields[A](c);
            if (d.is_zero()) continue;
            // omega^A in front: sign = (-1)^{# indices of b below A}
            int below = std::popcount(b & (e - 1));
            r.add(b | e, (below & 1) ? -d : d);
        }
    }
    return r;
}

ExtForm volume_form(RingPtr ring, int m) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i) idx.push_back(i);
    return ExtForm::basis(ring, m, idx);
}

} // namespace cfx
