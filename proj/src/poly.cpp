#include "cfx/poly.hpp"

#include <sstream>

namespace cfx {

Ring::Ring(std::vector<std::string> names, int degree_cap) : names_(std::move(names)), cap_(degree_cap) {
    if (names_.size() > static_cast<size_t>(kMaxVars))
        throw std::invalid_argument("too many variables (max " + std::to_string(kMaxVars) + ")");
    if (cap_ < 0 || cap_ > 255) throw std::invalid_argument("degree cap out of range");
    for (size_t i = 0; i < names_.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable " + names_[i]);
}

int Ring::index(const std::string &name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown variable '" + name + "'");
}

bool Ring::has(const std::string &name) const {
    for (auto &n : names_)
        if (n == name) return true;
    return false;
}

RingPtr make_ring(std::vector<std::string> names, int degree_cap) {
    return std::make_shared<const Ring>(std::move(names), degree_cap);
}

RingPtr coordinate_ring(int m, int degree_cap) {
    std::vector<std::string> v;
    for (int i = 1; i <= m; ++i) v.push_back("x" + std::to_string(i));
    return make_ring(v, degree_cap);
}

RingPtr group_ring(int n, int degree_cap) {
    std::vector<std::string> v;
    for (int i = 1; i <= 4 * n; ++i) v.push_back("x" + std::to_string(i));
    for (int b = 1; b <= 3; ++b) v.push_back("t" + std::to_string(b));
    return make_ring(v, degree_cap);
}

// ---------------------------------------------------------------- Poly

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {
    if (!ring_) throw std::invalid_argument("poly needs a ring");
}

Poly::Poly(RingPtr ring, const Cq &c) : Poly(std::move(ring)) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::var(RingPtr ring, int i) {
    if (i < 0 || i >= ring->size()) throw std::invalid_argument("variable index out of range");
    Monomial m;
    m.e[i] = 1;
    return monomial(std::move(ring), m, Cq(1));
}

Poly Poly::var(RingPtr ring, const std::string &name) {
    int i = ring->index(name);
    return var(std::move(ring), i);
}

Poly Poly::monomial(RingPtr ring, const Monomial &m, const Cq &c) {
    Poly p(std::move(ring));
    if (m.degree() > p.ring_->degree_cap()) throw DegreeCapError("monomial exceeds degree cap");
    p.add_term(m, c);
    return p;
}

void Poly::add_term(const Monomial &m, const Cq &c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void Poly::check_ring(const Poly &o) const {
    if (!ring_->compatible(*o.ring_)) throw std::invalid_argument("polynomials over different variable tables");
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

Cq Poly::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Cq() : it->second;
}

int Poly::total_degree() const {
    int d = -1;
    for (auto &[m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

int Poly::degree_in(int var) const {
    int d = -1;
    for (auto &[m, c] : terms_) d = std::max(d, int(m.e[var]));
    return d;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto &[m, c] : r.terms_) c = -c;
    return r;
}

Poly &Poly::operator+=(const Poly &o) {
    check_ring(o);
    for (auto &[m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly &Poly::operator-=(const Poly &o) {
    check_ring(o);
    for (auto &[m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly &Poly::operator*=(const Cq &c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly &a, const Poly &b) {
    a.check_ring(b);
    Poly r(a.ring_);
    const int cap = std::max(a.ring_->degree_cap(), b.ring_->degree_cap());
    const int nv = a.ring_->size();
    for (auto &[ma, ca] : a.terms_) {
        for (auto &[mb, cb] : b.terms_) {
            Monomial m;
            int deg = 0;
            for (int i = 0; i < nv; ++i) {
                int e = ma.e[i] + mb.e[i];
                m.e[i] = static_cast<std::uint8_t>(e);
                deg += e;
            }
            if (deg > cap)
                throw DegreeCapError("product degree " + std::to_string(deg) + " exceeds cap " + std::to_string(cap));
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

bool operator==(const Poly &a, const Poly &b) {
    return a.ring_->compatible(*b.ring_) && a.terms_ == b.terms_;
}

Poly Poly::diff(int var) const {
    if (var < 0 || var >= ring_->size()) throw std::invalid_argument("variable index out of range");
    Poly r(ring_);
    for (auto &[m, c] : terms_) {
        if (m.e[var] == 0) continue;
        Monomial mm = m;
        mm.e[var]--;
        r.terms_.emplace_hint(r.terms_.end(), mm, c * Cq(long(m.e[var])));
    }
    // decrementing one exponent preserves the monomial order, so appending is fine
    return r;
}

Poly Poly::conj() const {
    Poly r(*this);
    for (auto &[m, c] : r.terms_) c = c.conj();
    return r;
}

Poly Poly::substitute(int var, const mpq_class &value) const {
    Poly r(ring_);
    for (auto &[m, c] : terms_) {
        Monomial mm = m;
        mpq_class f = 1;
        for (int k = 0; k < m.e[var]; ++k) f *= value;
        mm.e[var] = 0;
        r.add_term(mm, c * Cq(f));
    }
    return r;
}

Poly Poly::recast(RingPtr ring) const {
    if (!ring_->compatible(*ring)) throw std::invalid_argument("recast to incompatible ring");
    Poly r(std::move(ring));
    r.terms_ = terms_;
    return r;
}

Cq Poly::eval(const std::vector<Cq> &pt) const {
    if (static_cast<int>(pt.size()) != ring_->size()) throw std::invalid_argument("eval: wrong point size");
    Cq s;
    for (auto &[m, c] : terms_) {
        Cq t = c;
        for (int i = 0; i < ring_->size(); ++i)
            for (int k = 0; k < m.e[i]; ++k) t *= pt[i];
        s += t;
    }
    return s;
}

std::complex<double> Poly::eval(const std::vector<double> &pt) const {
    if (static_cast<int>(pt.size()) != ring_->size()) throw std::invalid_argument("eval: wrong point size");
    std::complex<double> s = 0;
    for (auto &[m, c] : terms_) {
        double t = 1;
        for (int i = 0; i < ring_->size(); ++i)
            for (int k = 0; k < m.e[i]; ++k) t *= pt[i];
        s += c.to_complex() * t;
    }
    return s;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest degree first reads better
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        auto &[m, c] = *it;
        std::string cs = c.str();
        bool unit = (m.degree() > 0) && (c == Cq(1) || c == Cq(-1));
        if (!first) os << (cs[0] == '-' ? " - " : " + ");
        else if (cs[0] == '-') os << "-";
        if (cs[0] == '-') cs = cs.substr(1);
        if (!unit) os << cs;
        bool star = !unit;
        for (int i = 0; i < ring_->size(); ++i) {
            if (!m.e[i]) continue;
            if (star) os << "*";
            os << ring_->name(i);
            if (m.e[i] > 1) os << "^" << int(m.e[i]);
            star = true;
        }
        first = false;
    }
    return os.str();
}

nlohmann::json Poly::to_json() const {
    nlohmann::json j;
    j["vars"] = ring_->names();
    auto terms = nlohmann::json::array();
    for (auto &[m, c] : terms_) {
        std::vector<int> e(m.e.begin(), m.e.begin() + ring_->size());
        terms.push_back({{"c", {rational_str(c.re), rational_str(c.im)}}, {"e", e}});
    }
    j["terms"] = terms;
    return j;
}

Poly Poly::from_json(const nlohmann::json &j, RingPtr ring) {
    if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
        throw std::invalid_argument("poly JSON needs 'vars' and 'terms'");
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    if (!ring) ring = make_ring(vars);
    // map json variable order to ring order
    std::vector<int> where;
    for (auto &v : vars) where.push_back(ring->index(v));
    Poly p(ring);
    for (auto &t : j.at("terms")) {
        auto c = t.at("c");
        Cq coef;
        if (c.is_array()) {
            if (c.size() != 2) throw std::invalid_argument("coefficient must be [re, im]");
            coef = Cq(parse_rational(c[0].get<std::string>()), parse_rational(c[1].get<std::string>()));
        } else {
            coef = Cq(parse_rational(c.get<std::string>()));
        }
        auto e = t.at("e").get<std::vector<int>>();
        if (e.size() != vars.size()) throw std::invalid_argument("exponent vector length mismatch");
        Monomial m;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] > 255) throw std::invalid_argument("bad exponent");
            m.e[where[i]] = static_cast<std::uint8_t>(e[i]);
        }
        if (m.degree() > ring->degree_cap()) throw DegreeCapError("input term exceeds degree cap");
        p.add_term(m, coef);
    }
    return p;
}

Poly poly_diff(const Poly &p, const std::string &var) {
    return p.diff(p.ring()->index(var));
}

// ---------------------------------------------------------------- VectorField

VectorField::VectorField(RingPtr ring) : ring_(std::move(ring)) {}

VectorField VectorField::partial(RingPtr ring, int var, const Cq &c) {
    VectorField v(ring);
    v.add(var, Poly(ring, c));
    return v;
}

Poly VectorField::coeff(int var) const {
    auto it = coeffs_.find(var);
    return it == coeffs_.end() ? Poly(ring_) : it->second;
}

Poly VectorField::operator()(const Poly &p) const {
    Poly r(ring_);
    for (auto &[i, c] : coeffs_) {
        Poly d = p.diff(i);
        if (d.is_zero()) continue;
        if (c.is_constant()) r += d * c.constant_term();
        else r += c * d;
    }
    return r;
}

VectorField &VectorField::add(int var, const Poly &c) {
    if (c.is_zero()) return *this;
    auto it = coeffs_.find(var);
    if (it == coeffs_.end()) {
        coeffs_.emplace(var, c);
        return *this;
    }
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
    return *this;
}

VectorField &VectorField::operator+=(const VectorField &o) {
    for (auto &[i, c] : o.coeffs_) add(i, c);
    return *this;
}

VectorField &VectorField::operator-=(const VectorField &o) {
    for (auto &[i, c] : o.coeffs_) add(i, -c);
    return *this;
}

VectorField &VectorField::operator*=(const Cq &c) {
    if (c.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto &[i, p] : coeffs_) p *= c;
    return *this;
}

bool operator==(const VectorField &a, const VectorField &b) {
    return a.coeffs_ == b.coeffs_;
}

VectorField VectorField::conj() const {
    VectorField r(ring_);
    for (auto &[i, c] : coeffs_) r.coeffs_.emplace(i, c.conj());
    return r;
}

std::string VectorField::str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (auto &[i, c] : coeffs_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")*d/d" + ring_->name(i);
    }
    return s;
}

VectorField bracket(const VectorField &X, const VectorField &Y) {
    VectorField r(X.ring());
    for (auto &[i, c] : Y.coeffs()) r.add(i, X(c));
    for (auto &[i, c] : X.coeffs()) r.add(i, -Y(c));
    return r;
}

} // namespace cfx
