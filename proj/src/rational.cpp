#include "cfx/rational.hpp"

#include <stdexcept>

namespace cfx {

Cq &Cq::operator/=(const Cq &o) {
    mpq_class den = o.re * o.re + o.im * o.im;
    if (sgn(den) == 0) throw std::domain_error("division by zero");
    mpq_class r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = r;
    return *this;
}

std::string rational_str(const mpq_class &q) {
    return q.get_str();
}

mpq_class parse_rational(const std::string &s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    mpq_class q;
    std::string t = s;
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string Cq::str() const {
    if (sgn(im) == 0) return rational_str(re);
    std::string ims;
    if (im == 1) ims = "i";
    else if (im == -1) ims = "-i";
    else ims = rational_str(im) + "i";
    if (sgn(re) == 0) return ims;
    if (sgn(im) > 0) return "(" + rational_str(re) + "+" + ims + ")";
    return "(" + rational_str(re) + ims + ")";
}

} // namespace cfx
