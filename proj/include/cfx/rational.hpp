#pragma once

#include <complex>
#include <gmpxx.h>
#include <string>

namespace cfx {

// exact complex rational: re + i*im
struct Cq {
    mpq_class re{0}, im{0};

    Cq() = default;
    Cq(long r) : re(r) {}
    Cq(mpq_class r) : re(std::move(r)) {}
    Cq(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    Cq(long r, long i) : re(r), im(i) {}

    static Cq I() { return Cq(0, 1); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    Cq conj() const { return Cq(re, -im); }
    Cq operator-() const { return Cq(-re, -im); }

    Cq &operator+=(const Cq &o) { re += o.re; im += o.im; return *this; }
    Cq &operator-=(const Cq &o) { re -= o.re; im -= o.im; return *this; }
    Cq &operator*=(const Cq &o) {
        mpq_class r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Cq &operator/=(const Cq &o);

    friend Cq operator+(Cq a, const Cq &b) { return a += b; }
    friend Cq operator-(Cq a, const Cq &b) { return a -= b; }
    friend Cq operator*(Cq a, const Cq &b) { return a *= b; }
    friend Cq operator/(Cq a, const Cq &b) { return a /= b; }
    friend bool operator==(const Cq &a, const Cq &b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Cq &a, const Cq &b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
    std::string str() const;
};

// "p/q" or "p" -> mpq, throws std::invalid_argument
mpq_class parse_rational(const std::string &s);
std::string rational_str(const mpq_class &q);

} // namespace cfx
