#include "cfx/random.hpp"

namespace cfx {

int Sampler::uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

mpq_class Sampler::small_rational(int num_range, int den_max) {
    int num = uniform(-num_range, num_range);
    int den = uniform(1, den_max);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

Cq Sampler::small_coeff(bool complex) {
    Cq c;
    do {
        c = Cq(mpq_class(uniform(-3, 3)), complex ? mpq_class(uniform(-2, 2)) : mpq_class(0));
    } while (c.is_zero());
    return c;
}

Poly Sampler::poly(const RingPtr &ring, int max_degree, int terms, int nvars, bool complex) {
    if (nvars < 0) nvars = ring->size();
    Poly p(ring);
    for (int t = 0; t < terms; ++t) {
        int deg = uniform(0, max_degree);
        Monomial m;
        for (int k = 0; k < deg; ++k) m.e[uniform(0, nvars - 1)]++;
        p += Poly::monomial(ring, m, small_coeff(complex));
    }
    return p;
}

ExtForm Sampler::form(const RingPtr &ring, int dim, int tau, int max_degree, int nvars, double density) {
    ExtForm f(ring, dim, tau);
    auto bs = blades(dim, tau);
    std::uniform_real_distribution<double> u(0, 1);
    for (auto b : bs)
        if (u(rng_) < density) f.add(b, poly(ring, max_degree, 2, nvars));
    // never hand back an accidental zero when a nonzero one exists
    if (f.is_zero() && !bs.empty()) f.add(bs[uniform(0, int(bs.size()) - 1)], poly(ring, max_degree, 2, nvars));
    return f;
}

SpinorField Sampler::field(Basis basis, int sigma, const RingPtr &ring, int dim, int tau, int max_degree, int nvars) {
    if (basis == Basis::Tuple) {
        // build symmetric data through the S basis
        std::vector<ExtForm> s;
        for (int a = 0; a <= sigma; ++a) s.push_back(form(ring, dim, tau, max_degree, nvars));
        return s_to_tuple(SpinorField(Basis::S, sigma, s));
    }
    std::vector<ExtForm> s;
    for (int a = 0; a <= sigma; ++a) s.push_back(form(ring, dim, tau, max_degree, nvars));
    return SpinorField(basis, sigma, s);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace cfx
