#pragma once

#include "cfx/spinor.hpp"

#include <cstdint>
#include <random>

namespace cfx {

// Seeded source of small-integer test data. Same seed -> same objects.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi); // inclusive
    mpq_class small_rational(int num_range = 5, int den_max = 3);
    Cq small_coeff(bool complex = true);

    // random poly of total degree <= max_degree with `terms` terms over vars [0, nvars) (nvars<0: all)
    Poly poly(const RingPtr &ring, int max_degree, int terms = 3, int nvars = -1, bool complex = true);
    ExtForm form(const RingPtr &ring, int dim, int tau, int max_degree, int nvars = -1, double density = 0.5);
    SpinorField field(Basis basis, int sigma, const RingPtr &ring, int dim, int tau, int max_degree, int nvars = -1);

    std::mt19937_64 &engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// per-trial seed derived from a master seed (splitmix64)
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

} // namespace cfx
