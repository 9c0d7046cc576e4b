#pragma once

// shared helpers for the test suites

#include "qcyc/cyclotomic.hpp"
#include "qcyc/number_ring.hpp"

#include <random>
#include <vector>

namespace qcyc::testing {

inline QPoly qp(std::vector<long> coeffs) {
    std::vector<Rat> c;
    for (long a : coeffs) c.emplace_back(a);
    return QPoly(std::move(c));
}

inline const NumberRing& ring_z() { return NumberRing::integers(); }

inline const NumberRing& ring_gaussian() {
    static NumberRing R(qp({1, 0, 1}), 2, "Z[i][1/2]");
    return R;
}

inline const NumberRing& ring_zeta5() {
    static NumberRing R(cyclotomic_poly(5), 5, "Z[zeta5][1/5]");
    return R;
}

inline const NumberRing& ring_zeta7() {
    static NumberRing R(cyclotomic_poly(7), 7, "Z[zeta7][1/7]");
    return R;
}

inline RElement random_element(const NumberRing& R, std::mt19937_64& rng, long bound = 5) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Rat> c;
    for (long i = 0; i < R.degree(); ++i) c.emplace_back(dist(rng));
    return RElement(R, QPoly(std::move(c)));
}

}  // namespace qcyc::testing
