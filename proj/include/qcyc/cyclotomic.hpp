#pragma once

// Cyclotomic polynomials, q-integers, and membership in (p, q-1)^r.

#include "qcyc/poly.hpp"

#include <map>
#include <mutex>

namespace qcyc {

// Phi_e(q), by exact division of q^e - 1 by the lower cyclotomic factors
inline QPoly cyclotomic_poly(long e) {
    static std::map<long, QPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto compute = [](auto&& self, long n) -> const QPoly& {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        QPoly num = QPoly::monomial(Rat(1), n) - QPoly::constant(Rat(1));
        QPoly den = QPoly::constant(Rat(1));
        for (long d : divisors(n))
            if (d < n) den = den * self(self, d);
        auto [quo, rem] = QPoly::divrem(num, den);
        if (!rem.zero()) throw std::logic_error("cyclotomic_poly: inexact division");
        return cache.emplace(n, std::move(quo)).first->second;
    };
    if (e < 1) throw std::invalid_argument("cyclotomic_poly: e must be positive");
    return compute(compute, e);
}

// [k]_q = 1 + q + ... + q^{k-1}
inline QPoly q_integer(long k) {
    if (k < 0) throw std::invalid_argument("q_integer: k must be nonnegative");
    QPoly p;
    p.c.assign(k, Rat(1));
    return p;
}

// g in (p, q-1)^r inside Z[q]?  Expand g in powers of (q-1) and check
// p^{max(r-i,0)} divides the i-th coefficient.
inline bool in_p_qminus1_power(const QPoly& g, long p, long r) {
    for (const auto& a : g.c)
        if (a.get_den() != 1)
            throw std::invalid_argument("in_p_qminus1_power: integer coefficients required");
    std::vector<Rat> a = taylor_coefficients(g, Rat(1));
    for (size_t i = 0; i < a.size(); ++i) {
        long need = r - static_cast<long>(i);
        if (need <= 0) break;
        Int mod = pow_int(Int(p), need);
        if (a[i].get_num() % mod != 0) return false;
    }
    return true;
}

}  // namespace qcyc
