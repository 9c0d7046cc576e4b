#pragma once

// Small-integer number theory helpers used throughout the library.
// All levels, divisors and conductors are small (<= a few hundred), so
// plain trial division is enough everywhere.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace qcyc {

using Int = mpz_class;
using Rat = mpq_class;

inline std::vector<long> divisors(long n) {
    if (n <= 0) throw std::invalid_argument("divisors: n must be positive");
    std::vector<long> out;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Prime support of an arbitrary-precision integer.  Values factored here
// are denominators produced by dividing by small integers and cyclotomic
// resultants, hence smooth; trial division terminates quickly.
inline std::set<long> prime_support(const Int& n_in) {
    Int n = abs(n_in);
    std::set<long> out;
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.insert(p.get_si());
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) {
        if (!n.fits_slong_p())
            throw std::runtime_error("prime_support: large prime factor " + n.get_str());
        out.insert(n.get_si());
    }
    return out;
}

inline long valuation(long n, long p) {
    if (n == 0) throw std::invalid_argument("valuation of 0");
    long v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

inline long euler_phi(long n) {
    long result = n;
    for (long p : prime_factors(n)) result = result / p * (p - 1);
    return result;
}

inline long gcd_long(long a, long b) {
    while (b) { long t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}

inline long lcm_long(long a, long b) { return a / gcd_long(a, b) * b; }

// a^{-1} mod n for gcd(a,n)=1
inline long inv_mod(long a, long n) {
    long t = 0, newt = 1, r = n, newr = ((a % n) + n) % n;
    while (newr != 0) {
        long q = r / newr;
        long tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("inv_mod: not invertible");
    return ((t % n) + n) % n;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace qcyc
