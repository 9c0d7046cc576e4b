#pragma once

// Dense univariate polynomials over an exact coefficient ring.
// Coefficients are stored lowest degree first; the zero polynomial is the
// empty vector and its degree is the sentinel -1.

#include "qcyc/intutil.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qcyc {

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline Rat coeff_inverse(const Rat& r) {
    if (is_zero(r)) throw std::domain_error("coeff_inverse: zero");
    return Rat(1) / r;
}

template <typename C>
class Poly {
  public:
    std::vector<C> c;

    Poly() = default;
    explicit Poly(std::vector<C> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(const C& a) {
        Poly p;
        if (!is_zero(a)) p.c.push_back(a);
        return p;
    }
    // the monomial a*X^k
    static Poly monomial(const C& a, long k) {
        Poly p;
        if (is_zero(a)) return p;
        p.c.assign(k, C());
        p.c.push_back(a);
        return p;
    }

    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool zero() const { return c.empty(); }
    const C& leading() const {
        if (zero()) throw std::domain_error("leading of zero polynomial");
        return c.back();
    }
    C coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(c.size())) return C();
        return c[i];
    }

    void trim() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& a : r.c) a = C() - a;
        return r;
    }
    Poly operator+(const Poly& o) const {
        Poly r;
        r.c.resize(std::max(c.size(), o.c.size()), C());
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
        r.trim();
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (zero() || o.zero()) return Poly();
        Poly r;
        r.c.assign(c.size() + o.c.size() - 1, C());
        for (size_t i = 0; i < c.size(); ++i) {
            if (is_zero(c[i])) continue;
            for (size_t j = 0; j < o.c.size(); ++j)
                r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
        }
        r.trim();
        return r;
    }
    Poly scaled(const C& a) const {
        Poly r;
        if (is_zero(a)) return r;
        r.c.reserve(c.size());
        for (const auto& x : c) r.c.push_back(x * a);
        r.trim();
        return r;
    }

    Poly pow(unsigned long e) const {
        Poly r = Poly::constant(C(1));
        Poly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    C eval(const C& x) const {
        C r{};
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
        return r;
    }

    // X -> X^s
    Poly substitute_power(long s) const {
        if (s <= 0) throw std::invalid_argument("substitute_power: s must be positive");
        Poly r;
        if (zero()) return r;
        r.c.assign((c.size() - 1) * s + 1, C());
        for (size_t i = 0; i < c.size(); ++i) r.c[i * s] = c[i];
        r.trim();
        return r;
    }

    Poly derivative() const {
        Poly r;
        for (size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * C(static_cast<long>(i)));
        r.trim();
        return r;
    }

    // quotient and remainder; requires the leading coefficient of b invertible
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.zero()) throw std::domain_error("division by zero polynomial");
        Poly q, r = a;
        C linv = coeff_inverse(b.leading());
        long db = b.degree();
        q.c.assign(std::max<long>(a.degree() - db + 1, 0), C());
        while (r.degree() >= db) {
            long k = r.degree() - db;
            C f = r.leading() * linv;
            q.c[k] = q.c[k] + f;
            for (long i = 0; i <= db; ++i) r.c[i + k] = r.c[i + k] - f * b.c[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }
    Poly mod(const Poly& b) const { return divrem(*this, b).second; }

    // g = gcd(a,b) monic with u*a + v*b = g; field coefficients required
    static void extgcd(const Poly& a, const Poly& b, Poly& g, Poly& u, Poly& v) {
        Poly r0 = a, r1 = b;
        Poly s0 = Poly::constant(C(1)), s1;
        Poly t0, t1 = Poly::constant(C(1));
        while (!r1.zero()) {
            auto [q, r] = divrem(r0, r1);
            Poly s = s0 - q * s1, t = t0 - q * t1;
            r0 = r1; r1 = r;
            s0 = s1; s1 = s;
            t0 = t1; t1 = t;
        }
        g = r0; u = s0; v = t0;
        if (!g.zero()) {
            C linv = coeff_inverse(g.leading());
            g = g.scaled(linv);
            u = u.scaled(linv);
            v = v.scaled(linv);
        }
    }
};

using QPoly = Poly<Rat>;

// g expressed in powers of (X-a): repeated synthetic division
inline std::vector<Rat> taylor_coefficients(const QPoly& g, const Rat& a) {
    std::vector<Rat> work = g.c, out;
    while (!work.empty()) {
        // divide by (X - a): remainder is the next coefficient
        Rat rem = 0;
        for (auto it = work.rbegin(); it != work.rend(); ++it) rem = rem * a + *it;
        out.push_back(rem);
        std::vector<Rat> quo;
        Rat carry = 0;
        for (size_t i = work.size(); i-- > 1;) {
            carry = carry * a + work[i];
            quo.push_back(carry);
        }
        std::reverse(quo.begin(), quo.end());
        work = std::move(quo);
        while (!work.empty() && sgn(work.back()) == 0) work.pop_back();
        if (work.empty()) break;
    }
    return out;
}

inline Int resultant(const QPoly& a0, const QPoly& b0) {
    // Euclidean resultant over Q; inputs here are integer polynomials of
    // modest degree, so growth is not a concern.
    QPoly a = a0, b = b0;
    if (a.zero() || b.zero()) return 0;
    Rat res = 1;
    while (b.degree() > 0) {
        auto [q, r] = QPoly::divrem(a, b);
        long da = a.degree(), db = b.degree(), dr = r.zero() ? -1 : r.degree();
        Rat lb = b.leading();
        Rat lbpow = 1;
        for (long i = 0; i < da - (dr < 0 ? 0 : dr); ++i) lbpow *= lb;
        if (((da % 2) == 1) && ((db % 2) == 1)) res = -res;
        res *= lbpow;
        if (r.zero()) return 0;
        a = b;
        b = r;
    }
    // b is a nonzero constant
    Rat lb = b.c[0];
    Rat lbpow = 1;
    for (long i = 0; i < a.degree(); ++i) lbpow *= lb;
    res *= lbpow;
    if (res.get_den() != 1)
        throw std::runtime_error("resultant: non-integer result for integer inputs");
    return res.get_num();
}

inline std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// canonical rendering: lowest-first coefficient list
inline std::string poly_to_string(const QPoly& p) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (i) os << ", ";
        os << rat_to_string(p.c[i]);
    }
    os << "]";
    return os.str();
}

}  // namespace qcyc
