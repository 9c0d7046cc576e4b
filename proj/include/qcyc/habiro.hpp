#pragma once

// Truncated Habiro rings: tuples (f_e) in R[q]/Phi_e(q)^{n_e} for a modulus
// profile (n_e), together with the Habiro Frobenius, lifted cyclotomic
// norms, the square-zero exp/log, and the Nygaard / at-d twist modules.

#include "qcyc/qwitt.hpp"

namespace qcyc {

struct PrecisionShortfall : std::invalid_argument {
    PrecisionShortfall() : std::invalid_argument("source profile precision is insufficient") {}
};

struct NotCongruentToOne : std::domain_error {
    long witness;
    explicit NotCongruentToOne(long e)
        : std::domain_error("component " + std::to_string(e) +
                            " is not congruent to 1 modulo the twist ideal"),
          witness(e) {}
};

struct ModulusProfile {
    long level = 1;
    std::map<long, long> exponents;  // e | level -> n_e; absent means 0

    static ModulusProfile uniform(long m, long n) {
        ModulusProfile p{m, {}};
        for (long e : divisors(m)) p.exponents[e] = n;
        return p;
    }
    // exponent 2 on e|m, 1 on the remaining e|mp
    static ModulusProfile mixed(long m, long mp) {
        if (mp % m != 0) throw std::invalid_argument("mixed profile: m must divide m'");
        ModulusProfile p{mp, {}};
        for (long e : divisors(mp)) p.exponents[e] = (m % e == 0) ? 2 : 1;
        return p;
    }
    // the mixed profile restricted to indices divisible by d
    static ModulusProfile mixed_at_d(long m, long mp, long d) {
        ModulusProfile p{mp, {}};
        for (long e : divisors(mp))
            if (e % d == 0) p.exponents[e] = (m % e == 0) ? 2 : 1;
        return p;
    }
    long exponent_at(long e) const {
        auto it = exponents.find(e);
        return it == exponents.end() ? 0 : it->second;
    }
    bool operator==(const ModulusProfile& o) const {
        return level == o.level && exponents == o.exponents;
    }
};

struct HabiroTruncElement {
    const NumberRing* ring = nullptr;
    ModulusProfile profile;
    std::map<long, ComponentElement> components;  // e with n_e >= 1
    std::set<long> allowedSupport;
};

inline bool hab_equal(const HabiroTruncElement& a, const HabiroTruncElement& b) {
    return a.profile == b.profile && a.components == b.components;
}

inline HabiroTruncElement hab_mul(const HabiroTruncElement& a, const HabiroTruncElement& b) {
    HabiroTruncElement r = a;
    for (auto& [e, v] : r.components) v = v * b.components.at(e);
    return r;
}

inline HabiroTruncElement hab_invert(const HabiroTruncElement& a) {
    HabiroTruncElement r = a;
    for (auto& [e, v] : r.components) v = v.invert(a.allowedSupport);
    return r;
}

inline HabiroTruncElement from_polynomial(const NumberRing& R, const RPoly& g,
                                          const ModulusProfile& profile) {
    HabiroTruncElement r{&R, profile, {}, R.inverted_primes()};
    for (const auto& [e, n] : profile.exponents) {
        if (n < 1) continue;
        r.components.emplace(e, ComponentElement(R, e, n, g));
    }
    return r;
}

inline HabiroTruncElement from_qpolynomial(const NumberRing& R, const QPoly& g,
                                           const ModulusProfile& profile) {
    return from_polynomial(R, rpoly_from_qpoly(g), profile);
}

// (f_{e/d}(q^d))_e on the target profile; requires d | e and
// n_{e/d} >= n_e for every target index (Phi_e(q)^n divides Phi_{e/d}(q^d)^n)
inline HabiroTruncElement habiro_frobenius(const HabiroTruncElement& f, long d,
                                           const ModulusProfile& target) {
    HabiroTruncElement r{f.ring, target, {}, f.allowedSupport};
    for (const auto& [e, n] : target.exponents) {
        if (n < 1) continue;
        if (e % d != 0) throw std::invalid_argument("habiro_frobenius: target index not divisible by d");
        long src = e / d;
        if (f.profile.exponent_at(src) < n) throw PrecisionShortfall();
        r.components.emplace(e, f.components.at(src).substitute_power(d, e, n));
    }
    return r;
}

// lifted cyclotomic norm on uniform(m,2) elements, landing in mixed(m,m'):
// component at e|m' is f_{(e,m)}(q^{e/(e,m)})^{m'/[e,m]}
inline HabiroTruncElement lifted_norm(const HabiroTruncElement& f, long mp) {
    long m = f.profile.level;
    if (mp % m != 0) throw std::invalid_argument("lifted_norm: m must divide m'");
    ModulusProfile target = ModulusProfile::mixed(m, mp);
    HabiroTruncElement r{f.ring, target, {}, f.allowedSupport};
    for (long e : divisors(mp)) {
        long g = gcd_long(e, m);
        long l = lcm_long(e, m);
        long n = target.exponent_at(e);
        if (f.profile.exponent_at(g) < n) throw PrecisionShortfall();
        auto base = f.components.at(g).substitute_power(e / g, e, n);
        r.components.emplace(e, base.pow(mp / l));
    }
    return r;
}

// the same norm formula from a mixed(base_m, m') source, landing in
// mixed(base_m, m''); this is the composite leg of the transitivity law
inline HabiroTruncElement lifted_norm_general(const HabiroTruncElement& f, long base_m,
                                              long mpp) {
    long m = f.profile.level;
    if (mpp % m != 0) throw std::invalid_argument("lifted_norm_general: level must divide m''");
    ModulusProfile target = ModulusProfile::mixed(base_m, mpp);
    HabiroTruncElement r{f.ring, target, {}, f.allowedSupport};
    for (long e : divisors(mpp)) {
        long g = gcd_long(e, m);
        long l = lcm_long(e, m);
        long n = target.exponent_at(e);
        if (f.profile.exponent_at(g) < n) throw PrecisionShortfall();
        auto base = f.components.at(g).truncated(std::min<long>(n, f.profile.exponent_at(g)))
                        .substitute_power(e / g, e, n);
        r.components.emplace(e, base.pow(mpp / l));
    }
    return r;
}

// ---------------------------------------------------------------------------
// twist modules

struct NygaardTwistElement {
    const NumberRing* ring = nullptr;
    long level = 1;
    std::map<long, ComponentElement> components;  // e|level, exponent 2, Phi_e | value
};

struct TwistAtDElement {
    const NumberRing* ring = nullptr;
    long level = 1;
    long d = 1;
    std::map<long, ComponentElement> components;  // d|e|level, exponent 2, Phi_e | value
    std::set<long> allowedSupport;
};

inline bool twist_equal(const NygaardTwistElement& a, const NygaardTwistElement& b) {
    return a.level == b.level && a.components == b.components;
}
inline bool twist_equal(const TwistAtDElement& a, const TwistAtDElement& b) {
    return a.level == b.level && a.d == b.d && a.components == b.components;
}

inline void check_twist_divisibility(const ComponentElement& v) {
    if (!v.truncated(1).zero())
        throw std::domain_error("twist component is not divisible by Phi_e");
}

inline NygaardTwistElement twist_add(const NygaardTwistElement& a, const NygaardTwistElement& b) {
    NygaardTwistElement r = a;
    for (auto& [e, v] : r.components) v = v + b.components.at(e);
    return r;
}
inline NygaardTwistElement twist_sub(const NygaardTwistElement& a, const NygaardTwistElement& b) {
    NygaardTwistElement r = a;
    for (auto& [e, v] : r.components) v = v - b.components.at(e);
    return r;
}
inline TwistAtDElement twist_add(const TwistAtDElement& a, const TwistAtDElement& b) {
    TwistAtDElement r = a;
    for (auto& [e, v] : r.components) v = v + b.components.at(e);
    return r;
}
inline TwistAtDElement twist_sub(const TwistAtDElement& a, const TwistAtDElement& b) {
    TwistAtDElement r = a;
    for (auto& [e, v] : r.components) v = v - b.components.at(e);
    return r;
}

// exp of the square-zero extension: x -> 1 + x, a unit of uniform(m,2)
inline HabiroTruncElement exp_twist(const NygaardTwistElement& x) {
    const NumberRing& R = *x.ring;
    HabiroTruncElement r{x.ring, ModulusProfile::uniform(x.level, 2), {}, R.inverted_primes()};
    for (const auto& [e, v] : x.components) {
        check_twist_divisibility(v);
        r.components.emplace(e, ComponentElement::from_qpoly(R, e, 2, QPoly::constant(Rat(1))) + v);
    }
    return r;
}

// log of a unit congruent to 1 modulo the twist ideal: t -> t - 1
inline NygaardTwistElement log_unit(const HabiroTruncElement& t) {
    NygaardTwistElement r{t.ring, t.profile.level, {}};
    for (const auto& [e, v] : t.components) {
        if (t.profile.exponent_at(e) != 2)
            throw std::invalid_argument("log_unit: expected a uniform exponent-2 profile");
        auto one = ComponentElement::from_qpoly(*t.ring, e, 2, QPoly::constant(Rat(1)));
        auto x = v - one;
        try {
            check_twist_divisibility(x);
        } catch (const std::domain_error&) {
            throw NotCongruentToOne(e);
        }
        r.components.emplace(e, x);
    }
    return r;
}

// [k]_{q^m} as a component at conductor e, exponent n
inline ComponentElement q_int_component(const NumberRing& R, long k, long m, long e, long n) {
    return ComponentElement::from_qpoly(R, e, n, q_integer(k).substitute_power(m));
}

// exact division of an exponent-2 twist component by [k]_{q^m}
inline ComponentElement divide_twist_by_qint(const ComponentElement& a, long k, long m,
                                             const std::set<long>& allowed) {
    if (k == 1) return a;
    auto den = q_int_component(*a.ring, k, m, a.conductor, a.exponent);
    return exact_divide(a, den, allowed);
}

// Nygaard transition m' -> m: restrict to e|m and divide by [m'/m]_{q^m};
// realizes (m'/m)^{-1} : (q^{m'}-1)/(q^{m'}-1)^2 = (q^m-1)/(q^m-1)^2
inline NygaardTwistElement twist_transition(const NygaardTwistElement& t, long m) {
    long mp = t.level;
    if (mp % m != 0) throw std::invalid_argument("twist_transition: m must divide level");
    const NumberRing& R = *t.ring;
    NygaardTwistElement r{t.ring, m, {}};
    for (long e : divisors(m))
        r.components.emplace(
            e, divide_twist_by_qint(t.components.at(e), mp / m, m, R.inverted_primes()));
    return r;
}

// the same transition on at-d twists
inline TwistAtDElement twist_transition(const TwistAtDElement& t, long m) {
    long mp = t.level;
    if (mp % m != 0) throw std::invalid_argument("twist_transition: m must divide level");
    TwistAtDElement r{t.ring, m, t.d, {}, t.allowedSupport};
    for (long e : divisors(m)) {
        if (e % t.d != 0) continue;
        r.components.emplace(
            e, divide_twist_by_qint(t.components.at(e), mp / m, m, t.allowedSupport));
    }
    return r;
}

// c-coordinate of a twist component under the (q^m - 1) normalization:
// value = (q^m - 1) * c mod Phi_e^2 determines c mod Phi_e
inline ComponentElement twist_c_coordinate(const ComponentElement& v, long m) {
    const NumberRing& R = *v.ring;
    long e = v.conductor;
    check_twist_divisibility(v);
    // exact division of the representative by Phi_e, then by the unit
    // (q^m - 1)/Phi_e, all mod Phi_e
    RPoly phi = rpoly_from_qpoly(cyclotomic_poly(e));
    auto [quo, rem] = RPoly::divrem(v.value, phi);
    if (!rem.zero()) throw std::logic_error("twist_c_coordinate: inexact division by Phi_e");
    QPoly cof = QPoly::divrem(QPoly::monomial(Rat(1), m) - QPoly::constant(Rat(1)),
                              cyclotomic_poly(e))
                    .first;
    ComponentElement c(R, e, 1, quo);
    auto u = ComponentElement::from_qpoly(R, e, 1, cof);
    return c * u.invert_unchecked();
}

// assemble an exponent-2 twist component (q^m - 1) * c from its c-coordinate
inline ComponentElement twist_from_c_coordinate(const ComponentElement& c, long m) {
    const NumberRing& R = *c.ring;
    long e = c.conductor;
    ComponentElement lift(R, e, 2, c.value);
    auto qm1 = ComponentElement::from_qpoly(
        R, e, 2, QPoly::monomial(Rat(1), m) - QPoly::constant(Rat(1)));
    return qm1 * lift;
}

}  // namespace qcyc
