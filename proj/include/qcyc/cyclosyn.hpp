#pragma once

// The truncated cyclosyntomic complex in degree-one terms: canonical and
// twisted-Frobenius maps on Nygaard elements, the s_d homotopy attached to
// an extension pair (y, z), the first Chern class cocycle, and its
// lift-independence / cross-level coherence.

#include "qcyc/habiro.hpp"

namespace qcyc {

struct WellDefinednessViolation : std::domain_error {
    long witness;
    explicit WellDefinednessViolation(long e)
        : std::domain_error("norm and Frobenius of the lift disagree modulo Phi_e at e = " +
                            std::to_string(e)),
          witness(e) {}
};

struct InvalidLift : std::domain_error {
    long witness;
    explicit InvalidLift(long e)
        : std::domain_error("lift does not reduce to the Teichmuller tuple at e = " +
                            std::to_string(e)),
          witness(e) {}
};

// y a unit of the uniform(m,2) truncated Habiro ring reducing to the
// Teichmuller tuple of the unit z: y_e = z^{m/e} mod Phi_e for all e|m
struct EmPair {
    HabiroTruncElement y;
    RElement z;
};

// the multiplicative monomial lift: constant components z^{m/e} mod Phi_e^2
inline HabiroTruncElement teichmuller_lift(const NumberRing& R, const RElement& z, long m) {
    HabiroTruncElement r{&R, ModulusProfile::uniform(m, 2), {}, R.inverted_primes()};
    for (long e : divisors(m))
        r.components.emplace(e, ComponentElement::constant(R, e, 2, z.pow(m / e)));
    return r;
}

inline void validate_em_pair(const EmPair& pair) {
    long m = pair.y.profile.level;
    for (long e : divisors(m)) {
        auto red = pair.y.components.at(e).truncated(1);
        auto want = ComponentElement::constant(*pair.y.ring, e, 1, pair.z.pow(m / e));
        if (red != want) throw InvalidLift(e);
    }
}

// can: component restriction of a Nygaard element to indices d|e|m
inline TwistAtDElement can_twist(const NygaardTwistElement& x, long d,
                                 const std::set<long>& allowed) {
    TwistAtDElement r{x.ring, x.level, d, {}, allowed};
    for (const auto& [e, v] : x.components) {
        if (e % d != 0) continue;
        v.check_support(allowed);
        r.components.emplace(e, v);
    }
    return r;
}
inline TwistAtDElement can_twist(const NygaardTwistElement& x, long d) {
    return can_twist(x, d, at_d_allowed_support(*x.ring, x.level, d));
}

// Frob_d{1}: the Habiro-level composite q -> q^d on components followed by
// exact division by [d]_{q^m}, on indices d|e|m
inline TwistAtDElement frob_twist(const NygaardTwistElement& x, long d,
                                  const std::set<long>& allowed) {
    long m = x.level;
    TwistAtDElement r{x.ring, m, d, {}, allowed};
    for (long e : divisors(m)) {
        if (e % d != 0) continue;
        auto sub = x.components.at(e / d).substitute_power(d, e, 2);
        r.components.emplace(e, divide_twist_by_qint(sub, d, m, allowed));
    }
    return r;
}
inline TwistAtDElement frob_twist(const NygaardTwistElement& x, long d) {
    return frob_twist(x, d, at_d_allowed_support(*x.ring, x.level, d));
}

// the same map in (q^m - 1)-normalized c-coordinates: c_e -> c_{e/d}(q^d)
inline TwistAtDElement frob_twist_by_c_coordinates(const NygaardTwistElement& x, long d,
                                                   const std::set<long>& allowed) {
    long m = x.level;
    TwistAtDElement r{x.ring, m, d, {}, allowed};
    for (long e : divisors(m)) {
        if (e % d != 0) continue;
        auto c = twist_c_coordinate(x.components.at(e / d), m);
        auto moved = c.substitute_power(d, e, 1);
        r.components.emplace(e, twist_from_c_coordinate(moved, m));
    }
    return r;
}

inline TwistAtDElement can_minus_frob(const NygaardTwistElement& x, long d,
                                      const std::set<long>& allowed) {
    return twist_sub(can_twist(x, d, allowed), frob_twist(x, d, allowed));
}
inline TwistAtDElement can_minus_frob(const NygaardTwistElement& x, long d) {
    return can_minus_frob(x, d, at_d_allowed_support(*x.ring, x.level, d));
}

// s_d(y, z) = (1/d) log(lifted-norm(y) / Habiro-Frobenius(y)), landing in
// the at-d twist at level m
inline TwistAtDElement s_d(const EmPair& pair, long d) {
    validate_em_pair(pair);
    long m = pair.y.profile.level;
    long dm = d * m;
    const NumberRing& R = *pair.y.ring;
    std::set<long> allowed = at_d_allowed_support(R, dm, d);

    auto P = lifted_norm(pair.y, dm);
    auto target = ModulusProfile::mixed_at_d(m, dm, d);
    auto F = habiro_frobenius(pair.y, d, target);

    TwistAtDElement out{&R, m, d, {}, at_d_allowed_support(R, m, d)};
    for (const auto& [e, n] : target.exponents) {
        const auto& Pe = P.components.at(e).truncated(n);
        const auto& Fe = F.components.at(e);
        if (n == 1) {
            // exponent-1 component: the two sides must agree on the nose,
            // making the log contribution zero
            if (Pe != Fe) throw WellDefinednessViolation(e);
            continue;
        }
        auto diff = Pe - Fe;
        if (!diff.truncated(1).zero()) throw WellDefinednessViolation(e);
        auto t = Pe * Fe.invert_unchecked();
        auto one = ComponentElement::from_qpoly(R, e, 2, QPoly::constant(Rat(1)));
        auto x = t - one;
        out.components.emplace(e, divide_twist_by_qint(x, d, m, out.allowedSupport));
    }
    (void)allowed;
    return out;
}

struct CocycleClass {
    long level;
    long d;
    TwistAtDElement value;
};

inline CocycleClass chern_cocycle(const RElement& u, long m, long d,
                                  const HabiroTruncElement& lift) {
    EmPair pair{lift, u};
    return CocycleClass{m, d, s_d(pair, d)};
}

// two lifts of the same unit differ by exp of a Nygaard element x, and the
// cocycles must differ by exactly (can - Frob_d{1})(x)
inline bool lift_independence(const RElement& u, long m, long d,
                              const HabiroTruncElement& lift1,
                              const HabiroTruncElement& lift2) {
    auto x = log_unit(hab_mul(lift2, hab_invert(lift1)));
    auto lhs = twist_sub(s_d(EmPair{lift2, u}, d), s_d(EmPair{lift1, u}, d));
    auto rhs = can_minus_frob(x, d, lhs.allowedSupport);
    return twist_equal(lhs, rhs);
}

// coherence of the cocycles across levels m | m': the Nygaard transition of
// the level-m' class must equal the level-m class
inline bool cross_level_check(const RElement& u, long m, long mp, long d,
                              const HabiroTruncElement& lift_m,
                              const HabiroTruncElement& lift_mp) {
    auto top = chern_cocycle(u, mp, d, lift_mp);
    auto bottom = chern_cocycle(u, m, d, lift_m);
    return twist_equal(twist_transition(top.value, m), bottom.value);
}

}  // namespace qcyc
