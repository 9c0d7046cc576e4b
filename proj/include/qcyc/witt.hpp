#pragma once

// m-truncated big Witt vectors: ghost map, Dwork membership, Frobenius,
// Verschiebung, Teichmuller, restriction.  Ring operations are transported
// through ghost coordinates; this is faithful for flat Z-algebras, which is
// the only kind this library constructs.

#include "qcyc/number_ring.hpp"

#include <map>

namespace qcyc {

struct NotInImage : std::domain_error {
    long witness;
    explicit NotInImage(long e)
        : std::domain_error("tuple is not in the image of the ghost map (divisor " +
                            std::to_string(e) + ")"),
          witness(e) {}
};

struct WittVector {
    const NumberRing* ring;
    long level;
    std::map<long, RElement> coords;  // keyed by divisors of level
};

struct GhostTuple {
    const NumberRing* ring;
    long level;
    std::map<long, RElement> coords;
};

inline GhostTuple ghost(const WittVector& w) {
    GhostTuple g{w.ring, w.level, {}};
    for (long e : divisors(w.level)) {
        RElement acc(0);
        for (long d : divisors(e))
            acc = acc + RElement(d) * w.coords.at(d).pow(e / d);
        g.coords[e] = acc;
    }
    return g;
}

// invert the ghost formula divisor by divisor; x_e must be integral, with
// denominators allowed only at primes dividing N
inline WittVector from_ghost(const GhostTuple& g) {
    const NumberRing* R = g.ring;
    std::set<long> allowed = R ? R->inverted_primes() : std::set<long>{};
    WittVector w{R, g.level, {}};
    for (long e : divisors(g.level)) {
        RElement acc = g.coords.at(e);
        for (long d : divisors(e))
            if (d < e) acc = acc - RElement(d) * w.coords.at(d).pow(e / d);
        RElement xe = acc * RElement(Rat(1, e));
        for (long p : xe.denominator_support())
            if (!allowed.count(p)) throw NotInImage(e);
        w.coords[e] = xe;
    }
    return w;
}

// Dwork's criterion: gh_e == phi_p(gh_{e/p}) mod p^{v_p(e)} for all p|e|m.
// Primes dividing N give the zero quotient ring, so those congruences are
// vacuous (matching from_ghost, which allows such denominators).
inline bool dwork_check(const GhostTuple& g) {
    const NumberRing& R = g.ring ? *g.ring : NumberRing::integers();
    for (long p : prime_factors(g.level)) {
        if (R.N % p == 0) continue;
        long vmax = valuation(g.level, p);
        FrobeniusLift phi(R, p, vmax);
        for (long e : divisors(g.level)) {
            if (e % p != 0) continue;
            long v = valuation(e, p);
            Int M = pow_int(Int(p), v);
            auto lhs_elt = g.coords.at(e).promote(R);
            auto rhs = frobenius_apply_mod(g.coords.at(e / p).promote(R), phi, v);
            // compare coefficients mod p^v
            ModRingCtx ctx(M, R.f);
            std::vector<Int> lhs;
            for (const auto& c : lhs_elt.val.c) lhs.push_back(rat_mod_pk(c, p, M));
            if (ctx.reduce(std::move(lhs)) != ctx.reduce(std::move(rhs))) return false;
        }
    }
    return true;
}

inline bool ghost_in_image(const GhostTuple& g) {
    try {
        from_ghost(g);
        return true;
    } catch (const NotInImage&) {
        return false;
    }
}

inline GhostTuple ghost_add(const GhostTuple& a, const GhostTuple& b) {
    if (a.level != b.level) throw std::invalid_argument("ghost_add: level mismatch");
    GhostTuple r = a;
    for (auto& [e, v] : r.coords) v = v + b.coords.at(e);
    return r;
}
inline GhostTuple ghost_mul(const GhostTuple& a, const GhostTuple& b) {
    if (a.level != b.level) throw std::invalid_argument("ghost_mul: level mismatch");
    GhostTuple r = a;
    for (auto& [e, v] : r.coords) v = v * b.coords.at(e);
    return r;
}

inline WittVector witt_add(const WittVector& a, const WittVector& b) {
    return from_ghost(ghost_add(ghost(a), ghost(b)));
}
inline WittVector witt_mul(const WittVector& a, const WittVector& b) {
    return from_ghost(ghost_mul(ghost(a), ghost(b)));
}

// F_d on ghost coordinates: (g_e)_{e|dm} -> (g_{de})_{e|m}
inline GhostTuple ghost_frobenius(const GhostTuple& g, long d) {
    if (g.level % d != 0) throw std::invalid_argument("ghost_frobenius: d does not divide level");
    long m = g.level / d;
    GhostTuple r{g.ring, m, {}};
    for (long e : divisors(m)) r.coords[e] = g.coords.at(d * e);
    return r;
}

// V_d on ghost coordinates: (g_e)_{e|m} -> (d*g_{e/d} when d|e, else 0)_{e|dm}
inline GhostTuple ghost_verschiebung(const GhostTuple& g, long d) {
    GhostTuple r{g.ring, g.level * d, {}};
    for (long e : divisors(r.level))
        r.coords[e] = (e % d == 0) ? RElement(d) * g.coords.at(e / d) : RElement(0);
    return r;
}

inline WittVector witt_frobenius(const WittVector& w, long d) {
    return from_ghost(ghost_frobenius(ghost(w), d));
}
inline WittVector witt_verschiebung(const WittVector& w, long d) {
    return from_ghost(ghost_verschiebung(ghost(w), d));
}

// Witt-coordinate truncation (x_e)_{e|m'} -> (x_e)_{e|m}
inline WittVector restriction(const WittVector& w, long m) {
    if (w.level % m != 0) throw std::invalid_argument("restriction: m does not divide level");
    WittVector r{w.ring, m, {}};
    for (long e : divisors(m)) r.coords[e] = w.coords.at(e);
    return r;
}

// Witt coordinates (x, 0, ..., 0); ghost coordinates (x^e)_{e|m}
inline WittVector teichmuller(const RElement& x, long m) {
    WittVector w{x.ring, m, {}};
    for (long e : divisors(m)) w.coords[e] = (e == 1) ? x : RElement(0);
    return w;
}

inline bool witt_equal(const WittVector& a, const WittVector& b) {
    return a.level == b.level && a.coords == b.coords;
}
inline bool ghost_equal(const GhostTuple& a, const GhostTuple& b) {
    return a.level == b.level && a.coords == b.coords;
}

}  // namespace qcyc
