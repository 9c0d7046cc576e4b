#pragma once

// First q-polylogarithm at roots of unity: the [zeta] classes, the
// canonical unit lift of 1 - zeta, the truncated Li_1 rational function,
// the key power-series identity in cross-multiplied polynomial form, and
// the comparison with the first Chern class cocycle.

#include "qcyc/cyclosyn.hpp"

namespace qcyc {

struct RootUnavailable : std::domain_error {
    explicit RootUnavailable(long e)
        : std::domain_error("no canonical " + std::to_string(e) + "-th root of the given root of unity") {}
};

struct RootOfUnity {
    const NumberRing* ring;
    long order;            // g
    RElement zeta;         // a primitive g-th root of unity in the ring

    RootOfUnity(const NumberRing& R, RElement z, long g) : ring(&R), order(g), zeta(std::move(z)) {
        if (zeta.pow(g) != RElement(1).promote(R))
            throw std::invalid_argument("RootOfUnity: zeta^g != 1");
        for (long p : prime_factors(g))
            if (zeta.pow(g / p) == RElement(1).promote(R))
                throw std::invalid_argument("RootOfUnity: order of zeta is smaller than g");
    }

    RootOfUnity inverse() const {
        RootOfUnity r = *this;
        r.zeta = zeta.pow(order - 1);
        return r;
    }

    // zeta^{1/e} = zeta^{e^{-1} mod g}; requires gcd(e, g) = 1
    RElement root(long e) const {
        if (gcd_long(e, order) != 1) throw RootUnavailable(e);
        return zeta.pow(inv_mod(e, order));
    }
    // zeta^{k/e}
    RElement root_power(long k, long e) const { return root(e).pow(((k % order) + order) % order); }
};

// [zeta] = (zeta^{1/e})_{e|m}, as constants in the uniform(m,2) profile
inline HabiroTruncElement zeta_class(const RootOfUnity& z, long m) {
    const NumberRing& R = *z.ring;
    HabiroTruncElement r{&R, ModulusProfile::uniform(m, 2), {}, R.inverted_primes()};
    for (long e : divisors(m))
        r.components.emplace(e, ComponentElement::constant(R, e, 2, z.root(e)));
    return r;
}

// the canonical lift of Pi_m(1 - zeta): componentwise product
// prod_{0 <= j < m} (1 - q^j zeta^{1/e}) mod Phi_e(q)^2
inline HabiroTruncElement canonical_unit_lift(const RootOfUnity& z, long m) {
    const NumberRing& R = *z.ring;
    HabiroTruncElement r{&R, ModulusProfile::uniform(m, 2), {}, R.inverted_primes()};
    for (long e : divisors(m)) {
        auto acc = ComponentElement::from_qpoly(R, e, 2, QPoly::constant(Rat(1)));
        RElement root = z.root(e);
        for (long j = 0; j < m; ++j) {
            RPoly factor;
            factor.c = {RElement(1)};
            factor = factor - RPoly::monomial(root, j);
            acc = acc * ComponentElement(R, e, 2, factor);
        }
        r.components.emplace(e, acc);
    }
    return r;
}

// ---------------------------------------------------------------------------
// the truncated Li_1 rational function in T over Z[q]

struct RationalFunctionInT {
    std::vector<QPoly> num;  // lowest T-degree first
    std::vector<QPoly> den;
};

// (1/(1 - T^m)) sum_{0<k<m, d !| k} T^k/[k]_q, cleared to a single fraction
inline RationalFunctionInT li1_formal(long d, long m) {
    if (d < 2) throw std::invalid_argument("li1_formal: d >= 2 required");
    std::vector<long> ks;
    for (long k = 1; k < m; ++k)
        if (k % d != 0) ks.push_back(k);
    QPoly L = QPoly::constant(Rat(1));
    for (long k : ks) L = L * q_integer(k);

    RationalFunctionInT r;
    r.num.assign(m, QPoly());
    for (long k : ks) {
        QPoly cof = QPoly::constant(Rat(1));
        for (long kp : ks)
            if (kp != k) cof = cof * q_integer(kp);
        r.num[k] = cof;
    }
    // den = (1 - T^m) * L
    r.den.assign(m + 1, QPoly());
    r.den[0] = L;
    r.den[m] = -L;
    return r;
}

// ---------------------------------------------------------------------------
// polynomials in T with ComponentElement coefficients (small ad-hoc layer;
// only the polylog checks need it)

using CPolyT = std::vector<ComponentElement>;

inline ComponentElement c_one(const NumberRing& R, long e, long n) {
    return ComponentElement::from_qpoly(R, e, n, QPoly::constant(Rat(1)));
}
inline CPolyT ct_constant(const ComponentElement& a) { return {a}; }
inline void ct_trim(CPolyT& a) {
    while (!a.empty() && a.back().zero()) a.pop_back();
}
inline CPolyT ct_mul(const CPolyT& a, const CPolyT& b, const ComponentElement& zero) {
    if (a.empty() || b.empty()) return {};
    CPolyT r(a.size() + b.size() - 1, zero);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    ct_trim(r);
    return r;
}
inline CPolyT ct_sub(CPolyT a, const CPolyT& b, const ComponentElement& zero) {
    if (a.size() < b.size()) a.resize(b.size(), zero);
    for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
    ct_trim(a);
    return a;
}
inline bool ct_equal(CPolyT a, CPolyT b) {
    ct_trim(a);
    ct_trim(b);
    return a == b;
}
// reduce every coefficient to exponent 1
inline CPolyT ct_truncated(const CPolyT& a, long n) {
    CPolyT r;
    for (const auto& c : a) r.push_back(c.truncated(n));
    ct_trim(r);
    return r;
}

// view of a rational function in T inside a single component ring
inline std::pair<CPolyT, CPolyT> rf_component(const RationalFunctionInT& f, const NumberRing& R,
                                              long e, long n) {
    CPolyT num, den;
    for (const auto& p : f.num) num.push_back(ComponentElement::from_qpoly(R, e, n, p));
    for (const auto& p : f.den) den.push_back(ComponentElement::from_qpoly(R, e, n, p));
    ct_trim(num);
    ct_trim(den);
    return {num, den};
}

// compatibility of li1_formal across truncation levels m | mp: at every
// component e with d|e|m the two rational functions agree mod Phi_e, checked
// by cross-multiplication (every [k']_q in a denominator has d !| k', hence
// e !| k', so the denominators are regular there)
inline bool li1_consistency_check(long d, long m, long mp) {
    if (mp % m != 0) throw std::invalid_argument("li1_consistency_check: need m | mp");
    const NumberRing& R = NumberRing::integers();
    auto lo = li1_formal(d, m);
    auto hi = li1_formal(d, mp);
    for (long e : divisors(m)) {
        if (e % d != 0) continue;
        ComponentElement zero = ComponentElement::from_qpoly(R, e, 1, QPoly());
        auto [nlo, dlo] = rf_component(lo, R, e, 1);
        auto [nhi, dhi] = rf_component(hi, R, e, 1);
        if (!ct_equal(ct_mul(nlo, dhi, zero), ct_mul(nhi, dlo, zero))) return false;
    }
    return true;
}

// the key identity behind the main theorem, verified in cross-multiplied
// polynomial form over Z[q]/Phi_e(q)^2:
//   (A - B)(1 - T^m) L = -d [m]_q B sum_{0<k<m, d !| k} T^k L/[k]_q
// with A = prod_j (1 - q^j T)^d, B = prod_j (1 - q^{jd} T^d), and
// L = prod_{d !| k'} [k']_q; all cleared multipliers are regular, so this is
// equivalent to the fractional statement.  flip_sign exercises the negative
// control.
inline bool key_identity_check(long d, long m, long e, bool flip_sign = false) {
    if (d < 2) throw std::invalid_argument("key_identity_check: d >= 2 required");
    if (e % d != 0 || m % e != 0)
        throw std::invalid_argument("key_identity_check: need d | e | m");
    const NumberRing& R = NumberRing::integers();
    const long n = 2;
    ComponentElement zero = ComponentElement::from_qpoly(R, e, n, QPoly());
    ComponentElement one = c_one(R, e, n);
    auto cc = [&](const QPoly& p) { return ComponentElement::from_qpoly(R, e, n, p); };

    // A and B
    CPolyT A{one}, B{one};
    for (long j = 0; j < m; ++j) {
        // 1 - q^j T
        CPolyT f{one, -cc(QPoly::monomial(Rat(1), j))};
        for (long rep = 0; rep < d; ++rep) A = ct_mul(A, f, zero);
        // 1 - q^{jd} T^d
        CPolyT g(d + 1, zero);
        g[0] = one;
        g[d] = -cc(QPoly::monomial(Rat(1), j * d));
        B = ct_mul(B, g, zero);
    }

    // well-definedness: A = B mod Phi_e
    if (!ct_equal(ct_truncated(A, 1), ct_truncated(B, 1))) return false;

    std::vector<long> ks;
    for (long k = 1; k < m; ++k)
        if (k % d != 0) ks.push_back(k);
    ComponentElement L = one;
    for (long k : ks) L = L * cc(q_integer(k));

    // lhs = (A - B)(1 - T^m) L
    CPolyT one_minus_Tm(m + 1, zero);
    one_minus_Tm[0] = one;
    one_minus_Tm[m] = -one;
    CPolyT lhs = ct_mul(ct_mul(ct_sub(A, B, zero), one_minus_Tm, zero),
                        ct_constant(L), zero);

    // rhs = -d [m]_q B sum_k T^k (L/[k]_q)
    CPolyT sum;
    for (long k : ks) {
        ComponentElement cof = one;
        for (long kp : ks)
            if (kp != k) cof = cof * cc(q_integer(kp));
        CPolyT term(k + 1, zero);
        term[k] = cof;
        sum = ct_sub(sum, term, zero);  // accumulate with the minus sign
    }
    ComponentElement scale = cc(q_integer(m)).scaled(RElement(flip_sign ? -d : d));
    CPolyT rhs = ct_mul(ct_mul(B, sum, zero), ct_constant(scale), zero);

    return ct_equal(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Li_1 classes and the main theorem

// component at e (d|e|m):
//   [m]_q (1 - zeta^{m/e})^{-1} sum_{0<k<m, d !| k} zeta^{k/e} [k]_q^{-1}
// reduced mod Phi_e(q)^2
inline TwistAtDElement li1_class(const RootOfUnity& z, long d, long m) {
    const NumberRing& R = *z.ring;
    // zeta = -1 needs 1 - zeta = 2 to be a unit, so 2 must be inverted
    if (z.order < 2 || (z.order == 2 && !R.inverted_primes().count(2)))
        throw std::invalid_argument("li1_class: zeta = +-1 needs 2 inverted in the ring");
    TwistAtDElement out{&R, m, d, {}, at_d_allowed_support(R, m, d)};
    for (long e : divisors(m)) {
        if (e % d != 0) continue;
        ComponentElement acc = ComponentElement::from_qpoly(R, e, 2, QPoly());
        for (long k = 1; k < m; ++k) {
            if (k % d == 0) continue;
            auto inv_k = ComponentElement::from_qpoly(R, e, 2, q_integer(k)).invert_unchecked();
            acc = acc + inv_k.scaled(z.root_power(k, e));
        }
        RElement unit = (RElement(1) - z.root_power(m, e)).inverse();
        auto val = acc.scaled(unit) * ComponentElement::from_qpoly(R, e, 2, q_integer(m));
        val.check_support(out.allowedSupport);
        out.components.emplace(e, val);
    }
    return out;
}

inline TwistAtDElement twist_neg(const TwistAtDElement& t) {
    TwistAtDElement r = t;
    for (auto& [e, v] : r.components) v = -v;
    return r;
}

// Symmetry between the classes of zeta and zeta^{-1}.  The two classes are
// not equal componentwise at a fixed level (already at m = 2 the difference
// is the nonzero element 2 [2]_q zeta^3/(1 - zeta)); they agree in
// degree-one cohomology.  Since 1 - zeta = (-zeta)(1 - zeta^{-1}) and the
// cocycle of a bare root of unity with its monomial lift vanishes, the
// difference is the coboundary of the explicit Nygaard element comparing
// the two resulting lifts of 1 - zeta, which is what we verify.
inline bool li1_symmetry_check(const RootOfUnity& z, long d, long m) {
    const NumberRing& R = *z.ring;
    auto zi = z.inverse();
    auto L1 = li1_class(z, d, m);
    auto L2 = li1_class(zi, d, m);
    auto lift1 = canonical_unit_lift(z, m);
    auto lift2 = hab_mul(teichmuller_lift(R, -z.zeta, m), canonical_unit_lift(zi, m));
    auto x = log_unit(hab_mul(lift2, hab_invert(lift1)));
    auto lhs = twist_sub(L1, L2);
    return twist_equal(lhs, can_minus_frob(x, d, lhs.allowedSupport));
}

struct MainTheoremResult {
    bool pass = true;
    long witness_e = 0;
    TwistAtDElement chern;  // cocycle of 1 - zeta with the canonical lift
    TwistAtDElement li1;    // Li_1 class
};

// chern_cocycle(1 - zeta, m, d, canonical lift) must equal -li1_class
inline MainTheoremResult main_theorem_check(const RootOfUnity& z, long d, long m) {
    const NumberRing& R = *z.ring;
    RElement u = RElement(1).promote(R) - z.zeta;
    auto lift = canonical_unit_lift(z, m);
    MainTheoremResult res;
    res.chern = chern_cocycle(u, m, d, lift).value;
    res.li1 = li1_class(z, d, m);
    auto expected = twist_neg(res.li1);
    for (const auto& [e, v] : res.chern.components) {
        if (v != expected.components.at(e)) {
            res.pass = false;
            res.witness_e = e;
            return res;
        }
    }
    res.pass = res.chern.components.size() == expected.components.size();
    return res;
}

}  // namespace qcyc
