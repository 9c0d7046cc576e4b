#pragma once

// Big q-Witt vectors represented by q-ghost tuples (c_e)_{e|m} with
// c_e in R[q]/Phi_e(q), plus the at-d variant living on indices d|e|m with
// Phi_{e'} inverted for d !| e'.

#include "qcyc/component.hpp"
#include "qcyc/witt.hpp"

#include <map>
#include <optional>

namespace qcyc {

struct QWittElement {
    const NumberRing* ring;
    long level;
    std::map<long, ComponentElement> components;  // e | level, exponent 1
};

struct QWittAtD {
    const NumberRing* ring;
    long level;
    long d;
    std::map<long, ComponentElement> components;  // d | e | level
    std::set<long> allowedSupport;
};

// Primes allowed in denominators of at-d objects: primes of N plus every
// prime met when inverting Phi_{e'} (d !| e', e' > 1) against a retained
// conductor e.  The e' range is capped at the ambient level, which covers
// every inversion the library performs at that level.
inline std::set<long> at_d_allowed_support(const NumberRing& R, long level, long d) {
    std::set<long> out = R.inverted_primes();
    for (long e : divisors(level)) {
        if (e % d != 0) continue;
        for (long ep = 2; ep <= level; ++ep) {
            if (ep % d == 0) continue;
            auto s = prime_support(resultant(cyclotomic_poly(e), cyclotomic_poly(ep)));
            out.insert(s.begin(), s.end());
        }
    }
    return out;
}

inline QWittElement qw_add(const QWittElement& a, const QWittElement& b) {
    if (a.level != b.level) throw std::invalid_argument("qw_add: level mismatch");
    QWittElement r = a;
    for (auto& [e, v] : r.components) v = v + b.components.at(e);
    return r;
}
inline QWittElement qw_mul(const QWittElement& a, const QWittElement& b) {
    if (a.level != b.level) throw std::invalid_argument("qw_mul: level mismatch");
    QWittElement r = a;
    for (auto& [e, v] : r.components) v = v * b.components.at(e);
    return r;
}
inline bool qw_equal(const QWittElement& a, const QWittElement& b) {
    return a.level == b.level && a.components == b.components;
}

// component at e is the constant x^{m/e} (reversed q-ghost indexing)
inline QWittElement q_teichmuller(const NumberRing& R, const RElement& x, long m) {
    QWittElement r{&R, m, {}};
    for (long e : divisors(m))
        r.components.emplace(e, ComponentElement::constant(R, e, 1, x.pow(m / e)));
    return r;
}

// F_{m'/m}: index restriction to e | m
inline QWittElement q_frobenius(const QWittElement& c, long m) {
    if (c.level % m != 0) throw std::invalid_argument("q_frobenius: m does not divide level");
    QWittElement r{c.ring, m, {}};
    for (long e : divisors(m)) r.components.emplace(e, c.components.at(e));
    return r;
}

// V_d: (c_e)_{e|m} -> (d c_e when e|m, else 0)_{e|dm}
inline QWittElement q_verschiebung(const QWittElement& c, long d) {
    const NumberRing& R = *c.ring;
    QWittElement r{c.ring, c.level * d, {}};
    for (long e : divisors(r.level)) {
        if (c.level % e == 0)
            r.components.emplace(e, c.components.at(e).scaled(RElement(d)));
        else
            r.components.emplace(e, ComponentElement::constant(R, e, 1, RElement(0)));
    }
    return r;
}

// Pi_{m'/m}: component at e|m' is c_{(e,m)}(q^{e/(e,m)})^{m'/[e,m]}
inline QWittElement cyclotomic_norm(const QWittElement& c, long mp) {
    long m = c.level;
    if (mp % m != 0) throw std::invalid_argument("cyclotomic_norm: m does not divide m'");
    QWittElement r{c.ring, mp, {}};
    for (long e : divisors(mp)) {
        long g = gcd_long(e, m);
        long l = lcm_long(e, m);
        auto base = c.components.at(g).substitute_power(e / g, e, 1);
        r.components.emplace(e, base.pow(mp / l));
    }
    return r;
}

// Frob_d^cyc: (c_e)_{e|m} -> (c_{e/d}(q^d))_{d|e|dm}
inline QWittAtD cyclotomic_frobenius(const QWittElement& c, long d) {
    long m = c.level;
    QWittAtD r{c.ring, d * m, d, {}, at_d_allowed_support(*c.ring, d * m, d)};
    for (long e : divisors(d * m)) {
        if (e % d != 0) continue;
        r.components.emplace(e, c.components.at(e / d).substitute_power(d, e, 1));
    }
    return r;
}

inline QWittAtD canonical_to_at_d(const QWittElement& c, long d,
                                  const std::set<long>& allowed) {
    QWittAtD r{c.ring, c.level, d, {}, allowed};
    for (const auto& [e, v] : c.components) {
        if (e % d != 0) continue;
        v.check_support(allowed);
        r.components.emplace(e, v);
    }
    return r;
}

inline QWittAtD at_d_add(const QWittAtD& a, const QWittAtD& b) {
    QWittAtD r = a;
    for (auto& [e, v] : r.components) v = v + b.components.at(e);
    return r;
}
inline QWittAtD at_d_mul(const QWittAtD& a, const QWittAtD& b) {
    QWittAtD r = a;
    for (auto& [e, v] : r.components) v = v * b.components.at(e);
    return r;
}
inline bool at_d_equal(const QWittAtD& a, const QWittAtD& b) {
    return a.level == b.level && a.d == b.d && a.components == b.components;
}

// ---------------------------------------------------------------------------
// q-Dwork membership

struct QDworkResult {
    bool member = false;
    std::map<long, RPoly> lifts;  // global polynomial lifts c~_e in R[q]
    long witness_e = 0;           // set when member == false
    long witness_p = 0;
};

namespace detail {

// q-polynomial with coefficients in (Z/M)[x]/(f)
using ModQPoly = std::vector<std::vector<Int>>;

inline void mq_trim(ModQPoly& a) {
    while (!a.empty() && a.back().empty()) a.pop_back();
}

inline ModQPoly mq_from_rpoly(const RPoly& p, const ModRingCtx& ctx, long prime) {
    ModQPoly out;
    for (const auto& ce : p.c) {
        std::vector<Int> v;
        for (const auto& r : ce.val.c) v.push_back(rat_mod_pk(r, prime, ctx.M));
        out.push_back(ctx.reduce(std::move(v)));
    }
    mq_trim(out);
    return out;
}

inline ModQPoly mq_sub(ModQPoly a, const ModQPoly& b, const ModRingCtx& ctx) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] = ctx.sub(std::move(a[i]), b[i]);
    mq_trim(a);
    return a;
}

// divide by a monic integer polynomial in q; returns (quotient, exact) and
// fails when the remainder is nonzero
inline std::pair<ModQPoly, bool> mq_divide_exact(ModQPoly a, const std::vector<Int>& phi,
                                                 const ModRingCtx& ctx) {
    long dphi = static_cast<long>(phi.size()) - 1;
    ModQPoly q;
    while (static_cast<long>(a.size()) - 1 >= dphi) {
        long k = static_cast<long>(a.size()) - 1 - dphi;
        std::vector<Int> lead = a.back();
        if (static_cast<long>(q.size()) <= k) q.resize(k + 1);
        q[k] = lead;
        for (long i = 0; i <= dphi; ++i) {
            std::vector<Int> t = lead;
            for (auto& x : t) x = x * phi[i];
            a[i + k] = ctx.sub(std::move(a[i + k]), ctx.reduce(std::move(t)));
        }
        mq_trim(a);
    }
    mq_trim(a);
    return {q, a.empty()};
}

}  // namespace detail

// Greedy constructive test for membership in the image of the q-ghost map:
// walk divisors of m from the top, lift each component to R[q], and force
// the Frobenius congruences c~_e = phi_p(c~_{pe}) mod p^{v_p(m/e)} by
// solving for the Phi_e-multiple correction via exact division and CRT.
inline QDworkResult q_dwork_membership(const QWittElement& c) {
    const NumberRing& R = c.ring ? *c.ring : NumberRing::integers();
    long m = c.level;
    QDworkResult res;

    auto ds = divisors(m);
    std::sort(ds.begin(), ds.end(), std::greater<long>());

    std::map<long, FrobeniusLift> frobs;
    for (long p : prime_factors(m))
        if (R.N % p != 0) frobs.emplace(p, FrobeniusLift(R, p, valuation(m, p)));

    for (long e : ds) {
        RPoly rep = c.components.at(e).value;  // canonical reduced representative
        std::vector<Int> phi_e = qpoly_int_coeffs(cyclotomic_poly(e));

        struct Constraint {
            long p;
            long v;
            Int M;
            detail::ModQPoly h;
        };
        std::vector<Constraint> cons;
        for (long p : prime_factors(m / e)) {
            if (R.N % p == 0) continue;  // R/p^v = 0, vacuous
            long v = valuation(m / e, p);
            Int M = pow_int(Int(p), v);
            ModRingCtx ctx(M, R.f);
            const FrobeniusLift& phi = frobs.at(p);
            // phi_p applied coefficientwise to the already-chosen lift at pe
            detail::ModQPoly target;
            for (const auto& coef : res.lifts.at(p * e).c)
                target.push_back(frobenius_apply_mod(coef, phi, v));
            detail::mq_trim(target);
            auto diff = detail::mq_sub(std::move(target),
                                       detail::mq_from_rpoly(rep, ctx, p), ctx);
            auto [h, exact] = detail::mq_divide_exact(std::move(diff), phi_e, ctx);
            if (!exact) {
                res.member = false;
                res.witness_e = e;
                res.witness_p = p;
                return res;
            }
            cons.push_back({p, v, M, std::move(h)});
        }

        // CRT the corrections h_p into a single h over R
        RPoly h;
        if (!cons.empty()) {
            size_t qdeg = 0;
            for (const auto& k : cons) qdeg = std::max(qdeg, k.h.size());
            Int Mall(1);
            for (const auto& k : cons) Mall *= k.M;
            for (size_t i = 0; i < qdeg; ++i) {
                QPoly coeff;
                for (long j = 0; j < R.degree(); ++j) {
                    Int val(0);
                    for (const auto& k : cons) {
                        Int a(0);
                        if (i < k.h.size() && j < static_cast<long>(k.h[i].size()))
                            a = k.h[i][j];
                        Int Mi = Mall / k.M, inv;
                        mpz_invert(inv.get_mpz_t(), Mi.get_mpz_t(), k.M.get_mpz_t());
                        val += a * Mi % Mall * inv % Mall;
                    }
                    val = ((val % Mall) + Mall) % Mall;
                    coeff.c.push_back(Rat(val));
                }
                coeff.trim();
                h.c.push_back(RElement(R, coeff));
            }
            h.trim();
        }
        res.lifts[e] = rep + rpoly_from_qpoly(cyclotomic_poly(e)) * h;
    }
    res.member = true;
    return res;
}

// ---------------------------------------------------------------------------
// Lambda-ring comparison for R = Z: q-W_m(Z) = Z[q]/(q^m - 1)

inline Rat relement_to_rat(const RElement& a) {
    if (a.val.degree() > 0)
        throw std::invalid_argument("relement_to_rat: not a rational constant");
    return a.val.zero() ? Rat(0) : a.val.c[0];
}

inline QWittElement lambda_embed(const QPoly& f, long m) {
    const NumberRing& Z = NumberRing::integers();
    QWittElement r{&Z, m, {}};
    for (long e : divisors(m))
        r.components.emplace(e, ComponentElement::from_qpoly(Z, e, 1, f));
    return r;
}

inline QWittAtD lambda_embed_at_d(const QPoly& f, long level, long d) {
    const NumberRing& Z = NumberRing::integers();
    QWittAtD r{&Z, level, d, {}, at_d_allowed_support(Z, level, d)};
    for (long e : divisors(level)) {
        if (e % d != 0) continue;
        r.components.emplace(e, ComponentElement::from_qpoly(Z, e, 1, f));
    }
    return r;
}

// CRT-recombine over Q[q], reduce mod q^m - 1, insist on integrality
inline QPoly lambda_extract(const QWittElement& c) {
    long m = c.level;
    QPoly acc, modulus = QPoly::constant(Rat(1));
    for (long e : divisors(m)) {
        QPoly phi = cyclotomic_poly(e);
        // value as a rational polynomial in q
        QPoly ve;
        for (const auto& a : c.components.at(e).value.c) ve.c.push_back(relement_to_rat(a));
        ve.trim();
        // lift acc from modulus to modulus*phi matching ve mod phi
        QPoly g, u, v;
        QPoly::extgcd(modulus, phi, g, u, v);
        if (g.degree() != 0) throw std::logic_error("lambda_extract: non-coprime moduli");
        // acc + modulus * u * (ve - acc) is congruent to ve mod phi
        QPoly corr = (ve - acc) * u.scaled(coeff_inverse(g.c[0]));
        acc = acc + modulus * QPoly::divrem(corr, phi).second;
        modulus = modulus * phi;
        acc = QPoly::divrem(acc, modulus).second;
    }
    for (const auto& a : acc.c)
        if (a.get_den() != 1) throw NotInImage(m);
    return acc;
}

}  // namespace qcyc
