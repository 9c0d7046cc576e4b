#pragma once

// Monogenic number rings R = Z[x]/(f) with an inverted integer N, their
// elements, and Frobenius lifts at primes p not dividing N.

#include "qcyc/poly.hpp"

#include <memory>
#include <set>
#include <string>

namespace qcyc {

struct NotEtaleAtP : std::runtime_error {
    long p;
    explicit NotEtaleAtP(long p_)
        : std::runtime_error("f is not separable modulo " + std::to_string(p_)), p(p_) {}
};

class NumberRing {
  public:
    QPoly f;      // monic, integer coefficients
    long N = 1;   // inverted integer
    std::string label;

    NumberRing(QPoly f_, long N_, std::string label_ = "")
        : f(std::move(f_)), N(N_), label(std::move(label_)) {
        if (f.zero() || f.leading() != Rat(1))
            throw std::invalid_argument("NumberRing: f must be monic");
        for (const auto& a : f.c)
            if (a.get_den() != 1)
                throw std::invalid_argument("NumberRing: f must have integer coefficients");
        if (N < 1) throw std::invalid_argument("NumberRing: N must be positive");
    }

    long degree() const { return f.degree(); }
    std::set<long> inverted_primes() const { return prime_support(Int(N)); }

    static const NumberRing& integers() {
        static NumberRing z(QPoly({Rat(0), Rat(1)}), 1, "Z");
        return z;
    }
};

// Element of R, or a ring-agnostic rational constant when ring == nullptr.
// Constants promote to any ring on contact; this keeps Poly<RElement>
// usable with literal coefficients.
class RElement {
  public:
    const NumberRing* ring = nullptr;
    QPoly val;  // degree < ring->degree() when ring is set, else degree <= 0

    RElement() = default;
    RElement(long a) : val(QPoly::constant(Rat(a))) {}
    RElement(const Rat& a) : val(QPoly::constant(a)) {}
    RElement(const NumberRing& R, QPoly v) : ring(&R), val(std::move(v)) {
        val = val.mod(R.f);
    }

    static RElement generator(const NumberRing& R) {
        return RElement(R, QPoly::monomial(Rat(1), 1));
    }

    bool is_constant() const { return ring == nullptr; }
    bool zero() const { return val.zero(); }

  private:
    static const NumberRing* common_ring(const RElement& a, const RElement& b) {
        if (a.ring && b.ring && a.ring != b.ring)
            throw std::invalid_argument("RElement: mixed rings");
        return a.ring ? a.ring : b.ring;
    }

  public:
    RElement promote(const NumberRing& R) const {
        if (ring == &R) return *this;
        if (ring) throw std::invalid_argument("RElement: mixed rings");
        return RElement(R, val);
    }

    friend RElement operator+(const RElement& a, const RElement& b) {
        RElement r;
        r.ring = common_ring(a, b);
        r.val = a.val + b.val;
        return r;
    }
    friend RElement operator-(const RElement& a, const RElement& b) {
        RElement r;
        r.ring = common_ring(a, b);
        r.val = a.val - b.val;
        return r;
    }
    friend RElement operator*(const RElement& a, const RElement& b) {
        RElement r;
        r.ring = common_ring(a, b);
        r.val = a.val * b.val;
        if (r.ring) r.val = r.val.mod(r.ring->f);
        return r;
    }
    RElement operator-() const {
        RElement r(*this);
        r.val = -r.val;
        return r;
    }
    friend bool operator==(const RElement& a, const RElement& b) {
        if (a.ring && b.ring && a.ring != b.ring) return false;
        return a.val == b.val;
    }
    friend bool operator!=(const RElement& a, const RElement& b) { return !(a == b); }

    RElement pow(unsigned long e) const {
        RElement r(1), b(*this);
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // inverse in the fraction field Q[x]/(f); requires f irreducible (true
    // for every ring this library constructs) or at least gcd(val, f) = 1
    RElement inverse() const {
        if (zero()) throw std::domain_error("RElement: inverse of zero");
        if (!ring) {
            RElement r;
            r.val = QPoly::constant(Rat(1) / val.c[0]);
            return r;
        }
        QPoly g, u, v;
        QPoly::extgcd(val, ring->f, g, u, v);
        if (g.degree() != 0)
            throw std::domain_error("RElement: not invertible (shares a factor with f)");
        RElement r;
        r.ring = ring;
        r.val = u.mod(ring->f);
        return r;
    }

    std::set<long> denominator_support() const {
        std::set<long> out;
        for (const auto& a : val.c) {
            auto s = prime_support(a.get_den());
            out.insert(s.begin(), s.end());
        }
        return out;
    }
};

inline bool is_zero(const RElement& a) { return a.zero(); }
inline RElement coeff_inverse(const RElement& a) { return a.inverse(); }

using RPoly = Poly<RElement>;

inline RPoly rpoly_from_qpoly(const QPoly& p) {
    RPoly r;
    r.c.reserve(p.c.size());
    for (const auto& a : p.c) r.c.push_back(RElement(a));
    r.trim();
    return r;
}

inline std::set<long> denominator_support(const RPoly& p) {
    std::set<long> out;
    for (const auto& a : p.c) {
        auto s = a.denominator_support();
        out.insert(s.begin(), s.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// arithmetic in (Z/M)[x]/(f) with integer-vector representatives

struct ModRingCtx {
    Int M;
    std::vector<Int> f;  // monic, lowest first

    explicit ModRingCtx(Int M_, const QPoly& fq) : M(std::move(M_)) {
        f.reserve(fq.c.size());
        for (const auto& a : fq.c) f.push_back(a.get_num());
    }
    long deg() const { return static_cast<long>(f.size()) - 1; }

    std::vector<Int> reduce(std::vector<Int> v) const {
        long df = deg();
        while (static_cast<long>(v.size()) > df) {
            Int lead = v.back() % M;
            v.pop_back();
            if (lead != 0) {
                size_t off = v.size() - df;
                for (long i = 0; i < df; ++i)
                    v[off + i] = ((v[off + i] - lead * f[i]) % M + M) % M;
            }
        }
        for (auto& a : v) a = ((a % M) + M) % M;
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    }
    std::vector<Int> mul(const std::vector<Int>& a, const std::vector<Int>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<Int> r(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return reduce(std::move(r));
    }
    std::vector<Int> add(std::vector<Int> a, const std::vector<Int>& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
        return reduce(std::move(a));
    }
    std::vector<Int> sub(std::vector<Int> a, const std::vector<Int>& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
        return reduce(std::move(a));
    }
    // evaluate an integer polynomial at the element y
    std::vector<Int> eval_poly(const std::vector<Int>& coeffs, const std::vector<Int>& y) const {
        std::vector<Int> r;
        for (size_t i = coeffs.size(); i-- > 0;) {
            r = mul(r, y);
            r = add(std::move(r), {coeffs[i]});
        }
        return r;
    }
};

inline std::vector<Int> qpoly_int_coeffs(const QPoly& p) {
    std::vector<Int> out;
    out.reserve(p.c.size());
    for (const auto& a : p.c) {
        if (a.get_den() != 1) throw std::invalid_argument("expected integer coefficients");
        out.push_back(a.get_num());
    }
    return out;
}

class FrobeniusLift {
  public:
    const NumberRing* ring;
    long p;
    long r;
    std::vector<Int> image;  // image of x in (Z/p^r)[x]/(f), lowest first

    FrobeniusLift(const NumberRing& R, long p_, long r_) : ring(&R), p(p_), r(r_) {
        if (R.N % p == 0) throw std::invalid_argument("frobenius_lift: p divides N");
        if (r < 1) throw std::invalid_argument("frobenius_lift: precision must be >= 1");
        auto fint = qpoly_int_coeffs(R.f);
        auto dfint = qpoly_int_coeffs(R.f.derivative());

        // y = x^p mod (p, f)
        ModRingCtx c1(Int(p), R.f);
        std::vector<Int> y = c1.reduce(power_x(c1, p));

        // u = f'(y)^{-1} mod (p, f) via extended gcd over F_p
        std::vector<Int> u = invert_mod_p(c1, c1.eval_poly(dfint, y));

        long prec = 1;
        Int M(p);
        while (prec < r) {
            prec = std::min(2 * prec, r);
            Int Mnew = pow_int(Int(p), prec);
            ModRingCtx ctx(Mnew, R.f);
            // refine the inverse first, then the root
            std::vector<Int> fy = ctx.eval_poly(dfint, y);
            std::vector<Int> uy = ctx.mul(u, fy);
            std::vector<Int> two{Int(2)};
            u = ctx.mul(u, ctx.sub(two, uy));
            std::vector<Int> val = ctx.eval_poly(fint, y);
            y = ctx.sub(y, ctx.mul(val, u));
            // one more inverse refinement against the updated y
            fy = ctx.eval_poly(dfint, y);
            u = ctx.mul(u, ctx.sub(two, ctx.mul(u, fy)));
            M = Mnew;
        }
        image = y;

        // invariant checks
        ModRingCtx ctx(pow_int(Int(p), r), R.f);
        if (!ctx.eval_poly(fint, image).empty())
            throw std::logic_error("frobenius_lift: Hensel iteration failed");
    }

    // reduce the image modulo p^{r'}
    std::vector<Int> image_mod(long rp) const {
        if (rp > r) throw std::invalid_argument("FrobeniusLift: precision shortfall");
        Int M = pow_int(Int(p), rp);
        std::vector<Int> out = image;
        for (auto& a : out) a = ((a % M) + M) % M;
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    }

  private:
    static std::vector<Int> power_x(const ModRingCtx& ctx, long e) {
        std::vector<Int> r{Int(1)}, b{Int(0), Int(1)};
        while (e) {
            if (e & 1) r = ctx.mul(r, b);
            b = ctx.mul(b, b);
            e >>= 1;
        }
        return r;
    }
    // inverse in F_p[x]/(f) by extended gcd
    std::vector<Int> invert_mod_p(const ModRingCtx& ctx, const std::vector<Int>& a) const {
        QPoly ap, fp;
        {
            std::vector<Rat> ac;
            for (const auto& t : a) ac.emplace_back(t);
            ap = QPoly(std::move(ac));
        }
        fp = ring->f;
        // extended gcd over Q of representatives is wrong modulo p, so run
        // the Euclidean loop directly over F_p
        auto norm = [&](std::vector<Int> v) {
            for (auto& t : v) t = ((t % p) + p) % p;
            while (!v.empty() && v.back() == 0) v.pop_back();
            return v;
        };
        std::vector<Int> r0 = norm(qpoly_int_coeffs(fp)), r1 = norm(a);
        std::vector<Int> t0, t1{Int(1)};
        auto inv_fp = [&](const Int& x) {
            long xi = Int(((x % p) + p) % p).get_si();
            return Int(inv_mod(xi, p));
        };
        auto submul = [&](std::vector<Int> A, const std::vector<Int>& Q,
                          const std::vector<Int>& B) {
            // A - Q*B over F_p
            if (!Q.empty() && !B.empty()) {
                if (A.size() < Q.size() + B.size() - 1) A.resize(Q.size() + B.size() - 1, 0);
                for (size_t i = 0; i < Q.size(); ++i)
                    for (size_t j = 0; j < B.size(); ++j) A[i + j] -= Q[i] * B[j];
            }
            return norm(std::move(A));
        };
        while (!r1.empty()) {
            // division r0 = q*r1 + r over F_p
            std::vector<Int> q, rr = r0;
            Int linv = inv_fp(r1.back());
            while (rr.size() >= r1.size()) {
                long k = static_cast<long>(rr.size() - r1.size());
                Int fcoef = (rr.back() * linv) % p;
                if (static_cast<long>(q.size()) <= k) q.resize(k + 1, 0);
                q[k] = (q[k] + fcoef) % p;
                for (size_t i = 0; i < r1.size(); ++i)
                    rr[i + k] = ((rr[i + k] - fcoef * r1[i]) % p + p) % p;
                while (!rr.empty() && rr.back() == 0) rr.pop_back();
            }
            std::vector<Int> t = submul(t0, q, t1);
            r0 = r1; r1 = norm(std::move(rr));
            t0 = t1; t1 = std::move(t);
        }
        if (r0.size() != 1) throw NotEtaleAtP(p);
        Int ginv = inv_fp(r0[0]);
        for (auto& x : t0) x = (x * ginv) % p;
        return ctx.reduce(norm(std::move(t0)));
    }
};

// coefficient of a p-integral rational as an integer mod M = p^k
inline Int rat_mod_pk(const Rat& a, long p, const Int& M) {
    const Int& den = a.get_den();
    if (den % p == 0) throw std::domain_error("rat_mod_pk: denominator not p-integral");
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t()) == 0)
        throw std::domain_error("rat_mod_pk: denominator not invertible");
    Int r = (a.get_num() % M) * dinv % M;
    return ((r % M) + M) % M;
}

// a == b in R/p^k R?  For p | N the quotient ring is zero and the answer
// is vacuously true.
inline bool relement_congruent_mod_pk(const RElement& a, const RElement& b, long p, long k) {
    if (k <= 0) return true;
    const NumberRing* R = a.ring ? a.ring : b.ring;
    if (R && R->N % p == 0) return true;
    Int M = pow_int(Int(p), k);
    QPoly d = a.val - b.val;
    for (const auto& coef : d.c)
        if (rat_mod_pk(coef, p, M) != 0) return false;
    return true;
}

// apply the Frobenius lift to an RElement, returning representative integer
// coefficients mod p^k (lowest first, reduced mod f)
inline std::vector<Int> frobenius_apply_mod(const RElement& a, const FrobeniusLift& phi, long k) {
    const NumberRing& R = *phi.ring;
    Int M = pow_int(Int(phi.p), k);
    ModRingCtx ctx(M, R.f);
    std::vector<Int> coeffs;
    for (const auto& c : a.val.c) coeffs.push_back(rat_mod_pk(c, phi.p, M));
    std::vector<Int> y = phi.image_mod(k);
    if (a.ring == nullptr) {
        // a rational constant is fixed by phi
        return ctx.reduce(std::move(coeffs));
    }
    return ctx.eval_poly(coeffs, y);
}

}  // namespace qcyc
