#pragma once

// Elements of R[q]/Phi_e(q)^n with denominator-support tracking.  All
// arithmetic runs over the fraction field; integrality is enforced a
// posteriori by checking the prime support of coefficient denominators
// against a declared allowed set.

#include "qcyc/cyclotomic.hpp"
#include "qcyc/number_ring.hpp"

#include <optional>
#include <set>

namespace qcyc {

struct NotInvertible : std::domain_error {
    NotInvertible() : std::domain_error("element is not invertible in the component ring") {}
};

struct DenominatorNotAllowed : std::domain_error {
    long prime;
    explicit DenominatorNotAllowed(long p)
        : std::domain_error("result requires inverting the forbidden prime " +
                            std::to_string(p)),
          prime(p) {}
};

class ComponentElement {
  public:
    const NumberRing* ring = nullptr;
    long conductor = 1;
    long exponent = 1;
    RPoly value;  // reduced mod Phi_e(q)^exponent

    ComponentElement() = default;
    ComponentElement(const NumberRing& R, long e, long n, RPoly v)
        : ring(&R), conductor(e), exponent(n), value(std::move(v)) {
        reduce();
    }
    static ComponentElement from_qpoly(const NumberRing& R, long e, long n, const QPoly& p) {
        return ComponentElement(R, e, n, rpoly_from_qpoly(p));
    }
    static ComponentElement constant(const NumberRing& R, long e, long n, const RElement& a) {
        return ComponentElement(R, e, n, RPoly::constant(a));
    }

    RPoly modulus() const { return rpoly_from_qpoly(cyclotomic_poly(conductor).pow(exponent)); }

    void reduce() { value = value.mod(modulus()); }

    bool zero() const { return value.zero(); }

    friend ComponentElement operator+(const ComponentElement& a, const ComponentElement& b) {
        a.require_compatible(b);
        ComponentElement r(a);
        r.value = a.value + b.value;
        r.reduce();
        return r;
    }
    friend ComponentElement operator-(const ComponentElement& a, const ComponentElement& b) {
        a.require_compatible(b);
        ComponentElement r(a);
        r.value = a.value - b.value;
        r.reduce();
        return r;
    }
    friend ComponentElement operator*(const ComponentElement& a, const ComponentElement& b) {
        a.require_compatible(b);
        ComponentElement r(a);
        r.value = a.value * b.value;
        r.reduce();
        return r;
    }
    ComponentElement operator-() const {
        ComponentElement r(*this);
        r.value = -r.value;
        return r;
    }
    friend bool operator==(const ComponentElement& a, const ComponentElement& b) {
        return a.conductor == b.conductor && a.exponent == b.exponent && a.value == b.value;
    }
    friend bool operator!=(const ComponentElement& a, const ComponentElement& b) {
        return !(a == b);
    }

    ComponentElement pow(unsigned long e) const {
        ComponentElement r = ComponentElement::from_qpoly(*ring, conductor, exponent,
                                                          QPoly::constant(Rat(1)));
        ComponentElement b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    ComponentElement scaled(const RElement& a) const {
        ComponentElement r(*this);
        r.value = r.value.scaled(a);
        r.reduce();
        return r;
    }

    // reinterpret modulo Phi_e(q)^n for n <= exponent
    ComponentElement truncated(long n) const {
        if (n > exponent) throw std::invalid_argument("truncated: cannot raise exponent");
        ComponentElement r(*this);
        r.exponent = n;
        r.reduce();
        return r;
    }

    std::set<long> denominator_support() const { return qcyc::denominator_support(value); }

    void check_support(const std::set<long>& allowed) const {
        for (long p : denominator_support())
            if (!allowed.count(p)) throw DenominatorNotAllowed(p);
    }

    // inverse modulo Phi_e^exponent over the fraction field, no support
    // check: extended gcd against Phi_e, then Newton steps b <- b(2 - ab)
    ComponentElement invert_unchecked() const {
        RPoly phi = rpoly_from_qpoly(cyclotomic_poly(conductor));
        RPoly g, u, v;
        RPoly::extgcd(value.mod(phi), phi, g, u, v);
        if (g.degree() != 0) throw NotInvertible();
        ComponentElement b(*this);
        b.value = u.scaled(g.c[0].inverse()).mod(phi);
        long prec = 1;
        RPoly two = RPoly::constant(RElement(2));
        while (prec < exponent) {
            prec *= 2;
            RPoly mod = rpoly_from_qpoly(
                cyclotomic_poly(conductor).pow(std::min(prec, exponent)));
            b.value = (b.value * (two - value * b.value)).mod(mod);
        }
        b.reduce();
        return b;
    }

    ComponentElement invert(const std::set<long>& allowed) const {
        ComponentElement b = invert_unchecked();
        b.check_support(allowed);
        return b;
    }

    // support check only on the final quotient; intermediates may pass
    // through denominators that cancel
    ComponentElement divide(const ComponentElement& den, const std::set<long>& allowed) const {
        ComponentElement q = *this * den.invert_unchecked();
        q.check_support(allowed);
        return q;
    }

    // q -> q^s, landing at conductor e' with Phi_{e'}(q) | Phi_e(q^s)
    ComponentElement substitute_power(long s, long target_conductor, long target_exponent) const {
        if (target_exponent > exponent)
            throw std::invalid_argument("substitute_power: precision shortfall");
        auto [quo, rem] = QPoly::divrem(cyclotomic_poly(conductor).substitute_power(s),
                                        cyclotomic_poly(target_conductor));
        if (!rem.zero())
            throw std::invalid_argument("substitute_power: incompatible target conductor");
        ComponentElement r(*this);
        r.conductor = target_conductor;
        r.exponent = target_exponent;
        r.value = value.substitute_power(s);
        r.reduce();
        return r;
    }

  private:
    void require_compatible(const ComponentElement& o) const {
        if (conductor != o.conductor || exponent != o.exponent)
            throw std::invalid_argument("ComponentElement: conductor/exponent mismatch");
        if (ring && o.ring && ring != o.ring)
            throw std::invalid_argument("ComponentElement: mixed rings");
    }
};

inline ComponentElement component_invert(const ComponentElement& a, const std::set<long>& allowed) {
    return a.invert(allowed);
}

inline ComponentElement exact_divide(const ComponentElement& a, const ComponentElement& b,
                                     const std::set<long>& allowed) {
    return a.divide(b, allowed);
}

}  // namespace qcyc
