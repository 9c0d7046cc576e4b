#include "qcyc/qwitt.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace qcyc;
using namespace qcyc::testing;

namespace {

ComponentElement comp(const NumberRing& R, long e, const QPoly& p) {
    return ComponentElement::from_qpoly(R, e, 1, p);
}

QWittElement random_tuple(const NumberRing& R, long m, std::mt19937_64& rng) {
    QWittElement c{&R, m, {}};
    for (long e : divisors(m)) {
        RPoly v;
        for (long i = 0; i < euler_phi(e); ++i) v.c.push_back(random_element(R, rng, 3));
        v.trim();
        c.components.emplace(e, ComponentElement(R, e, 1, v));
    }
    return c;
}

// a random member of the image of the q-ghost map: a polynomial combination
// of q-Teichmuller lifts (the image is a subring)
QWittElement random_member(const NumberRing& R, long m, std::mt19937_64& rng) {
    QWittElement acc = q_teichmuller(R, random_element(R, rng, 2), m);
    for (int i = 0; i < 2; ++i) {
        auto t = q_teichmuller(R, random_element(R, rng, 2), m);
        acc = (rng() % 2) ? qw_add(acc, t) : qw_mul(acc, t);
    }
    return acc;
}

QPoly random_qpoly(std::mt19937_64& rng, long deg, long bound = 4) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Rat> c;
    for (long i = 0; i <= deg; ++i) c.emplace_back(dist(rng));
    return QPoly(std::move(c));
}

}  // namespace

TEST(QWittRing, UnitAndDistributivity) {
    std::mt19937_64 rng(1);
    const NumberRing& R = ring_zeta5();
    for (long m : {1L, 4L, 6L, 12L}) {
        auto one = q_teichmuller(R, RElement(1), m);
        auto a = random_tuple(R, m, rng);
        auto b = random_tuple(R, m, rng);
        auto c = random_tuple(R, m, rng);
        EXPECT_TRUE(qw_equal(qw_mul(one, a), a));
        EXPECT_TRUE(qw_equal(qw_mul(a, qw_add(b, c)),
                             qw_add(qw_mul(a, b), qw_mul(a, c))));
    }
}

TEST(QTeichmuller, ReversedGhostIndexing) {
    const NumberRing& R = ring_zeta5();
    RElement z = RElement::generator(R);
    auto t = q_teichmuller(R, z, 6);
    EXPECT_EQ(t.components.at(1), ComponentElement::constant(R, 1, 1, z.pow(6)));
    EXPECT_EQ(t.components.at(2), ComponentElement::constant(R, 2, 1, z.pow(3)));
    EXPECT_EQ(t.components.at(3), ComponentElement::constant(R, 3, 1, z.pow(2)));
    EXPECT_EQ(t.components.at(6), ComponentElement::constant(R, 6, 1, z));

    auto t1 = q_teichmuller(R, z, 1);
    EXPECT_EQ(t1.components.at(1), ComponentElement::constant(R, 1, 1, z));
}

TEST(QTeichmuller, Multiplicative) {
    std::mt19937_64 rng(2);
    const NumberRing& R = ring_zeta5();
    for (long m : {2L, 6L, 12L}) {
        auto x = random_element(R, rng, 3);
        auto y = random_element(R, rng, 3);
        EXPECT_TRUE(qw_equal(q_teichmuller(R, x * y, m),
                             qw_mul(q_teichmuller(R, x, m), q_teichmuller(R, y, m))));
    }
}

TEST(QFrobenius, RestrictionAndChains) {
    std::mt19937_64 rng(3);
    const NumberRing& Z = ring_z();
    auto c = random_tuple(Z, 4, rng);
    auto f = q_frobenius(c, 2);
    EXPECT_EQ(f.components.at(1), c.components.at(1));
    EXPECT_EQ(f.components.at(2), c.components.at(2));
    EXPECT_EQ(f.components.size(), 2u);
    EXPECT_TRUE(qw_equal(q_frobenius(c, 4), c));

    for (long mpp : {8L, 12L}) {
        auto top = random_tuple(ring_zeta5(), mpp, rng);
        for (long mp : divisors(mpp))
            for (long m : divisors(mp))
                EXPECT_TRUE(qw_equal(q_frobenius(q_frobenius(top, mp), m),
                                     q_frobenius(top, m)));
    }
}

TEST(QVerschiebung, Examples) {
    const NumberRing& Z = ring_z();
    QWittElement c{&Z, 1, {}};
    c.components.emplace(1, comp(Z, 1, qp({5})));
    auto v = q_verschiebung(c, 2);
    EXPECT_EQ(v.components.at(1), comp(Z, 1, qp({10})));
    EXPECT_TRUE(v.components.at(2).zero());
}

TEST(QVerschiebung, FVRelations) {
    std::mt19937_64 rng(4);
    const NumberRing& R = ring_zeta5();
    for (long m = 1; m <= 6; ++m) {
        for (long d : {2L, 3L}) {
            // F_d V_d = d on level m
            auto c = random_tuple(R, m, rng);
            auto fv = q_frobenius(q_verschiebung(c, d), m);
            QWittElement dc = c;
            for (auto& [e, ce] : dc.components) ce = ce.scaled(RElement(d));
            EXPECT_TRUE(qw_equal(fv, dc)) << "m=" << m << " d=" << d;

            // V_d F_d = multiplication by [d]_{q^m} on level dm
            auto top = random_tuple(R, d * m, rng);
            auto vf = q_verschiebung(q_frobenius(top, m), d);
            QWittElement qd{&R, d * m, {}};
            for (long e : divisors(d * m))
                qd.components.emplace(
                    e, comp(R, e, q_integer(d).substitute_power(m)));
            EXPECT_TRUE(qw_equal(vf, qw_mul(qd, top))) << "m=" << m << " d=" << d;
        }
    }
}

TEST(QVerschiebung, V2F2ExplicitAtLevel2) {
    std::mt19937_64 rng(5);
    auto c = random_tuple(ring_z(), 2, rng);
    auto vf = q_verschiebung(q_frobenius(c, 1), 2);
    EXPECT_EQ(vf.components.at(1), c.components.at(1).scaled(RElement(2)));
    EXPECT_TRUE(vf.components.at(2).zero());
}

TEST(CyclotomicNorm, Formula2To4) {
    std::mt19937_64 rng(6);
    auto c = random_tuple(ring_zeta5(), 2, rng);
    auto n = cyclotomic_norm(c, 4);
    EXPECT_EQ(n.components.at(1), c.components.at(1).pow(2));
    EXPECT_EQ(n.components.at(2), c.components.at(2).pow(2));
    EXPECT_EQ(n.components.at(4), c.components.at(2).substitute_power(2, 4, 1));
    EXPECT_TRUE(qw_equal(cyclotomic_norm(c, 2), c));
}

TEST(CyclotomicNorm, NormOfTeichmullerIsTeichmuller) {
    std::mt19937_64 rng(7);
    const NumberRing& R = ring_zeta5();
    for (long mp : {2L, 4L, 6L, 8L, 12L}) {
        for (long m : divisors(mp)) {
            auto x = random_element(R, rng, 3);
            EXPECT_TRUE(qw_equal(cyclotomic_norm(q_teichmuller(R, x, m), mp),
                                 q_teichmuller(R, x, mp)))
                << m << "->" << mp;
        }
    }
}

TEST(CyclotomicNorm, Transitivity) {
    std::mt19937_64 rng(8);
    const NumberRing& R = ring_zeta5();
    for (long mpp : {4L, 6L, 8L, 12L}) {
        for (long mp : divisors(mpp)) {
            for (long m : divisors(mp)) {
                auto c = random_member(R, m, rng);
                EXPECT_TRUE(qw_equal(cyclotomic_norm(cyclotomic_norm(c, mp), mpp),
                                     cyclotomic_norm(c, mpp)))
                    << m << "|" << mp << "|" << mpp;
            }
        }
    }
}

TEST(CyclotomicNorm, PreservesMembership) {
    std::mt19937_64 rng(9);
    for (const NumberRing* R : {&ring_z(), &ring_zeta5()}) {
        for (long mp : {4L, 6L, 12L}) {
            for (long m : divisors(mp)) {
                auto c = random_member(*R, m, rng);
                ASSERT_TRUE(q_dwork_membership(c).member);
                EXPECT_TRUE(q_dwork_membership(cyclotomic_norm(c, mp)).member)
                    << R->label << " " << m << "->" << mp;
            }
        }
    }
}

TEST(CyclotomicFrobenius, ConstantExample) {
    const NumberRing& Z = ring_z();
    QWittElement c{&Z, 1, {}};
    c.components.emplace(1, comp(Z, 1, qp({7})));
    auto f = cyclotomic_frobenius(c, 2);
    EXPECT_EQ(f.level, 2);
    EXPECT_EQ(f.components.size(), 1u);
    EXPECT_EQ(f.components.at(2), comp(Z, 2, qp({7})));
}

TEST(CyclotomicFrobenius, RingHomomorphism) {
    std::mt19937_64 rng(10);
    const NumberRing& R = ring_zeta5();
    for (long m : {2L, 4L, 6L}) {
        for (long d : {2L, 3L}) {
            auto a = random_tuple(R, m, rng);
            auto b = random_tuple(R, m, rng);
            EXPECT_TRUE(at_d_equal(cyclotomic_frobenius(qw_mul(a, b), d),
                                   at_d_mul(cyclotomic_frobenius(a, d),
                                            cyclotomic_frobenius(b, d))));
            EXPECT_TRUE(at_d_equal(cyclotomic_frobenius(qw_add(a, b), d),
                                   at_d_add(cyclotomic_frobenius(a, d),
                                            cyclotomic_frobenius(b, d))));
        }
    }
}

TEST(CanonicalToAtD, IndexSets) {
    std::mt19937_64 rng(11);
    auto c = random_tuple(ring_zeta5(), 4, rng);
    auto allowed = at_d_allowed_support(ring_zeta5(), 4, 2);
    auto r = canonical_to_at_d(c, 2, allowed);
    EXPECT_EQ(r.components.size(), 2u);
    EXPECT_EQ(r.components.at(2), c.components.at(2));
    EXPECT_EQ(r.components.at(4), c.components.at(4));
    auto r1 = canonical_to_at_d(c, 1, allowed);
    EXPECT_EQ(r1.components.size(), 3u);
}

TEST(QDwork, TeichmullerImagesAreMembers) {
    std::mt19937_64 rng(12);
    for (const NumberRing* R : {&ring_z(), &ring_gaussian(), &ring_zeta5()}) {
        for (long m : {2L, 4L, 6L, 8L, 12L}) {
            auto res = q_dwork_membership(q_teichmuller(*R, random_element(*R, rng, 3), m));
            EXPECT_TRUE(res.member) << R->label << " m=" << m;
        }
    }
}

TEST(QDwork, GlobalPolynomialTuplesOverZ) {
    std::mt19937_64 rng(13);
    for (long m : {2L, 4L, 6L, 12L}) {
        QPoly f = random_qpoly(rng, 5);
        auto res = q_dwork_membership(lambda_embed(f, m));
        EXPECT_TRUE(res.member) << "m=" << m;
        // the returned lifts really satisfy the Frobenius congruences:
        // over Z, phi_p = id, so lift_e = lift_{pe} mod p^{v_p(m/e)}
        for (long e : divisors(m)) {
            for (long p : prime_factors(m / e)) {
                long v = valuation(m / e, p);
                QPoly diff;
                const RPoly &le = res.lifts.at(e), &lpe = res.lifts.at(p * e);
                RPoly d = le - lpe;
                for (const auto& coef : d.c)
                    EXPECT_TRUE(relement_congruent_mod_pk(coef, RElement(0), p, v));
                (void)diff;
            }
        }
    }
}

TEST(QDwork, ExhaustiveOracleLevelTwoOverZ) {
    // m = 2 over Z: constants (a, b) are in the image iff a = b mod 2
    // (need c~1 = phi_2(c~2) mod 2 with c~1(1) = a, c~2(-1) = b; over F_2
    // the two evaluations agree iff a = b there)
    const NumberRing& Z = ring_z();
    for (long a = -2; a <= 2; ++a) {
        for (long b = -2; b <= 2; ++b) {
            QWittElement c{&Z, 2, {}};
            c.components.emplace(1, comp(Z, 1, qp({a})));
            c.components.emplace(2, comp(Z, 2, qp({b})));
            auto res = q_dwork_membership(c);
            EXPECT_EQ(res.member, ((a - b) % 2 == 0)) << a << "," << b;
            if (!res.member) {
                EXPECT_EQ(res.witness_e, 1);
                EXPECT_EQ(res.witness_p, 2);
            }
        }
    }
}

TEST(QDwork, NegativeExample) {
    const NumberRing& Z = ring_z();
    QWittElement c{&Z, 2, {}};
    c.components.emplace(1, comp(Z, 1, qp({0})));
    c.components.emplace(2, comp(Z, 2, qp({1})));
    EXPECT_FALSE(q_dwork_membership(c).member);
}

TEST(Lambda, EmbedExample) {
    auto c = lambda_embed(qp({0, 1}), 2);  // f = q
    EXPECT_EQ(c.components.at(1), comp(ring_z(), 1, qp({1})));
    EXPECT_EQ(c.components.at(2), comp(ring_z(), 2, qp({-1})));
}

TEST(Lambda, ExtractRoundTrip) {
    std::mt19937_64 rng(14);
    for (long m = 1; m <= 12; ++m) {
        QPoly f = random_qpoly(rng, m - 1);
        EXPECT_EQ(lambda_extract(lambda_embed(f, m)), f) << "m=" << m;
    }
}

TEST(Lambda, EmbedImageIsDworkValid) {
    std::mt19937_64 rng(15);
    for (long m = 1; m <= 12; ++m) {
        QPoly f = random_qpoly(rng, 7);
        EXPECT_TRUE(q_dwork_membership(lambda_embed(f, m)).member) << "m=" << m;
    }
}

TEST(Lambda, ExtractRejectsNonIntegral) {
    const NumberRing& Z = ring_z();
    QWittElement c{&Z, 2, {}};
    c.components.emplace(1, comp(Z, 1, qp({0})));
    c.components.emplace(2, comp(Z, 2, qp({1})));
    EXPECT_THROW(lambda_extract(c), NotInImage);
}

TEST(Lambda, FrobeniusSquare) {
    std::mt19937_64 rng(16);
    for (long m = 1; m <= 12; ++m) {
        for (long d : {2L, 3L}) {
            QPoly f = random_qpoly(rng, m - 1);
            auto lhs = cyclotomic_frobenius(lambda_embed(f, m), d);
            auto rhs = lambda_embed_at_d(f.substitute_power(d), d * m, d);
            EXPECT_TRUE(at_d_equal(lhs, rhs)) << "m=" << m << " d=" << d;
        }
    }
}
