#include "qcyc/polylog.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace qcyc;
using namespace qcyc::testing;

namespace {

RootOfUnity zeta5() { return RootOfUnity(ring_zeta5(), RElement::generator(ring_zeta5()), 5); }
RootOfUnity zeta7() { return RootOfUnity(ring_zeta7(), RElement::generator(ring_zeta7()), 7); }

bool all_zero(const TwistAtDElement& t) {
    for (const auto& [e, v] : t.components)
        if (!v.zero()) return false;
    return true;
}

// independent oracle: li1_class component at e is [m]_q times the evaluation
// of the cleared rational function at the constant T = zeta^{1/e}
ComponentElement li1_series_oracle(const RootOfUnity& z, long d, long m, long e) {
    const NumberRing& R = *z.ring;
    auto f = li1_formal(d, m);
    auto at = [&](const std::vector<QPoly>& poly) {
        ComponentElement acc = ComponentElement::from_qpoly(R, e, 2, QPoly());
        for (size_t k = 0; k < poly.size(); ++k) {
            auto coeff = ComponentElement::from_qpoly(R, e, 2, poly[k]);
            acc = acc + coeff.scaled(z.root_power(static_cast<long>(k), e));
        }
        return acc;
    };
    auto num = at(f.num);
    auto den = at(f.den);
    auto qm = ComponentElement::from_qpoly(R, e, 2, q_integer(m));
    return num * den.invert_unchecked() * qm;
}

}  // namespace

TEST(RootOfUnityT, Validation) {
    const NumberRing& R = ring_zeta5();
    RElement z = RElement::generator(R);
    EXPECT_NO_THROW(RootOfUnity(R, z, 5));
    EXPECT_THROW(RootOfUnity(R, z, 10), std::invalid_argument);    // zeta^10 = 1 but order is 5
    EXPECT_THROW(RootOfUnity(R, z.pow(5), 5), std::invalid_argument);
    EXPECT_THROW(zeta5().root(5), RootUnavailable);
}

TEST(ZetaClass, FrozenExamples) {
    auto z = zeta5();
    const NumberRing& R = ring_zeta5();
    RElement zeta = z.zeta;
    // m = 2: components (zeta, zeta^3) since 2 * 3 = 6 = 1 mod 5
    auto c = zeta_class(z, 2);
    EXPECT_EQ(c.components.at(1), ComponentElement::constant(R, 1, 2, zeta));
    EXPECT_EQ(c.components.at(2), ComponentElement::constant(R, 2, 2, zeta.pow(3)));
    // m = 1
    auto c1 = zeta_class(z, 1);
    EXPECT_EQ(c1.components.at(1), ComponentElement::constant(R, 1, 2, zeta));
}

TEST(ZetaClass, FrobeniusCompatibility) {
    // phi_p fixes zeta and sends zeta^{1/pe} to its p-th power zeta^{1/e}
    auto z = zeta5();
    for (long m : {4L, 6L, 12L}) {
        for (long e : divisors(m)) {
            for (long p : {2L, 3L}) {
                if ((m % (p * e)) != 0) continue;
                EXPECT_EQ(z.root(p * e).pow(p), z.root(e)) << "e=" << e << " p=" << p;
            }
        }
    }
}

TEST(CanonicalUnitLift, ReducesToNormComponents) {
    for (long m : {1L, 2L, 3L, 4L, 6L, 12L}) {
        auto z = zeta5();
        const NumberRing& R = ring_zeta5();
        auto lift = canonical_unit_lift(z, m);
        RElement u = RElement(1).promote(R) - z.zeta;
        for (long e : divisors(m)) {
            EXPECT_EQ(lift.components.at(e).truncated(1),
                      ComponentElement::constant(R, e, 1, u.pow(m / e)))
                << "m=" << m << " e=" << e;
        }
    }
}

TEST(CanonicalUnitLift, IsAUnit) {
    auto z = zeta5();
    for (long m : {2L, 4L, 6L}) {
        auto lift = canonical_unit_lift(z, m);
        auto inv = hab_invert(lift);
        auto prod = hab_mul(lift, inv);
        for (long e : divisors(m)) {
            EXPECT_EQ(prod.components.at(e),
                      ComponentElement::from_qpoly(ring_zeta5(), e, 2, QPoly::constant(Rat(1))));
        }
    }
}

TEST(Li1Formal, FrozenExamples) {
    // d=2, m=2: T / (1 - T^2)
    auto f = li1_formal(2, 2);
    ASSERT_EQ(f.num.size(), 2u);
    EXPECT_TRUE(f.num[0].c.empty());
    EXPECT_EQ(f.num[1], QPoly::constant(Rat(1)));
    ASSERT_EQ(f.den.size(), 3u);
    EXPECT_EQ(f.den[0], QPoly::constant(Rat(1)));
    EXPECT_TRUE(f.den[1].c.empty());
    EXPECT_EQ(f.den[2], QPoly::constant(Rat(-1)));

    // d=2, m=4: ([3]_q T + T^3) / ((1 - T^4) [3]_q)
    auto g = li1_formal(2, 4);
    ASSERT_EQ(g.num.size(), 4u);
    EXPECT_EQ(g.num[1], q_integer(3));
    EXPECT_EQ(g.num[3], QPoly::constant(Rat(1)));
    EXPECT_TRUE(g.num[0].c.empty());
    EXPECT_TRUE(g.num[2].c.empty());
    ASSERT_EQ(g.den.size(), 5u);
    EXPECT_EQ(g.den[0], q_integer(3));
    EXPECT_EQ(g.den[4], -q_integer(3));
}

TEST(Li1Formal, ConsistencyAcrossLevels) {
    for (long d : {2L, 3L}) {
        for (long m = 1; m <= 12; ++m) {
            for (long mp = m; mp <= 12; ++mp) {
                if (mp % m != 0) continue;
                EXPECT_TRUE(li1_consistency_check(d, m, mp)) << "d=" << d << " " << m << "|" << mp;
            }
        }
    }
}

TEST(KeyIdentity, FrozenAndGrid) {
    EXPECT_TRUE(key_identity_check(2, 2, 2));
    EXPECT_TRUE(key_identity_check(3, 3, 3));
    for (long d : {2L, 3L, 4L}) {
        for (long m : {2L, 4L, 6L}) {
            if (m % d != 0) continue;
            for (long e : divisors(m)) {
                if (e % d != 0) continue;
                EXPECT_TRUE(key_identity_check(d, m, e)) << "d=" << d << " m=" << m << " e=" << e;
            }
        }
    }
}

TEST(KeyIdentity, SignFlipFails) {
    EXPECT_FALSE(key_identity_check(2, 2, 2, true));
    EXPECT_FALSE(key_identity_check(3, 6, 6, true));
}

TEST(Li1Class, DivisibleByPhi) {
    auto z = zeta5();
    for (long d : {2L, 3L}) {
        for (long m : {2L, 3L, 4L, 6L, 12L}) {
            auto c = li1_class(z, d, m);
            for (const auto& [e, v] : c.components)
                EXPECT_TRUE(v.truncated(1).zero()) << "d=" << d << " m=" << m << " e=" << e;
        }
    }
}

TEST(Li1Class, MatchesSeriesOracle) {
    for (auto z : {zeta5(), zeta7()}) {
        for (long d : {2L, 3L}) {
            for (long m : {2L, 3L, 4L, 6L}) {
                auto c = li1_class(z, d, m);
                for (const auto& [e, v] : c.components)
                    EXPECT_EQ(v, li1_series_oracle(z, d, m, e))
                        << "g=" << z.order << " d=" << d << " m=" << m << " e=" << e;
            }
        }
    }
}

TEST(Li1Class, SymmetryUpToCoboundary) {
    for (auto z : {zeta5(), zeta7()}) {
        for (long d : {2L, 3L}) {
            for (long m : {2L, 4L, 6L, 12L}) {
                EXPECT_TRUE(li1_symmetry_check(z, d, m))
                    << "g=" << z.order << " d=" << d << " m=" << m;
            }
        }
    }
    // the coboundary is genuinely nonzero: at m = 2 the classes of zeta and
    // zeta^{-1} are negatives of each other, differing by 2 [2]_q zeta^3/(1 - zeta)
    auto z = zeta5();
    EXPECT_FALSE(twist_equal(li1_class(z, 2, 2), li1_class(z.inverse(), 2, 2)));
    EXPECT_TRUE(twist_equal(li1_class(z, 2, 2), twist_neg(li1_class(z.inverse(), 2, 2))));
}

TEST(MainTheorem, SmallCases) {
    auto z = zeta5();
    for (long d : {2L, 3L}) {
        for (long m : {2L, 3L, 4L, 6L}) {
            auto res = main_theorem_check(z, d, m);
            EXPECT_TRUE(res.pass) << "d=" << d << " m=" << m << " witness e=" << res.witness_e;
        }
    }
}

TEST(MainTheorem, VacuousWhenNoIndex) {
    // d = 5, m = 4: no e with d | e | m, both sides empty
    auto res = main_theorem_check(zeta7(), 5, 4);
    EXPECT_TRUE(res.pass);
    EXPECT_TRUE(res.chern.components.empty());
    EXPECT_TRUE(res.li1.components.empty());
}

TEST(MainTheorem, ConsistentWithCrossLevel) {
    auto z = zeta5();
    const NumberRing& R = ring_zeta5();
    RElement u = RElement(1).promote(R) - z.zeta;
    EXPECT_TRUE(cross_level_check(u, 2, 4, 2, canonical_unit_lift(z, 2), canonical_unit_lift(z, 4)));
}

TEST(ChernVanishing, BareRootsOfUnity) {
    // the cocycle of a root of unity with its monomial lift vanishes
    const NumberRing& R = ring_zeta5();
    RElement zeta = RElement::generator(R);
    for (RElement rho : {zeta, -zeta, zeta.pow(2), -RElement(1).promote(R)}) {
        for (long d : {2L, 3L}) {
            for (long m : {2L, 4L, 6L}) {
                auto c = chern_cocycle(rho, m, d, teichmuller_lift(R, rho, m));
                EXPECT_TRUE(all_zero(c.value)) << "d=" << d << " m=" << m;
            }
        }
    }
}
