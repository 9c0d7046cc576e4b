#pragma once

// Verification sweeps over the whole library, one suite per acceptance
// criterion.  Shared by the acceptance runner and the CLI driver.

#include "qcyc/polylog.hpp"
#include "qcyc/witt.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

namespace qcyc {

struct VerificationReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    bool pass = true;
    std::string witness;  // empty iff pass
    long long millis = 0;
};

namespace suites_detail {

inline const NumberRing& gaussian_ring() {
    static NumberRing R(QPoly({Rat(1), Rat(0), Rat(1)}), 2, "Z[i][1/2]");
    return R;
}
inline const NumberRing& zeta5_ring() {
    static NumberRing R(cyclotomic_poly(5), 5, "Z[zeta5][1/5]");
    return R;
}
inline const NumberRing& zeta7_ring() {
    static NumberRing R(cyclotomic_poly(7), 7, "Z[zeta7][1/7]");
    return R;
}

inline RElement random_element(const NumberRing& R, std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Rat> c;
    for (long i = 0; i < R.degree(); ++i) c.emplace_back(dist(rng));
    return RElement(R, QPoly(std::move(c)));
}

inline RPoly random_rpoly(const NumberRing& R, long deg, std::mt19937_64& rng) {
    RPoly p;
    for (long i = 0; i <= deg; ++i) p.c.push_back(random_element(R, rng, 3));
    p.trim();
    return p;
}

// genuine Nygaard element (q^m - 1) h for a global polynomial h
inline NygaardTwistElement random_global_twist(const NumberRing& R, long m,
                                               std::mt19937_64& rng) {
    RPoly qm1 = rpoly_from_qpoly(QPoly::monomial(Rat(1), m) - QPoly::constant(Rat(1)));
    RPoly h = random_rpoly(R, m, rng);
    NygaardTwistElement x{&R, m, {}};
    for (long e : divisors(m)) x.components.emplace(e, ComponentElement(R, e, 2, qm1 * h));
    return x;
}

// componentwise-random Nygaard element (exp/log are componentwise maps)
inline NygaardTwistElement random_componentwise_twist(const NumberRing& R, long m,
                                                      std::mt19937_64& rng) {
    NygaardTwistElement x{&R, m, {}};
    for (long e : divisors(m)) {
        auto phi = ComponentElement::from_qpoly(R, e, 2, cyclotomic_poly(e));
        ComponentElement c(R, e, 2, random_rpoly(R, euler_phi(e) - 1, rng));
        x.components.emplace(e, phi * c);
    }
    return x;
}

// random unit of Z[zeta_g][1/g]: +-zeta^a (1+zeta)^b; 1+zeta has norm
// Phi_g(-1) = 1 for odd prime g
inline RElement random_cyclotomic_unit(const NumberRing& R, long g, std::mt19937_64& rng) {
    RElement z = RElement::generator(R);
    RElement u = z.pow(static_cast<long>(rng() % g));
    if (rng() % 2) u = -u;
    RElement w = RElement(1).promote(R) + z;
    long b = static_cast<long>(rng() % 3);
    if (b == 1) u = u * w;
    if (b == 2) u = u * w.inverse();
    return u;
}

inline std::string relement_str(const RElement& a) { return poly_to_string(a.val); }

inline std::string component_str(const ComponentElement& c) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c.value.c.size(); ++i) {
        if (i) os << ", ";
        os << relement_str(c.value.c[i]);
    }
    os << "]";
    return os.str();
}

inline std::string twist_diff(const TwistAtDElement& a, const TwistAtDElement& b) {
    for (const auto& [e, v] : a.components) {
        auto it = b.components.find(e);
        if (it == b.components.end()) return "e=" + std::to_string(e) + ": missing on one side";
        if (!(v == it->second))
            return "e=" + std::to_string(e) + ": lhs=" + component_str(v) +
                   " rhs=" + component_str(it->second);
    }
    if (a.components.size() != b.components.size()) return "component index sets differ";
    return "equal";
}

inline bool all_zero(const TwistAtDElement& t) {
    for (const auto& [e, v] : t.components)
        if (!v.zero()) return false;
    return true;
}

struct Recorder {
    VerificationReport& report;
    bool ok() const { return report.pass; }
    void fail(const std::string& w) {
        if (report.pass) {
            report.pass = false;
            report.witness = w;
        }
    }
    void expect(bool cond, const std::string& w) {
        if (!cond) fail(w);
    }
};

template <class Body>
VerificationReport run_timed(const std::string& name,
                             std::vector<std::pair<std::string, std::string>> params,
                             Body&& body) {
    VerificationReport report{name, std::move(params), true, "", 0};
    Recorder rec{report};
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(rec);
    } catch (const std::exception& err) {
        rec.fail(std::string("exception: ") + err.what());
    }
    auto t1 = std::chrono::steady_clock::now();
    report.millis = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return report;
}

}  // namespace suites_detail

// criterion 1: the Dwork congruences characterize the image of the ghost map
inline VerificationReport suite_dwork() {
    using namespace suites_detail;
    return run_timed("dwork", {{"rings", "Z, Z[i][1/2], Z[zeta5][1/5]"}, {"m", "1..12"}, {"tuples", "200"}},
                     [](Recorder& rec) {
        std::mt19937_64 rng(1001);
        for (const NumberRing* R : {&NumberRing::integers(), &gaussian_ring(), &zeta5_ring()}) {
            for (long m = 1; m <= 12 && rec.ok(); ++m) {
                for (int it = 0; it < 200; ++it) {
                    GhostTuple g{R, m, {}};
                    if (it % 3 == 0) {
                        WittVector w{R, m, {}};
                        for (long e : divisors(m)) w.coords[e] = random_element(*R, rng, 3);
                        g = ghost(w);
                    } else {
                        for (long e : divisors(m)) g.coords[e] = random_element(*R, rng, 4);
                    }
                    bool in_image = true;
                    WittVector back{R, m, {}};
                    try {
                        back = from_ghost(g);
                    } catch (const NotInImage&) {
                        in_image = false;
                    }
                    std::string at = R->label + " m=" + std::to_string(m) + " it=" + std::to_string(it);
                    rec.expect(dwork_check(g) == in_image, "dwork_check mismatch at " + at);
                    if (in_image)
                        rec.expect(ghost_equal(ghost(back), g), "ghost round trip failed at " + at);
                    if (!rec.ok()) return;
                }
            }
        }
    });
}

// criterion 2: Frobenius and Verschiebung composition laws on both sides
inline VerificationReport suite_fv() {
    using namespace suites_detail;
    return run_timed("fv", {{"m", "1..6"}, {"d", "2,3"}}, [](Recorder& rec) {
        std::mt19937_64 rng(1002);
        const NumberRing& R = zeta5_ring();
        for (long m = 1; m <= 6; ++m) {
            for (long d : {2L, 3L}) {
                std::string at = "m=" + std::to_string(m) + " d=" + std::to_string(d);
                for (int it = 0; it < 5; ++it) {
                    // classical: F_d V_d = d
                    WittVector w{&R, m, {}};
                    for (long e : divisors(m)) w.coords[e] = random_element(R, rng, 3);
                    auto fv = witt_frobenius(witt_verschiebung(w, d), d);
                    GhostTuple dg = ghost(w);
                    for (auto& [e, v] : dg.coords) v = RElement(d) * v;
                    rec.expect(witt_equal(fv, from_ghost(dg)), "classical F_d V_d != d at " + at);

                    // classical: V_d F_d = multiplication by V_d(1)
                    WittVector top{&R, d * m, {}};
                    for (long e : divisors(d * m)) top.coords[e] = random_element(R, rng, 3);
                    auto vf = witt_verschiebung(witt_frobenius(top, d), d);
                    auto vone = witt_verschiebung(teichmuller(RElement(1).promote(R), m), d);
                    rec.expect(witt_equal(vf, witt_mul(top, vone)),
                               "classical V_d F_d != mult by V_d(1) at " + at);

                    // q side: F_d V_d = d
                    QWittElement c{&R, m, {}};
                    for (long e : divisors(m))
                        c.components.emplace(e, ComponentElement(R, e, 1, random_rpoly(R, euler_phi(e) - 1, rng)));
                    auto qfv = q_frobenius(q_verschiebung(c, d), m);
                    QWittElement dc = c;
                    for (auto& [e, ce] : dc.components) ce = ce.scaled(RElement(d));
                    rec.expect(qw_equal(qfv, dc), "q-side F_d V_d != d at " + at);

                    // q side: V_d F_d = multiplication by [d]_{q^m}
                    QWittElement qtop{&R, d * m, {}};
                    for (long e : divisors(d * m))
                        qtop.components.emplace(e, ComponentElement(R, e, 1, random_rpoly(R, euler_phi(e) - 1, rng)));
                    auto qvf = q_verschiebung(q_frobenius(qtop, m), d);
                    QWittElement qd{&R, d * m, {}};
                    for (long e : divisors(d * m))
                        qd.components.emplace(
                            e, ComponentElement::from_qpoly(R, e, 1, q_integer(d).substitute_power(m)));
                    rec.expect(qw_equal(qvf, qw_mul(qd, qtop)),
                               "q-side V_d F_d != [d]_{q^m} at " + at);
                    if (!rec.ok()) return;
                }
            }
        }
    });
}

// criterion 3: norm transitivity, coherence with Teichmuller lifts, and
// preservation of q-Dwork membership
inline VerificationReport suite_norms() {
    using namespace suites_detail;
    return run_timed("norms", {{"chains", "within 12"}, {"rings", "Z, Z[zeta5][1/5]"}},
                     [](Recorder& rec) {
        std::mt19937_64 rng(1003);
        const NumberRing& R = zeta5_ring();
        auto random_member = [&](const NumberRing& S, long m) {
            QWittElement acc = q_teichmuller(S, random_element(S, rng, 2), m);
            for (int i = 0; i < 2; ++i) {
                auto t = q_teichmuller(S, random_element(S, rng, 2), m);
                acc = (rng() % 2) ? qw_add(acc, t) : qw_mul(acc, t);
            }
            return acc;
        };
        for (long mpp = 1; mpp <= 12 && rec.ok(); ++mpp) {
            for (long mp : divisors(mpp)) {
                for (long m : divisors(mp)) {
                    std::string at = std::to_string(m) + "|" + std::to_string(mp) + "|" + std::to_string(mpp);
                    auto c = random_member(R, m);
                    rec.expect(qw_equal(cyclotomic_norm(cyclotomic_norm(c, mp), mpp),
                                        cyclotomic_norm(c, mpp)),
                               "norm transitivity failed at " + at);
                    auto x = random_element(R, rng, 3);
                    rec.expect(qw_equal(cyclotomic_norm(q_teichmuller(R, x, m), mp),
                                        q_teichmuller(R, x, mp)),
                               "norm of Teichmuller failed at " + at);
                }
            }
        }
        for (const NumberRing* S : {&NumberRing::integers(), &zeta5_ring()}) {
            for (long mp : {4L, 6L, 12L}) {
                for (long m : divisors(mp)) {
                    auto c = random_member(*S, m);
                    std::string at = S->label + " " + std::to_string(m) + "->" + std::to_string(mp);
                    rec.expect(q_dwork_membership(c).member, "member generator broken at " + at);
                    rec.expect(q_dwork_membership(cyclotomic_norm(c, mp)).member,
                               "norm lost membership at " + at);
                    if (!rec.ok()) return;
                }
            }
        }
    });
}

// criterion 4: (p, q-1)-adic ideal membership of q^{p^r} - 1 and [p^r]_q
inline VerificationReport suite_ideal() {
    using namespace suites_detail;
    return run_timed("ideal", {{"p", "2,3,5"}, {"r", "1..4"}}, [](Recorder& rec) {
        for (long p : {2L, 3L, 5L}) {
            long pr = 1;
            for (long r = 1; r <= 4; ++r) {
                pr *= p;
                std::string at = "p=" + std::to_string(p) + " r=" + std::to_string(r);
                QPoly qpr1 = QPoly::monomial(Rat(1), pr) - QPoly::constant(Rat(1));
                rec.expect(in_p_qminus1_power(qpr1, p, r), "q^{p^r}-1 not in ideal at " + at);
                rec.expect(in_p_qminus1_power(q_integer(pr), p, r), "[p^r]_q not in ideal at " + at);
            }
        }
        QPoly q21 = QPoly::monomial(Rat(1), 2) - QPoly::constant(Rat(1));
        rec.expect(!in_p_qminus1_power(q21, 2, 3), "negative control q^2-1 in (2,q-1)^3");
    });
}

// criterion 5: square-zero exp/log and the lifted-norm-of-exp diagram
inline VerificationReport suite_explog() {
    using namespace suites_detail;
    return run_timed("explog", {{"ring", "Z[zeta5][1/5]"}, {"levels", "m|m' <= 12"}},
                     [](Recorder& rec) {
        std::mt19937_64 rng(1005);
        const NumberRing& R = zeta5_ring();
        for (long mp = 1; mp <= 12 && rec.ok(); ++mp) {
            for (long m : divisors(mp)) {
                std::string at = std::to_string(m) + "->" + std::to_string(mp);
                auto x = random_componentwise_twist(R, m, rng);
                auto t = exp_twist(x);
                rec.expect(twist_equal(log_unit(t), x), "log(exp) != id at " + at);
                rec.expect(hab_equal(exp_twist(log_unit(t)), t), "exp(log) != id at " + at);

                // lifted norm of exp(x): 1 + (m'/m) x on e|m, exactly 1 elsewhere
                auto lhs = lifted_norm(t, mp);
                HabiroTruncElement rhs{&R, ModulusProfile::mixed(m, mp), {}, R.inverted_primes()};
                for (long e : divisors(mp)) {
                    long n = rhs.profile.exponent_at(e);
                    auto one = ComponentElement::from_qpoly(R, e, n, QPoly::constant(Rat(1)));
                    if (m % e == 0)
                        rhs.components.emplace(e, one + x.components.at(e).scaled(RElement(mp / m)));
                    else
                        rhs.components.emplace(e, one);
                }
                rec.expect(hab_equal(lhs, rhs), "exp diagram failed at " + at);
            }
        }
    });
}

// criterion 6: the s_d homotopy identity on random exp-modified pairs
inline VerificationReport suite_homotopy() {
    using namespace suites_detail;
    return run_timed("homotopy", {{"m", "2,3,4,6"}, {"d", "2,3"}, {"cases", "104"}},
                     [](Recorder& rec) {
        std::mt19937_64 rng(1006);
        const NumberRing& R = zeta5_ring();
        for (long m : {2L, 3L, 4L, 6L}) {
            for (long d : {2L, 3L}) {
                for (int it = 0; it < 13; ++it) {
                    auto x = random_global_twist(R, m, rng);
                    RElement z = random_cyclotomic_unit(R, 5, rng);
                    auto y = hab_mul(exp_twist(random_global_twist(R, m, rng)),
                                     teichmuller_lift(R, z, m));
                    auto lhs = twist_sub(s_d(EmPair{hab_mul(exp_twist(x), y), z}, d),
                                         s_d(EmPair{y, z}, d));
                    auto rhs = can_minus_frob(x, d, lhs.allowedSupport);
                    rec.expect(twist_equal(lhs, rhs),
                               "homotopy identity failed at m=" + std::to_string(m) +
                                   " d=" + std::to_string(d) + ": " + twist_diff(lhs, rhs));
                    if (!rec.ok()) return;
                }
            }
        }
    });
}

// criterion 7: the key power-series identity, with sign-flip controls
inline VerificationReport suite_key_identity() {
    using namespace suites_detail;
    return run_timed("key-identity", {{"d", "2,3,4"}, {"m", "2,3,4,6,8,12"}}, [](Recorder& rec) {
        for (long d : {2L, 3L, 4L}) {
            for (long m : {2L, 3L, 4L, 6L, 8L, 12L}) {
                for (long e : divisors(m)) {
                    if (e % d != 0) continue;
                    std::string at = "d=" + std::to_string(d) + " m=" + std::to_string(m) +
                                     " e=" + std::to_string(e);
                    rec.expect(key_identity_check(d, m, e), "key identity failed at " + at);
                    rec.expect(!key_identity_check(d, m, e, true),
                               "sign-flip control passed at " + at);
                    if (!rec.ok()) return;
                }
            }
        }
    });
}

// criterion 8: the first Chern class of 1 - zeta equals minus the Li_1 class
inline VerificationReport suite_main_theorem() {
    using namespace suites_detail;
    return run_timed("main-theorem",
                     {{"zeta", "zeta5, zeta7"}, {"m", "2,3,4,6,12"}, {"d", "2,3,4,6"}},
                     [](Recorder& rec) {
        for (const NumberRing* R : {&zeta5_ring(), &zeta7_ring()}) {
            RootOfUnity z(*R, RElement::generator(*R), R->N);
            for (long m : {2L, 3L, 4L, 6L, 12L}) {
                for (long d : {2L, 3L, 4L, 6L}) {
                    auto res = main_theorem_check(z, d, m);
                    rec.expect(res.pass, R->label + " m=" + std::to_string(m) +
                                             " d=" + std::to_string(d) +
                                             " e=" + std::to_string(res.witness_e) + ": " +
                                             twist_diff(res.chern, twist_neg(res.li1)));
                    if (!rec.ok()) return;
                }
            }
        }
    });
}

// criterion 9: cross-level coherence of the cocycles and lift independence
inline VerificationReport suite_cross_level() {
    using namespace suites_detail;
    return run_timed("cross-level",
                     {{"zeta", "zeta5, zeta7"}, {"levels", "m|m' in 2,3,4,6,12"}, {"lifts", "104"}},
                     [](Recorder& rec) {
        for (const NumberRing* R : {&zeta5_ring(), &zeta7_ring()}) {
            RootOfUnity z(*R, RElement::generator(*R), R->N);
            RElement u = RElement(1).promote(*R) - z.zeta;
            for (long mp : {2L, 3L, 4L, 6L, 12L}) {
                auto lift_mp = canonical_unit_lift(z, mp);
                for (long m : divisors(mp)) {
                    if (m < 2) continue;
                    for (long d : {2L, 3L, 4L, 6L}) {
                        rec.expect(cross_level_check(u, m, mp, d, canonical_unit_lift(z, m), lift_mp),
                                   R->label + " " + std::to_string(m) + "|" + std::to_string(mp) +
                                       " d=" + std::to_string(d) + ": transition mismatch");
                        if (!rec.ok()) return;
                    }
                }
            }
        }
        std::mt19937_64 rng(1009);
        const NumberRing& R = zeta5_ring();
        for (long m : {2L, 3L, 4L, 6L}) {
            for (long d : {2L, 3L}) {
                for (int it = 0; it < 13; ++it) {
                    RElement zu = random_cyclotomic_unit(R, 5, rng);
                    auto lift1 = hab_mul(exp_twist(random_global_twist(R, m, rng)),
                                         teichmuller_lift(R, zu, m));
                    auto lift2 = hab_mul(exp_twist(random_global_twist(R, m, rng)), lift1);
                    rec.expect(lift_independence(zu, m, d, lift1, lift2),
                               "lift independence failed at m=" + std::to_string(m) +
                                   " d=" + std::to_string(d));
                    if (!rec.ok()) return;
                }
            }
        }
    });
}

// criterion 10: the lambda-ring comparison over Z
inline VerificationReport suite_lambda() {
    using namespace suites_detail;
    return run_timed("lambda", {{"m", "1..12"}, {"d", "2,3"}}, [](Recorder& rec) {
        std::mt19937_64 rng(1010);
        auto random_qpoly = [&](long deg) {
            std::uniform_int_distribution<long> dist(-4, 4);
            std::vector<Rat> c;
            for (long i = 0; i <= deg; ++i) c.emplace_back(dist(rng));
            return QPoly(std::move(c));
        };
        for (long m = 1; m <= 12; ++m) {
            std::string at = "m=" + std::to_string(m);
            QPoly f = random_qpoly(m - 1);
            rec.expect(lambda_extract(lambda_embed(f, m)) == f, "round trip failed at " + at);
            rec.expect(q_dwork_membership(lambda_embed(random_qpoly(7), m)).member,
                       "embedded tuple not Dwork-valid at " + at);
            for (long d : {2L, 3L}) {
                auto lhs = cyclotomic_frobenius(lambda_embed(f, m), d);
                auto rhs = lambda_embed_at_d(f.substitute_power(d), d * m, d);
                rec.expect(at_d_equal(lhs, rhs),
                           "Frobenius square failed at " + at + " d=" + std::to_string(d));
            }
            if (!rec.ok()) return;
        }
    });
}

// criterion 11: polylog symmetry (up to the explicit coboundary) and
// vanishing of the cocycle at bare roots of unity
inline VerificationReport suite_polylog() {
    using namespace suites_detail;
    return run_timed("polylog",
                     {{"zeta", "zeta5, zeta7"}, {"m", "2,3,4,6,12"}, {"d", "2,3,4,6"}},
                     [](Recorder& rec) {
        for (const NumberRing* R : {&zeta5_ring(), &zeta7_ring()}) {
            RootOfUnity z(*R, RElement::generator(*R), R->N);
            for (long m : {2L, 3L, 4L, 6L, 12L}) {
                for (long d : {2L, 3L, 4L, 6L}) {
                    std::string at = R->label + " m=" + std::to_string(m) + " d=" + std::to_string(d);
                    rec.expect(li1_symmetry_check(z, d, m), "symmetry failed at " + at);
                    for (RElement rho : {z.zeta, -z.zeta}) {
                        auto c = chern_cocycle(rho, m, d, teichmuller_lift(*R, rho, m));
                        rec.expect(all_zero(c.value), "cocycle of root of unity nonzero at " + at);
                    }
                    if (!rec.ok()) return;
                }
            }
        }
    });
}

struct SuiteEntry {
    int criterion;
    const char* name;
    VerificationReport (*run)();
};

inline const std::vector<SuiteEntry>& all_suites() {
    static const std::vector<SuiteEntry> suites = {
        {1, "dwork", &suite_dwork},
        {2, "fv", &suite_fv},
        {3, "norms", &suite_norms},
        {4, "ideal", &suite_ideal},
        {5, "explog", &suite_explog},
        {6, "homotopy", &suite_homotopy},
        {7, "key-identity", &suite_key_identity},
        {8, "main-theorem", &suite_main_theorem},
        {9, "cross-level", &suite_cross_level},
        {10, "lambda", &suite_lambda},
        {11, "polylog", &suite_polylog},
    };
    return suites;
}

// run the selected suites (all when names is empty) with up to `jobs`
// worker threads; reports come back in registry order
inline std::vector<VerificationReport> run_suites(const std::vector<std::string>& names,
                                                  int jobs) {
    std::vector<const SuiteEntry*> selected;
    for (const auto& s : all_suites()) {
        if (names.empty() ||
            std::find(names.begin(), names.end(), s.name) != names.end())
            selected.push_back(&s);
    }
    std::vector<VerificationReport> reports(selected.size());
    if (jobs < 1) jobs = 1;
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < selected.size(); i = next.fetch_add(1))
            reports[i] = selected[i]->run();
    };
    if (jobs == 1 || selected.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs && j < static_cast<int>(selected.size()); ++j)
            pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return reports;
}

}  // namespace qcyc
