#include "bsq/witness.hpp"
#include "feasibility_oracle.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace bsq;

static Rat R(long n, long d = 1) { return Rat(n, d); }

TEST_CASE("f_alpha evaluates the three-way minimum exactly") {
    CHECK(f_alpha(R(4, 5)) == R(2, 5));
    CHECK(f_alpha(R(9, 10)) == R(3, 10));
    CHECK(f_alpha(R(37, 50)) == R(1507, 5200));
    CHECK_THROWS_AS(f_alpha(R(1)), std::domain_error);
}

TEST_CASE("alpha threshold") {
    double v = alpha_threshold();
    CHECK(std::abs(v - 0.7351) < 5e-5);
    // defining polynomial vanishes at the algebraic root
    CHECK(std::abs(5 * v * v - 20 * v + 12) < 1e-12);
    CHECK(AlphaThreshold::is_above(R(37, 50)));
    CHECK_FALSE(AlphaThreshold::is_above(R(73, 100)));
}

TEST_CASE("region nonemptiness around the threshold") {
    CHECK(is_region_nonempty(R(37, 50)));
    CHECK_FALSE(is_region_nonempty(R(73, 100)));
    CHECK(is_region_nonempty(R(9, 10)));
    // monotone emptiness at step 1e-4 near the threshold
    for (long k = 7200; k <= 7350; k += 10) CHECK_FALSE(is_region_nonempty(R(k, 10000)));
    for (long k = 7351; k <= 7500; k += 10) CHECK(is_region_nonempty(R(k, 10000)));
    // matches the sign of the defining polynomial
    for (long k = 7300; k <= 7400; ++k)
        CHECK(is_region_nonempty(R(k, 10000)) == (AlphaThreshold::defining_polynomial(R(k, 10000)) < 0));
}

TEST_CASE("delta_range") {
    QInterval d = delta_range(R(4, 5), R(3, 10));
    CHECK(d.lo == R(1, 20));
    CHECK(d.hi == R(3, 20));
    CHECK(d.lo_open);
    CHECK(d.hi_open);
    QInterval d2 = delta_range(R(9, 10), R(1, 5));
    CHECK(d2.lo == R(0));
    CHECK(d2.hi == R(1, 10));
    // nonempty across a sample of the admissible region
    for (long ka = 74; ka <= 95; ++ka) {
        Rat a(ka, 100);
        if (!is_region_nonempty(a)) continue;
        Rat b = beta_midpoint(a);
        CHECK_FALSE(delta_range(a, b).empty());
    }
}

TEST_CASE("m_range") {
    QInterval m = m_range(R(4, 5), R(3, 10));
    CHECK(m.lo == R(5, 2));
    CHECK(m.hi == R(15, 4));
    CHECK(m_range(R(73, 100), R(27, 100)).empty());
    // a nonpositive coefficient makes the linear constraint vacuous:
    // 2(2-a)b - 3a + 2 <= 0 e.g. at a = 9/10, b = 1/5 -> 0.44 - 0.7 < 0
    Rat a(9, 10), b(1, 5);
    REQUIRE(2 * (2 - a) * b - 3 * a + 2 < 0);
    QInterval m2 = m_range(a, b);
    CHECK_FALSE(m2.empty());
    // the vacuous constraint must not have tightened the upper end below
    // min{4, 1/(1-a)} intersected with the remaining active constraints
    CHECK(m2.hi <= 4);
}

TEST_CASE("q_range and side conditions") {
    QInterval q = q_range(R(4, 5), R(3), R(1, 20));
    CHECK(q.lo == R(80, 23));
    CHECK(q.hi == R(4));
    // m <= 2/(2-2a+dt): 3 <= 40/9 holds at these values
    CHECK(R(3) <= 2 / (2 - 2 * R(4, 5) + R(1, 20)));
    CHECK_THROWS_AS(q_range(R(4, 5), R(3), (3 * R(4, 5) - 2) / 4), SideConditionError);
}

TEST_CASE("eta_range") {
    QInterval e = eta_range(R(4, 5), R(3, 10), R(3));
    CHECK(e.lo == R(12, 35));
    CHECK(e.hi == R(2, 5));
    // beta >= alpha/2 empties the window
    CHECK(eta_range(R(4, 5), R(2, 5), R(3)).empty());
    // the appendix lower bounds dominate beta across sampled admissible m
    for (long ka = 75; ka <= 90; ka += 5) {
        Rat a(ka, 100);
        if (!is_region_nonempty(a)) continue;
        Rat b = beta_midpoint(a);
        QInterval mr = m_range(a, b);
        if (mr.empty()) continue;
        Rat m = (mr.lo + mr.hi) / 2;
        QInterval er = eta_range(a, b, m);
        CHECK(er.lo >= b);
    }
}

TEST_CASE("s_range") {
    QInterval s = s_range(R(4, 5), R(3, 10), R(3), R(19, 50));
    CHECK(s.lo == R(9, 43));
    CHECK(s.hi == R(3, 10));
}

TEST_CASE("p_range") {
    QInterval p = p_range(R(4, 5), R(3, 10), R(3), R(19, 50), R(1, 4));
    CHECK(p.lo == R(25, 19));
    CHECK(p.hi == R(650, 473));
    CHECK(p.lo > 1);
    CHECK(p.hi < 2);
}

TEST_CASE("r_range") {
    QInterval inv = two_over_r_range(R(4, 5), R(3));
    CHECK(inv.lo == R(7, 15));
    CHECK(inv.hi == R(3, 5));
    CHECK_FALSE(inv.lo_open);
    CHECK(inv.hi_open);
    QInterval r = r_range(R(4, 5), R(3));
    CHECK(r.lo == R(10, 3));
    CHECK(r.hi == R(30, 7));
    CHECK(r.lo_open);
    CHECK_FALSE(r.hi_open);
    // window empty for alpha below sqrt(3)-1 at m near 2/alpha
    Rat a(7, 10); // 0.70 < sqrt(3)-1
    CHECK(two_over_r_range(a, 2 / a).empty());
}

TEST_CASE("rho_range") {
    QInterval r = rho_range(R(4, 5), R(3, 10));
    CHECK(r.lo == R(1));
    CHECK(r.hi == R(3, 2));
    CHECK(rho_range(R(4, 5), R(1, 5)).empty()); // beta = 1 - alpha
    QInterval r2 = rho_range(R(9, 10), R(3, 10));
    CHECK(r2.hi == R(3));
}

TEST_CASE("derived exponents at interval endpoints degenerate") {
    FeasibilityInput in{R(4, 5), R(3, 10)};
    FeasibilityWitness w{R(1, 10), R(3), R(1, 20), R(37, 10), R(19, 50), R(1, 4), R(27, 20), R(4), R(5, 4), {}};
    // q at the upper endpoint 2m/(2-a) makes varsigma exactly 1
    FeasibilityWitness wq = w;
    wq.q = 2 * w.m / (2 - in.alpha);
    CHECK(derived_exponents_raw(in, wq).varsigma == 1);
    // p at the lower endpoint 2m/(3m-4) makes lambda exactly 0; at the
    // interpolation upper endpoint it is exactly 1
    FeasibilityWitness wp = w;
    wp.p = 2 * w.m / (3 * w.m - 4);
    CHECK(derived_exponents_raw(in, wp).lambda == 0);
    wp.p = 2 * w.m / ((2 - in.alpha) * (w.m - 2) + w.m);
    CHECK(derived_exponents_raw(in, wp).lambda == 1);
}

TEST_CASE("verify_witness accepts the reference tuple") {
    FeasibilityInput in{R(4, 5), R(3, 10)};
    FeasibilityWitness w{R(1, 10), R(3), R(1, 20), R(37, 10), R(19, 50), R(1, 4), R(27, 20), R(4), R(5, 4), {}};
    auto v = verify_witness(in, w);
    CAPTURE(v);
    CHECK(v.empty());
    CHECK(w.derived.mu > 0);
    CHECK(w.derived.mu < 1);
    CHECK(w.derived.s2 == 1 - in.alpha + w.delta_tilde);
    CHECK(w.derived.s1 == 1 + in.beta - in.alpha - w.eta);
}

TEST_CASE("verify_witness rejects named violations") {
    FeasibilityInput in{R(4, 5), R(3, 10)};
    FeasibilityWitness w{R(1, 10), R(3), R(1, 20), R(37, 10), R(19, 50), R(7, 20), R(27, 20), R(4), R(5, 4), {}};
    auto v = verify_witness(in, w); // s = 7/20 > beta = 3/10
    REQUIRE_FALSE(v.empty());
    bool named = false;
    for (const auto& msg : v)
        if (msg.find("s") != std::string::npos) named = true;
    CHECK(named);

    FeasibilityInput low{R(1, 2), R(3, 5)};
    FeasibilityWitness w2 = w;
    auto v2 = verify_witness(low, w2);
    REQUIRE_FALSE(v2.empty());
    bool thresh = false;
    for (const auto& msg : v2)
        if (msg.find("10-2*sqrt(10)") != std::string::npos) thresh = true;
    CHECK(thresh);
}

TEST_CASE("open endpoints are rejected exactly") {
    FeasibilityInput in{R(4, 5), R(3, 10)};
    FeasibilityWitness w{R(1, 10), R(3), R(1, 20), R(37, 10), R(19, 50), R(1, 4), R(27, 20), R(4), R(5, 4), {}};
    FeasibilityWitness we = w;
    we.q = R(4); // open upper endpoint of the q window
    CHECK_FALSE(verify_witness(in, we).empty());
    we = w;
    we.rho = R(3, 2); // open upper endpoint of the rho window
    CHECK_FALSE(verify_witness(in, we).empty());
}

TEST_CASE("find_witness agrees with verify_witness") {
    FeasibilityInput in{R(4, 5), R(3, 10)};
    auto w = find_witness(in);
    REQUIRE(w.has_value());
    CHECK(verify_witness(in, *w).empty());

    CHECK_FALSE(find_witness({R(73, 100), R(27, 100)}).has_value());
    CHECK_FALSE(find_witness({R(1, 2), R(3, 5)}).has_value());
}

TEST_CASE("find_witness matches the brute-force oracle on seeded pairs") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<long> an(7000, 9500), bn(1, 999);
    int checked = 0;
    while (checked < 20) {
        Rat a(an(rng), 10000);
        Rat b(bn(rng), 1000);
        if (!(b > 0 && b < 1)) continue;
        bool lib = find_witness({a, b}).has_value();
        bool oracle = bsq::testing::oracle_feasible(a, b);
        CAPTURE(to_string(a), to_string(b));
        CHECK(lib == oracle);
        ++checked;
    }
}

TEST_CASE("substituting m = 2/alpha reproduces the reduced beta bounds") {
    for (long ka : {75L, 80L, 85L, 90L}) {
        Rat a(ka, 100);
        Rat m = 2 / a;
        Rat b1 = 3 - 3 * a;
        Rat b2 = a / 2;
        Rat b3 = (3 * a - 2) / (2 * (2 - a) * (1 - a));
        Rat b4 = (3 * a * a + 4 * a - 4) / (8 * (1 - a));
        // each m-constraint at m = 2/a is equivalent to a beta upper bound
        for (long kb = 1; kb < 50; ++kb) {
            Rat b(kb, 100);
            CHECK((m * (3 - a - b) > 4) == (b < b1));
            CHECK(((2 * (2 - a) * b - 3 * a + 2) * m < 4 * (2 - a) * b) == (b < b3));
            CHECK(((4 + 8 * b - 4 * a - 3 * a * a) * m < 16 * b) == (b < b4));
        }
        // eta needs beta < alpha/2, and the third entry never binds
        CHECK(verify_fact_inequality(a));
        CHECK(b3 > b4);
        (void)b2;
    }
}

TEST_CASE("simple fact inequality dense in (2/3, 1)") {
    for (long k = 1; k <= 999; ++k) {
        Rat a = Rat(2, 3) + Rat(k, 3000); // covers (2/3, 1)
        CHECK(verify_fact_inequality(a));
    }
    // exact equality of both sides at alpha = 2/3
    Rat a(2, 3);
    CHECK((3 * a - 2) / (2 * (2 - a) * (1 - a)) == (3 * a * a + 4 * a - 4) / (8 * (1 - a)));
    CHECK_THROWS_AS(verify_fact_inequality(a), std::domain_error);
}

TEST_CASE("sweep_region locates the boundary") {
    RegionMap map = sweep_region(R(70, 100), R(79, 100), R(1, 100));
    REQUIRE(map.cells.size() == 10);
    for (const auto& c : map.cells) {
        bool expect = c.alpha >= R(74, 100);
        CHECK(c.feasible == expect);
        if (c.feasible) {
            CHECK(c.beta > 1 - c.alpha);
            CHECK(c.beta < f_alpha(c.alpha));
        }
    }
    CHECK(map.boundary_alpha() == R(74, 100));
}

TEST_CASE("sweep over beta at fixed alpha hits a subinterval") {
    std::vector<Rat> betas;
    for (long k = 1; k <= 19; ++k) betas.push_back(Rat(k, 40)); // 0.025 .. 0.475
    RegionMap map = sweep_region(R(4, 5), R(4, 5), R(1), betas);
    bool started = false, ended = false;
    for (const auto& c : map.cells) {
        if (c.feasible) {
            CHECK_FALSE(ended);
            started = true;
            CHECK(c.beta > R(1, 5));
            CHECK(c.beta < R(2, 5));
        } else if (started) {
            ended = true;
        }
    }
    CHECK(started);
}

TEST_CASE("rational parsing is exact, including leading zeros") {
    CHECK(parse_rational("4/5") == Rat(4, 5));
    CHECK(parse_rational("0.73") == Rat(73, 100));  // "073" must not read as octal
    CHECK(parse_rational("0.08") == Rat(2, 25));
    CHECK(parse_rational("007/010") == Rat(7, 10));
    CHECK(parse_rational("-0.25") == Rat(-1, 4));
    CHECK(parse_rational("1e-4") == Rat(1, 10000));
    CHECK(parse_rational("2.5e2") == Rat(250));
    CHECK(parse_rational("2") == Rat(2));
    CHECK_FALSE(try_parse_rational("abc").has_value());
    CHECK_FALSE(try_parse_rational("1/0").has_value());
    CHECK_FALSE(try_parse_rational("").has_value());
    CHECK_FALSE(try_parse_rational("1.2.3").has_value());
    CHECK(to_string(Rat(7, 10)) == "7/10");
    CHECK(to_string(Rat(3)) == "3");
}
