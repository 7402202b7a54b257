#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "adlab/bounds.hpp"
#include "adlab/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace adlab;
using std::numbers::pi;

TEST_CASE("sharp constants") {
    CHECK(std::fabs(Constants::c2_cubed() - 3.0 * std::sqrt(3.0) / (4.0 * pi)) <= 1e-16);
    CHECK(std::fabs(std::pow(Constants::c2(), 3.0) - Constants::c2_cubed()) <= 1e-14);
    CHECK(Constants::c2() == doctest::Approx(0.745001829682664).epsilon(1e-12));
    CHECK(Constants::c_inf() == doctest::Approx(0.8254818122236567).epsilon(1e-12));
    CHECK(std::fabs(std::pow(Constants::c_inf(), 1.5) - 0.75) <= 1e-14);
}

TEST_CASE("main_constant closed form") {
    CHECK(std::fabs(main_constant(1.0) - 0.826993) <= 1e-6);
    CHECK(main_constant(1.0) == doctest::Approx(0.8269933431326881).epsilon(1e-12));
    CHECK(main_constant(2.0) == doctest::Approx(1.2860741371574875).epsilon(1e-12));
    // beyond the maximizer (p ~ 3.29) K(p) decreases toward 1 from above
    double prev = main_constant(5.0);
    for (double p : {10.0, 20.0, 40.0, 80.0}) {
        const double cur = main_constant(p);
        CHECK(cur < prev);
        CHECK(cur > 1.0);
        prev = cur;
    }
    CHECK_THROWS_AS(main_constant(0.5), ConfigError);
}

TEST_CASE("moser product: single factors and the infinite-product identity") {
    CHECK(moser_partial_constant(1, 0, 1.0) ==
          doctest::Approx(0.6430370685787438).epsilon(1e-12));
    CHECK(std::fabs(moser_partial_constant(40, 0, 1.0) - main_constant(1.0)) <= 1e-10);
    // unit factor at p = 1/C2^3
    CHECK(moser_partial_constant(1, 0, 1.0 / Constants::c2_cubed()) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // prod_{j=l+1}^{k} = prod_{j=1}^{k} / prod_{j=1}^{l}
    for (int l : {1, 3, 7}) {
        const double full = moser_partial_constant(20, 0, 2.0);
        const double head = moser_partial_constant(l, 0, 2.0);
        const double tail = moser_partial_constant(20, l, 2.0);
        CHECK(std::fabs(head * tail - full) <= 1e-14 * full);
    }
    for (double p : {1.0, 1.5, 2.0, 4.0, 10.0})
        CHECK(std::fabs(std::pow(moser_partial_constant(60, 0, p), 1.0 / p) - main_constant(p)) <=
              1e-10);
    CHECK_THROWS_AS(moser_partial_constant(0, 0, 1.0), ConfigError);
    CHECK_THROWS_AS(moser_partial_constant(3, 3, 1.0), ConfigError);
    CHECK_THROWS_AS(moser_partial_constant(3, -1, 1.0), ConfigError);
}

TEST_CASE("gronwall_bound") {
    const ScalarSeries Bzero{{0.0, 0.5, 1.0}, {0.0, 0.0, 0.0}};
    CHECK(gronwall_bound(2.0, 3.0, Bzero, 1.0) == 3.0);

    const ScalarSeries Bone{{0.0, 0.5, 1.0}, {1.0, 1.0, 1.0}};
    CHECK(gronwall_bound(2.0, 1.0, Bone, 1.0) ==
          doctest::Approx(1.6487212707001282).epsilon(1e-13));
    CHECK(gronwall_bound(1.0, 2.5, Bone, 1.0) == 2.5);  // q = 1: exponent vanishes

    // sampled B = (0, 2, 0) at t = (0, 1, 2); trapezoid of B^2 up to t = 1.5
    // is 2 (full interval) + 1.25 (partial, with B interpolated to 1)
    const ScalarSeries Btri{{0.0, 1.0, 2.0}, {0.0, 2.0, 0.0}};
    CHECK(gronwall_bound(3.0, 1.0, Btri, 1.5) ==
          doctest::Approx(std::exp(3.25)).epsilon(1e-13));

    CHECK_THROWS_AS(gronwall_bound(2.0, 1.0, Bone, 2.0), ConfigError);
    CHECK_THROWS_AS(gronwall_bound(0.5, 1.0, Bone, 1.0), ConfigError);
}

TEST_CASE("growth-time ceilings") {
    CHECK(growth_time_bound_lq(2.0, 1.0, 1.0) ==
          doctest::Approx(0.6430370685787438).epsilon(1e-12));
    CHECK(growth_time_bound_lq(2.0, 0.0, 5.0) == 0.0);
    // ((4/2) C2^3)^(1/4) = 0.826993^(1/4)
    CHECK(growth_time_bound_lq(4.0, 1.0, 1.0) ==
          doctest::Approx(0.9536203350876582).epsilon(1e-12));
    CHECK_THROWS_AS(growth_time_bound_lq(1.5, 1.0, 1.0), ConfigError);

    CHECK(growth_time_bound_sup(2.0, 1.0, 1.0) ==
          doctest::Approx(0.6149854604763856).epsilon(1e-12));
    CHECK(growth_time_bound_sup(2.0, 0.0, 3.0) == 0.0);
    // at q = 2 the dependence on B is linear
    CHECK(growth_time_bound_sup(2.0, 4.0, 1.0) ==
          doctest::Approx(2.4599418419055423).epsilon(1e-12));
    CHECK_THROWS_AS(growth_time_bound_sup(1.0, 1.0, 1.0), ConfigError);
}

TEST_CASE("bootstrap_bound") {
    CHECK(bootstrap_bound(2.0, 0.7, 0.0, 9.0) == 0.7);
    CHECK(bootstrap_bound(2.0, 0.1, 1.0, 2.0) ==
          doctest::Approx(2.0 * 0.6430370685787438).epsilon(1e-12));
    CHECK(bootstrap_bound(2.0, 100.0, 1.0, 2.0) == 100.0);
    // second branch coincides with the growth-time evaluator exactly
    testsup::Rand rng(3);
    for (int i = 0; i < 50; ++i) {
        const double q = 2.0 + 6.0 * rng.uniform();
        const double B = rng.uniform(0.0, 10.0), U = rng.uniform(0.0, 10.0);
        CHECK(bootstrap_bound(q, 0.0, B, U) == growth_time_bound_lq(q, B, U));
    }
}

TEST_CASE("supnorm_bound") {
    CHECK(supnorm_bound(1.0, 0.3, 0.0, 7.0) == 0.6);   // 2 * u_t0_sup
    CHECK(supnorm_bound(1.0, 0.1, 5.0, 1.0) == 10.0);  // 2 * B * U
    CHECK(supnorm_bound(2.0, 1.0, 0.0, 0.0) == 2.0);   // prefactor sqrt(4)
    // monotone in each argument
    testsup::Rand rng(4);
    for (int i = 0; i < 50; ++i) {
        const double p = 1.0 + 3.0 * rng.uniform();
        const double a = rng.uniform(0.0, 2.0), B = rng.uniform(0.0, 5.0),
                     U = rng.uniform(0.0, 5.0);
        const double base = supnorm_bound(p, a, B, U);
        CHECK(supnorm_bound(p, a + 0.1, B, U) >= base);
        CHECK(supnorm_bound(p, a, B + 0.1, U) >= base);
        CHECK(supnorm_bound(p, a, B, U + 0.1) >= base);
    }
}

TEST_CASE("asymptotic_bound and the 0 * inf convention") {
    CHECK(asymptotic_bound(1.0, 5.0, 1.0) ==
          doctest::Approx(4.134966715663441).epsilon(1e-12));
    CHECK(std::fabs(asymptotic_bound(1.0, 5.0, 1.0) - 4.134967) <= 1e-6);
    CHECK(asymptotic_bound(1.0, 0.0, 3.0) == 0.0);
    CHECK(std::isinf(asymptotic_bound(1.0, 0.0, p_inf)));
    CHECK(std::isinf(asymptotic_bound(1.0, p_inf, 0.0)));
    CHECK(std::isinf(asymptotic_bound(2.0, 1.0, p_inf)));
    testsup::Rand rng(5);
    for (int i = 0; i < 50; ++i) {
        const double p = 1.0 + 4.0 * rng.uniform();
        const double B = rng.uniform(0.0, 5.0), U = rng.uniform(0.0, 5.0);
        CHECK(asymptotic_bound(p, B + 0.2, U) >= asymptotic_bound(p, B, U));
        CHECK(asymptotic_bound(p, B, U + 0.2) >= asymptotic_bound(p, B, U));
    }
}

TEST_CASE("monotone_decay_bound") {
    CHECK(monotone_decay_bound(1.0, 1.0, 4.0) == 0.25);
    CHECK(monotone_decay_bound(2.0, 1.0, 1.0) ==
          doctest::Approx(0.7071067811865476).epsilon(1e-14));
    CHECK(monotone_decay_bound(1.0, 1.0, 1e12) <= 1e-5);
    CHECK_THROWS_AS(monotone_decay_bound(1.0, 1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(monotone_decay_bound(1.0, 1.0, -1.0), ConfigError);
}

namespace {

// small synthetic trajectory: constant L1, decaying higher norms, constant B
TimeSeries synthetic_series(double Bval) {
    TimeSeries ts;
    ts.p_list = {1.0, 2.0};
    ts.lp.assign(2, {});
    for (int k = 0; k <= 40; ++k) {
        const double t = 0.25 * k;
        ts.times.push_back(t);
        ts.lp[0].push_back(1.0);
        ts.lp[1].push_back(0.8 * std::exp(-0.05 * t) + 0.1);
        ts.linf.push_back(0.7 * std::exp(-0.05 * t) + 0.1);
        ts.mass.push_back(1.0);
        ts.B.push_back(Bval);
        ts.beta.push_back(0.0);
        ts.boundary_frac.push_back(0.0);
    }
    ts.meta.scheme = "upwind+backward_euler";
    ts.meta.grid = "-10,10,64";
    return ts;
}

}  // namespace

TEST_CASE("check_report passes a clean synthetic trajectory") {
    const TimeSeries ts = synthetic_series(2.0);
    CheckConfig cc;
    const BoundReport rep = check_report(ts, cc);
    CHECK(rep.pass);
    REQUIRE(rep.find("l1_contraction") != nullptr);
    CHECK(rep.find("l1_contraction")->pass);
    REQUIRE(rep.find("gronwall[q=2]") != nullptr);
    CHECK(rep.find("gronwall[q=2]")->pass);
    REQUIRE(rep.find("bootstrap[q=2]") != nullptr);
    CHECK(rep.find("bootstrap[q=2]")->pass);
    REQUIRE(rep.find("supnorm[p=1]") != nullptr);
    CHECK(rep.find("supnorm[p=1]")->pass);
    REQUIRE(rep.find("asymptotic") != nullptr);
    CHECK(rep.find("asymptotic")->pass);
    // decaying norms: no growth intervals
    CHECK(rep.find("growth_time_lq[q=2]")->evaluated == 0);
    // no field spec handed in
    CHECK(rep.find("monotone_decay")->note == "field spec unavailable");

    const std::string js = to_json_string(rep);
    CHECK(js.find("\"pass\": true") != std::string::npos);
    CHECK(js.find("l1_contraction") != std::string::npos);
}

TEST_CASE("check_report flags an L1 violation") {
    TimeSeries ts = synthetic_series(2.0);
    ts.lp[0][20] = 1.5;  // L1 jumps up
    CheckConfig cc;
    const BoundReport rep = check_report(ts, cc);
    CHECK(!rep.pass);
    CHECK(!rep.find("l1_contraction")->pass);
}

TEST_CASE("check_report flags a Gronwall violation when B is zero") {
    TimeSeries ts = synthetic_series(0.0);
    // with B = 0 the Gronwall envelope is flat at the initial norm
    ts.lp[1][10] = ts.lp[1][0] * 1.5;
    CheckConfig cc;
    cc.enabled = {"gronwall"};
    const BoundReport rep = check_report(ts, cc);
    CHECK(!rep.pass);
    CHECK(rep.find("gronwall[q=2]")->worst_margin < -0.02);
}

TEST_CASE("check_report rejects contaminated series") {
    TimeSeries ts = synthetic_series(2.0);
    ts.meta.contaminated = true;
    CheckConfig cc;
    try {
        check_report(ts, cc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("enlarge") != std::string::npos);
    }
}

TEST_CASE("growth intervals are detected and checked") {
    TimeSeries ts = synthetic_series(3.0);
    // inject a genuine growth phase in the L2 norm, small enough to stay
    // under the ceiling (3 C2^3)^(1/2) * l1 ~ 1.11
    for (int k = 10; k <= 20; ++k) ts.lp[1][static_cast<std::size_t>(k)] += 0.01 * (k - 9);
    CheckConfig cc;
    cc.enabled = {"growth_time"};
    const BoundReport rep = check_report(ts, cc);
    const CheckRecord* rec = rep.find("growth_time_lq[q=2]");
    REQUIRE(rec != nullptr);
    CHECK(rec->evaluated > 0);
    CHECK(rec->pass);

    // an absurd spike above the ceiling must fail
    ts.lp[1][30] = 5.0;
    const BoundReport rep2 = check_report(ts, cc);
    CHECK(!rep2.find("growth_time_lq[q=2]")->pass);
}
