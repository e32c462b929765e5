// SPDX-License-Identifier: Apache-2.0

#include "igsr/design_two_user.hpp"

#include <random>
#include <stdexcept>

#include "test_util.hpp"

using namespace igsr;
using igsr::test::unit_cfg;
using igsr::test::unit_wc;

namespace {

const double kHalfLog11 = 0.5 * std::log2(11.0);

struct Instance {
    SystemConfig cfg;
    WorstCaseChannels wc;
};

Instance random_instance(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Instance in;
    in.cfg = {0.1 + 20 * u(rng), 0.1 + 20 * u(rng), 0.2 + 2 * u(rng)};
    in.wc = {0.05 + 3 * u(rng), 0.05 + 3 * u(rng), 0.05 + 3 * u(rng), 0.05 + 3 * u(rng), 0.0};
    return in;
}

double target(const Instance& in, const RegionPoint& p)
{
    return p.alpha * max_rate(in.cfg, in.wc, p.constrained_user);
}

}  // namespace

TEST_CASE("strategy 1 at unit gains")
{
    const auto cfg = unit_cfg();
    const auto wc = unit_wc();
    const RegionPoint pt = strategy1_solve(cfg, wc, User::two, 0.5);
    CHECK(pt.constrained_user == User::one);
    CHECK(pt.strategy == Strategy::S1);
    CHECK_NEAR(pt.design.p1, 10.0, 0.0);
    CHECK_NEAR(pt.design.p2, 10.0, 1e-12);
    CHECK_NEAR(pt.design.k2, std::sqrt(0.89), 1e-12);
    CHECK(pt.design.k1 == 0.0);
    CHECK_NEAR(pt.rates.r2, 0.5 * std::log2(352.0 / 121.0), 1e-12);
    CHECK_NEAR(pt.rates.r1, kHalfLog11, 1e-12);

    // full impropriety at full power is feasible but strictly worse
    const TransmitDesign full{10, 10, 0, 1, 0, 0};
    CHECK_NEAR(worst_rate_single_igs(cfg, wc, full, User::two), 0.5 * std::log2(341.0 / 121.0), 1e-12);
    CHECK_NEAR(worst_rate_single_igs(cfg, wc, full, User::one), 0.5 * std::log2(341.0 / 21.0), 1e-12);
    CHECK(pt.rates.r2 > worst_rate_single_igs(cfg, wc, full, User::two) + 0.02);
}

TEST_CASE("strategy 1 kappa star and power limit")
{
    const auto cfg = unit_cfg();
    const auto wc = unit_wc();
    CHECK_NEAR(strategy1_kappa_star(cfg, wc, User::two, 0.5), std::sqrt(0.89), 1e-12);
    CHECK_NEAR(strategy1_power_limit(cfg, wc, User::two, 0.5, 0.0), std::sqrt(11.0), 1e-12);
    CHECK(std::isinf(strategy1_power_limit(cfg, wc, User::two, 0.5, 1.0)));

    // kappa = 0 candidate on its own
    const TransmitDesign d{10, std::sqrt(11.0), 0, 0, 0, 0};
    CHECK_NEAR(worst_rate_single_igs(cfg, wc, d, User::two), std::log2(1 + std::sqrt(11.0) / 11.0),
               1e-12);
    CHECK_NEAR(worst_rate_single_igs(cfg, wc, d, User::two), 0.38019, 1e-5);
}

TEST_CASE("strategy 1 power limit makes the constraint tight")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        const Instance in = random_instance(rng);
        const double a = 0.05 + 0.9 * u(rng), k = u(rng);
        const double p = strategy1_power_limit(in.cfg, in.wc, User::two, a, k);
        if (!std::isfinite(p) || p <= 0.0) continue;
        const TransmitDesign d{in.cfg.p1_max, p, 0, k, 0, 0};
        CHECK_NEAR(worst_rate_single_igs(in.cfg, in.wc, d, User::one),
                   a * max_rate(in.cfg, in.wc, User::one), 1e-9);
        ++checked;
    }
    CHECK(checked > 300);
}

TEST_CASE("strategy 1 saturation")
{
    const auto pt = strategy1_solve(unit_cfg(), unit_wc(), User::two, 1.0);
    CHECK(pt.design.p2 == 0.0);
    CHECK(pt.rates.r2 == 0.0);
    CHECK_NEAR(pt.rates.r1, std::log2(11.0), 1e-12);
    CHECK_THROWS_AS(strategy1_solve(unit_cfg(), unit_wc(), User::two, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(strategy1_solve(unit_cfg(), unit_wc(), User::two, -0.1), std::invalid_argument);
}

TEST_CASE("robust proper point")
{
    const auto cfg = unit_cfg();
    auto pt = robust_pgs_point(cfg, unit_wc(), User::two, 0.5);
    CHECK(pt.strategy == Strategy::PGS);
    CHECK_NEAR(pt.design.p2, std::sqrt(11.0), 1e-12);
    CHECK(pt.design.k2 == 0.0);
    CHECK_NEAR(pt.rates.r2, 0.38019, 1e-5);

    pt = robust_pgs_point(cfg, unit_wc(), User::two, 0.0);
    CHECK(pt.design.p2 == 10.0);

    WorstCaseChannels quiet = unit_wc();
    quiet.g21 = 0.0;
    for (double a : {0.0, 0.3, 0.9, 1.0}) {
        pt = robust_pgs_point(cfg, quiet, User::two, a);
        CHECK(pt.design.p2 == 10.0);
        CHECK_NEAR(pt.rates.r2, std::log2(1.0 + 10.0 / 11.0), 1e-12);
    }
}

TEST_CASE("strategy 2 coefficients")
{
    const auto c = strategy2_coefficients(unit_cfg(), unit_wc(), User::one, 0.5);
    CHECK_NEAR(c.zeta1, 1.0, 1e-12);
    CHECK_NEAR(c.zeta2, 10.0, 1e-12);
    CHECK_NEAR(c.beta1, 22.0, 1e-12);
    CHECK_NEAR(c.beta2, 0.0, 1e-12);
    CHECK_NEAR(c.tau, 11.0, 1e-12);
    REQUIRE(c.x1_star);
    CHECK_NEAR(*c.x1_star, 1.1, 1e-12);
    CHECK(c.zeta1 * c.beta2 - c.zeta2 * c.beta1 == doctest::Approx(-220.0));

    const auto c0 = strategy2_coefficients(unit_cfg(), unit_wc(), User::one, 0.0);
    CHECK(c0.zeta2 == 0.0);

    WorstCaseChannels dead = unit_wc();
    dead.g11 = 0.0;
    CHECK_THROWS_AS(strategy2_coefficients(unit_cfg(), dead, User::one, 0.5), std::domain_error);
}

TEST_CASE("strategy 2 rational rate equals direct evaluation")
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        const Instance in = random_instance(rng);
        const double a = 0.05 + 0.9 * u(rng);
        const auto coef = strategy2_coefficients(in.cfg, in.wc, User::one, a);
        const double p = in.cfg.p2_max * u(rng);
        const double s = in.cfg.noise;
        const double S = in.cfg.p1_max * in.wc.g11;
        const double G = max_rate_and_gamma(in.cfg, in.wc, User::one, 2 * a).gamma;
        const double y = s + p * in.wc.g21;
        const double v = 1.0 - G * y * y / (S * S) + 2.0 * y / S;
        if (v < 0.0 || v > 1.0) continue;  // only where the kappa limit is unclamped
        const double k = strategy2_kappa_limit(in.cfg, in.wc, User::one, a, p);
        const TransmitDesign d{in.cfg.p1_max, p, k, 0, 0, 0};
        CHECK_NEAR(coef.rate(p), worst_rate_single_igs(in.cfg, in.wc, d, User::two), 1e-9);
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("x1 star is a stationary point of the rational rate")
{
    const auto c = strategy2_coefficients(unit_cfg(), unit_wc(), User::one, 0.5);
    const double h = 1e-6;
    const double slope = (c.rate(1.1 + h) - c.rate(1.1 - h)) / (2 * h);
    CHECK(std::abs(slope) < 1e-8);
    CHECK(c.rate(1.1) > c.rate(1.0));
    CHECK(c.rate(1.1) > c.rate(1.2));
}

TEST_CASE("strategy 2 at unit gains")
{
    const auto cfg = unit_cfg();
    const auto wc = unit_wc();
    CHECK_NEAR(strategy2_power_limit(cfg, wc, User::one, 0.5, 1.0), 1.0, 1e-12);
    CHECK_NEAR(strategy2_power_limit(cfg, wc, User::one, 0.5, 0.0), std::sqrt(11.0), 1e-12);
    CHECK_NEAR(strategy2_kappa_limit(cfg, wc, User::one, 0.5, 1.1), std::sqrt(0.979), 1e-12);

    const auto pt = strategy2_solve(cfg, wc, User::one, 0.5);
    CHECK(pt.constrained_user == User::one);
    CHECK(pt.strategy == Strategy::S2);
    CHECK_NEAR(pt.design.p2, 1.1, 1e-12);
    CHECK_NEAR(pt.design.k1, 0.98944, 1e-5);
    CHECK(pt.design.k2 == 0.0);
    CHECK_NEAR(pt.rates.r2, 0.5 * std::log2(2.1), 1e-12);
    CHECK_NEAR(pt.rates.r2, 0.53519, 1e-5);
    CHECK_NEAR(pt.rates.r1, kHalfLog11, 1e-12);

    // proper alternative of the same strategy
    const TransmitDesign pgs{10, std::sqrt(11.0), 0, 0, 0, 0};
    CHECK(pt.rates.r2 > worst_rate_single_igs(cfg, wc, pgs, User::two));

    const auto sat = strategy2_solve(cfg, wc, User::one, 1.0);
    CHECK(sat.design.p2 == 0.0);
    CHECK(sat.design.k1 == 0.0);
    CHECK(sat.rates.r2 == 0.0);
}

TEST_CASE("boundary point picks the best strategy")
{
    const auto cfg = unit_cfg();
    const auto wc = unit_wc();
    const auto pt = boundary_point(cfg, wc, 0.5, User::one);
    CHECK(pt.strategy == Strategy::S1);
    CHECK_NEAR(pt.rates.r2, 0.5 * std::log2(352.0 / 121.0), 1e-12);
    CHECK(pt.rates.r2 > 0.53519);

    const auto free = boundary_point(cfg, wc, 0.0, User::one);
    CHECK(free.design.p2 == 10.0);
    CHECK(free.design.p1 == 10.0);
    CHECK((free.design.k1 == 0.0 || free.design.k2 == 0.0));

    WorstCaseChannels dec = unit_wc();
    dec.g12 = dec.g21 = 0.0;
    for (User u : {User::one, User::two}) {
        const auto d = boundary_point(cfg, dec, 0.6, u);
        CHECK(d.design.p1 == 10.0);
        CHECK(d.design.p2 == 10.0);
        CHECK(d.design.proper());
        CHECK_NEAR(d.rates.r1, std::log2(11.0), 1e-12);
        CHECK_NEAR(d.rates.r2, std::log2(11.0), 1e-12);
    }
}

TEST_CASE("boundary point invariants on random instances")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto grid = uniform_alpha_grid(21);
    for (int i = 0; i < 150; ++i) {
        const Instance in = random_instance(rng);
        for (User c : {User::one, User::two}) {
            double prev = 1e300;
            for (double a : grid) {
                const auto pt = boundary_point(in.cfg, in.wc, a, c);
                const auto pgs = robust_pgs_point(in.cfg, in.wc, other(c), a);
                // feasibility, rechecked from scratch
                const auto r = worst_rates_single_igs(in.cfg, in.wc, pt.design);
                CHECK(r[c] >= target(in, pt) - 1e-9);
                CHECK(pt.design.p1 <= in.cfg.p1_max);
                CHECK(pt.design.p2 <= in.cfg.p2_max);
                CHECK(pt.design.p1 >= 0.0);
                CHECK(pt.design.p2 >= 0.0);
                // dominance over proper signalling
                CHECK(pt.objective() >= pgs.objective() - 1e-12);
                // objective never grows with a stricter target
                CHECK(pt.objective() <= prev + 1e-12);
                prev = pt.objective();
                // a free power below its budget means the target binds
                const User o = other(c);
                if (pt.design.power(o) < in.cfg.budget(o) * (1 - 1e-9))
                    CHECK_NEAR(pt.rates[c], target(in, pt), 1e-6);
            }
        }
    }
}

TEST_CASE("outputs do not depend on channel phases")
{
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        EstimateSet a{}, b{};
        for (std::size_t l = 0; l < 4; ++l) {
            const double m = 0.2 + 1.5 * u(rng);
            a[l] = ChannelEstimate::polar(m, kPi * (2 * u(rng) - 1));
            b[l] = ChannelEstimate::polar(m, kPi * (2 * u(rng) - 1));
        }
        RegionSet reg{};
        for (auto& r : reg) r = UncertaintyRegion::disc(0.1);
        const SystemConfig cfg{10, 10, 1};
        const auto ra = sweep_region(cfg, worst_case_channels(a, reg), uniform_alpha_grid(11));
        auto wb = worst_case_channels(b, reg);
        const auto rb = sweep_region(cfg, wb, uniform_alpha_grid(11));
        REQUIRE(ra.points.size() == rb.points.size());
        for (std::size_t k = 0; k < ra.points.size(); ++k) {
            CHECK(ra.points[k].rates.r1 == rb.points[k].rates.r1);
            CHECK(ra.points[k].rates.r2 == rb.points[k].rates.r2);
            CHECK(ra.points[k].design.p1 == rb.points[k].design.p1);
            CHECK(ra.points[k].design.p2 == rb.points[k].design.p2);
            CHECK(ra.points[k].design.k1 == rb.points[k].design.k1);
            CHECK(ra.points[k].design.k2 == rb.points[k].design.k2);
        }
    }
}

TEST_CASE("degenerate direct links")
{
    const auto cfg = unit_cfg();
    WorstCaseChannels wc = unit_wc();
    wc.g22 = 0.0;
    auto pt = boundary_point(cfg, wc, 0.5, User::one);
    CHECK(pt.design.p2 == 0.0);
    CHECK(pt.rates.r2 == 0.0);
    CHECK_NEAR(pt.rates.r1, std::log2(11.0), 1e-12);

    wc.g11 = 0.0;
    pt = boundary_point(cfg, wc, 0.5, User::one);
    CHECK(pt.design.p1 == 0.0);
    CHECK(pt.design.p2 == 0.0);
    CHECK(pt.rates.r1 == 0.0);
    CHECK(pt.rates.r2 == 0.0);
}

TEST_CASE("region sweep")
{
    const auto cfg = unit_cfg();
    SUBCASE("decoupled channels collapse to one corner")
    {
        WorstCaseChannels dec = unit_wc();
        dec.g12 = dec.g21 = 0.0;
        const std::vector<double> grid{0.0, 1.0};
        const auto r = sweep_region(cfg, dec, grid);
        REQUIRE(r.points.size() == 1);
        CHECK_NEAR(r.points[0].rates.r1, std::log2(11.0), 1e-12);
        CHECK_NEAR(r.points[0].rates.r2, std::log2(11.0), 1e-12);
    }
    SUBCASE("unit gains cover the half-target point")
    {
        // user-1 constrained optimum; the user-2 constrained family dominates it,
        // e.g. (1.7786, 0.8649) with user 2 fully improper and p1 backed off
        const auto r = sweep_region(cfg, unit_wc(), uniform_alpha_grid());
        bool covered = false;
        for (const auto& p : r.points)
            covered = covered || (p.rates.r1 >= 1.72972 && p.rates.r2 > 0.770284 + 0.05);
        CHECK(covered);
    }
    SUBCASE("empty grid")
    {
        CHECK(sweep_region(cfg, unit_wc(), std::vector<double>{}).points.empty());
    }
    SUBCASE("swept points are mutually non-dominated")
    {
        const auto r = sweep_region(cfg, unit_wc(), uniform_alpha_grid(51));
        for (const auto& p : r.points)
            for (const auto& q : r.points) {
                if (&p == &q) continue;
                const bool dom = q.rates.r1 >= p.rates.r1 + kParetoEps &&
                                 q.rates.r2 >= p.rates.r2 + kParetoEps;
                CHECK_FALSE(dom);
            }
    }
}

TEST_CASE("grid helper")
{
    const auto g = uniform_alpha_grid();
    REQUIRE(g.size() == 201);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    CHECK(g[100] == 0.5);
}

TEST_CASE("pareto filter")
{
    auto pts = [](std::initializer_list<RatePair> rs) {
        std::vector<RegionPoint> v;
        for (const auto& r : rs) {
            RegionPoint p;
            p.rates = r;
            v.push_back(p);
        }
        return v;
    };
    auto f = pareto_filter(pts({{1, 2}, {2, 1}, {0.5, 0.5}}));
    REQUIRE(f.size() == 2);
    CHECK(f[0].rates.r1 == 1.0);
    CHECK(f[1].rates.r1 == 2.0);

    CHECK(pareto_filter(pts({{1, 1}})).size() == 1);
    CHECK(pareto_filter(pts({{1, 1}, {1, 1}})).size() == 1);
    CHECK(pareto_filter(pts({{1, 1}, {1 + 1e-12, 1}})).size() == 1);
    CHECK(pareto_filter(pts({{1, 2}, {1, 1}})).size() == 1);
}

TEST_CASE("time-sharing hull")
{
    SUBCASE("collinear points keep only the endpoints")
    {
        const std::vector<RatePair> in{{0, 3}, {1, 2}, {2, 1}, {3, 0}};
        const auto h = timeshare_hull(in);
        REQUIRE(h.size() == 2);
        CHECK(h[0].r1 == 0.0);
        CHECK(h[1].r1 == 3.0);
    }
    SUBCASE("interior point below the chord is dropped")
    {
        const std::vector<RatePair> in{{3.459, 0}, {1.73, 0.747}, {0, 3.459}};
        const auto h = timeshare_hull(in);
        // chord value at r1 = 1.73 is 1.729, above 0.747
        CHECK(h.size() == 2);
    }
    SUBCASE("a point above the chord stays")
    {
        const std::vector<RatePair> in{{3.459, 0}, {2.2, 2.2}, {0, 3.459}};
        const auto h = timeshare_hull(in);
        REQUIRE(h.size() == 3);
        CHECK(h[1].r1 == 2.2);
    }
    SUBCASE("one point gets the axis anchors")
    {
        const std::vector<RatePair> in{{1, 2}};
        const auto h = timeshare_hull(in);
        REQUIRE(h.size() == 3);
        CHECK((h[0].r1 == 0.0 && h[0].r2 == 2.0));
        CHECK((h[1].r1 == 1.0 && h[1].r2 == 2.0));
        CHECK((h[2].r1 == 1.0 && h[2].r2 == 0.0));
    }
}

TEST_CASE("strategy names")
{
    for (Strategy s : {Strategy::S1, Strategy::S2, Strategy::PGS, Strategy::ZIC})
        CHECK(strategy_from_string(to_string(s)) == s);
    CHECK_FALSE(strategy_from_string("nope"));
}
