// SPDX-License-Identifier: Apache-2.0

#include "igsr/design_two_user.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "igsr/quadratic.hpp"

namespace igsr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieEps = 1e-12;

void check_alpha(double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
}

double target_rate(const SystemConfig& cfg, const WorstCaseChannels& wc, User u, double alpha)
{
    return alpha * max_rate(cfg, wc, u);
}

bool meets_target(const SystemConfig& cfg, const WorstCaseChannels& wc, const TransmitDesign& d,
                  User constrained, double alpha)
{
    return worst_rate_single_igs(cfg, wc, d, constrained) >=
           target_rate(cfg, wc, constrained, alpha) - kConstraintSlack;
}

double total_power(const TransmitDesign& d) { return d.p1 + d.p2; }

/// Candidate ordering: objective, then lower total power, then lower kappa.
bool better(const RegionPoint& a, const RegionPoint& b)
{
    const double oa = a.objective();
    const double ob = b.objective();
    if (oa > ob + kTieEps) return true;
    if (oa < ob - kTieEps) return false;
    const double pa = total_power(a.design);
    const double pb = total_power(b.design);
    if (pa < pb - kTieEps) return true;
    if (pa > pb + kTieEps) return false;
    return a.design.k1 + a.design.k2 < b.design.k1 + b.design.k2 - kTieEps;
}

Strategy tag_for(const TransmitDesign& d, Strategy improper_tag)
{
    return d.proper() ? Strategy::PGS : improper_tag;
}

RegionPoint make_point(const SystemConfig& cfg, const WorstCaseChannels& wc,
                       const TransmitDesign& d, User constrained, double alpha, Strategy tag)
{
    RegionPoint pt;
    pt.alpha = alpha;
    pt.design = d;
    pt.rates = worst_rates_single_igs(cfg, wc, d);
    pt.strategy = tag_for(d, tag);
    pt.constrained_user = constrained;
    return pt;
}

/// Handles links whose worst-case direct gain vanishes. A user without a
/// direct gain has no guaranteed rate, so it stays silent.
std::optional<RegionPoint> degenerate_point(const SystemConfig& cfg, const WorstCaseChannels& wc,
                                            User constrained, double alpha)
{
    const User objective = other(constrained);
    const bool c_dead = wc.direct(constrained) <= 0.0;
    const bool o_dead = wc.direct(objective) <= 0.0;
    if (!c_dead && !o_dead) return std::nullopt;

    TransmitDesign d;
    d.power(constrained) = c_dead ? 0.0 : cfg.budget(constrained);
    d.power(objective) = o_dead ? 0.0 : cfg.budget(objective);
    return make_point(cfg, wc, d, constrained, alpha, Strategy::PGS);
}

TransmitDesign s1_design(const SystemConfig& cfg, User igs_user, double p, double kappa)
{
    TransmitDesign d;
    d.power(other(igs_user)) = cfg.budget(other(igs_user));
    d.power(igs_user) = p;
    d.kappa(igs_user) = kappa;
    return d;
}

TransmitDesign s2_design(const SystemConfig& cfg, User igs_user, double p, double kappa)
{
    TransmitDesign d;
    d.power(igs_user) = cfg.budget(igs_user);
    d.kappa(igs_user) = kappa;
    d.power(other(igs_user)) = p;
    return d;
}

}  // namespace

std::string_view to_string(Strategy s)
{
    switch (s) {
    case Strategy::S1: return "S1";
    case Strategy::S2: return "S2";
    case Strategy::PGS: return "PGS";
    case Strategy::ZIC: return "ZIC";
    }
    return "?";
}

std::optional<Strategy> strategy_from_string(std::string_view s)
{
    for (Strategy v : {Strategy::S1, Strategy::S2, Strategy::PGS, Strategy::ZIC})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

// ----- strategy 1 -----------------------------------------------------------

double strategy1_power_limit(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                             double alpha, double kappa)
{
    const User pu = other(igs_user);
    const double s = cfg.noise;
    const double snr = cfg.budget(pu) * wc.direct(pu);  // received proper power
    const double g_cross = wc.cross_into(pu);
    if (g_cross <= 0.0) return kInf;
    const double G = max_rate_and_gamma(cfg, wc, pu, 2.0 * alpha).gamma;

    // constraint in x = p * g_cross:
    //   G(1-k^2) x^2 + 2(G s - S) x - (S^2 + 2 S s - G s^2) <= 0
    const double a = G * (1.0 - kappa * kappa);
    const double b = 2.0 * (G * s - snr);
    const double c = -(snr * snr + 2.0 * snr * s - G * s * s);
    return feasible_extent(a, b, c) / g_cross;
}

double strategy1_kappa_star(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                            double alpha)
{
    const User pu = other(igs_user);
    const double s = cfg.noise;
    const double snr = cfg.budget(pu) * wc.direct(pu);
    const double x = cfg.budget(igs_user) * wc.cross_into(pu);
    const double G = max_rate_and_gamma(cfg, wc, pu, 2.0 * alpha).gamma;
    if (x <= 0.0 || G <= 0.0) return 0.0;

    const double one_minus_k2 =
        ((snr * snr + 2.0 * snr * s - G * s * s) - 2.0 * x * (G * s - snr)) / (G * x * x);
    return std::sqrt(std::clamp(1.0 - one_minus_k2, 0.0, 1.0));
}

namespace {

RegionPoint strategy1_over(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                           double alpha, std::span<const double> kappas)
{
    check_alpha(alpha);
    const User pu = other(igs_user);
    if (auto d = degenerate_point(cfg, wc, pu, alpha)) return *d;

    std::optional<RegionPoint> best;
    for (double k : kappas) {
        const double limit = strategy1_power_limit(cfg, wc, igs_user, alpha, k);
        const double p = std::clamp(std::min(cfg.budget(igs_user), limit), 0.0, kInf);
        const TransmitDesign d = s1_design(cfg, igs_user, p, k);
        if (!meets_target(cfg, wc, d, pu, alpha)) continue;
        RegionPoint pt = make_point(cfg, wc, d, pu, alpha, Strategy::S1);
        if (!best || better(pt, *best)) best = pt;
    }
    if (best) return *best;
    return make_point(cfg, wc, s1_design(cfg, igs_user, 0.0, 0.0), pu, alpha, Strategy::PGS);
}

}  // namespace

RegionPoint strategy1_solve(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                            double alpha)
{
    check_alpha(alpha);
    const std::array<double, 3> kappas{0.0, strategy1_kappa_star(cfg, wc, igs_user, alpha), 1.0};
    return strategy1_over(cfg, wc, igs_user, alpha, kappas);
}

RegionPoint robust_pgs_point(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                             double alpha)
{
    const std::array<double, 1> kappas{0.0};
    return strategy1_over(cfg, wc, igs_user, alpha, kappas);
}

// ----- strategy 2 -----------------------------------------------------------

double Strategy2Coefficients::rate(double p) const
{
    const double num = zeta1 * p * p + beta1 * p;
    const double den = zeta2 * p * p + beta2 * p + tau;
    return 0.5 * std::log2(1.0 + num / den);
}

Strategy2Coefficients strategy2_coefficients(const SystemConfig& cfg, const WorstCaseChannels& wc,
                                             User igs_user, double alpha)
{
    check_alpha(alpha);
    const User pu = other(igs_user);
    const double s = cfg.noise;
    const double P = cfg.budget(igs_user);
    const double g_pp = wc.direct(pu);          // proper user's direct link
    const double g_ip = wc.cross_into(pu);      // improper user into proper receiver
    const double g_pi = wc.cross_into(igs_user);  // proper user into improper receiver
    const double g_ii = wc.direct(igs_user);
    if (g_ii <= 0.0) throw std::domain_error("strategy 2 needs a nonzero improper direct gain");
    const double G = max_rate_and_gamma(cfg, wc, igs_user, 2.0 * alpha).gamma;

    const double r = g_ip / g_ii;
    Strategy2Coefficients c;
    c.zeta1 = g_pp * g_pp;
    c.beta1 = 2.0 * g_pp * (s + P * g_ip);
    c.zeta2 = r * r * g_pi * g_pi * G;
    c.beta2 = 2.0 * (s * G - P * g_ii) * r * r * g_pi;
    c.tau = s * s + 2.0 * s * P * g_ip - 2.0 * s * P * g_ip * r + s * s * G * r * r;

    const double lead = c.zeta1 * c.beta2 - c.zeta2 * c.beta1;
    const double disc = (c.zeta1 * c.tau) * (c.zeta1 * c.tau) - c.beta1 * c.tau * lead;
    if (lead != 0.0 && disc >= 0.0) {
        const double sq = std::sqrt(disc);
        c.x1_star = (-c.zeta1 * c.tau - sq) / lead;
        c.x2_star = (-c.zeta1 * c.tau + sq) / lead;
    }
    return c;
}

double strategy2_power_limit(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                             double alpha, double kappa)
{
    const User pu = other(igs_user);
    const double s = cfg.noise;
    const double S = cfg.budget(igs_user) * wc.direct(igs_user);
    const double g_pi = wc.cross_into(igs_user);
    const double G = max_rate_and_gamma(cfg, wc, igs_user, 2.0 * alpha).gamma;
    (void)pu;
    if (G <= 0.0 || g_pi <= 0.0) return kInf;
    const double y = S * (1.0 + std::sqrt(1.0 + G * (1.0 - kappa * kappa))) / G;
    return (y - s) / g_pi;
}

double strategy2_kappa_limit(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                             double alpha, double p)
{
    const double s = cfg.noise;
    const double S = cfg.budget(igs_user) * wc.direct(igs_user);
    if (S <= 0.0) return 1.0;
    const double G = max_rate_and_gamma(cfg, wc, igs_user, 2.0 * alpha).gamma;
    const double y = s + p * wc.cross_into(igs_user);
    const double v = 1.0 - G * y * y / (S * S) + 2.0 * y / S;
    return std::sqrt(std::clamp(v, 0.0, 1.0));
}

RegionPoint strategy2_solve(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                            double alpha)
{
    check_alpha(alpha);
    const User pu = other(igs_user);
    if (auto d = degenerate_point(cfg, wc, igs_user, alpha)) return *d;

    const double budget = cfg.budget(pu);
    const double p_full = strategy2_power_limit(cfg, wc, igs_user, alpha, 1.0);
    const double p_proper = strategy2_power_limit(cfg, wc, igs_user, alpha, 0.0);
    const double p_hi = std::max(0.0, std::min(budget, p_proper));
    const Strategy2Coefficients coef = strategy2_coefficients(cfg, wc, igs_user, alpha);

    std::vector<double> powers{budget, p_full, p_proper, 0.0};
    if (coef.x1_star) powers.push_back(*coef.x1_star);
    if (coef.x2_star) powers.push_back(*coef.x2_star);

    std::optional<RegionPoint> best;
    auto consider = [&](double p, double k) {
        const TransmitDesign d = s2_design(cfg, igs_user, p, k);
        if (!meets_target(cfg, wc, d, igs_user, alpha)) return;
        RegionPoint pt = make_point(cfg, wc, d, igs_user, alpha, Strategy::S2);
        if (!best || better(pt, *best)) best = pt;
    };

    consider(p_hi, 0.0);
    for (double p : powers) {
        if (std::isnan(p)) continue;
        const double pc = std::clamp(p, 0.0, p_hi);
        consider(pc, strategy2_kappa_limit(cfg, wc, igs_user, alpha, pc));
    }
    if (best) return *best;
    return make_point(cfg, wc, s2_design(cfg, igs_user, 0.0, 0.0), igs_user, alpha, Strategy::PGS);
}

// ----- region assembly ------------------------------------------------------

RegionPoint boundary_point(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha,
                           User constrained_user)
{
    check_alpha(alpha);
    const User obj = other(constrained_user);
    RegionPoint best = strategy1_solve(cfg, wc, obj, alpha);
    for (const RegionPoint& c :
         {strategy2_solve(cfg, wc, constrained_user, alpha), robust_pgs_point(cfg, wc, obj, alpha)}) {
        if (better(c, best)) best = c;
    }
    return best;
}

namespace {

template <typename Solve>
RateRegion sweep_with(std::span<const double> alpha_grid, Solve&& solve)
{
    std::vector<RegionPoint> pts;
    pts.reserve(alpha_grid.size() * 2);
    for (User u : {User::one, User::two})
        for (double a : alpha_grid) pts.push_back(solve(a, u));
    std::stable_sort(pts.begin(), pts.end(), [](const RegionPoint& x, const RegionPoint& y) {
        if (x.alpha != y.alpha) return x.alpha < y.alpha;
        return index(x.constrained_user) < index(y.constrained_user);
    });
    RateRegion region;
    region.points = pareto_filter(pts);
    return region;
}

}  // namespace

RateRegion sweep_region(const SystemConfig& cfg, const WorstCaseChannels& wc,
                        std::span<const double> alpha_grid)
{
    return sweep_with(alpha_grid,
                      [&](double a, User u) { return boundary_point(cfg, wc, a, u); });
}

RateRegion sweep_pgs_region(const SystemConfig& cfg, const WorstCaseChannels& wc,
                            std::span<const double> alpha_grid)
{
    return sweep_with(alpha_grid, [&](double a, User u) {
        RegionPoint pt = robust_pgs_point(cfg, wc, other(u), a);
        pt.constrained_user = u;
        return pt;
    });
}

std::vector<double> uniform_alpha_grid(int steps)
{
    std::vector<double> grid;
    if (steps <= 0) return grid;
    if (steps == 1) return {0.0};
    grid.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) grid.push_back(static_cast<double>(i) / (steps - 1));
    return grid;
}

std::vector<RegionPoint> pareto_filter(std::span<const RegionPoint> points)
{
    const std::size_t n = points.size();
    std::vector<RegionPoint> out;
    for (std::size_t j = 0; j < n; ++j) {
        const RatePair& p = points[j].rates;
        bool drop = false;
        for (std::size_t k = 0; k < n && !drop; ++k) {
            if (k == j) continue;
            const RatePair& q = points[k].rates;
            const bool ge = q.r1 >= p.r1 - kParetoEps && q.r2 >= p.r2 - kParetoEps;
            if (!ge) continue;
            const bool strict = q.r1 > p.r1 + kParetoEps || q.r2 > p.r2 + kParetoEps;
            // within epsilon in both coordinates: keep the earliest copy
            drop = strict || k < j;
        }
        if (!drop) out.push_back(points[j]);
    }
    return out;
}

std::vector<RatePair> timeshare_hull(std::span<const RatePair> points)
{
    if (points.empty()) return {};
    double r1_max = 0.0;
    double r2_max = 0.0;
    for (const RatePair& p : points) {
        r1_max = std::max(r1_max, p.r1);
        r2_max = std::max(r2_max, p.r2);
    }
    std::vector<RatePair> pts(points.begin(), points.end());
    pts.push_back({r1_max, 0.0});
    pts.push_back({0.0, r2_max});
    std::sort(pts.begin(), pts.end(), [](const RatePair& a, const RatePair& b) {
        if (a.r1 != b.r1) return a.r1 < b.r1;
        return a.r2 > b.r2;
    });

    auto cross = [](const RatePair& o, const RatePair& a, const RatePair& b) {
        return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
    };
    std::vector<RatePair> hull;
    for (const RatePair& p : pts) {
        if (!hull.empty() && hull.back().r1 == p.r1 && hull.back().r2 == p.r2) continue;
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0)
            hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

std::vector<RatePair> rates_of(std::span<const RegionPoint> points)
{
    std::vector<RatePair> r;
    r.reserve(points.size());
    for (const RegionPoint& p : points) r.push_back(p.rates);
    return r;
}

}  // namespace igsr
