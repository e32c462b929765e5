// SPDX-License-Identifier: Apache-2.0

#include "igsr/design_zic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "igsr/quadratic.hpp"

namespace igsr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBisectionTol = 1e-10;
constexpr int kBisectionMaxIter = 200;

void check_alpha(double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
}

/// cos(theta) clipped at zero; past pi/2 user 1 turns proper.
double useful_cos(double theta)
{
    // cos(pi/2) rounds to 6e-17; snap so the proper regime is exact
    if (theta >= kPi / 2) return 0.0;
    return std::max(0.0, std::cos(theta));
}

struct QRoot {
    double value = kInf;
    bool full_kappa1 = false;
};

QRoot q_root(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha, double k2)
{
    check_alpha(alpha);
    if (!(k2 >= 0.0 && k2 <= 1.0)) throw std::invalid_argument("kappa2 must lie in [0, 1]");
    if (wc.g21 <= 0.0) return {};

    const double s = cfg.noise;
    const double S = cfg.p1_max * wc.g11;
    const double G = max_rate_and_gamma(cfg, wc, User::one, 2.0 * alpha).gamma;
    const double c = useful_cos(wc.theta);
    const double kk = k2 * k2;

    // kappa1 < 1: A = x^2 k2^2 (1 - c^2), x = p2 g21
    const double eta = (G + 1.0) * (1.0 - kk) - 1.0 + kk * (1.0 - c * c);
    const double x1 = feasible_extent(eta, -2.0 * (S - G * s), -(S * S + 2.0 * S * s - G * s * s));
    const double x_switch = k2 * c > 0.0 ? S / (k2 * c) : kInf;
    if (x1 <= x_switch) return {x1 / wc.g21, false};

    // kappa1 = 1 beyond x_switch
    const double a2 = G * (1.0 - kk);
    const double b2 = -2.0 * (S * (1.0 + k2 * c) - G * s);
    const double c2 = -(2.0 * s * S - G * s * s);
    return {feasible_extent(a2, b2, c2, x_switch) / wc.g21, true};
}

struct Candidate {
    TransmitDesign design;
    RatePair rates;
    double q = 0.0;
};

}  // namespace

std::pair<double, double> optimal_phase_offsets(double angle_h11, double angle_h21)
{
    return {0.0, normalize_angle(2.0 * angle_h11 - 2.0 * angle_h21 + kPi)};
}

double kappa1_star(double p2, double k2, double theta, double p1, double g11, double g21)
{
    if (!(g11 > 0.0)) throw std::domain_error("kappa1_star needs a nonzero direct gain g11");
    if (p1 <= 0.0) return 0.0;
    const double k = (p2 * g21) / (p1 * g11) * k2 * useful_cos(theta);
    return std::min(1.0, k);
}

double q_value(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha, double k2)
{
    return q_root(cfg, wc, alpha, k2).value;
}

bool q_uses_full_kappa1_branch(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha,
                               double k2)
{
    return q_root(cfg, wc, alpha, k2).full_kappa1;
}

double kappa_max(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha)
{
    const double P2 = cfg.p2_max;
    if (q_value(cfg, wc, alpha, 0.0) >= P2) return 0.0;
    if (q_value(cfg, wc, alpha, 1.0) < P2) return 1.0;

    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < kBisectionMaxIter && hi - lo > kBisectionTol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (q_value(cfg, wc, alpha, mid) >= P2)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

bool igs_beneficial(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha)
{
    check_alpha(alpha);
    if (!(cfg.p2_max > q_value(cfg, wc, alpha, 0.0))) return false;
    if (wc.g22 <= 0.0) return false;

    const double s = cfg.noise;
    const double S = cfg.p1_max * wc.g11;
    const double G2 = max_rate_and_gamma(cfg, wc, User::one, 2.0 * alpha).gamma;
    const double G1 = max_rate_and_gamma(cfg, wc, User::one, alpha).gamma;
    const double c = useful_cos(wc.theta);
    const double cc = c * c;

    const double num = s * G2 - S - (S / G1 - s) * cc;
    const double den = s * (G2 + cc);
    return wc.g21 / wc.g22 > num / den;
}

double zic_objective(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha, double k2)
{
    const double p2 = std::min(cfg.p2_max, q_value(cfg, wc, alpha, k2));
    return zic_rate_user2(cfg.noise, p2, k2, wc.g22);
}

ZicSolution zic_solve(const SystemConfig& cfg, const WorstCaseChannels& wc,
                      const EstimateSet& estimates, double alpha)
{
    check_alpha(alpha);
    const auto [phi1, phi2] = optimal_phase_offsets(estimates[index(Link::h11)].phase,
                                                    estimates[index(Link::h21)].phase);
    ZicSolution sol;
    sol.alpha = alpha;
    sol.design.p1 = cfg.p1_max;
    sol.design.phi1 = phi1;
    sol.design.phi2 = phi2;

    if (wc.g11 <= 0.0) {
        // user 1 has no guaranteed rate: its target is void
        sol.design.p2 = cfg.p2_max;
        sol.q_at_k = kInf;
        sol.rates = {0.0, zic_rate_user2(cfg.noise, cfg.p2_max, 0.0, wc.g22)};
        return sol;
    }

    const double target = alpha * max_rate(cfg, wc, User::one);
    sol.kappa_max = kappa_max(cfg, wc, alpha);
    sol.igs_condition_holds = igs_beneficial(cfg, wc, alpha);

    std::optional<Candidate> best;
    for (double k2 : std::array<double, 3>{0.0, sol.kappa_max, 1.0}) {
        Candidate c;
        c.q = q_value(cfg, wc, alpha, k2);
        TransmitDesign& d = c.design;
        d = sol.design;
        d.k2 = k2;
        d.p2 = std::min(cfg.p2_max, c.q);
        d.k1 = kappa1_star(d.p2, k2, wc.theta, d.p1, wc.g11, wc.g21);
        c.rates.r1 = zic_worst_rate_user1(cfg, wc, d.p2, k2, d.k1);
        c.rates.r2 = zic_rate_user2(cfg.noise, d.p2, k2, wc.g22);
        if (c.rates.r1 < target - kConstraintSlack) continue;

        const bool take = !best || c.rates.r2 > best->rates.r2 + 1e-12 ||
                          (c.rates.r2 >= best->rates.r2 - 1e-12 &&
                           (d.p2 < best->design.p2 - 1e-12 ||
                            (d.p2 <= best->design.p2 + 1e-12 && k2 < best->design.k2)));
        if (take) best = c;
    }

    if (!best) {
        Candidate c;
        c.design = sol.design;
        c.design.p2 = 0.0;
        c.rates = {zic_worst_rate_user1(cfg, wc, 0.0, 0.0, 0.0), 0.0};
        best = c;
    }
    sol.design = best->design;
    sol.rates = best->rates;
    sol.q_at_k = best->q;
    return sol;
}

RegionPoint to_region_point(const ZicSolution& s)
{
    RegionPoint pt;
    pt.alpha = s.alpha;
    pt.rates = s.rates;
    pt.design = s.design;
    pt.strategy = s.design.proper() ? Strategy::PGS : Strategy::ZIC;
    pt.constrained_user = User::one;
    return pt;
}

RateRegion zic_sweep(const SystemConfig& cfg, const WorstCaseChannels& wc,
                     const EstimateSet& estimates, std::span<const double> alpha_grid)
{
    std::vector<RegionPoint> pts;
    pts.reserve(alpha_grid.size());
    for (double a : alpha_grid) pts.push_back(to_region_point(zic_solve(cfg, wc, estimates, a)));
    RateRegion region;
    region.points = pareto_filter(pts);
    return region;
}

RateRegion zic_pgs_sweep(const SystemConfig& cfg, const WorstCaseChannels& wc,
                         std::span<const double> alpha_grid)
{
    std::vector<RegionPoint> pts;
    pts.reserve(alpha_grid.size());
    for (double a : alpha_grid) {
        RegionPoint pt;
        pt.alpha = a;
        pt.constrained_user = User::one;
        pt.design.p1 = cfg.p1_max;
        pt.design.p2 = wc.g11 > 0.0 ? std::min(cfg.p2_max, q_value(cfg, wc, a, 0.0)) : cfg.p2_max;
        pt.rates.r1 = zic_worst_rate_user1(cfg, wc, pt.design.p2, 0.0, 0.0);
        pt.rates.r2 = zic_rate_user2(cfg.noise, pt.design.p2, 0.0, wc.g22);
        pts.push_back(pt);
    }
    RateRegion region;
    region.points = pareto_filter(pts);
    return region;
}

}  // namespace igsr
