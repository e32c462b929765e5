// SPDX-License-Identifier: Apache-2.0

#include "igsr/rate_engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace igsr {

namespace {

constexpr double kDenominatorFloor = 1e-300;

double half_log2_ratio(double num, double den, double noise)
{
    // the floor is only reachable for vanishing noise
    assert(noise < 1e-6 || den > kDenominatorFloor);
    (void)noise;
    den = std::max(den, kDenominatorFloor);
    return std::max(0.0, 0.5 * std::log2(std::max(num, den) / den));
}

}  // namespace

PhaseTerm phase_term(double pa, double ka, double ga, double pb, double kb, double gb,
                     double delta_angle)
{
    const double a = pa * ka * ga;
    const double b = pb * kb * gb;
    // |a + b e^{j delta}|^2, clamped against round-off below zero
    return {std::max(0.0, a * a + 2.0 * a * b * std::cos(delta_angle) + b * b)};
}

double rate_user(double noise, double p_own, double k_own, double g_own, double p_int,
                 double k_int, double g_int, PhaseTerm t)
{
    (void)k_own;
    const double total = noise + p_own * g_own + p_int * g_int;
    const double interf = p_int * g_int + noise;
    const double comp_int = p_int * k_int * g_int;
    const double num = total * total - t.value;
    const double den = interf * interf - comp_int * comp_int;
    return half_log2_ratio(num, den, noise);
}

double zic_rate_user2(double noise, double p2, double k2, double g22)
{
    const double s = p2 * g22 + noise;
    const double c = k2 * p2 * g22;
    return half_log2_ratio(s * s - c * c, noise * noise, noise);
}

double worst_rate_single_igs(const SystemConfig& cfg, const WorstCaseChannels& wc,
                             const TransmitDesign& design, User user)
{
    if (design.k1 > 0.0 && design.k2 > 0.0)
        throw std::invalid_argument("single-IGS rate requires at least one proper user");

    const User intf = other(user);
    const double p_own = design.power(user);
    const double k_own = design.kappa(user);
    const double g_own = wc.direct(user);
    const double p_int = design.power(intf);
    const double k_int = design.kappa(intf);
    const double g_int = wc.cross_into(user);

    const PhaseTerm t = phase_term(p_own, k_own, g_own, p_int, k_int, g_int, 0.0);
    return rate_user(cfg.noise, p_own, k_own, g_own, p_int, k_int, g_int, t);
}

RatePair worst_rates_single_igs(const SystemConfig& cfg, const WorstCaseChannels& wc,
                                const TransmitDesign& design)
{
    return {worst_rate_single_igs(cfg, wc, design, User::one),
            worst_rate_single_igs(cfg, wc, design, User::two)};
}

double zic_rate_user1(const SystemConfig& cfg, const WorstCaseChannels& wc, double p2, double k2,
                      double k1, double angle)
{
    const double p1 = cfg.p1_max;
    const PhaseTerm a = phase_term(p1, k1, wc.g11, p2, k2, wc.g21, angle);
    return rate_user(cfg.noise, p1, k1, wc.g11, p2, k2, wc.g21, a);
}

double zic_worst_rate_user1(const SystemConfig& cfg, const WorstCaseChannels& wc, double p2,
                            double k2, double k1)
{
    return zic_rate_user1(cfg, wc, p2, k2, k1, kPi + wc.theta);
}

MaxRate max_rate_and_gamma(const SystemConfig& cfg, const WorstCaseChannels& wc, User user,
                           double x)
{
    const double r = max_rate(cfg, wc, user);
    return {r, std::exp2(x * r) - 1.0};
}

double max_rate(const SystemConfig& cfg, const WorstCaseChannels& wc, User user)
{
    return std::log2(1.0 + cfg.budget(user) * wc.direct(user) / cfg.noise);
}

}  // namespace igsr
