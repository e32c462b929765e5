// SPDX-License-Identifier: Apache-2.0
//
// Closed-form worst-case robust designs for the two-user interference
// channel when at most one user transmits an improper signal, and the
// assembly of the resulting rate region.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "igsr/channel_model.hpp"
#include "igsr/rate_engine.hpp"

namespace igsr {

enum class Strategy {
    S1,   ///< proper user at full power, improper user adapts power and kappa
    S2,   ///< improper user at full power, proper user adapts power
    PGS,  ///< both proper
    ZIC,  ///< both improper, Z channel
};

std::string_view to_string(Strategy s);
std::optional<Strategy> strategy_from_string(std::string_view s);

struct RegionPoint {
    double alpha = 0.0;
    RatePair rates;
    TransmitDesign design;
    Strategy strategy = Strategy::PGS;
    User constrained_user = User::one;

    double objective() const { return rates[other(constrained_user)]; }
};

struct RateRegion {
    std::vector<RegionPoint> points;
    std::optional<std::vector<RatePair>> hull_points;
};

/// Feasibility slack on the worst-case rate constraint, in bits.
inline constexpr double kConstraintSlack = 1e-9;

/// Largest improper-user power meeting the proper user's target at
/// circularity `kappa` (strategy 1); +inf when the target never binds.
double strategy1_power_limit(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                             double alpha, double kappa);

/// Smallest kappa letting the improper user transmit at full budget while
/// the proper user's target holds, clamped to [0, 1].
double strategy1_kappa_star(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                            double alpha);

/// Strategy 1: `igs_user` is the improper, power-adapting user; the other
/// user is proper at full power and carries the constraint.
RegionPoint strategy1_solve(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                            double alpha);

/// Strategy 1 restricted to proper signalling.
RegionPoint robust_pgs_point(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                             double alpha);

struct Strategy2Coefficients {
    double zeta1 = 0.0;
    double zeta2 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double tau = 0.0;
    std::optional<double> x1_star;
    std::optional<double> x2_star;

    /// Rational form of the proper user's rate along the tight constraint.
    double rate(double p) const;
};

/// Throws std::domain_error when the improper user's direct gain is zero.
Strategy2Coefficients strategy2_coefficients(const SystemConfig& cfg, const WorstCaseChannels& wc,
                                             User igs_user, double alpha);

/// Strategy 2 power limit of the proper user for the improper user's
/// circularity `kappa` (+inf when unconstrained; negative when no power works).
double strategy2_power_limit(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                             double alpha, double kappa);

/// Largest improper-user kappa compatible with proper-user power `p`
/// (unclamped square root argument is returned through the clamp to [0, 1]).
double strategy2_kappa_limit(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                             double alpha, double p);

/// Strategy 2: `igs_user` transmits improperly at full power and carries the
/// constraint; the other user is proper and adapts its power.
RegionPoint strategy2_solve(const SystemConfig& cfg, const WorstCaseChannels& wc, User igs_user,
                            double alpha);

/// Best point over both strategies and proper signalling with the rate of
/// `constrained_user` held at alpha times its maximum.
RegionPoint boundary_point(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha,
                           User constrained_user);

RateRegion sweep_region(const SystemConfig& cfg, const WorstCaseChannels& wc,
                        std::span<const double> alpha_grid);

/// Same sweep restricted to proper signalling.
RateRegion sweep_pgs_region(const SystemConfig& cfg, const WorstCaseChannels& wc,
                            std::span<const double> alpha_grid);

std::vector<double> uniform_alpha_grid(int steps = 201);

inline constexpr double kParetoEps = 1e-9;

/// Drops epsilon-dominated points and collapses duplicates. Keeps the
/// input order of the survivors.
std::vector<RegionPoint> pareto_filter(std::span<const RegionPoint> points);

/// Vertices of the upper-right convex hull of `points` together with the
/// axis anchors (max r1, 0) and (0, max r2), ordered by increasing r1.
std::vector<RatePair> timeshare_hull(std::span<const RatePair> points);

std::vector<RatePair> rates_of(std::span<const RegionPoint> points);

}  // namespace igsr
