// SPDX-License-Identifier: Apache-2.0
//
// Robust Z interference channel design with both users improper. User 1
// always transmits at full power; user 2 trades power and circularity
// against user 1's worst-case rate target over the enlarged region.

#pragma once

#include <span>
#include <utility>

#include "igsr/channel_model.hpp"
#include "igsr/design_two_user.hpp"
#include "igsr/rate_engine.hpp"

namespace igsr {

struct ZicSolution {
    TransmitDesign design;
    double q_at_k = 0.0;  ///< constraint root at the chosen kappa2 (+inf if unbounded)
    double kappa_max = 0.0;
    bool igs_condition_holds = false;
    RatePair rates;
    double alpha = 0.0;
};

/// Complementary-variance phases (phi1, phi2) that anti-align the two
/// complementary terms at receiver 1.
std::pair<double, double> optimal_phase_offsets(double angle_h11, double angle_h21);

/// User 1's best circularity for the given user-2 parameters.
/// Throws std::domain_error when g11 is zero.
double kappa1_star(double p2, double k2, double theta, double p1, double g11, double g21);

/// Largest p2 keeping user 1 at alpha times its maximum worst-case rate.
/// Returns +inf when the target holds for every p2.
double q_value(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha, double k2);

/// Which quadratic produced q_value: true for the kappa1 = 1 branch.
bool q_uses_full_kappa1_branch(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha,
                               double k2);

/// Smallest kappa2 with q(kappa2) >= P2, found by bisection.
double kappa_max(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha);

/// Sufficient condition for improper user-2 signalling to beat proper.
bool igs_beneficial(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha);

/// Worst-case user-2 rate along p2 = min(P2, q(kappa2)).
double zic_objective(const SystemConfig& cfg, const WorstCaseChannels& wc, double alpha,
                     double k2);

ZicSolution zic_solve(const SystemConfig& cfg, const WorstCaseChannels& wc,
                      const EstimateSet& estimates, double alpha);

/// Z channel region over `alpha_grid`, Pareto filtered. Points carry user 1
/// as the constrained user.
RateRegion zic_sweep(const SystemConfig& cfg, const WorstCaseChannels& wc,
                     const EstimateSet& estimates, std::span<const double> alpha_grid);

/// Proper-only counterpart: kappa2 = 0 with p2 = min(P2, q(0)).
RateRegion zic_pgs_sweep(const SystemConfig& cfg, const WorstCaseChannels& wc,
                         std::span<const double> alpha_grid);

RegionPoint to_region_point(const ZicSolution& s);

}  // namespace igsr
