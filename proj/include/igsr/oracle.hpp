// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference: exhaustive grids over the design parameters and
// over sampled channel realizations inside each uncertainty region. Uses
// its own evaluation of the rate expression so that it stays independent
// of the closed-form solvers it checks.

#pragma once

#include <complex>
#include <vector>

#include "igsr/channel_model.hpp"
#include "igsr/design_two_user.hpp"
#include "igsr/rate_engine.hpp"

namespace igsr {

struct GridSpec {
    int n_power = 64;
    int n_kappa = 64;
    int n_phase = 64;   ///< angular samples per region
    int n_region = 32;  ///< radial / magnitude samples per region

    /// Throws std::invalid_argument if any count is below 2.
    void validate() const;
};

enum class OracleMode { two_user_single_igs, zic_full };

/// Which user may be improper in two_user_single_igs mode.
enum class IgsAssignment { either, objective_user, constrained_user };

/// Outcome of the exhaustive design search.
struct OracleOptimum {
    double rate = 0.0;
    TransmitDesign design;
    bool found = false;  ///< false when no grid design met the constraint
};

struct OracleReport {
    double oracle_rate = 0.0;
    double closedform_rate = 0.0;
    double gap = 0.0;  ///< closedform_rate - oracle_rate
    bool feasible = false;
    TransmitDesign argmax_design;

    bool passed(double tol) const { return feasible && gap >= -tol; }
};

inline constexpr double kDefaultOracleTol = 1e-2;

/// Deterministic channel samples of a region. Grids are nested: doubling
/// n_region or n_phase yields a superset. Disc samples are concentric rings
/// anchored at the estimate's phase, so the nearest and farthest points
/// from the origin are always included.
std::vector<std::complex<double>> sample_region(const ChannelEstimate& estimate,
                                                const UncertaintyRegion& region,
                                                const GridSpec& spec);

/// Minimum rate of `user` over all sampled realizations of the two links
/// reaching its receiver.
double worst_rate_grid(const SystemConfig& cfg, const EstimateSet& estimates,
                       const RegionSet& regions, const TransmitDesign& design, User user,
                       const GridSpec& spec);

/// Grid estimate of the constrained user's maximum worst-case rate.
double max_rate_grid(const SystemConfig& cfg, const EstimateSet& estimates,
                     const RegionSet& regions, User user, const GridSpec& spec);

OracleOptimum best_design_grid(const SystemConfig& cfg, const EstimateSet& estimates,
                               const RegionSet& regions, double alpha, User constrained_user,
                               const GridSpec& spec, OracleMode mode,
                               IgsAssignment who = IgsAssignment::either);

/// Checks a closed-form point against the oracle optimum: the point must be
/// feasible on the sampled region and must not fall short of the grid
/// optimum by more than `tol`.
OracleReport verify_against_oracle(const RegionPoint& closed, const SystemConfig& cfg,
                                   const EstimateSet& estimates, const RegionSet& regions,
                                   const OracleOptimum& oracle, const GridSpec& spec);

}  // namespace igsr
