// SPDX-License-Identifier: Apache-2.0
//
// Achievable rates of the two-user channel with improper Gaussian inputs,
// treating interference as noise. Rates are in bits per channel use.

#pragma once

#include "igsr/channel_model.hpp"

namespace igsr {

/// Powers, circularity coefficients and complementary-variance phases of
/// both users. A design is proper when both kappas are zero.
struct TransmitDesign {
    double p1 = 0.0;
    double p2 = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;

    double power(User u) const { return u == User::one ? p1 : p2; }
    double kappa(User u) const { return u == User::one ? k1 : k2; }
    double& power(User u) { return u == User::one ? p1 : p2; }
    double& kappa(User u) { return u == User::one ? k1 : k2; }
    bool proper() const { return k1 == 0.0 && k2 == 0.0; }
};

struct RatePair {
    double r1 = 0.0;
    double r2 = 0.0;

    double operator[](User u) const { return u == User::one ? r1 : r2; }
    double& operator[](User u) { return u == User::one ? r1 : r2; }
};

/// Squared magnitude of the combined complementary variance at a receiver.
struct PhaseTerm {
    double value = 0.0;
};

PhaseTerm phase_term(double pa, double ka, double ga, double pb, double kb, double gb,
                     double delta_angle);

/// Rate of a user given its own and the interferer's power, circularity and
/// gain, and the phase term evaluated at the same point.
double rate_user(double noise, double p_own, double k_own, double g_own, double p_int,
                 double k_int, double g_int, PhaseTerm t);

/// Rate of user 2 in the Z channel (no interference at receiver 2).
double zic_rate_user2(double noise, double p2, double k2, double g22);

/// Worst-case rate of `user` when at most one kappa is nonzero. The phase
/// term is then phase free, so worst-case gains give the exact worst case.
/// Throws std::invalid_argument if both kappas are positive.
double worst_rate_single_igs(const SystemConfig& cfg, const WorstCaseChannels& wc,
                             const TransmitDesign& design, User user);

/// Both worst-case rates of a single-IGS design.
RatePair worst_rates_single_igs(const SystemConfig& cfg, const WorstCaseChannels& wc,
                                const TransmitDesign& design);

/// Z channel user-1 rate with p1 = P1 at an arbitrary effective angle
/// between the two complementary terms (pi + theta is the worst case under
/// the optimal phase offset).
double zic_rate_user1(const SystemConfig& cfg, const WorstCaseChannels& wc, double p2, double k2,
                      double k1, double angle);

/// Z channel worst-case user-1 rate: optimal phase offset pi composed with
/// the worst aggregate phase error theta.
double zic_worst_rate_user1(const SystemConfig& cfg, const WorstCaseChannels& wc, double p2,
                            double k2, double k1);

struct MaxRate {
    double rate = 0.0;
    double gamma = 0.0;
};

/// Largest worst-case rate of `user` (other user silent, proper signalling)
/// together with gamma(x) = 2^(x * rate) - 1.
MaxRate max_rate_and_gamma(const SystemConfig& cfg, const WorstCaseChannels& wc, User user,
                           double x);

double max_rate(const SystemConfig& cfg, const WorstCaseChannels& wc, User user);

}  // namespace igsr
