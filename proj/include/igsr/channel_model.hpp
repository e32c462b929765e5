// SPDX-License-Identifier: Apache-2.0
//
// Channel estimates, uncertainty regions and worst-case channel extraction
// for the two-user SISO interference channel.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>

namespace igsr {

inline constexpr double kPi = 3.14159265358979323846;

/// Map an angle to [-pi, pi).
double normalize_angle(double radians);

/// Transmitting/receiving user of the two-user channel.
enum class User { one = 0, two = 1 };

constexpr User other(User u) { return u == User::one ? User::two : User::one; }
constexpr std::size_t index(User u) { return static_cast<std::size_t>(u); }

/// Link naming follows h_ji = transmitter j to receiver i, so h21 is the
/// interference seen by receiver 1 and h12 the one seen by receiver 2.
enum class Link { h11 = 0, h22 = 1, h21 = 2, h12 = 3 };

constexpr std::size_t index(Link l) { return static_cast<std::size_t>(l); }
constexpr Link direct_link(User u) { return u == User::one ? Link::h11 : Link::h22; }
/// Cross link carrying the other user's signal into receiver `u`.
constexpr Link cross_link_into(User u) { return u == User::one ? Link::h21 : Link::h12; }

struct ChannelEstimate {
    double magnitude = 0.0;
    double phase = 0.0;

    static ChannelEstimate polar(double magnitude, double phase);
    static ChannelEstimate cartesian(double re, double im);

    std::complex<double> value() const { return std::polar(magnitude, phase); }
};

using EstimateSet = std::array<ChannelEstimate, 4>;

enum class RegionKind { none, disc, enlarged };

/// Bounds on the true channel around an estimate. `delta` is the magnitude
/// radius; `phase_halfwidth` only carries meaning for enlarged regions.
struct UncertaintyRegion {
    RegionKind kind = RegionKind::none;
    double delta = 0.0;
    double phase_halfwidth = 0.0;
    std::optional<double> confidence;
    std::optional<double> error_variance;

    static UncertaintyRegion exact();
    static UncertaintyRegion disc(double delta);
    /// Disc whose radius covers the estimation error with probability `confidence`.
    static UncertaintyRegion from_confidence(double error_variance, double confidence);
};

using RegionSet = std::array<UncertaintyRegion, 4>;

struct MagnitudeBounds {
    double lower = 0.0;
    double upper = 0.0;
};

MagnitudeBounds magnitude_bounds(const ChannelEstimate& estimate, const UncertaintyRegion& region);

/// Half-width of the phase interval covering a disc of radius `delta`
/// around `estimate`; pi once the disc contains the origin.
double phase_halfwidth_for(const ChannelEstimate& estimate, double delta);

/// Radius of the disc holding a proper Gaussian estimation error of variance
/// `error_variance` with probability `confidence`. Throws std::domain_error.
double radius_from_confidence(double error_variance, double confidence);

/// Decoupled magnitude/phase superset of the disc of radius `delta`.
UncertaintyRegion enlarge(const ChannelEstimate& estimate, double delta);

struct WorstCaseChannels {
    double g11 = 0.0;
    double g22 = 0.0;
    double g21 = 0.0;
    double g12 = 0.0;
    double theta = 0.0;

    double gain(Link l) const;
    double direct(User u) const { return gain(direct_link(u)); }
    double cross_into(User u) const { return gain(cross_link_into(u)); }
};

/// Direct links take the smallest squared modulus of their region, cross
/// links the largest; theta aggregates the h11/h21 phase half-widths.
WorstCaseChannels worst_case_channels(const EstimateSet& estimates, const RegionSet& regions);

struct SystemConfig {
    double p1_max = 1.0;
    double p2_max = 1.0;
    double noise = 1.0;

    double budget(User u) const { return u == User::one ? p1_max : p2_max; }
    /// Throws std::invalid_argument on negative budgets or non-positive noise.
    void validate() const;
};

}  // namespace igsr
