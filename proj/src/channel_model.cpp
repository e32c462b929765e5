// SPDX-License-Identifier: Apache-2.0

#include "igsr/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace igsr {

double normalize_angle(double radians)
{
    double a = std::fmod(radians + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    a -= kPi;
    // fmod can land exactly on +pi after the shift for tiny negative inputs
    if (a >= kPi) a -= 2.0 * kPi;
    return a;
}

ChannelEstimate ChannelEstimate::polar(double magnitude, double phase)
{
    if (!(magnitude >= 0.0)) throw std::domain_error("channel magnitude must be nonnegative");
    return {magnitude, normalize_angle(phase)};
}

ChannelEstimate ChannelEstimate::cartesian(double re, double im)
{
    const std::complex<double> z(re, im);
    return {std::abs(z), normalize_angle(std::arg(z))};
}

UncertaintyRegion UncertaintyRegion::exact() { return {}; }

UncertaintyRegion UncertaintyRegion::disc(double delta)
{
    if (!(delta >= 0.0)) throw std::domain_error("uncertainty radius must be nonnegative");
    if (delta == 0.0) return exact();
    UncertaintyRegion r;
    r.kind = RegionKind::disc;
    r.delta = delta;
    return r;
}

UncertaintyRegion UncertaintyRegion::from_confidence(double error_variance, double confidence)
{
    UncertaintyRegion r = disc(radius_from_confidence(error_variance, confidence));
    r.confidence = confidence;
    r.error_variance = error_variance;
    return r;
}

MagnitudeBounds magnitude_bounds(const ChannelEstimate& estimate, const UncertaintyRegion& region)
{
    return {std::max(estimate.magnitude - region.delta, 0.0), estimate.magnitude + region.delta};
}

double phase_halfwidth_for(const ChannelEstimate& estimate, double delta)
{
    if (delta <= 0.0) return 0.0;
    if (delta >= estimate.magnitude) return kPi;
    return std::asin(delta / estimate.magnitude);
}

double radius_from_confidence(double error_variance, double confidence)
{
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::domain_error("confidence must lie in (0, 1)");
    if (!(error_variance >= 0.0)) throw std::domain_error("error variance must be nonnegative");
    return std::sqrt(-error_variance * std::log1p(-confidence));
}

UncertaintyRegion enlarge(const ChannelEstimate& estimate, double delta)
{
    if (!(delta >= 0.0)) throw std::domain_error("uncertainty radius must be nonnegative");
    UncertaintyRegion r;
    r.kind = delta == 0.0 ? RegionKind::none : RegionKind::enlarged;
    r.delta = delta;
    r.phase_halfwidth = phase_halfwidth_for(estimate, delta);
    return r;
}

double WorstCaseChannels::gain(Link l) const
{
    switch (l) {
    case Link::h11: return g11;
    case Link::h22: return g22;
    case Link::h21: return g21;
    case Link::h12: return g12;
    }
    return 0.0;
}

namespace {

double region_halfwidth(const ChannelEstimate& est, const UncertaintyRegion& r)
{
    switch (r.kind) {
    case RegionKind::none: return 0.0;
    case RegionKind::enlarged: return r.phase_halfwidth;
    case RegionKind::disc: return phase_halfwidth_for(est, r.delta);
    }
    return 0.0;
}

}  // namespace

WorstCaseChannels worst_case_channels(const EstimateSet& estimates, const RegionSet& regions)
{
    auto low = [&](Link l) {
        const auto b = magnitude_bounds(estimates[index(l)], regions[index(l)]);
        return b.lower * b.lower;
    };
    auto high = [&](Link l) {
        const auto b = magnitude_bounds(estimates[index(l)], regions[index(l)]);
        return b.upper * b.upper;
    };

    WorstCaseChannels wc;
    wc.g11 = low(Link::h11);
    wc.g22 = low(Link::h22);
    wc.g21 = high(Link::h21);
    wc.g12 = high(Link::h12);
    const double th11 = region_halfwidth(estimates[index(Link::h11)], regions[index(Link::h11)]);
    const double th21 = region_halfwidth(estimates[index(Link::h21)], regions[index(Link::h21)]);
    wc.theta = std::min(kPi, 2.0 * th11 + 2.0 * th21);
    return wc;
}

void SystemConfig::validate() const
{
    if (!(p1_max >= 0.0)) throw std::invalid_argument("p1 budget must be nonnegative");
    if (!(p2_max >= 0.0)) throw std::invalid_argument("p2 budget must be nonnegative");
    if (!(noise > 0.0)) throw std::invalid_argument("noise power must be positive");
}

}  // namespace igsr
