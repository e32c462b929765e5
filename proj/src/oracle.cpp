// SPDX-License-Identifier: Apache-2.0
//
// Deliberately naive: every rate below is computed from complex channel
// samples with no reuse of the closed-form machinery.

#include "igsr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "igsr/parallel.hpp"

namespace igsr {

namespace {

using cplx = std::complex<double>;

constexpr double kFeasSlack = 1e-9;

struct Sample {
    double gain;  // |h|^2
    cplx sq;      // h^2
};

std::vector<Sample> to_samples(const std::vector<cplx>& hs)
{
    std::vector<Sample> out;
    out.reserve(hs.size());
    for (const cplx& h : hs) out.push_back({std::norm(h), h * h});
    return out;
}

struct Sampled {
    std::array<std::vector<Sample>, 4> links;

    const std::vector<Sample>& direct(User u) const { return links[index(direct_link(u))]; }
    const std::vector<Sample>& cross(User u) const { return links[index(cross_link_into(u))]; }
};

Sampled sample_all(const EstimateSet& est, const RegionSet& regions, const GridSpec& spec)
{
    Sampled s;
    for (std::size_t l = 0; l < 4; ++l) s.links[l] = to_samples(sample_region(est[l], regions[l], spec));
    return s;
}

// min over the sampled pairs of the SINR-like ratio inside the log
double min_ratio(double noise, const TransmitDesign& d, User u, const Sampled& sm)
{
    const User o = other(u);
    const double pu = d.power(u);
    const double po = d.power(o);
    const cplx cu = std::polar(pu * d.kappa(u), u == User::one ? d.phi1 : d.phi2);
    const cplx co = std::polar(po * d.kappa(o), o == User::one ? d.phi1 : d.phi2);
    const double ko = d.kappa(o);

    double best = std::numeric_limits<double>::infinity();
    for (const Sample& b : sm.cross(u)) {
        const double interf = noise + po * b.gain;
        const double comp = po * ko * b.gain;
        const double den = interf * interf - comp * comp;
        const cplx zb = co * b.sq;
        for (const Sample& a : sm.direct(u)) {
            const double tot = interf + pu * a.gain;
            const double num = tot * tot - std::norm(cu * a.sq + zb);
            best = std::min(best, num / den);
        }
    }
    return best;
}

double ratio_to_rate(double r) { return std::max(0.0, 0.5 * std::log2(r)); }

double grid_max_rate(const SystemConfig& cfg, User u, const Sampled& sm)
{
    double g = std::numeric_limits<double>::infinity();
    for (const Sample& a : sm.direct(u)) g = std::min(g, a.gain);
    return std::log2(1.0 + cfg.budget(u) * g / cfg.noise);
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

struct ChunkBest {
    bool found = false;
    double rate = -1.0;
    std::size_t idx = 0;
    TransmitDesign design;
};

}  // namespace

void GridSpec::validate() const
{
    if (n_power < 2) throw std::invalid_argument("n_power must be >= 2");
    if (n_kappa < 2) throw std::invalid_argument("n_kappa must be >= 2");
    if (n_phase < 2) throw std::invalid_argument("n_phase must be >= 2");
    if (n_region < 2) throw std::invalid_argument("n_region must be >= 2");
}

std::vector<cplx> sample_region(const ChannelEstimate& estimate, const UncertaintyRegion& region,
                                const GridSpec& spec)
{
    const cplx h = estimate.value();
    std::vector<cplx> out;
    switch (region.kind) {
    case RegionKind::none:
        out.push_back(h);
        break;
    case RegionKind::disc: {
        const double d = region.delta;
        const double ang = estimate.phase;
        out.push_back(h);
        // extremal moduli first: they decide every gain-monotone worst case
        out.push_back(std::polar(estimate.magnitude + d, ang));
        out.push_back(d >= estimate.magnitude ? cplx{0.0, 0.0}
                                              : std::polar(estimate.magnitude - d, ang));
        for (int j = 1; j <= spec.n_region; ++j) {
            const double r = d * j / spec.n_region;
            for (int k = 0; k < spec.n_phase; ++k)
                out.push_back(h + std::polar(r, ang + 2.0 * kPi * k / spec.n_phase));
        }
        break;
    }
    case RegionKind::enlarged: {
        const MagnitudeBounds mb = magnitude_bounds(estimate, region);
        const double hw = region.phase_halfwidth;
        for (int j = 0; j <= spec.n_region; ++j) {
            const double m = mb.lower + (mb.upper - mb.lower) * j / spec.n_region;
            for (int k = 0; k <= spec.n_phase; ++k)
                out.push_back(std::polar(m, estimate.phase - hw + 2.0 * hw * k / spec.n_phase));
        }
        break;
    }
    }
    return out;
}

double worst_rate_grid(const SystemConfig& cfg, const EstimateSet& estimates,
                       const RegionSet& regions, const TransmitDesign& design, User user,
                       const GridSpec& spec)
{
    const Sampled sm = sample_all(estimates, regions, spec);
    return ratio_to_rate(min_ratio(cfg.noise, design, user, sm));
}

double max_rate_grid(const SystemConfig& cfg, const EstimateSet& estimates,
                     const RegionSet& regions, User user, const GridSpec& spec)
{
    return grid_max_rate(cfg, user, sample_all(estimates, regions, spec));
}

OracleOptimum best_design_grid(const SystemConfig& cfg, const EstimateSet& estimates,
                               const RegionSet& regions, double alpha, User constrained_user,
                               const GridSpec& spec, OracleMode mode, IgsAssignment who)
{
    spec.validate();
    cfg.validate();
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");

    const User c = mode == OracleMode::zic_full ? User::one : constrained_user;
    const User o = other(c);
    const Sampled sm = sample_all(estimates, regions, spec);
    const double target = alpha * grid_max_rate(cfg, c, sm) - kFeasSlack;

    const auto powers = linspace(0.0, cfg.budget(o), spec.n_power);
    const auto kappas = linspace(0.0, 1.0, spec.n_kappa);
    const std::size_t nk = kappas.size();

    // Design phases for the Z channel: anti-align the two complementary
    // terms at receiver 1 under the estimated channel.
    const double zic_phi2 = normalize_angle(2.0 * estimates[index(Link::h11)].phase -
                                            2.0 * estimates[index(Link::h21)].phase + kPi);

    // inner designs per power line
    const std::size_t inner = mode == OracleMode::zic_full ? nk * nk : 2 * nk;

    std::vector<ChunkBest> chunks(powers.size());
    detail::parallel_for(powers.size(), [&](std::size_t pi) {
        ChunkBest& cb = chunks[pi];
        for (std::size_t j = 0; j < inner; ++j) {
            TransmitDesign d;
            d.power(c) = cfg.budget(c);
            d.power(o) = powers[pi];
            if (mode == OracleMode::zic_full) {
                d.k2 = kappas[j / nk];
                d.k1 = kappas[j % nk];
                d.phi2 = zic_phi2;
            } else {
                const bool objective_improper = j < nk;
                if (!objective_improper && j == nk) continue;  // kappa 0 already covered
                if (j % nk != 0 && (objective_improper ? who == IgsAssignment::constrained_user
                                                       : who == IgsAssignment::objective_user))
                    continue;
                d.kappa(objective_improper ? o : c) = kappas[j % nk];
            }
            const double r = ratio_to_rate(min_ratio(cfg.noise, d, o, sm));
            if (cb.found && r <= cb.rate) continue;
            if (ratio_to_rate(min_ratio(cfg.noise, d, c, sm)) < target) continue;
            cb = {true, r, pi * inner + j, d};
        }
    });

    OracleOptimum best;
    std::size_t best_idx = 0;
    for (const ChunkBest& cb : chunks) {
        if (!cb.found) continue;
        if (!best.found || cb.rate > best.rate || (cb.rate == best.rate && cb.idx < best_idx)) {
            best.found = true;
            best.rate = cb.rate;
            best.design = cb.design;
            best_idx = cb.idx;
        }
    }
    if (!best.found) {
        best.design = TransmitDesign{};
        best.design.power(c) = cfg.budget(c);
        best.rate = 0.0;
    }
    return best;
}

OracleReport verify_against_oracle(const RegionPoint& closed, const SystemConfig& cfg,
                                   const EstimateSet& estimates, const RegionSet& regions,
                                   const OracleOptimum& oracle, const GridSpec& spec)
{
    const User c = closed.constrained_user;
    const Sampled sm = sample_all(estimates, regions, spec);
    const double target = closed.alpha * grid_max_rate(cfg, c, sm);

    OracleReport rep;
    rep.oracle_rate = oracle.rate;
    rep.closedform_rate = closed.objective();
    rep.gap = rep.closedform_rate - rep.oracle_rate;
    rep.feasible = ratio_to_rate(min_ratio(cfg.noise, closed.design, c, sm)) >= target - kFeasSlack;
    rep.argmax_design = oracle.design;
    return rep;
}

}  // namespace igsr
