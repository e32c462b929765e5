// SPDX-License-Identifier: Apache-2.0

#include "igsr/harness.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "igsr/parallel.hpp"

namespace igsr {

namespace {

using json = nlohmann::json;

constexpr std::array<const char*, 4> kLinkNames{"h11", "h22", "h21", "h12"};

double number_at(const json& obj, const char* key, const std::string& path)
{
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path, "missing field");
    if (!it->is_number()) throw ParseError(path, "expected a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw ParseError(path, "must be finite");
    return v;
}

ChannelEstimate parse_channel(const json& j, const std::string& path)
{
    if (!j.is_object()) throw ParseError(path, "expected {mag, phase} or {re, im}");
    if (j.contains("mag") || j.contains("phase")) {
        const double mag = number_at(j, "mag", path + ".mag");
        const double phase = number_at(j, "phase", path + ".phase");
        if (mag < 0.0) throw ParseError(path + ".mag", "must be nonnegative");
        return ChannelEstimate::polar(mag, phase);
    }
    if (j.contains("re") || j.contains("im"))
        return ChannelEstimate::cartesian(number_at(j, "re", path + ".re"),
                                          number_at(j, "im", path + ".im"));
    throw ParseError(path, "expected {mag, phase} or {re, im}");
}

// scalar applies to all four links; an object may list any subset
std::array<double, 4> per_link(const json& j, const std::string& path)
{
    std::array<double, 4> out{};
    if (j.is_number()) {
        out.fill(j.get<double>());
    } else if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            std::size_t l = 0;
            while (l < 4 && k != kLinkNames[l]) ++l;
            if (l == 4) throw ParseError(path + "." + k, "unknown link");
            if (!v.is_number()) throw ParseError(path + "." + k, "expected a number");
            out[l] = v.get<double>();
        }
    } else {
        throw ParseError(path, "expected a number or a per-link object");
    }
    for (std::size_t l = 0; l < 4; ++l)
        if (!(out[l] >= 0.0) || !std::isfinite(out[l]))
            throw ParseError(path + "." + kLinkNames[l], "must be a finite nonnegative number");
    return out;
}

UncertaintySpec parse_uncertainty(const json& j)
{
    if (!j.is_object()) throw ParseError("uncertainty", "expected an object");
    UncertaintySpec u;
    const auto m = j.find("model");
    if (m == j.end() || !m->is_string()) throw ParseError("uncertainty.model", "missing or not a string");
    const auto model = m->get<std::string>();
    if (model == "none") {
        u.model = UncertaintySpec::Model::none;
    } else if (model == "confidence") {
        u.model = UncertaintySpec::Model::confidence;
        if (j.contains("psi")) u.psi = number_at(j, "psi", "uncertainty.psi");
        if (!(u.psi > 0.0 && u.psi < 1.0)) throw ParseError("uncertainty.psi", "must lie in (0, 1)");
        if (!j.contains("sigma_e2")) throw ParseError("uncertainty.sigma_e2", "missing field");
        u.sigma_e2 = per_link(j.at("sigma_e2"), "uncertainty.sigma_e2");
    } else if (model == "explicit") {
        u.model = UncertaintySpec::Model::explicit_delta;
        if (!j.contains("delta")) throw ParseError("uncertainty.delta", "missing field");
        u.delta = per_link(j.at("delta"), "uncertainty.delta");
    } else {
        throw ParseError("uncertainty.model", "expected none, confidence or explicit");
    }
    return u;
}

}  // namespace

std::array<double, 4> Scenario::deltas() const
{
    switch (uncertainty.model) {
    case UncertaintySpec::Model::none:
        return {};
    case UncertaintySpec::Model::explicit_delta:
        return uncertainty.delta;
    case UncertaintySpec::Model::confidence: {
        std::array<double, 4> d{};
        for (std::size_t l = 0; l < 4; ++l)
            d[l] = radius_from_confidence(uncertainty.sigma_e2[l], uncertainty.psi);
        return d;
    }
    }
    return {};
}

RegionSet Scenario::regions() const
{
    const auto d = deltas();
    RegionSet r{};
    for (std::size_t l = 0; l < 4; ++l) {
        if (d[l] <= 0.0) {
            r[l] = UncertaintyRegion::exact();
        } else if (mode == Mode::zic) {
            r[l] = enlarge(estimates[l], d[l]);
        } else if (uncertainty.model == UncertaintySpec::Model::confidence) {
            r[l] = UncertaintyRegion::from_confidence(uncertainty.sigma_e2[l], uncertainty.psi);
        } else {
            r[l] = UncertaintyRegion::disc(d[l]);
        }
    }
    if (mode == Mode::zic) r[index(Link::h12)] = UncertaintyRegion::exact();
    return r;
}

Scenario parse_config_text(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("<document>", e.what());
    }
    if (!j.is_object()) throw ParseError("<document>", "expected a JSON object");

    static const std::array<const char*, 8> known{"p1",   "p2",          "sigma2",   "mode",
                                                  "seed", "alpha_steps", "channels", "uncertainty"};
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* n : known) ok = ok || k == n;
        if (!ok) throw ParseError(k, "unknown field");
    }

    Scenario s;
    s.cfg.p1_max = number_at(j, "p1", "p1");
    s.cfg.p2_max = number_at(j, "p2", "p2");
    s.cfg.noise = number_at(j, "sigma2", "sigma2");
    if (s.cfg.p1_max < 0.0) throw ParseError("p1", "must be nonnegative");
    if (s.cfg.p2_max < 0.0) throw ParseError("p2", "must be nonnegative");
    if (!(s.cfg.noise > 0.0)) throw ParseError("sigma2", "must be positive");

    if (j.contains("mode")) {
        const auto& m = j.at("mode");
        if (!m.is_string()) throw ParseError("mode", "expected a string");
        const auto v = m.get<std::string>();
        if (v == "two_user")
            s.mode = Mode::two_user;
        else if (v == "zic")
            s.mode = Mode::zic;
        else
            throw ParseError("mode", "expected two_user or zic");
    }
    if (j.contains("seed")) {
        const auto& v = j.at("seed");
        if (!v.is_number_unsigned()) throw ParseError("seed", "expected an unsigned integer");
        s.seed = v.get<std::uint64_t>();
    }
    if (j.contains("alpha_steps")) {
        const auto& v = j.at("alpha_steps");
        if (!v.is_number_integer()) throw ParseError("alpha_steps", "expected an integer");
        const auto n = v.get<long long>();
        if (n < 2 || n > 1000000) throw ParseError("alpha_steps", "must lie in [2, 1000000]");
        s.alpha_grid = uniform_alpha_grid(static_cast<int>(n));
    }

    if (!j.contains("channels")) throw ParseError("channels", "missing field");
    const auto& ch = j.at("channels");
    if (!ch.is_object()) throw ParseError("channels", "expected an object");
    for (std::size_t l = 0; l < 4; ++l) {
        const std::string path = std::string("channels.") + kLinkNames[l];
        const auto it = ch.find(kLinkNames[l]);
        if (it == ch.end()) {
            if (s.mode == Mode::zic && l == index(Link::h12)) continue;
            throw ParseError(path, "missing field");
        }
        s.estimates[l] = parse_channel(*it, path);
    }
    for (const auto& [k, v] : ch.items()) {
        bool ok = false;
        for (const char* n : kLinkNames) ok = ok || k == n;
        if (!ok) throw ParseError("channels." + k, "unknown link");
    }
    if (s.mode == Mode::zic) s.estimates[index(Link::h12)] = ChannelEstimate{};

    if (j.contains("uncertainty")) s.uncertainty = parse_uncertainty(j.at("uncertainty"));
    return s;
}

Scenario parse_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

EstimateSet gen_estimates(std::uint64_t seed, std::uint64_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> n01(0.0, 1.0);
    const double scale = 1.0 / std::sqrt(2.0);
    EstimateSet e{};
    for (auto& h : e) {
        const double re = n01(rng) * scale;
        const double im = n01(rng) * scale;
        h = ChannelEstimate::cartesian(re, im);
    }
    return e;
}

TransmitDesign restore_feasibility(const SystemConfig& cfg, const WorstCaseChannels& wc,
                                   TransmitDesign design, User constrained_user, double alpha)
{
    const User c = constrained_user;
    const User o = other(c);
    const double target = alpha * max_rate(cfg, wc, c) - kConstraintSlack;
    auto ok = [&](const TransmitDesign& d) { return worst_rate_single_igs(cfg, wc, d, c) >= target; };

    if (ok(design)) return design;

    const double p_full = design.power(o);
    auto shrink = [&](TransmitDesign& d) {
        double lo = 0.0;
        double hi = p_full;
        for (int it = 0; it < 100 && hi - lo > 1e-12 * (1.0 + p_full); ++it) {
            const double mid = 0.5 * (lo + hi);
            d.power(o) = mid;
            (ok(d) ? lo : hi) = mid;
        }
        d.power(o) = lo;
    };

    design.power(o) = 0.0;
    if (ok(design)) {
        shrink(design);
        return design;
    }
    // the constrained user's own impropriety is what breaks the target
    design.kappa(c) = 0.0;
    design.power(o) = p_full;
    if (!ok(design)) shrink(design);
    return design;
}

McTrial run_trial(const SystemConfig& cfg, const EstimateSet& estimates, double sigma_e2,
                  const McOptions& opt)
{
    const double d = radius_from_confidence(sigma_e2, opt.psi);
    RegionSet regions{};
    for (std::size_t l = 0; l < 4; ++l) {
        const bool cross = l == index(Link::h21) || l == index(Link::h12);
        regions[l] = (d > 0.0 && (cross || !opt.cross_only)) ? UncertaintyRegion::disc(d)
                                                             : UncertaintyRegion::exact();
    }
    const WorstCaseChannels wc = worst_case_channels(estimates, regions);
    const WorstCaseChannels wc0 = worst_case_channels(estimates, RegionSet{});

    const User c = opt.constrained_user;
    McTrial t;
    const RatePair rigs = boundary_point(cfg, wc, opt.alpha, c).rates;
    const RatePair rpgs = robust_pgs_point(cfg, wc, other(c), opt.alpha).rates;
    const TransmitDesign naive = boundary_point(cfg, wc0, opt.alpha, c).design;
    const RatePair nigs =
        worst_rates_single_igs(cfg, wc, restore_feasibility(cfg, wc, naive, c, opt.alpha));
    t.rigs = rigs.r1 + rigs.r2;
    t.rpgs = rpgs.r1 + rpgs.r2;
    t.nigs = nigs.r1 + nigs.r2;
    return t;
}

double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

std::vector<McResult> run_montecarlo(const Scenario& scenario, std::span<const double> sigma_e2_list,
                                     int trials, const McOptions& opt)
{
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    scenario.cfg.validate();
    const auto n = static_cast<std::size_t>(trials);

    std::vector<EstimateSet> draws(n);
    for (std::size_t t = 0; t < n; ++t) draws[t] = gen_estimates(scenario.seed, t);

    std::vector<McResult> out;
    for (double se2 : sigma_e2_list) {
        std::vector<McTrial> per(n);
        detail::parallel_for(
            n, [&](std::size_t t) { per[t] = run_trial(scenario.cfg, draws[t], se2, opt); },
            opt.threads);

        std::vector<double> a(n), b(n), c(n);
        for (std::size_t t = 0; t < n; ++t) {
            a[t] = per[t].rigs;
            b[t] = per[t].rpgs;
            c[t] = per[t].nigs;
        }
        McResult r;
        r.sigma_e2 = se2;
        r.trials = trials;
        r.mean_rigs = pairwise_sum(a) / trials;
        r.mean_rpgs = pairwise_sum(b) / trials;
        r.mean_nigs = pairwise_sum(c) / trials;
        out.push_back(r);
    }
    return out;
}

}  // namespace igsr
