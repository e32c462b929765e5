// SPDX-License-Identifier: Apache-2.0
//
// Scenario files, random channel draws and the Monte Carlo comparison of
// robust improper, robust proper and non-robust improper designs.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "igsr/channel_model.hpp"
#include "igsr/design_two_user.hpp"

namespace igsr {

enum class Mode { two_user, zic };

struct UncertaintySpec {
    enum class Model { none, confidence, explicit_delta };
    Model model = Model::none;
    double psi = 0.95;
    std::array<double, 4> sigma_e2{};  // per link, indexed by Link
    std::array<double, 4> delta{};
};

struct Scenario {
    SystemConfig cfg;
    EstimateSet estimates{};
    UncertaintySpec uncertainty;
    Mode mode = Mode::two_user;
    std::vector<double> alpha_grid = uniform_alpha_grid();
    std::uint64_t seed = 0;

    /// Per-link radii implied by the uncertainty spec.
    std::array<double, 4> deltas() const;
    /// Regions for the solvers. Z channel scenarios get the decoupled
    /// magnitude/phase sets and an exact, zero h12.
    RegionSet regions() const;
};

/// Raised for malformed or out-of-range configuration; `field` holds the
/// dotted path of the offending key.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

Scenario parse_config(const std::filesystem::path& path);
Scenario parse_config_text(std::string_view json_text);

/// Four proper complex Gaussian draws of unit variance, reproducible per
/// (seed, trial).
EstimateSet gen_estimates(std::uint64_t seed, std::uint64_t trial);

struct McResult {
    double sigma_e2 = 0.0;
    double mean_rigs = 0.0;  ///< robust improper
    double mean_rpgs = 0.0;  ///< robust proper
    double mean_nigs = 0.0;  ///< non-robust improper, evaluated at the worst case
    int trials = 0;
};

struct McOptions {
    double psi = 0.95;
    double alpha = 0.5;
    User constrained_user = User::one;
    bool cross_only = false;  ///< uncertainty on the interference links only
    unsigned threads = 0;     ///< 0 picks the hardware concurrency
};

/// Per-trial sum rates of the three schemes.
struct McTrial {
    double rigs = 0.0;
    double rpgs = 0.0;
    double nigs = 0.0;
};

McTrial run_trial(const SystemConfig& cfg, const EstimateSet& estimates, double sigma_e2,
                  const McOptions& opt);

/// Design computed for exact channels, then scaled back (free-user power,
/// then the constrained user's kappa) until the worst-case target over
/// `wc` holds again.
TransmitDesign restore_feasibility(const SystemConfig& cfg, const WorstCaseChannels& wc,
                                   TransmitDesign design, User constrained_user, double alpha);

std::vector<McResult> run_montecarlo(const Scenario& scenario, std::span<const double> sigma_e2_list,
                                     int trials, const McOptions& opt = {});

/// Sum in a fixed pairwise order, independent of thread count.
double pairwise_sum(std::span<const double> v);

}  // namespace igsr
