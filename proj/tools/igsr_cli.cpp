// SPDX-License-Identifier: Apache-2.0
//
// igsr: robust improper-signalling rate regions from the command line.
// Exit codes: 0 ok, 2 oracle validation failed, 1 I/O or parse error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "igsr/csv_io.hpp"
#include "igsr/design_two_user.hpp"
#include "igsr/design_zic.hpp"
#include "igsr/harness.hpp"
#include "igsr/oracle.hpp"

namespace {

using namespace igsr;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;

struct Common {
    std::string config;
    std::string out;
    std::optional<int> alpha_steps;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Common& c, bool need_config = true)
{
    auto* opt = sub->add_option("--config", c.config, "scenario JSON");
    if (need_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", c.out, "output CSV (stdout if omitted)");
    sub->add_option("--alpha-steps", c.alpha_steps, "alpha grid size")->check(CLI::Range(2, 1000000));
    sub->add_option("--seed", c.seed, "override the scenario seed");
}

Scenario load(const Common& c)
{
    Scenario s = parse_config(c.config);
    if (c.alpha_steps) s.alpha_grid = uniform_alpha_grid(*c.alpha_steps);
    if (c.seed) s.seed = *c.seed;
    return s;
}

void emit(const std::string& out, const std::string& text)
{
    if (out.empty())
        std::cout << text;
    else
        write_text(out, text);
}

int cmd_region(const Common& c, bool pgs)
{
    const Scenario s = load(c);
    const auto wc = worst_case_channels(s.estimates, s.regions());
    const RateRegion r = pgs ? sweep_pgs_region(s.cfg, wc, s.alpha_grid)
                             : sweep_region(s.cfg, wc, s.alpha_grid);
    emit(c.out, region_csv(r.points));
    return kExitOk;
}

int cmd_zic(const Common& c, bool pgs)
{
    Scenario s = load(c);
    s.mode = Mode::zic;
    s.estimates[index(Link::h12)] = ChannelEstimate{};
    const auto wc = worst_case_channels(s.estimates, s.regions());
    const RateRegion r = pgs ? zic_pgs_sweep(s.cfg, wc, s.alpha_grid)
                             : zic_sweep(s.cfg, wc, s.estimates, s.alpha_grid);
    emit(c.out, region_csv(r.points));
    return kExitOk;
}

int cmd_mc(const Common& c, int trials, const std::vector<double>& se2, const McOptions& opt)
{
    const Scenario s = load(c);
    const auto res = run_montecarlo(s, se2, trials, opt);
    emit(c.out, mc_csv(res));
    return kExitOk;
}

int cmd_validate(const Common& c, int grid, int region_grid, double tol)
{
    const Scenario s = load(c);
    const RegionSet regions = s.regions();
    const auto wc = worst_case_channels(s.estimates, regions);
    GridSpec spec;
    spec.n_power = spec.n_kappa = grid;
    spec.n_region = region_grid;
    spec.n_phase = 2 * region_grid;

    std::string report = "alpha,constrained_user,closedform_rate,oracle_rate,gap,feasible,pass\n";
    bool all = true;
    for (double a : s.alpha_grid) {
        std::vector<RegionPoint> pts;
        OracleMode mode = OracleMode::two_user_single_igs;
        if (s.mode == Mode::zic) {
            pts.push_back(to_region_point(zic_solve(s.cfg, wc, s.estimates, a)));
            mode = OracleMode::zic_full;
        } else {
            pts.push_back(boundary_point(s.cfg, wc, a, User::one));
            pts.push_back(boundary_point(s.cfg, wc, a, User::two));
        }
        for (const RegionPoint& p : pts) {
            const auto opt =
                best_design_grid(s.cfg, s.estimates, regions, a, p.constrained_user, spec, mode);
            const auto rep = verify_against_oracle(p, s.cfg, s.estimates, regions, opt, spec);
            const bool pass = rep.passed(tol);
            all = all && pass;
            report += fmt_num(a) + ',' + (p.constrained_user == User::one ? "1" : "2") + ',' +
                      fmt_num(rep.closedform_rate) + ',' + fmt_num(rep.oracle_rate) + ',' +
                      fmt_num(rep.gap) + ',' + (rep.feasible ? "1" : "0") + ',' +
                      (pass ? "1" : "0") + '\n';
        }
    }
    emit(c.out, report);
    std::fprintf(stderr, "validate: %s\n", all ? "all points pass" : "FAILED");
    return all ? kExitOk : kExitValidation;
}

int cmd_hull(const std::string& in, const std::string& out)
{
    const auto pts = read_region_csv(in);
    emit(out, hull_csv(timeshare_hull(rates_of(pts))));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Worst-case robust improper signalling designs for the two-user interference channel"};
    app.require_subcommand(1);

    Common c_region, c_zic, c_mc, c_val;
    bool pgs_region = false, pgs_zic = false;

    auto* region = app.add_subcommand("region", "two-user boundary sweep");
    add_common(region, c_region);
    region->add_flag("--pgs", pgs_region, "proper signalling only");

    auto* zic = app.add_subcommand("zic", "Z channel boundary sweep (h12 ignored)");
    add_common(zic, c_zic);
    zic->add_flag("--pgs", pgs_zic, "proper signalling only");

    auto* mc = app.add_subcommand("mc", "Monte Carlo comparison of robust and non-robust designs");
    add_common(mc, c_mc);
    int trials = 200;
    std::vector<double> se2{0.0, 0.05, 0.1, 0.2};
    McOptions mc_opt;
    mc->add_option("--trials", trials, "channel draws per variance")->check(CLI::PositiveNumber);
    mc->add_option("--sigma-e2", se2, "estimation error variances")->delimiter(',');
    mc->add_option("--alpha", mc_opt.alpha, "target fraction for the constrained user")
        ->check(CLI::Range(0.0, 1.0));
    mc->add_option("--psi", mc_opt.psi, "confidence of the uncertainty disc")
        ->check(CLI::Range(0.0, 1.0));
    mc->add_flag("--cross-only", mc_opt.cross_only, "uncertainty on interference links only");
    mc->add_option("--threads", mc_opt.threads, "worker threads (0 = all cores)");

    auto* val = app.add_subcommand("validate", "check closed forms against the grid oracle");
    add_common(val, c_val);
    int grid = 64;
    int region_grid = 4;
    double tol = kDefaultOracleTol;
    val->add_option("--grid", grid, "points per design axis")->check(CLI::Range(2, 100000));
    val->add_option("--region-grid", region_grid, "radial samples per region")
        ->check(CLI::Range(2, 100000));
    val->add_option("--tol", tol, "allowed shortfall in bits (negative demands a margin)");

    auto* hull = app.add_subcommand("hull", "time-sharing hull of a region CSV");
    std::string hull_in, hull_out;
    hull->add_option("--in", hull_in, "region CSV")->required()->check(CLI::ExistingFile);
    hull->add_option("--out", hull_out, "output CSV (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitIo;
    }

    try {
        if (*region) return cmd_region(c_region, pgs_region);
        if (*zic) return cmd_zic(c_zic, pgs_zic);
        if (*mc) return cmd_mc(c_mc, trials, se2, mc_opt);
        if (*val) return cmd_validate(c_val, grid, region_grid, tol);
        if (*hull) return cmd_hull(hull_in, hull_out);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return kExitIo;
}
