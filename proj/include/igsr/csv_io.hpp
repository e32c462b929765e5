// SPDX-License-Identifier: Apache-2.0
//
// CSV output of rate regions, Monte Carlo tables and hulls, plus the
// matching readers.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "igsr/design_two_user.hpp"
#include "igsr/harness.hpp"

namespace igsr {

inline constexpr const char* kRegionHeader = "alpha,r1,r2,p1,p2,kappa1,kappa2,phi1,phi2,strategy";
inline constexpr const char* kMcHeader = "sigma_e2,mean_rigs,mean_rpgs,mean_nigs,trials";
inline constexpr const char* kHullHeader = "r1,r2";

/// %.9g, the single number format used by every writer.
std::string fmt_num(double v);

std::string region_csv(std::span<const RegionPoint> points);
std::string mc_csv(std::span<const McResult> results);
std::string hull_csv(std::span<const RatePair> hull);

/// Write `text` to `path`; throws std::runtime_error naming the path.
void write_text(const std::filesystem::path& path, const std::string& text);

void emit_csv(std::span<const RegionPoint> points, const std::filesystem::path& path);
void emit_csv(std::span<const McResult> results, const std::filesystem::path& path);

/// Readers reject a wrong header or malformed row with std::runtime_error.
std::vector<RegionPoint> read_region_csv(const std::filesystem::path& path);
std::vector<RegionPoint> parse_region_csv(const std::string& text);
std::vector<McResult> parse_mc_csv(const std::string& text);

}  // namespace igsr
