// SPDX-License-Identifier: Apache-2.0

#include "igsr/csv_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace igsr {

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> f;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, ',')) f.push_back(cur);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    return f;
}

double to_double(const std::string& s, std::size_t row)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw std::runtime_error("csv row " + std::to_string(row) + ": bad number '" + s + "'");
    return v;
}

std::vector<std::vector<std::string>> rows_after(const std::string& text, const char* header,
                                                 std::size_t width)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw std::runtime_error(std::string("csv: expected header '") + header + "'");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split(line);
        if (f.size() != width)
            throw std::runtime_error("csv row " + std::to_string(rows.size() + 1) +
                                     ": expected " + std::to_string(width) + " fields");
        rows.push_back(std::move(f));
    }
    return rows;
}

}  // namespace

std::string fmt_num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string region_csv(std::span<const RegionPoint> points)
{
    std::vector<RegionPoint> sorted(points.begin(), points.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const RegionPoint& a, const RegionPoint& b) { return a.alpha < b.alpha; });
    std::string out = kRegionHeader;
    out += '\n';
    for (const RegionPoint& p : sorted) {
        const TransmitDesign& d = p.design;
        for (double v : {p.alpha, p.rates.r1, p.rates.r2, d.p1, d.p2, d.k1, d.k2, d.phi1, d.phi2}) {
            out += fmt_num(v);
            out += ',';
        }
        out += to_string(p.strategy);
        out += '\n';
    }
    return out;
}

std::string mc_csv(std::span<const McResult> results)
{
    std::vector<McResult> sorted(results.begin(), results.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const McResult& a, const McResult& b) { return a.sigma_e2 < b.sigma_e2; });
    std::string out = kMcHeader;
    out += '\n';
    for (const McResult& r : sorted) {
        out += fmt_num(r.sigma_e2) + ',' + fmt_num(r.mean_rigs) + ',' + fmt_num(r.mean_rpgs) + ',' +
               fmt_num(r.mean_nigs) + ',' + std::to_string(r.trials) + '\n';
    }
    return out;
}

std::string hull_csv(std::span<const RatePair> hull)
{
    std::vector<RatePair> sorted(hull.begin(), hull.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const RatePair& a, const RatePair& b) { return a.r1 < b.r1; });
    std::string out = kHullHeader;
    out += '\n';
    for (const RatePair& r : sorted) out += fmt_num(r.r1) + ',' + fmt_num(r.r2) + '\n';
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void emit_csv(std::span<const RegionPoint> points, const std::filesystem::path& path)
{
    write_text(path, region_csv(points));
}

void emit_csv(std::span<const McResult> results, const std::filesystem::path& path)
{
    write_text(path, mc_csv(results));
}

std::vector<RegionPoint> parse_region_csv(const std::string& text)
{
    std::vector<RegionPoint> out;
    std::size_t row = 0;
    for (const auto& f : rows_after(text, kRegionHeader, 10)) {
        ++row;
        RegionPoint p;
        p.alpha = to_double(f[0], row);
        p.rates = {to_double(f[1], row), to_double(f[2], row)};
        p.design = {to_double(f[3], row), to_double(f[4], row), to_double(f[5], row),
                    to_double(f[6], row), to_double(f[7], row), to_double(f[8], row)};
        const auto s = strategy_from_string(f[9]);
        if (!s) throw std::runtime_error("csv row " + std::to_string(row) + ": unknown strategy '" + f[9] + "'");
        p.strategy = *s;
        out.push_back(p);
    }
    return out;
}

std::vector<RegionPoint> read_region_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_region_csv(ss.str());
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

std::vector<McResult> parse_mc_csv(const std::string& text)
{
    std::vector<McResult> out;
    std::size_t row = 0;
    for (const auto& f : rows_after(text, kMcHeader, 5)) {
        ++row;
        McResult r;
        r.sigma_e2 = to_double(f[0], row);
        r.mean_rigs = to_double(f[1], row);
        r.mean_rpgs = to_double(f[2], row);
        r.mean_nigs = to_double(f[3], row);
        r.trials = static_cast<int>(to_double(f[4], row));
        out.push_back(r);
    }
    return out;
}

}  // namespace igsr
