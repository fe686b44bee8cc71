// SPDX-License-Identifier: Apache-2.0
//
// mmcoex - simulation library for in-band coexistence of a mmWave radar
// and a mmWave MIMO communication system
// Copyright (C) 2026 mmcoex contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMCOEX_CONFIG_HPP
#define MMCOEX_CONFIG_HPP

#include <cstdio>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mmcoex/sim.hpp"
#include "mmcoex/version.hpp"

namespace mmcoex
{

// Shortest decimal form that round-trips an IEEE double: 17 significant
// digits via %g, which also keeps integers free of trailing zeros.
inline std::string fmt_g17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail
{
inline std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline int parse_int(const std::string& key, const std::string& value)
{
    try
    {
        size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        if (v < INT32_MIN || v > INT32_MAX)
            throw std::out_of_range("out of int range");
        return int(v);
    }
    catch (const std::exception&)
    {
        throw ConfigError("config: key '" + key + "': cannot parse integer from '" + value + "'");
    }
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value)
{
    try
    {
        size_t pos = 0;
        if (!value.empty() && value[0] == '-')
            throw std::invalid_argument("negative");
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return std::uint64_t(v);
    }
    catch (const std::exception&)
    {
        throw ConfigError("config: key '" + key + "': cannot parse unsigned integer from '" + value +
                          "'");
    }
}

inline double parse_double(const std::string& key, const std::string& value)
{
    try
    {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception&)
    {
        throw ConfigError("config: key '" + key + "': cannot parse number from '" + value + "'");
    }
}

inline std::vector<double> parse_double_list(const std::string& key, const std::string& value)
{
    std::vector<double> out;
    std::string item;
    std::istringstream stream(value);
    while (std::getline(stream, item, ','))
    {
        const std::string token = trim(item);
        if (token.empty())
            throw ConfigError("config: key '" + key + "': empty list entry");
        out.push_back(parse_double(key, token));
    }
    if (out.empty())
        throw ConfigError("config: key '" + key + "': list must be non-empty");
    return out;
}
} // namespace detail

// Parses the canonical key = value config text. Omitted keys keep their
// reference defaults; unknown or duplicate keys are hard errors, as are
// invariant violations (checked after all keys are applied). Lines starting
// with '#' and blank lines are ignored.
inline ScenarioConfig parse_config_text(const std::string& text)
{
    ScenarioConfig cfg;
    std::set<std::string> seen;

    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line))
    {
        ++line_no;
        const std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped[0] == '#')
            continue;

        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_no) + ": expected 'key = value'");

        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: line " + std::to_string(line_no) + ": empty key");
        if (!seen.insert(key).second)
            throw ConfigError("config: duplicate key '" + key + "'");

        if (key == "schema")
        {
            if (value != kConfigSchema)
                throw ConfigError("config: schema '" + value + "' is not supported (expected '" +
                                  std::string(kConfigSchema) + "')");
        }
        else if (key == "seed")
            cfg.base_seed = detail::parse_u64(key, value);
        else if (key == "trials")
            cfg.trials_per_point = detail::parse_int(key, value);
        else if (key == "ns")
            cfg.ns = detail::parse_int(key, value);
        else if (key == "radio_tx_antennas")
            cfg.radio_tx_antennas = detail::parse_int(key, value);
        else if (key == "radio_rx_antennas")
            cfg.radio_rx_antennas = detail::parse_int(key, value);
        else if (key == "radar_tx_antennas")
            cfg.radar_tx_antennas = detail::parse_int(key, value);
        else if (key == "radar_rx_antennas")
            cfg.radar_rx_antennas = detail::parse_int(key, value);
        else if (key == "rf_chains_i_tx")
            cfg.rf_chains_i_tx = detail::parse_int(key, value);
        else if (key == "rf_chains_i_rx")
            cfg.rf_chains_i_rx = detail::parse_int(key, value);
        else if (key == "rf_chains_j")
            cfg.rf_chains_j = detail::parse_int(key, value);
        else if (key == "rf_chains_k")
            cfg.rf_chains_k = detail::parse_int(key, value);
        else if (key == "num_targets")
            cfg.num_targets = detail::parse_int(key, value);
        else if (key == "max_range_m")
            cfg.max_range_m = detail::parse_double(key, value);
        else if (key == "carrier_freq_hz")
            cfg.carrier_freq_hz = detail::parse_double(key, value);
        else if (key == "element_spacing")
            cfg.element_spacing = detail::parse_double(key, value);
        else if (key == "angle_spread_deg")
            cfg.angle_spread_deg = detail::parse_double(key, value);
        else if (key == "clusters_min")
            cfg.cluster_range.lo = detail::parse_int(key, value);
        else if (key == "clusters_max")
            cfg.cluster_range.hi = detail::parse_int(key, value);
        else if (key == "rays_min")
            cfg.ray_range.lo = detail::parse_int(key, value);
        else if (key == "rays_max")
            cfg.ray_range.hi = detail::parse_int(key, value);
        else if (key == "snr_rr_db")
            cfg.snr_rr_db = detail::parse_double(key, value);
        else if (key == "snr_ir_db")
            cfg.snr_ir_db = detail::parse_double(key, value);
        else if (key == "snr_ri_db")
            cfg.snr_ri_db = detail::parse_double(key, value);
        else if (key == "snr_grid_db")
            cfg.snr_grid_db = detail::parse_double_list(key, value);
        else
            throw ConfigError("config: unknown key '" + key + "'");
    }

    validate(cfg);
    return cfg;
}

// Parses a config file from disk; see parse_config_text for the format.
inline ScenarioConfig parse_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

// Canonical serialization: every key explicit (deferred SNR defaults
// resolved), numbers at full round-trip precision, fixed key order.
// Parsing this text back yields an equivalent config.
inline std::string to_config_text(const ScenarioConfig& cfg)
{
    std::ostringstream out;
    out << "schema = " << kConfigSchema << "\n";
    out << "seed = " << cfg.base_seed << "\n";
    out << "trials = " << cfg.trials_per_point << "\n";
    out << "ns = " << cfg.ns << "\n";
    out << "radio_tx_antennas = " << cfg.radio_tx_antennas << "\n";
    out << "radio_rx_antennas = " << cfg.radio_rx_antennas << "\n";
    out << "radar_tx_antennas = " << cfg.radar_tx_antennas << "\n";
    out << "radar_rx_antennas = " << cfg.radar_rx_antennas << "\n";
    out << "rf_chains_i_tx = " << cfg.rf_chains_i_tx << "\n";
    out << "rf_chains_i_rx = " << cfg.rf_chains_i_rx << "\n";
    out << "rf_chains_j = " << cfg.rf_chains_j << "\n";
    out << "rf_chains_k = " << cfg.rf_chains_k << "\n";
    out << "num_targets = " << cfg.num_targets << "\n";
    out << "max_range_m = " << fmt_g17(cfg.max_range_m) << "\n";
    out << "carrier_freq_hz = " << fmt_g17(cfg.carrier_freq_hz) << "\n";
    out << "element_spacing = " << fmt_g17(cfg.element_spacing) << "\n";
    out << "angle_spread_deg = " << fmt_g17(cfg.angle_spread_deg) << "\n";
    out << "clusters_min = " << cfg.cluster_range.lo << "\n";
    out << "clusters_max = " << cfg.cluster_range.hi << "\n";
    out << "rays_min = " << cfg.ray_range.lo << "\n";
    out << "rays_max = " << cfg.ray_range.hi << "\n";
    out << "snr_rr_db = " << fmt_g17(cfg.snr_rr_db) << "\n";
    out << "snr_ir_db = " << fmt_g17(cfg.snr_ir_db_effective()) << "\n";
    out << "snr_ri_db = " << fmt_g17(cfg.snr_ri_db_effective()) << "\n";
    out << "snr_grid_db = ";
    for (size_t k = 0; k < cfg.snr_grid_db.size(); ++k)
        out << (k ? ", " : "") << fmt_g17(cfg.snr_grid_db[k]);
    out << "\n";
    return out.str();
}

} // namespace mmcoex

#endif
