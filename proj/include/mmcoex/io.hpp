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

#ifndef MMCOEX_IO_HPP
#define MMCOEX_IO_HPP

#include <algorithm>
#include <armadillo>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmcoex/beamforming.hpp"
#include "mmcoex/config.hpp"
#include "mmcoex/metrics.hpp"
#include "mmcoex/sim.hpp"
#include "mmcoex/version.hpp"

namespace mmcoex
{

// Fig.-2-shaped table: one row per SNR grid point, numbers at full
// round-trip precision.
inline void write_rates_csv(std::ostream& out, const std::vector<RateRow>& rows)
{
    out << "snr_db,mean_r_ij,mean_r_ki,mean_sum,baseline_sum\n";
    for (const RateRow& r : rows)
        out << fmt_g17(r.snr_db) << ',' << fmt_g17(r.mean_r_ij) << ',' << fmt_g17(r.mean_r_ki) << ','
            << fmt_g17(r.mean_sum) << ',' << fmt_g17(r.baseline_sum) << '\n';
}

// Raw per-trial records in (point, trial) order.
inline void write_trials_csv(std::ostream& out, const std::vector<TrialResult>& trials)
{
    out << "snr_db,seed,r_ij,r_ki,sir_rr_db,baseline_r_ij,baseline_r_ki,baseline_sir_rr_db\n";
    for (const TrialResult& t : trials)
        out << fmt_g17(t.snr_point_db) << ',' << t.seed << ',' << fmt_g17(t.r_ij) << ','
            << fmt_g17(t.r_ki) << ',' << fmt_g17(t.sir_rr_db) << ',' << fmt_g17(t.baseline_r_ij) << ','
            << fmt_g17(t.baseline_r_ki) << ',' << fmt_g17(t.baseline_sir_rr_db) << '\n';
}

// Fig.-3-shaped table: both empirical SIR CDFs evaluated on the merged
// (deduplicated, sorted) grid of all pooled sample values, so the two
// columns share one abscissa.
inline void write_sir_cdf_csv(std::ostream& out, const std::vector<double>& sir_with_design_db,
                              const std::vector<double>& sir_without_design_db)
{
    if (sir_with_design_db.empty() || sir_without_design_db.empty())
        throw std::invalid_argument("write_sir_cdf_csv: sample lists must be non-empty");

    std::vector<double> with_sorted = sir_with_design_db;
    std::vector<double> without_sorted = sir_without_design_db;
    std::sort(with_sorted.begin(), with_sorted.end());
    std::sort(without_sorted.begin(), without_sorted.end());

    std::vector<double> grid;
    grid.reserve(with_sorted.size() + without_sorted.size());
    grid.insert(grid.end(), with_sorted.begin(), with_sorted.end());
    grid.insert(grid.end(), without_sorted.begin(), without_sorted.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    out << "sir_db,cdf_with_design,cdf_without_design\n";
    for (double v : grid)
    {
        const double cw = double(std::upper_bound(with_sorted.begin(), with_sorted.end(), v) -
                                 with_sorted.begin()) /
                          double(with_sorted.size());
        const double cwo = double(std::upper_bound(without_sorted.begin(), without_sorted.end(), v) -
                                  without_sorted.begin()) /
                           double(without_sorted.size());
        out << fmt_g17(v) << ',' << fmt_g17(cw) << ',' << fmt_g17(cwo) << '\n';
    }
}

namespace detail
{
// Documented matrix layout: row-major traversal, each entry contributing an
// interleaved (re, im) pair.
inline nlohmann::json matrix_to_json(const arma::cx_mat& m)
{
    nlohmann::json j;
    j["rows"] = m.n_rows;
    j["cols"] = m.n_cols;
    std::vector<double> data;
    data.reserve(2 * m.n_elem);
    for (arma::uword r = 0; r < m.n_rows; ++r)
        for (arma::uword c = 0; c < m.n_cols; ++c)
        {
            data.push_back(m(r, c).real());
            data.push_back(m(r, c).imag());
        }
    j["data"] = data;
    return j;
}
} // namespace detail

// Conformance dump for one seed: all five channel matrices plus the
// beamtrained RF stages both links end up with, in the documented
// row-major re/im-interleaved layout.
inline nlohmann::json dump_channels_json(const ScenarioConfig& cfg, std::uint64_t seed)
{
    validate(cfg);
    const TrialChannels ch = draw_trial_channels(cfg, seed);

    const Codebook radio_tx_book = dft_codebook(cfg.radio_tx_array());
    const Codebook radio_rx_book = dft_codebook(cfg.radio_rx_array());
    const BeamtrainResult link_ij =
        beamtrain(ch.h_ij, radio_tx_book, radio_rx_book, cfg.rf_chains_i_tx, cfg.rf_chains_j);
    const BeamtrainResult link_ki =
        beamtrain(ch.h_ki, radio_tx_book, radio_rx_book, cfg.rf_chains_k, cfg.rf_chains_i_rx);

    nlohmann::json j;
    j["schema"] = "mmcoex-channel-dump-v1";
    j["version"] = kVersion;
    j["seed"] = seed;
    j["layout"] = "row-major, interleaved re/im pairs";
    j["h_rr"] = detail::matrix_to_json(ch.h_rr.entries);
    j["h_ij"] = detail::matrix_to_json(ch.h_ij.entries);
    j["h_ki"] = detail::matrix_to_json(ch.h_ki.entries);
    j["h_ir"] = detail::matrix_to_json(ch.h_ir.entries);
    j["h_ri"] = detail::matrix_to_json(ch.h_ri.entries);
    j["f_rf_i"] = detail::matrix_to_json(link_ij.f_rf);
    j["w_rf_j"] = detail::matrix_to_json(link_ij.w_rf);
    j["f_rf_k"] = detail::matrix_to_json(link_ki.f_rf);
    j["w_rf_i"] = detail::matrix_to_json(link_ki.w_rf);
    return j;
}

// Reproducibility record emitted alongside every output set: the exact
// canonical config, tool version, seed, produced files, and timing.
inline nlohmann::json make_manifest(const ScenarioConfig& cfg, const std::vector<std::string>& outputs,
                                    double duration_seconds)
{
    nlohmann::json j;
    j["schema"] = "mmcoex-manifest-v1";
    j["version"] = kVersion;
    j["base_seed"] = cfg.base_seed;
    j["config"] = to_config_text(cfg);
    j["outputs"] = outputs;
    j["duration_seconds"] = duration_seconds;
    return j;
}

} // namespace mmcoex

#endif
