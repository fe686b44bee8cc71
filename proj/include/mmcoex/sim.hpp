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

#ifndef MMCOEX_SIM_HPP
#define MMCOEX_SIM_HPP

#include <algorithm>
#include <armadillo>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mmcoex/array.hpp"
#include "mmcoex/beamforming.hpp"
#include "mmcoex/channel.hpp"
#include "mmcoex/metrics.hpp"
#include "mmcoex/rng.hpp"

namespace mmcoex
{

// Raised for invalid scenario configurations; the message names the
// offending field and the violated bound.
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Full parameterization of one coexistence experiment. Defaults reproduce
// the reference setup: three 32-antenna radios (i transmitting to j in one
// slot, k transmitting to i in the other), a colocated 3-tx/4-rx radar at
// 60 GHz with 600 point targets within 100 m, Ns = 2 streams, a 40 dB radar
// SNR, and 250 trials per point over a -40..10 dB link-SNR grid.
struct ScenarioConfig
{
    int radio_tx_antennas = 32; // transmit ULA size at every radio
    int radio_rx_antennas = 32; // receive ULA size at every radio
    int radar_tx_antennas = 3;
    int radar_rx_antennas = 4;

    int rf_chains_i_tx = 8; // RF chains driving radio i's transmit array
    int rf_chains_i_rx = 8; // RF chains behind radio i's receive array
    int rf_chains_j = 2;    // receive RF chains at radio j
    int rf_chains_k = 2;    // transmit RF chains at radio k
    int ns = 2;             // spatial streams per link

    int num_targets = 600;
    double max_range_m = 100.0;
    double carrier_freq_hz = 60e9;
    double element_spacing = 0.5;   // wavelengths
    double angle_spread_deg = 5.0;  // per-ray Laplacian scale
    IntRange cluster_range{1, 6};   // clusters per communication channel
    IntRange ray_range{1, 10};      // rays per cluster

    double snr_rr_db = 40.0;              // radar's own SNR
    std::optional<double> snr_ir_db;      // radio-i-to-radar SNR; defaults to snr_rr_db
    std::optional<double> snr_ri_db;      // radar-to-radio-i SNR; defaults to snr_rr_db
    std::vector<double> snr_grid_db = {-40.0, -30.0, -20.0, -10.0, 0.0, 10.0};

    int trials_per_point = 250;
    std::uint64_t base_seed = 1;

    double snr_ir_db_effective() const { return snr_ir_db.value_or(snr_rr_db); }
    double snr_ri_db_effective() const { return snr_ri_db.value_or(snr_rr_db); }

    ArrayGeometry radio_tx_array() const { return ArrayGeometry(radio_tx_antennas, element_spacing); }
    ArrayGeometry radio_rx_array() const { return ArrayGeometry(radio_rx_antennas, element_spacing); }
    ArrayGeometry radar_tx_array() const { return ArrayGeometry(radar_tx_antennas, element_spacing); }
    ArrayGeometry radar_rx_array() const { return ArrayGeometry(radar_rx_antennas, element_spacing); }
};

inline double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

// Validates every config invariant; throws ConfigError naming the field.
inline void validate(const ScenarioConfig& cfg)
{
    auto require = [](bool ok, const std::string& msg) {
        if (!ok)
            throw ConfigError("config: " + msg);
    };

    require(cfg.radio_tx_antennas >= 1, "radio_tx_antennas must be >= 1");
    require(cfg.radio_rx_antennas >= 1, "radio_rx_antennas must be >= 1");
    require(cfg.radar_tx_antennas >= 1, "radar_tx_antennas must be >= 1");
    require(cfg.radar_rx_antennas >= 1, "radar_rx_antennas must be >= 1");
    require(cfg.rf_chains_i_tx >= 1, "rf_chains_i_tx must be >= 1");
    require(cfg.rf_chains_i_rx >= 1, "rf_chains_i_rx must be >= 1");
    require(cfg.rf_chains_j >= 1, "rf_chains_j must be >= 1");
    require(cfg.rf_chains_k >= 1, "rf_chains_k must be >= 1");
    require(cfg.ns >= 1, "ns must be >= 1");
    require(cfg.ns <= std::min(cfg.rf_chains_i_tx, cfg.rf_chains_j),
            "ns must be <= min(rf_chains_i_tx, rf_chains_j) on the i->j link");
    require(cfg.ns <= std::min(cfg.rf_chains_k, cfg.rf_chains_i_rx),
            "ns must be <= min(rf_chains_k, rf_chains_i_rx) on the k->i link");
    require(cfg.rf_chains_i_tx <= cfg.radio_tx_antennas,
            "rf_chains_i_tx must be <= radio_tx_antennas (codebook size)");
    require(cfg.rf_chains_k <= cfg.radio_tx_antennas,
            "rf_chains_k must be <= radio_tx_antennas (codebook size)");
    require(cfg.rf_chains_i_rx <= cfg.radio_rx_antennas,
            "rf_chains_i_rx must be <= radio_rx_antennas (codebook size)");
    require(cfg.rf_chains_j <= cfg.radio_rx_antennas,
            "rf_chains_j must be <= radio_rx_antennas (codebook size)");
    require(cfg.num_targets >= 0, "num_targets must be >= 0");
    require(std::isfinite(cfg.max_range_m) && cfg.max_range_m > 0.0, "max_range_m must be > 0");
    require(std::isfinite(cfg.carrier_freq_hz) && cfg.carrier_freq_hz > 0.0,
            "carrier_freq_hz must be > 0");
    require(std::isfinite(cfg.element_spacing) && cfg.element_spacing > 0.0,
            "element_spacing must be > 0");
    require(std::isfinite(cfg.angle_spread_deg) && cfg.angle_spread_deg >= 0.0,
            "angle_spread_deg must be >= 0");
    require(cfg.cluster_range.lo >= 1 && cfg.cluster_range.hi >= cfg.cluster_range.lo,
            "cluster range must satisfy 1 <= min <= max");
    require(cfg.ray_range.lo >= 1 && cfg.ray_range.hi >= cfg.ray_range.lo,
            "ray range must satisfy 1 <= min <= max");
    require(std::isfinite(cfg.snr_rr_db), "snr_rr_db must be finite");
    require(!cfg.snr_ir_db || std::isfinite(*cfg.snr_ir_db), "snr_ir_db must be finite");
    require(!cfg.snr_ri_db || std::isfinite(*cfg.snr_ri_db), "snr_ri_db must be finite");
    require(!cfg.snr_grid_db.empty(), "snr_grid_db must be non-empty");
    for (double v : cfg.snr_grid_db)
        require(std::isfinite(v), "snr_grid_db entries must be finite");
    require(cfg.trials_per_point >= 1, "trials_per_point must be >= 1");
}

// Degrees-of-freedom check against this config's radar dimensions.
inline std::vector<DofWarning> validate_dof(const ScenarioConfig& cfg)
{
    return validate_dof(cfg.rf_chains_i_tx, cfg.rf_chains_i_rx, cfg.radar_rx_antennas,
                        cfg.radar_tx_antennas, cfg.ns);
}

// All channel realizations of one trial: the radar scene with its three
// scene-derived channels plus the two clustered communication channels.
struct TrialChannels
{
    PointTargetSet scene;
    ChannelMatrix h_rr; // radar tx -> radar rx
    ChannelMatrix h_ij; // radio i tx -> radio j rx
    ChannelMatrix h_ki; // radio k tx -> radio i rx
    ChannelMatrix h_ir; // radio i tx -> radar rx
    ChannelMatrix h_ri; // radar tx -> radio i rx
};

// Draws every channel of one trial from a single seeded stream. Draw order
// is fixed (scene, then H_ij, then H_ki) so a seed pins all realizations.
inline TrialChannels draw_trial_channels(const ScenarioConfig& cfg, std::uint64_t seed)
{
    Rng rng(seed);
    const double spread_rad = cfg.angle_spread_deg * std::numbers::pi / 180.0;

    TrialChannels ch;
    ch.scene = sample_radar_scene(rng, cfg.num_targets, cfg.max_range_m, cfg.carrier_freq_hz);
    ch.h_ij = synth_clustered_channel(rng, cfg.radio_rx_array(), cfg.radio_tx_array(),
                                      cfg.cluster_range, cfg.ray_range, spread_rad);
    ch.h_ki = synth_clustered_channel(rng, cfg.radio_rx_array(), cfg.radio_tx_array(),
                                      cfg.cluster_range, cfg.ray_range, spread_rad);
    ch.h_rr = synth_point_target_channel(ch.scene, cfg.radar_rx_array(), cfg.radar_tx_array());
    auto [h_ir, h_ri] = synth_interference_channels(ch.scene, cfg.radio_tx_array(),
                                                    cfg.radio_rx_array(), cfg.radar_tx_array(),
                                                    cfg.radar_rx_array());
    ch.h_ir = std::move(h_ir);
    ch.h_ri = std::move(h_ri);
    return ch;
}

// Runs one Monte Carlo trial at one link-SNR point: draws channels,
// beamtrains both links, builds the effective channels, then designs and
// scores both scenarios. The transmit slot designs the SVD combiner at j
// and the radar-aware RZF precoder at i, yielding R_ij and the radar SIR;
// the receive slot designs the SVD precoder at k and the radar-aware LMMSE
// combiner at i, yielding R_ki with the radar's interference present. The
// interference-ignorant pure-SVD design is evaluated on the same draws as
// the no-radar baseline. The radar's single active transmit antenna cycles
// with the trial index.
inline TrialResult run_trial(const ScenarioConfig& cfg, double snr_link_db, std::uint64_t trial_seed,
                             int trial_index = 0)
{
    const TrialChannels ch = draw_trial_channels(cfg, trial_seed);

    const Codebook radio_tx_book = dft_codebook(cfg.radio_tx_array());
    const Codebook radio_rx_book = dft_codebook(cfg.radio_rx_array());

    const BeamtrainResult link_ij =
        beamtrain(ch.h_ij, radio_tx_book, radio_rx_book, cfg.rf_chains_i_tx, cfg.rf_chains_j);
    const BeamtrainResult link_ki =
        beamtrain(ch.h_ki, radio_tx_book, radio_rx_book, cfg.rf_chains_k, cfg.rf_chains_i_rx);

    const EffectiveChannels eff = effective_channels(ch.h_ij, ch.h_ki, ch.h_ir, ch.h_ri, link_ij.f_rf,
                                                     link_ki.w_rf, link_ki.f_rf, link_ij.w_rf);

    const double snr_link = db_to_linear(snr_link_db);
    const double snr_ir = db_to_linear(cfg.snr_ir_db_effective());
    const double snr_ri = db_to_linear(cfg.snr_ri_db_effective());

    TrialResult result;
    result.seed = trial_seed;
    result.snr_point_db = snr_link_db;

    try
    {
        // Transmit slot, i -> j: the combiner at j is interference-free by
        // construction, so both the design and the baseline use the SVD
        // combiner; only the precoder at i differs.
        const arma::cx_mat w_bb_j = svd_combiner(eff.h_eff_ij, cfg.ns).beams;

        const arma::cx_mat f_bb_i = normalize_precoder(
            link_ij.f_rf,
            rzf_precoder(eff.h_eff_ij, w_bb_j, eff.h_eff_ir, snr_link, snr_ir, cfg.ns));
        result.r_ij = spectral_efficiency(eff.h_eff_ij, f_bb_i, w_bb_j, snr_link, cfg.ns);
        result.sir_rr_db = sir_radar(ch.h_ir, link_ij.f_rf, f_bb_i, cfg.ns);

        const arma::cx_mat f_bb_i_svd =
            normalize_precoder(link_ij.f_rf, svd_precoder(eff.h_eff_ij, cfg.ns).beams);
        result.baseline_r_ij = spectral_efficiency(eff.h_eff_ij, f_bb_i_svd, w_bb_j, snr_link, cfg.ns);
        result.baseline_sir_rr_db = sir_radar(ch.h_ir, link_ij.f_rf, f_bb_i_svd, cfg.ns);

        // Receive slot, k -> i: the precoder at k is shared; the design's
        // LMMSE combiner sees the radar's transmission (one active antenna,
        // cycling with the trial index) while the baseline pretends the
        // radar is absent.
        const arma::cx_mat f_bb_k =
            normalize_precoder(link_ki.f_rf, svd_precoder(eff.h_eff_ki, cfg.ns).beams);

        const arma::cx_mat w_bb_i =
            lmmse_combiner(eff.h_eff_ki, f_bb_k, eff.h_eff_ri, snr_link, snr_ri, cfg.ns);

        const int active_antenna = trial_index % cfg.radar_tx_antennas;
        InterferenceTerm radar_term;
        radar_term.h_int = eff.h_eff_ri;
        radar_term.snr_int = snr_ri;
        radar_term.p_int = arma::cx_mat(arma::uword(cfg.radar_tx_antennas), 1, arma::fill::zeros);
        radar_term.p_int(arma::uword(active_antenna), 0) = 1.0;
        radar_term.symbol_cov = arma::cx_mat(1, 1, arma::fill::eye);

        result.r_ki =
            spectral_efficiency(eff.h_eff_ki, f_bb_k, w_bb_i, snr_link, cfg.ns, {radar_term});

        const arma::cx_mat w_bb_i_svd = svd_combiner(eff.h_eff_ki, cfg.ns).beams;
        result.baseline_r_ki = spectral_efficiency(eff.h_eff_ki, f_bb_k, w_bb_i_svd, snr_link, cfg.ns);
    }
    catch (const DegenerateStreamError& e)
    {
        throw std::runtime_error(std::string(e.what()) + " (trial seed " +
                                 std::to_string(trial_seed) + ")");
    }

    return result;
}

// One row of the rate-versus-SNR table (Fig.-2-shaped data).
struct RateRow
{
    double snr_db = 0.0;
    double mean_r_ij = 0.0;
    double mean_r_ki = 0.0;
    double mean_sum = 0.0;     // mean of (r_ij + r_ki) with the design
    double baseline_sum = 0.0; // mean of the no-radar SVD baseline sum
};

// Full sweep output: raw trials in (point, trial) order plus the
// aggregate tables the CSV writers consume.
struct SweepResult
{
    std::vector<TrialResult> trials; // point-major, trial-minor
    std::vector<RateRow> rates;      // one row per SNR grid point
    std::vector<double> sir_with_design_db;    // pooled across all points
    std::vector<double> sir_without_design_db; // pooled, SVD baseline
};

// Deterministic aggregation of raw trials into the sweep tables; a plain
// fold in (point, trial) order so results never depend on execution order.
inline void aggregate_sweep(const ScenarioConfig& cfg, SweepResult& sweep)
{
    const size_t trials_per_point = size_t(cfg.trials_per_point);
    sweep.rates.clear();
    sweep.sir_with_design_db.clear();
    sweep.sir_without_design_db.clear();
    sweep.rates.reserve(cfg.snr_grid_db.size());
    sweep.sir_with_design_db.reserve(sweep.trials.size());
    sweep.sir_without_design_db.reserve(sweep.trials.size());

    for (size_t p = 0; p < cfg.snr_grid_db.size(); ++p)
    {
        double sum_ij = 0.0, sum_ki = 0.0, sum_both = 0.0, sum_base = 0.0;
        for (size_t t = 0; t < trials_per_point; ++t)
        {
            const TrialResult& r = sweep.trials[p * trials_per_point + t];
            sum_ij += r.r_ij;
            sum_ki += r.r_ki;
            sum_both += r.r_ij + r.r_ki;
            sum_base += r.baseline_r_ij + r.baseline_r_ki;
            sweep.sir_with_design_db.push_back(r.sir_rr_db);
            sweep.sir_without_design_db.push_back(r.baseline_sir_rr_db);
        }
        const double n = double(trials_per_point);
        sweep.rates.push_back(RateRow{cfg.snr_grid_db[p], sum_ij / n, sum_ki / n, sum_both / n,
                                      sum_base / n});
    }
}

// Runs the full Monte Carlo sweep: trials_per_point independent trials at
// every SNR grid point, with per-trial seeds derived from
// (base_seed, point index, trial index) so any execution order — including
// parallel execution — reproduces identical results. num_threads = 0 picks
// the hardware concurrency. Any trial failure aborts the sweep; the error
// of the earliest failing (point, trial) is reported.
inline SweepResult run_sweep(const ScenarioConfig& cfg, unsigned num_threads = 0)
{
    validate(cfg);

    const size_t num_points = cfg.snr_grid_db.size();
    const size_t trials_per_point = size_t(cfg.trials_per_point);
    const size_t total = num_points * trials_per_point;

    SweepResult sweep;
    sweep.trials.assign(total, TrialResult{});

    unsigned workers = num_threads != 0 ? num_threads : std::max(1u, std::thread::hardware_concurrency());
    workers = unsigned(std::min<size_t>(workers, total));

    std::atomic<size_t> next{0};
    std::vector<std::pair<size_t, std::string>> errors; // (flat index, message)
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;)
        {
            const size_t flat = next.fetch_add(1);
            if (flat >= total)
                return;
            const size_t p = flat / trials_per_point;
            const size_t t = flat % trials_per_point;
            const std::uint64_t seed = derive_trial_seed(cfg.base_seed, p, t);
            try
            {
                sweep.trials[flat] = run_trial(cfg, cfg.snr_grid_db[p], seed, int(t));
            }
            catch (const std::exception& e)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                errors.emplace_back(flat, e.what());
            }
        }
    };

    if (workers <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (std::thread& th : pool)
            th.join();
    }

    if (!errors.empty())
    {
        auto first = *std::min_element(errors.begin(), errors.end(),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
        throw std::runtime_error("sweep aborted: " + first.second);
    }

    aggregate_sweep(cfg, sweep);
    return sweep;
}

} // namespace mmcoex

#endif
