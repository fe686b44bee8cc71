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

#ifndef MMCOEX_METRICS_HPP
#define MMCOEX_METRICS_HPP

#include <algorithm>
#include <armadillo>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mmcoex/channel.hpp"

namespace mmcoex
{

// Radar SIR values are capped here (dB) once the coupled interference
// power drops below kSirPowerFloor; exact nulling would otherwise produce
// infinities and unplottable CDFs.
inline constexpr double kSirCapDb = 300.0;
inline constexpr double kSirPowerFloor = 1e-30;

// Thrown when the noise-plus-interference covariance seen through the
// baseband combiner is singular in every direction, which can only happen
// for a (numerically) zero combiner.
class DegenerateCombinerError : public std::runtime_error
{
  public:
    DegenerateCombinerError()
        : std::runtime_error("degenerate combiner: post-combining noise-plus-interference "
                             "covariance is singular")
    {
    }
};

// One co-channel interferer as seen by a receiver: its (effective) channel,
// its large-scale SNR, its precoder, and its symbol covariance.
struct InterferenceTerm
{
    arma::cx_mat h_int;      // rx-side effective channel of the interferer
    double snr_int = 0.0;    // linear
    arma::cx_mat p_int;      // interferer precoder (columns = its streams)
    arma::cx_mat symbol_cov; // covariance of the interferer's symbol vector
};

// Gaussian-signaling spectral efficiency of one link in bits/s/Hz:
//   R = log2 det( I + Q^{-1} (snr/Ns) T T^* ),  T = W_BB^* h_eff F_BB,
//   Q = W_BB^* ( I + sum_t snr_t h_t p_t S_t p_t^* h_t^* ) W_BB,
// with unit noise power so SNRs plug in directly. Evaluated by whitening T
// against a Hermitian eigendecomposition of Q, so the result is a sum of
// log2(1 + per-mode SINR) terms and never negative. A rank-deficient
// combiner (single-ray channels produce one) makes Q singular along
// directions in which the combiner output is perfectly correlated with the
// others; those directions carry no additional observation — zero signal
// and zero noise — so modes whose Q-eigenvalue falls below a relative
// floor are excluded rather than amplified out of rounding noise. Only a
// combiner with no live direction at all is an error.
inline double spectral_efficiency(const arma::cx_mat& h_eff, const arma::cx_mat& f_bb,
                                  const arma::cx_mat& w_bb, double snr_link, int ns,
                                  const std::vector<InterferenceTerm>& interference_terms = {})
{
    if (!std::isfinite(snr_link) || !(snr_link > 0.0))
        throw std::invalid_argument("spectral_efficiency: snr_link must be finite and > 0");
    if (ns < 1 || int(f_bb.n_cols) != ns || int(w_bb.n_cols) != ns)
        throw std::invalid_argument("spectral_efficiency: F_BB and W_BB must have Ns columns");
    if (h_eff.n_rows != w_bb.n_rows || h_eff.n_cols != f_bb.n_rows)
        throw std::invalid_argument("spectral_efficiency: dimension mismatch");

    const arma::cx_mat t = w_bb.t() * h_eff * f_bb;

    // Q = W^* W + sum over interferers of (W^* h p) S (W^* h p)^*.
    arma::cx_mat q = w_bb.t() * w_bb;
    for (const InterferenceTerm& term : interference_terms)
    {
        if (term.h_int.n_rows != w_bb.n_rows || term.h_int.n_cols != term.p_int.n_rows ||
            term.symbol_cov.n_rows != term.p_int.n_cols || term.symbol_cov.n_cols != term.p_int.n_cols)
            throw std::invalid_argument("spectral_efficiency: interference term dimension mismatch");
        const arma::cx_mat wp = w_bb.t() * term.h_int * term.p_int;
        q += term.snr_int * (wp * term.symbol_cov * wp.t());
    }

    arma::vec d;
    arma::cx_mat u;
    if (!arma::eig_sym(d, u, q))
        throw std::runtime_error("spectral_efficiency: eigendecomposition of Q failed");

    const double d_max = d(d.n_elem - 1); // eig_sym sorts ascending
    if (!(d_max > 0.0))
        throw DegenerateCombinerError();
    const double d_floor = 1e-14 * d_max;

    // M = D^{-1/2} U_live^* T over the live modes; R from eigenvalues of M M^*.
    arma::uvec live = arma::find(d > d_floor);
    arma::cx_mat m = u.cols(live).t() * t;
    for (arma::uword k = 0; k < live.n_elem; ++k)
        m.row(k) /= std::sqrt(d(live(k)));

    arma::vec lambda;
    if (!arma::eig_sym(lambda, arma::cx_mat(m * m.t())))
        throw std::runtime_error("spectral_efficiency: eigendecomposition failed");

    double rate = 0.0;
    for (double lk : lambda)
        rate += std::log2(1.0 + (snr_link / double(ns)) * std::max(lk, 0.0));
    return rate;
}

// Radar SIR in dB: the inverse of the interference power the radio's
// transmission couples into the radar's receive array,
//   SIR = ( tr{ H_ir F_RF F_BB R_s F_BB^* F_RF^* H_ir^* } )^{-1},
// with symbol covariance R_s = (1/Ns) I. The radar's own return is
// normalized out; the metric isolates the incurred interference. Capped at
// kSirCapDb when the interference power is below kSirPowerFloor.
inline double sir_radar(const ChannelMatrix& h_ir, const arma::cx_mat& f_rf, const arma::cx_mat& f_bb,
                        int ns)
{
    if (ns < 1 || int(f_bb.n_cols) != ns)
        throw std::invalid_argument("sir_radar: F_BB must have Ns columns");
    if (h_ir.entries.n_cols != f_rf.n_rows || f_rf.n_cols != f_bb.n_rows)
        throw std::invalid_argument("sir_radar: dimension mismatch");

    const arma::cx_mat coupled = h_ir.entries * (f_rf * f_bb);
    const double power = std::pow(arma::norm(coupled, "fro"), 2) / double(ns);
    if (power < kSirPowerFloor)
        return kSirCapDb;
    return -10.0 * std::log10(power);
}

// One step of an empirical CDF: probability is the fraction of samples
// less than or equal to value.
struct CdfPoint
{
    double value = 0.0;
    double probability = 0.0;
};

// Empirical CDF of a sample list: sorted values v_(1) <= ... <= v_(n) with
// probability k/n attached to the k-th sorted value.
inline std::vector<CdfPoint> empirical_cdf(const std::vector<double>& samples)
{
    if (samples.empty())
        throw std::invalid_argument("empirical_cdf: sample list must be non-empty");

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());

    std::vector<CdfPoint> cdf(sorted.size());
    const double n = double(sorted.size());
    for (size_t k = 0; k < sorted.size(); ++k)
        cdf[k] = CdfPoint{sorted[k], double(k + 1) / n};
    return cdf;
}

// Metrics of one Monte Carlo trial. The baseline columns hold the
// interference-ignorant pure-SVD design evaluated on the same draws, i.e.
// the performance had the radar not been present.
struct TrialResult
{
    double r_ij = 0.0;               // bits/s/Hz, i -> j with the full design
    double r_ki = 0.0;               // bits/s/Hz, k -> i with the full design
    double sir_rr_db = 0.0;          // radar SIR under the RZF precoder (capped)
    double baseline_r_ij = 0.0;      // bits/s/Hz, SVD precoder, no radar
    double baseline_r_ki = 0.0;      // bits/s/Hz, SVD combiner, no radar
    double baseline_sir_rr_db = 0.0; // radar SIR under the SVD precoder (capped)
    std::uint64_t seed = 0;          // trial seed (derived from base seed)
    double snr_point_db = 0.0;       // the SNR grid point this trial ran at
};

} // namespace mmcoex

#endif
