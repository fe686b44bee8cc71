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

#ifndef MMCOEX_BEAMFORMING_HPP
#define MMCOEX_BEAMFORMING_HPP

#include <algorithm>
#include <armadillo>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmcoex/array.hpp"
#include "mmcoex/channel.hpp"

namespace mmcoex
{

// Thrown when a composite precoder column F_RF*F_BB[:,l] has zero norm and
// therefore cannot carry a stream.
class DegenerateStreamError : public std::runtime_error
{
  public:
    explicit DegenerateStreamError(int stream)
        : std::runtime_error("degenerate stream " + std::to_string(stream) +
                             ": composite precoder column has zero norm"),
          stream_index(stream)
    {
    }

    int stream_index;
};

// Hybrid beamformer stack of one link: phase-only RF stages and
// unconstrained baseband stages on both ends.
struct BeamformerSet
{
    arma::cx_mat rf_precoder; // F_RF: Nt x Nrf_tx, constant-modulus entries
    arma::cx_mat bb_precoder; // F_BB: Nrf_tx x Ns
    arma::cx_mat rf_combiner; // W_RF: Nr x Nrf_rx, constant-modulus entries
    arma::cx_mat bb_combiner; // W_BB: Nrf_rx x Ns

    // True when every entry of both RF stages has the same magnitude
    // (the phase-shifter hardware constraint), within tol.
    bool rf_constant_modulus(double tol = 1e-12) const
    {
        auto constant_modulus = [tol](const arma::cx_mat& m) {
            if (m.n_elem == 0)
                return true;
            const double ref = std::abs(m(0, 0));
            for (const auto& z : m)
                if (std::abs(std::abs(z) - ref) > tol)
                    return false;
            return true;
        };
        return constant_modulus(rf_precoder) && constant_modulus(rf_combiner);
    }
};

// Outcome of a codebook beam sweep over one channel.
struct BeamtrainResult
{
    arma::cx_mat f_rf;                // selected tx beams as columns, unit-modulus entries
    arma::cx_mat w_rf;                // selected rx beams as columns, unit-modulus entries
    std::vector<int> tx_beam_indices; // codebook indices, in selection order
    std::vector<int> rx_beam_indices;
    bool degenerate = false; // all pair powers were exactly zero
};

// Codebook beam sweep: evaluates the received power |w^* H f| for every
// (tx beam, rx beam) pair, then walks the pairs in decreasing power
// (ties broken by lower tx index, then lower rx index), filling the
// transmit side with distinct tx indices and the receive side with
// distinct rx indices until num_tx_beams and num_rx_beams are selected.
// Selected beams are rescaled by sqrt(N) so every entry is unit modulus.
// An all-zero channel degenerates to the lowest codebook indices and is
// flagged in the result.
inline BeamtrainResult beamtrain(const ChannelMatrix& channel, const Codebook& tx_codebook,
                                 const Codebook& rx_codebook, int num_tx_beams, int num_rx_beams)
{
    const int n_tx = tx_codebook.num_beams();
    const int n_rx = rx_codebook.num_beams();
    if (num_tx_beams < 1 || num_tx_beams > n_tx)
        throw std::invalid_argument("beamtrain: num_tx_beams out of range");
    if (num_rx_beams < 1 || num_rx_beams > n_rx)
        throw std::invalid_argument("beamtrain: num_rx_beams out of range");
    if (int(channel.entries.n_cols) != int(tx_codebook.beams.n_rows) ||
        int(channel.entries.n_rows) != int(rx_codebook.beams.n_rows))
        throw std::invalid_argument("beamtrain: channel dimensions do not match codebooks");

    // All pair powers in one pass: G = W^* H F, power(mr, mt) = |G(mr, mt)|.
    const arma::cx_mat g = rx_codebook.beams.t() * channel.entries * tx_codebook.beams;

    struct Pair
    {
        double power;
        int tx;
        int rx;
    };
    std::vector<Pair> pairs;
    pairs.reserve(size_t(n_tx) * size_t(n_rx));
    for (int mt = 0; mt < n_tx; ++mt)
        for (int mr = 0; mr < n_rx; ++mr)
            pairs.push_back({std::abs(g(mr, mt)), mt, mr});

    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.power != b.power)
            return a.power > b.power;
        if (a.tx != b.tx)
            return a.tx < b.tx;
        return a.rx < b.rx;
    });

    BeamtrainResult result;
    result.degenerate = pairs.front().power == 0.0;

    std::vector<char> tx_used(size_t(n_tx), 0), rx_used(size_t(n_rx), 0);
    for (const Pair& p : pairs)
    {
        if (int(result.tx_beam_indices.size()) < num_tx_beams && !tx_used[size_t(p.tx)])
        {
            tx_used[size_t(p.tx)] = 1;
            result.tx_beam_indices.push_back(p.tx);
        }
        if (int(result.rx_beam_indices.size()) < num_rx_beams && !rx_used[size_t(p.rx)])
        {
            rx_used[size_t(p.rx)] = 1;
            result.rx_beam_indices.push_back(p.rx);
        }
        if (int(result.tx_beam_indices.size()) == num_tx_beams &&
            int(result.rx_beam_indices.size()) == num_rx_beams)
            break;
    }

    result.f_rf.set_size(tx_codebook.beams.n_rows, arma::uword(num_tx_beams));
    for (int c = 0; c < num_tx_beams; ++c)
        result.f_rf.col(arma::uword(c)) = tx_codebook.beams.col(arma::uword(result.tx_beam_indices[size_t(c)])) *
                                          std::sqrt(double(tx_codebook.beams.n_rows));
    result.w_rf.set_size(rx_codebook.beams.n_rows, arma::uword(num_rx_beams));
    for (int c = 0; c < num_rx_beams; ++c)
        result.w_rf.col(arma::uword(c)) = rx_codebook.beams.col(arma::uword(result.rx_beam_indices[size_t(c)])) *
                                          std::sqrt(double(rx_codebook.beams.n_rows));
    return result;
}

// Reduced (baseband-visible) channels once all RF stages are fixed.
struct EffectiveChannels
{
    arma::cx_mat h_eff_ij; // W_RF(j)^* H_ij F_RF(i):  Nrf_rx(j) x Nrf_tx(i)
    arma::cx_mat h_eff_ki; // W_RF(i)^* H_ki F_RF(k):  Nrf_rx(i) x Nrf_tx(k)
    arma::cx_mat h_eff_ir; // H_ir F_RF(i):            Nr(r)     x Nrf_tx(i)
    arma::cx_mat h_eff_ri; // W_RF(i)^* H_ri:          Nrf_rx(i) x Nt(r)
};

// Forms the four reduced channels as exact matrix products. The radar has
// no RF stage of its own: H_ir keeps its receive dimension and H_ri keeps
// its transmit dimension.
inline EffectiveChannels effective_channels(const ChannelMatrix& h_ij, const ChannelMatrix& h_ki,
                                            const ChannelMatrix& h_ir, const ChannelMatrix& h_ri,
                                            const arma::cx_mat& f_rf_i, const arma::cx_mat& w_rf_i,
                                            const arma::cx_mat& f_rf_k, const arma::cx_mat& w_rf_j)
{
    if (w_rf_j.n_rows != h_ij.entries.n_rows || f_rf_i.n_rows != h_ij.entries.n_cols)
        throw std::invalid_argument("effective_channels: H_ij dimensions do not match RF stages");
    if (w_rf_i.n_rows != h_ki.entries.n_rows || f_rf_k.n_rows != h_ki.entries.n_cols)
        throw std::invalid_argument("effective_channels: H_ki dimensions do not match RF stages");
    if (f_rf_i.n_rows != h_ir.entries.n_cols)
        throw std::invalid_argument("effective_channels: H_ir dimensions do not match F_RF(i)");
    if (w_rf_i.n_rows != h_ri.entries.n_rows)
        throw std::invalid_argument("effective_channels: H_ri dimensions do not match W_RF(i)");

    EffectiveChannels eff;
    eff.h_eff_ij = w_rf_j.t() * h_ij.entries * f_rf_i;
    eff.h_eff_ki = w_rf_i.t() * h_ki.entries * f_rf_k;
    eff.h_eff_ir = h_ir.entries * f_rf_i;
    eff.h_eff_ri = w_rf_i.t() * h_ri.entries;
    return eff;
}

// Ns singular-vector beams plus a flag raised when the matrix rank was
// below Ns and null directions had to complete the set.
struct SvdBeams
{
    arma::cx_mat beams;
    bool rank_deficient = false;
};

namespace detail
{
// Rotates each column by a unit-modulus scalar so its largest-magnitude
// entry (lowest index on ties) is real positive. Removes the SVD phase
// ambiguity deterministically.
inline void fix_column_phases(arma::cx_mat& m)
{
    for (arma::uword c = 0; c < m.n_cols; ++c)
    {
        arma::uword best = 0;
        double best_mag = -1.0;
        for (arma::uword r = 0; r < m.n_rows; ++r)
        {
            const double mag = std::abs(m(r, c));
            if (mag > best_mag)
            {
                best_mag = mag;
                best = r;
            }
        }
        if (best_mag > 0.0)
            m.col(c) *= std::conj(m(best, c)) / best_mag;
    }
}

inline SvdBeams svd_beams(const arma::cx_mat& h_eff, int ns, bool left)
{
    if (ns < 1 || arma::uword(ns) > std::min(h_eff.n_rows, h_eff.n_cols))
        throw std::invalid_argument("svd_beams: need 1 <= Ns <= min(dims)");

    arma::cx_mat u, v;
    arma::vec s;
    if (!arma::svd(u, s, v, h_eff))
        throw std::runtime_error("svd_beams: SVD failed to converge");

    SvdBeams out;
    out.beams = left ? arma::cx_mat(u.cols(0, arma::uword(ns) - 1))
                     : arma::cx_mat(v.cols(0, arma::uword(ns) - 1));
    // Singular values come back sorted high to low; the set is rank
    // deficient when the Ns-th value has collapsed relative to the first.
    out.rank_deficient = s(0) <= 0.0 || s(arma::uword(ns) - 1) < 1e-12 * s(0);
    fix_column_phases(out.beams);
    return out;
}
} // namespace detail

// Top-Ns left singular vectors of the reduced channel, ordered by
// decreasing singular value, each phase-fixed (largest entry real
// positive). Columns are orthonormal even when rank < Ns; the flag marks
// that case.
inline SvdBeams svd_combiner(const arma::cx_mat& h_eff, int ns)
{
    return detail::svd_beams(h_eff, ns, true);
}

// Top-Ns right singular vectors; mirror of svd_combiner.
inline SvdBeams svd_precoder(const arma::cx_mat& h_eff, int ns)
{
    return detail::svd_beams(h_eff, ns, false);
}

// Regularized zero-forcing baseband precoder for transmission toward j
// while protecting the radar's receiver:
//   F_BB = [ (H~_ij^* W W^* H~_ij + (snr_ir/snr_ij) H~_ir^* H~_ir
//             + (Ns/snr_ij) I)^{-1} H~_ij^* W ]_{:, 0..Ns-1}.
// Evaluated as a linear solve of the regularized Hermitian system, never
// via an explicit inverse. The result is unnormalized; apply
// normalize_precoder before use.
inline arma::cx_mat rzf_precoder(const arma::cx_mat& h_eff_ij, const arma::cx_mat& w_bb_j,
                                 const arma::cx_mat& h_eff_ir, double snr_ij, double snr_ir, int ns)
{
    if (!std::isfinite(snr_ij) || !std::isfinite(snr_ir))
        throw std::invalid_argument("rzf_precoder: SNRs must be finite");
    if (!(snr_ij > 0.0))
        throw std::invalid_argument("rzf_precoder: snr_ij must be > 0");
    if (ns < 1 || int(w_bb_j.n_cols) < ns)
        throw std::invalid_argument("rzf_precoder: combiner must have at least Ns columns");
    if (h_eff_ij.n_rows != w_bb_j.n_rows || h_eff_ij.n_cols != h_eff_ir.n_cols)
        throw std::invalid_argument("rzf_precoder: dimension mismatch");

    const arma::cx_mat hw = h_eff_ij.t() * w_bb_j;
    arma::cx_mat a = hw * hw.t() + (snr_ir / snr_ij) * (h_eff_ir.t() * h_eff_ir);
    a.diag() += double(ns) / snr_ij;

    arma::cx_mat f = arma::solve(a, hw, arma::solve_opts::likely_sympd);
    return f.cols(0, arma::uword(ns) - 1);
}

// LMMSE baseband combiner for reception from k while rejecting the radar's
// transmission:
//   W_BB = [ (H~_ki F F^* H~_ki^* + (snr_ri/snr_ki) H~_ri H~_ri^*
//             + (Ns/snr_ki) I)^{-1} H~_ki F ]_{:, 0..Ns-1}.
// Solved as a regularized Hermitian linear system.
inline arma::cx_mat lmmse_combiner(const arma::cx_mat& h_eff_ki, const arma::cx_mat& f_bb_k,
                                   const arma::cx_mat& h_eff_ri, double snr_ki, double snr_ri, int ns)
{
    if (!std::isfinite(snr_ki) || !std::isfinite(snr_ri))
        throw std::invalid_argument("lmmse_combiner: SNRs must be finite");
    if (!(snr_ki > 0.0))
        throw std::invalid_argument("lmmse_combiner: snr_ki must be > 0");
    if (ns < 1 || int(f_bb_k.n_cols) < ns)
        throw std::invalid_argument("lmmse_combiner: precoder must have at least Ns columns");
    if (h_eff_ki.n_cols != f_bb_k.n_rows || h_eff_ki.n_rows != h_eff_ri.n_rows)
        throw std::invalid_argument("lmmse_combiner: dimension mismatch");

    const arma::cx_mat hf = h_eff_ki * f_bb_k;
    arma::cx_mat a = hf * hf.t() + (snr_ri / snr_ki) * (h_eff_ri * h_eff_ri.t());
    a.diag() += double(ns) / snr_ki;

    arma::cx_mat w = arma::solve(a, hf, arma::solve_opts::likely_sympd);
    return w.cols(0, arma::uword(ns) - 1);
}

// Uniform per-stream power allocation: scales each baseband column so the
// composite column F_RF*F_BB[:,l] has unit norm, which makes
// ||F_RF F_BB||_F^2 equal the stream count.
inline arma::cx_mat normalize_precoder(const arma::cx_mat& f_rf, const arma::cx_mat& f_bb)
{
    if (f_rf.n_cols != f_bb.n_rows)
        throw std::invalid_argument("normalize_precoder: dimension mismatch");

    arma::cx_mat out = f_bb;
    for (arma::uword c = 0; c < f_bb.n_cols; ++c)
    {
        const double norm = arma::norm(f_rf * f_bb.col(c), 2);
        if (norm == 0.0)
            throw DegenerateStreamError(int(c));
        out.col(c) /= norm;
    }
    return out;
}

// One degrees-of-freedom warning: a side of radio i lacks the RF chains
// required to both carry Ns streams and fully null the radar coupling.
struct DofWarning
{
    enum class Side
    {
        transmit,
        receive
    };

    Side side;
    std::string message;
};

// Checks the interference-nulling degrees-of-freedom conditions
// Nrf_tx(i) >= Nr(r) + Ns and Nrf_rx(i) >= Nt(r) + Ns. Returns one warning
// per violated inequality; Ns = 0 is vacuously fine.
inline std::vector<DofWarning> validate_dof(int rf_chains_i_tx, int rf_chains_i_rx, int radar_nr,
                                            int radar_nt, int ns)
{
    std::vector<DofWarning> warnings;
    if (ns <= 0)
        return warnings;

    if (rf_chains_i_tx < radar_nr + ns)
        warnings.push_back({DofWarning::Side::transmit,
                            "transmit side: rf_chains_i_tx = " + std::to_string(rf_chains_i_tx) +
                                " < radar_rx_antennas + ns = " + std::to_string(radar_nr + ns) +
                                "; complete interference nulling toward the radar is not guaranteed"});
    if (rf_chains_i_rx < radar_nt + ns)
        warnings.push_back({DofWarning::Side::receive,
                            "receive side: rf_chains_i_rx = " + std::to_string(rf_chains_i_rx) +
                                " < radar_tx_antennas + ns = " + std::to_string(radar_nt + ns) +
                                "; complete interference rejection from the radar is not guaranteed"});
    return warnings;
}

// Orthonormal basis of the right null space {x : A x = 0}, taken from the
// trailing right singular vectors. Used to build the exact-nulling
// reference precoder the RZF design is compared against.
inline arma::cx_mat right_null_basis(const arma::cx_mat& a, double rel_tol = 1e-12)
{
    arma::cx_mat u, v;
    arma::vec s;
    if (!arma::svd(u, s, v, a))
        throw std::runtime_error("right_null_basis: SVD failed to converge");

    const double cutoff = s.n_elem > 0 ? rel_tol * s(0) : 0.0;
    arma::uword rank = 0;
    for (arma::uword k = 0; k < s.n_elem; ++k)
        if (s(k) > cutoff)
            ++rank;

    if (rank >= v.n_cols)
        return arma::cx_mat(a.n_cols, 0);
    return v.cols(rank, v.n_cols - 1);
}

} // namespace mmcoex

#endif
