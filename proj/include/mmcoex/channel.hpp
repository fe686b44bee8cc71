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

#ifndef MMCOEX_CHANNEL_HPP
#define MMCOEX_CHANNEL_HPP

#include <armadillo>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mmcoex/array.hpp"
#include "mmcoex/rng.hpp"

namespace mmcoex
{

// Speed of light in vacuum, m/s.
inline constexpr double kSpeedOfLight = 299792458.0;

// One specular reflector in the radar scene.
struct PointTarget
{
    std::complex<double> gain; // small-scale complex amplitude
    double delay = 0.0;        // round-trip propagation delay, seconds
    double aod = 0.0;          // angle of departure, radians
    double aoa = 0.0;          // angle of arrival, radians
};

// The radar scene: a set of point targets plus the carrier they are
// observed on. For a monostatic scene aoa == aod per target.
struct PointTargetSet
{
    std::vector<PointTarget> targets;
    double carrier_freq = 60e9; // Hz
};

// One realization of the clustered (Saleh-Valenzuela style) channel:
// a number of clusters, each contributing the same number of discrete
// rays with per-ray complex gains and angles. Rays are stored flattened,
// cluster-major: ray (u, v) lives at index u*rays_per_cluster + v.
struct ClusterSpec
{
    int num_clusters = 1;
    int rays_per_cluster = 1;
    std::vector<std::complex<double>> gains; // per-ray, CN(0,1)
    std::vector<double> aoa;                 // per-ray, radians
    std::vector<double> aod;                 // per-ray, radians
};

// Complex channel matrix tagged with the link it models. Dimensions are
// rx-elements x tx-elements of the endpoints the tag implies.
struct ChannelMatrix
{
    enum class Kind
    {
        radar,           // H_rr: radar tx -> radar rx through the scene
        communication,   // H_ij or H_ki: clustered radio-to-radio link
        interference_tx, // H_ir: radio i tx -> radar rx
        interference_rx  // H_ri: radar tx -> radio i rx
    };

    arma::cx_mat entries;
    Kind kind = Kind::communication;

    int num_rx() const { return int(entries.n_rows); }
    int num_tx() const { return int(entries.n_cols); }
};

// Inclusive integer range used for the random cluster/ray counts.
struct IntRange
{
    int lo = 1;
    int hi = 1;

    IntRange() = default;

    IntRange(int lo_, int hi_) : lo(lo_), hi(hi_)
    {
        if (lo < 1 || hi < lo)
            throw std::invalid_argument("IntRange: need 1 <= lo <= hi");
    }
};

namespace detail
{
// Geometric sum of per-target rank-one terms,
//   sum_p beta_p * exp(-j*2*pi*f_c*tau_p) * a_rx(aoa_p) * a_tx(aod_p)^*,
// evaluated for arbitrary rx/tx geometries. Shared by the radar channel
// and both interference channels so that the three stay consistent
// target-by-target.
inline arma::cx_mat point_target_matrix(const PointTargetSet& scene, const ArrayGeometry& rx,
                                        const ArrayGeometry& tx)
{
    arma::cx_mat h(rx.num_elements, tx.num_elements, arma::fill::zeros);
    for (const PointTarget& t : scene.targets)
    {
        if (t.delay < 0.0)
            throw std::invalid_argument("point_target_matrix: negative delay");
        if (!std::isfinite(t.aoa) || !std::isfinite(t.aod) || std::abs(t.aoa) > std::numbers::pi / 2 ||
            std::abs(t.aod) > std::numbers::pi / 2)
            throw std::invalid_argument("point_target_matrix: angle outside [-pi/2, pi/2]");

        const std::complex<double> phase =
            std::polar(1.0, -2.0 * std::numbers::pi * scene.carrier_freq * t.delay);
        h += (t.gain * phase) * (steering_vector(rx, t.aoa) * steering_vector(tx, t.aod).t());
    }
    return h;
}
} // namespace detail

// Draws a random radar scene: per target the angle is uniform on
// [-pi/2, pi/2], the range uniform on (0, max_range], and the gain standard
// complex normal. Delays are round trip (2r/c) and aoa == aod (monostatic
// colocated arrays). Draw order per target is angle, range, gain.
inline PointTargetSet sample_radar_scene(Rng& rng, int num_targets, double max_range, double carrier_freq)
{
    if (num_targets < 0)
        throw std::invalid_argument("sample_radar_scene: num_targets must be >= 0");
    if (!(max_range > 0.0))
        throw std::invalid_argument("sample_radar_scene: max_range must be > 0");

    PointTargetSet scene;
    scene.carrier_freq = carrier_freq;
    scene.targets.reserve(size_t(num_targets));
    for (int p = 0; p < num_targets; ++p)
    {
        PointTarget t;
        const double angle = rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
        const double range = max_range * (1.0 - rng.uniform01()); // (0, max_range]
        t.aoa = angle;
        t.aod = angle;
        t.delay = 2.0 * range / kSpeedOfLight;
        t.gain = rng.cnormal();
        scene.targets.push_back(t);
    }
    return scene;
}

// Radar channel H_rr from the scene: exact evaluation of the sum of
// per-target rank-one reflections. An empty scene yields the zero matrix.
inline ChannelMatrix synth_point_target_channel(const PointTargetSet& scene, const ArrayGeometry& rx,
                                                const ArrayGeometry& tx)
{
    return ChannelMatrix{detail::point_target_matrix(scene, rx, tx), ChannelMatrix::Kind::radar};
}

// Draws the per-ray gains and angles of one clustered-channel realization.
// Draw order: cluster count, ray count, then per cluster the aoa/aod
// centers (uniform on [-pi/2, pi/2]) followed per ray by the aoa offset,
// aod offset (both Laplacian with the given scale) and the CN(0,1) gain.
// Ray angles are clamped to the visible region [-pi/2, pi/2].
inline ClusterSpec draw_cluster_spec(Rng& rng, IntRange cluster_range, IntRange ray_range,
                                     double angle_spread)
{
    if (!std::isfinite(angle_spread) || angle_spread < 0.0)
        throw std::invalid_argument("draw_cluster_spec: angle_spread must be >= 0");

    ClusterSpec spec;
    spec.num_clusters = rng.uniform_int(cluster_range.lo, cluster_range.hi);
    spec.rays_per_cluster = rng.uniform_int(ray_range.lo, ray_range.hi);

    const int total = spec.num_clusters * spec.rays_per_cluster;
    spec.gains.reserve(size_t(total));
    spec.aoa.reserve(size_t(total));
    spec.aod.reserve(size_t(total));

    const double half_pi = std::numbers::pi / 2;
    auto clamp_angle = [half_pi](double a) { return std::clamp(a, -half_pi, half_pi); };

    for (int u = 0; u < spec.num_clusters; ++u)
    {
        const double aoa_center = rng.uniform(-half_pi, half_pi);
        const double aod_center = rng.uniform(-half_pi, half_pi);
        for (int v = 0; v < spec.rays_per_cluster; ++v)
        {
            spec.aoa.push_back(clamp_angle(aoa_center + rng.laplace(angle_spread)));
            spec.aod.push_back(clamp_angle(aod_center + rng.laplace(angle_spread)));
            spec.gains.push_back(rng.cnormal());
        }
    }
    return spec;
}

// Assembles the channel matrix of a clustered realization,
//   H = (1/sqrt(N_clust*N_rays)) * sum_{u,v} beta_{u,v} a_rx(aoa) a_tx(aod)^*.
// Because the array responses are unnormalized (each carries norm sqrt(N)),
// this scale makes E||H||_F^2 = Nt*Nr — the same normalization a
// sqrt(Nt*Nr/(N_clust*N_rays)) prefactor provides over unit-norm responses.
inline ChannelMatrix assemble_clustered_channel(const ClusterSpec& spec, const ArrayGeometry& rx,
                                                const ArrayGeometry& tx)
{
    const int total = spec.num_clusters * spec.rays_per_cluster;
    if (int(spec.gains.size()) != total || int(spec.aoa.size()) != total || int(spec.aod.size()) != total)
        throw std::invalid_argument("assemble_clustered_channel: inconsistent ray lists");

    arma::cx_mat h(rx.num_elements, tx.num_elements, arma::fill::zeros);
    for (int r = 0; r < total; ++r)
        h += spec.gains[size_t(r)] * (steering_vector(rx, spec.aoa[size_t(r)]) *
                                      steering_vector(tx, spec.aod[size_t(r)]).t());

    h *= 1.0 / std::sqrt(double(total));
    return ChannelMatrix{std::move(h), ChannelMatrix::Kind::communication};
}

// Draws one clustered communication channel: a random number of clusters
// and rays per cluster (inclusive ranges), cluster centers uniform in
// azimuth, per-ray Laplacian angle spread, i.i.d. CN(0,1) ray gains.
inline ChannelMatrix synth_clustered_channel(Rng& rng, const ArrayGeometry& rx, const ArrayGeometry& tx,
                                             IntRange cluster_range, IntRange ray_range,
                                             double angle_spread)
{
    return assemble_clustered_channel(draw_cluster_spec(rng, cluster_range, ray_range, angle_spread), rx,
                                      tx);
}

// Interference channels derived from the same radar scene: H_ir couples the
// radio's transmit array into the radar's receive array (radar_rx response
// at each target's aoa, radio_tx response at its aod) and H_ri couples the
// radar's transmit array into the radio's receive array (radio_rx at aoa,
// radar_tx at aod). Gains and phase terms are shared with the scene, so all
// scene-derived channels stay consistent target-by-target.
inline std::pair<ChannelMatrix, ChannelMatrix> synth_interference_channels(const PointTargetSet& scene,
                                                                           const ArrayGeometry& radio_tx,
                                                                           const ArrayGeometry& radio_rx,
                                                                           const ArrayGeometry& radar_tx,
                                                                           const ArrayGeometry& radar_rx)
{
    ChannelMatrix h_ir{detail::point_target_matrix(scene, radar_rx, radio_tx),
                       ChannelMatrix::Kind::interference_tx};
    ChannelMatrix h_ri{detail::point_target_matrix(scene, radio_rx, radar_tx),
                       ChannelMatrix::Kind::interference_rx};
    return {std::move(h_ir), std::move(h_ri)};
}

} // namespace mmcoex

#endif
