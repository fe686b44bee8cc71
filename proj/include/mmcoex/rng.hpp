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

#ifndef MMCOEX_RNG_HPP
#define MMCOEX_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace mmcoex
{

// splitmix64 output function; used as the mixing step for seed derivation.
inline std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for one Monte Carlo trial, derived from the experiment base seed, the
// SNR grid point index and the trial index. Counter-based: trials can be
// generated in any order (or concurrently) and always see the same stream.
inline std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::uint64_t point_index,
                                       std::uint64_t trial_index)
{
    std::uint64_t h = mix64(base_seed);
    h = mix64(h ^ (0xd1b54a32d192ed03ULL + point_index));
    h = mix64(h ^ (0x8cb92ba72f3d8dd7ULL + trial_index));
    return h;
}

// Deterministic random stream over a 64-bit Mersenne Twister. The transforms
// below are written out explicitly rather than taken from <random> so that a
// given seed produces the exact same draw sequence on every platform and
// standard library.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1), 53-bit resolution
    double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer on {lo, ..., hi}, inclusive
    int uniform_int(int lo, int hi)
    {
        const int span = hi - lo + 1;
        int k = int(uniform01() * double(span));
        if (k >= span)
            k = span - 1;
        return lo + k;
    }

    // Standard normal via Box-Muller
    double normal()
    {
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps the log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Circularly symmetric complex normal, zero mean, unit variance:
    // E|z|^2 = 1, i.e. real and imaginary parts each have variance 1/2
    std::complex<double> cnormal()
    {
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-std::log(u1));
        return std::polar(r, 2.0 * std::numbers::pi * u2);
    }

    // Zero-mean Laplacian with the given scale (variance 2*scale^2)
    double laplace(double scale)
    {
        const double u = uniform01() - 0.5;
        const double t = std::fmax(1.0 - 2.0 * std::fabs(u), 1e-300);
        const double mag = -scale * std::log(t);
        return u < 0.0 ? -mag : mag;
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace mmcoex

#endif
