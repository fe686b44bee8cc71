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

#ifndef MMCOEX_ARRAY_HPP
#define MMCOEX_ARRAY_HPP

#include <armadillo>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace mmcoex
{

// Uniform linear array. Spacing is given in carrier wavelengths; the usual
// half-wavelength layout is the default.
struct ArrayGeometry
{
    int num_elements = 1;
    double element_spacing = 0.5;

    ArrayGeometry() = default;

    explicit ArrayGeometry(int n, double spacing = 0.5) : num_elements(n), element_spacing(spacing)
    {
        if (num_elements < 1)
            throw std::invalid_argument("ArrayGeometry: num_elements must be >= 1");
        if (!std::isfinite(element_spacing) || element_spacing <= 0.0)
            throw std::invalid_argument("ArrayGeometry: element_spacing must be > 0");
    }
};

// Array response of a ULA toward a broadside-referenced angle in radians,
// v[n] = exp(j*2*pi*spacing*n*sin(angle)). Entries are unit modulus; the
// vector is intentionally not normalized to unit Euclidean norm.
inline arma::cx_vec steering_vector(const ArrayGeometry& geometry, double angle_rad)
{
    if (!std::isfinite(angle_rad))
        throw std::invalid_argument("steering_vector: angle must be finite");

    const double phase_step = 2.0 * std::numbers::pi * geometry.element_spacing * std::sin(angle_rad);
    const std::complex<double> step = std::polar(1.0, phase_step);

    arma::cx_vec v(geometry.num_elements);
    std::complex<double> cur(1.0, 0.0);
    for (int n = 0; n < geometry.num_elements; ++n)
    {
        v(n) = cur;
        cur *= step;
    }
    return v;
}

// Set of unit-norm beams stored one per column.
struct Codebook
{
    enum class Kind
    {
        dft
    };

    arma::cx_mat beams;
    Kind kind = Kind::dft;

    int num_beams() const { return int(beams.n_cols); }
};

// Critically sampled DFT codebook for an N-element array: N beams, beam m has
// entries (1/sqrt(N)) * exp(j*2*pi*n*m/N). The beams are mutually orthonormal
// and cover the full beamspace.
inline Codebook dft_codebook(const ArrayGeometry& geometry)
{
    const int n = geometry.num_elements;
    const double scale = 1.0 / std::sqrt(double(n));

    arma::cx_mat beams(n, n);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            beams(k, m) = std::polar(scale, 2.0 * std::numbers::pi * double(k) * double(m) / double(n));

    return Codebook{beams, Codebook::Kind::dft};
}

} // namespace mmcoex

#endif
