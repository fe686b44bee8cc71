// SPDX-License-Identifier: Apache-2.0
//
// Uniform linear array responses and DFT codebooks.

#include <catch2/catch_amalgamated.hpp>

#include <mmcoex/array.hpp>
#include <mmcoex/rng.hpp>

#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <limits>

using namespace mmcoex;
using Catch::Approx;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("array geometry rejects invalid shapes", "[array]") {
    REQUIRE_THROWS_AS(ArrayGeometry(0), std::invalid_argument);
    REQUIRE_THROWS_AS(ArrayGeometry(4, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(ArrayGeometry(4, -0.5), std::invalid_argument);
    REQUIRE_NOTHROW(ArrayGeometry(1));
    REQUIRE(ArrayGeometry(8).element_spacing == 0.5);
}

TEST_CASE("broadside steering vector is all ones", "[array]") {
    for (unsigned n : {1u, 2u, 7u, 32u}) {
        const arma::cx_vec v = steering_vector(ArrayGeometry(int(n)), 0.0);
        REQUIRE(v.n_elem == n);
        for (arma::uword i = 0; i < v.n_elem; ++i) {
            REQUIRE(v(i).real() == Approx(1.0).margin(1e-15));
            REQUIRE(v(i).imag() == Approx(0.0).margin(1e-15));
        }
    }
}

TEST_CASE("single-element steering vector is [1] at any angle", "[array]") {
    Rng rng(21u);
    for (int i = 0; i < 50; ++i) {
        const double angle = rng.uniform(-kPi / 2.0, kPi / 2.0);
        const arma::cx_vec v = steering_vector(ArrayGeometry(1), angle);
        REQUIRE(v.n_elem == 1);
        REQUIRE(v(0) == std::complex<double>(1.0, 0.0));
    }
}

TEST_CASE("quarter-turn example: four elements at 30 degrees", "[array]") {
    // sin(pi/6) = 1/2 and half-wavelength spacing give a phase step of pi/2,
    // so the response walks the unit circle: 1, j, -1, -j.
    const arma::cx_vec v = steering_vector(ArrayGeometry(4, 0.5), kPi / 6.0);
    REQUIRE(v.n_elem == 4);
    const std::complex<double> expected[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    for (arma::uword i = 0; i < 4; ++i) {
        REQUIRE(v(i).real() == Approx(expected[i].real()).margin(1e-12));
        REQUIRE(v(i).imag() == Approx(expected[i].imag()).margin(1e-12));
    }
}

TEST_CASE("steering vector entries are unit modulus and the norm is sqrt(N)", "[array]") {
    Rng rng(22u);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.uniform_int(1, 64);
        const double angle = rng.uniform(-kPi / 2.0, kPi / 2.0);
        const arma::cx_vec v = steering_vector(ArrayGeometry(n), angle);
        for (arma::uword i = 0; i < v.n_elem; ++i) REQUIRE(std::abs(v(i)) == Approx(1.0).epsilon(1e-12));
        REQUIRE(arma::norm(v) == Approx(std::sqrt(double(n))).epsilon(1e-12));
    }
}

TEST_CASE("steering vector obeys conjugate symmetry in the angle", "[array]") {
    Rng rng(23u);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = std::size_t(rng.uniform_int(1, 48));
        const double angle = rng.uniform(0.0, kPi / 2.0);
        const arma::cx_vec vp = steering_vector(ArrayGeometry(n), angle);
        const arma::cx_vec vm = steering_vector(ArrayGeometry(n), -angle);
        REQUIRE(arma::norm(vm - arma::conj(vp), "inf") < 1e-15);
    }
}

TEST_CASE("steering vector rejects non-finite angles", "[array]") {
    REQUIRE_THROWS_AS(steering_vector(ArrayGeometry(4), std::numeric_limits<double>::quiet_NaN()),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(steering_vector(ArrayGeometry(4), std::numeric_limits<double>::infinity()),
                      std::invalid_argument);
}

TEST_CASE("trivial DFT codebooks match closed forms", "[array]") {
    const Codebook c1 = dft_codebook(ArrayGeometry(1));
    REQUIRE(c1.beams.n_rows == 1);
    REQUIRE(c1.beams.n_cols == 1);
    REQUIRE(c1.beams(0, 0).real() == Approx(1.0).margin(1e-15));
    REQUIRE(c1.beams(0, 0).imag() == Approx(0.0).margin(1e-15));

    const Codebook c2 = dft_codebook(ArrayGeometry(2));
    const double r = 1.0 / std::sqrt(2.0);
    REQUIRE(c2.beams(0, 0).real() == Approx(r).margin(1e-15));
    REQUIRE(c2.beams(1, 0).real() == Approx(r).margin(1e-15));
    REQUIRE(c2.beams(0, 1).real() == Approx(r).margin(1e-15));
    REQUIRE(c2.beams(1, 1).real() == Approx(-r).margin(1e-12));
    REQUIRE(arma::norm(arma::imag(c2.beams), "inf") < 1e-12);
    REQUIRE(c2.kind == Codebook::Kind::dft);
}

TEST_CASE("32-beam DFT codebook is orthonormal", "[array]") {
    const Codebook book = dft_codebook(ArrayGeometry(32));
    REQUIRE(book.beams.n_rows == 32);
    REQUIRE(book.beams.n_cols == 32);
    const arma::cx_mat g = oracle::gram(book.beams);
    const arma::cx_mat eye(32, 32, arma::fill::eye);
    REQUIRE(arma::norm(arma::abs(g - eye), "inf") < 1e-10);
}

TEST_CASE("DFT codebooks of assorted sizes stay orthonormal", "[array]") {
    for (unsigned n : {3u, 4u, 8u, 17u, 64u}) {
        const Codebook book = dft_codebook(ArrayGeometry(int(n)));
        const arma::cx_mat g = oracle::gram(book.beams);
        arma::cx_mat eye(n, n, arma::fill::eye);
        REQUIRE(arma::norm(arma::abs(g - eye), "inf") < 1e-10);
        for (arma::uword c = 0; c < n; ++c) REQUIRE(arma::norm(book.beams.col(c)) == Approx(1.0).epsilon(1e-12));
    }
    REQUIRE_THROWS_AS(ArrayGeometry(0), std::invalid_argument);
}
