// Copyright 2026 The cvbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvbell/errors.hpp"
#include "cvbell/hilbert.hpp"
#include "oracles.hpp"

namespace cvbell {
namespace {

using testing::property_rng;
using testing::uniform;

TEST(QuadratureGrid, StandardGridIsSymmetricWithZeroInTheMiddle) {
  const auto g = QuadratureGrid::standard();
  ASSERT_EQ(g.size(), 1601u);
  EXPECT_TRUE(g.symmetric());
  EXPECT_EQ(g.points()[800], 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(g.points()[k], -g.points()[g.size() - 1 - k]);
  EXPECT_DOUBLE_EQ(g.points().front(), -8.0);
  EXPECT_DOUBLE_EQ(g.points().back(), 8.0);
}

TEST(QuadratureGrid, TrapezoidWeightsSumToTheSpan) {
  const auto g = QuadratureGrid(-3, 3, 0.25);
  double total = 0;
  for (double w : g.trapezoid_weights()) total += w;
  EXPECT_NEAR(total, 6.0, 1e-12);
  EXPECT_EQ(g.refined().size(), 2 * g.size() - 1);
}

TEST(QuadratureGrid, RejectsBadInput) {
  EXPECT_THROW(QuadratureGrid(1, -1, 0.1), std::invalid_argument);
  EXPECT_THROW(QuadratureGrid(-1, 1, 0.0), std::invalid_argument);
  EXPECT_FALSE(QuadratureGrid(-1, 2, 0.5).symmetric());
}

TEST(HermiteWavefunction, MatchesExplicitHermitePolynomials) {
  for (double x : {-7.5, -2.2, -0.3, 0.0, 0.9, 3.1, 6.0}) {
    const auto row = hermite_wavefunction_row(20, x);
    for (int n = 0; n <= 20; ++n) {
      EXPECT_NEAR(row[static_cast<std::size_t>(n)], testing::oscillator_wavefunction(n, x), 1e-12)
          << "n=" << n << " x=" << x;
    }
  }
}

TEST(HermiteWavefunction, OrthonormalOnAWideGrid) {
  // phi_30 turns around at |x| ~ 11; the grid reaches well beyond.
  const auto g = QuadratureGrid(-14, 14, 0.01);
  const auto w = g.trapezoid_weights();
  const int n_max = 30;
  std::vector<double> gram((n_max + 1) * (n_max + 1), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto row = hermite_wavefunction_row(n_max, g.points()[k]);
    for (int a = 0; a <= n_max; ++a)
      for (int b = 0; b <= n_max; ++b) gram[a * (n_max + 1) + b] += w[k] * row[a] * row[b];
  }
  for (int a = 0; a <= n_max; ++a)
    for (int b = 0; b <= n_max; ++b) EXPECT_NEAR(gram[a * (n_max + 1) + b], a == b ? 1.0 : 0.0, 1e-9);
}

TEST(HermiteWavefunction, StaysFiniteFarOut) {
  const auto row = hermite_wavefunction_row(200, 30.0);
  for (double v : row) EXPECT_TRUE(std::isfinite(v));
}

TEST(GaussianCdf, MatchesErfSeries) {
  EXPECT_NEAR(gaussian_cdf(1.0), testing::normal_cdf_series(1.0), 1e-14);
  EXPECT_NEAR(gaussian_cdf(1.0), 0.8413447460685429, 1e-15);
  auto rng = property_rng(1);
  for (int t = 0; t < 200; ++t) {
    const double x = uniform(rng, -3, 3);  // the series loses digits beyond
    EXPECT_NEAR(gaussian_cdf(x), testing::normal_cdf_series(x), 1e-13) << x;
  }
  EXPECT_EQ(gaussian_cdf(0.0), 0.5);
}

TEST(BesselI0, MatchesStandardLibrary) {
  for (double x : {0.0, 0.1, 1.0, 2.42, 5.0, 20.0, 50.0}) {
    EXPECT_NEAR(bessel_i0(x) / std::cyl_bessel_i(0.0, x), 1.0, 1e-13) << x;
  }
}

TEST(CoherentAmplitudes, MatchDirectFormula) {
  const complex amp(1.3, -0.7);
  const auto c = coherent_amplitudes(amp, 40);
  for (int n = 0; n <= 40; ++n) {
    const double mag = std::exp(-std::norm(amp) / 2 + n * std::log(std::abs(amp)) - 0.5 * std::lgamma(n + 1.0));
    const complex expected = std::polar(mag, n * std::arg(amp));
    EXPECT_NEAR(std::abs(c[static_cast<std::size_t>(n)] - expected), 0.0, 1e-14) << n;
  }
}

TEST(CoherentAmplitudes, LargeAmplitudeIsNormalized) {
  const auto c = coherent_amplitudes(complex(20.0, 0.0), 560);
  double mass = 0;
  for (const auto& v : c) mass += std::norm(v);
  EXPECT_NEAR(mass, 1.0, 1e-12);
}

TEST(CoherentAmplitudes, TailGuardThrows) {
  EXPECT_THROW(coherent_amplitudes(complex(5.0, 0.0), 20), TruncationError);
  EXPECT_NO_THROW(coherent_amplitudes(complex(5.0, 0.0), 65));
}

TEST(BeamSplitter, SinglePhotonConvention) {
  const double theta = 0.7;
  const auto b = beamsplitter_block(1, theta);
  const double s = 1 / std::numbers::sqrt2;
  // Column k is the input |k, 1-k>; row m the output |m, 1-m>.
  EXPECT_NEAR(std::abs(b(1, 1) - complex(s, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(b(0, 1) - complex(s, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(b(1, 0) - s * std::polar(1.0, -theta)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(b(0, 0) + s * std::polar(1.0, -theta)), 0.0, 1e-14);
}

TEST(BeamSplitter, BlocksMatchBinomialExpansion) {
  for (double theta : {0.0, 0.4, -2.1, std::numbers::pi}) {
    for (int total = 0; total <= 10; ++total) {
      const auto b = beamsplitter_block(total, theta);
      for (int m = 0; m <= total; ++m)
        for (int k = 0; k <= total; ++k)
          EXPECT_NEAR(std::abs(b(m, k) - testing::beamsplitter_amplitude(total, m, k, theta)), 0.0, 1e-11)
              << "N=" << total << " m=" << m << " k=" << k << " theta=" << theta;
    }
  }
}

TEST(BeamSplitter, BlocksAreUnitary) {
  for (double theta : {0.0, 1.0, -0.785, 3.0}) {
    const auto u = beamsplitter_unitary(40, theta);
    EXPECT_LE(u.unitarity_defect(), 1e-10) << theta;
  }
}

TEST(BeamSplitter, TruncatedBlocksAreSlicesOfFullBlocks) {
  const auto u = beamsplitter_unitary(6, 0.3);
  const int total = 9;
  ASSERT_FALSE(u.complete(total));
  EXPECT_EQ(u.first_min(total), 3);
  EXPECT_EQ(u.first_max(total), 6);
  const auto full = beamsplitter_block(total, 0.3);
  for (int m = 3; m <= 6; ++m)
    for (int k = 3; k <= 6; ++k) EXPECT_NEAR(std::abs(u.amplitude(total, m, k) - full(m, k)), 0.0, 1e-14);
  EXPECT_EQ(u.amplitude(total, 1, 4), complex(0.0, 0.0));
}

TEST(BeamSplitter, PhaseEntersAsSecondModePhaseShift) {
  // Property: U(theta) = U(0) diag(e^{-i theta (N - k)}) column by column.
  auto rng = property_rng(2);
  for (int t = 0; t < 20; ++t) {
    const double theta = uniform(rng, -std::numbers::pi, std::numbers::pi);
    const int total = 1 + static_cast<int>(rng() % 12);
    const auto b0 = beamsplitter_block(total, 0.0);
    const auto b = beamsplitter_block(total, theta);
    for (int m = 0; m <= total; ++m)
      for (int k = 0; k <= total; ++k)
        EXPECT_NEAR(std::abs(b(m, k) - b0(m, k) * std::polar(1.0, -theta * (total - k))), 0.0, 1e-10);
  }
}

}  // namespace
}  // namespace cvbell
