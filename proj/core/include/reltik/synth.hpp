// Copyright 2026 The reltik Authors
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

// Synthetic ground truths and noise models. Every sampler takes an explicit
// seed (or engine) and is deterministic for a given standard library.

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "reltik/manifold.hpp"
#include "reltik/model.hpp"

namespace reltik {

using Rng = std::mt19937_64;

struct VmfParams {
  std::vector<double> mu;
  double kappa = 0.0;
};

struct So3NoiseParams {
  double kappa1 = 30.0;  ///< axis concentration on S^2
  double kappa2 = 15.0;  ///< angle concentration on S^1
};

/// One von Mises-Fisher draw around unit `mu` (dimension 2..4).
///
/// d = 2 uses rejection against exp(kappa cos(theta)) (Best-Fisher for
/// kappa > 1, a uniform proposal otherwise); d >= 3 uses Wood's algorithm.
std::vector<double> sample_vmf_one(std::span<const double> mu, double kappa, Rng& rng);

/// `count` i.i.d. draws. Throws std::invalid_argument for kappa < 0 or a
/// non-unit mean.
SphereSignal sample_vmf(const VmfParams& p, std::uint64_t seed, std::size_t count);

/// y_n ~ vMF(x_n, kappa) for every vertex.
SphereSignal add_vmf_noise(const SphereSignal& x, double kappa, std::uint64_t seed);

/// Circle-valued path whose successive angles differ by at most
/// max_step_deg degrees.
SphereSignal smooth_circle_signal(std::size_t n, std::uint64_t seed, double max_step_deg = 5.0);

/// Unit vectors in R^d along a smooth path, same increment bound.
SphereSignal smooth_sphere_signal(std::size_t n, int d, std::uint64_t seed, double max_step_deg = 5.0);

/// Smooth unit-vector image (row-major), increment bound on both axes.
SphereSignal smooth_sphere_image(std::size_t height, std::size_t width, int d, std::uint64_t seed,
                                 double max_step_deg = 5.0);

/// Rotations interpolated between random keyframes; successive rotation
/// angles differ by at most max_step_deg degrees.
std::vector<RotationMatrix> smooth_so3_signal(std::size_t n, std::uint64_t seed, double max_step_deg = 5.0);

/// Smooth rotation image (row-major).
std::vector<RotationMatrix> smooth_so3_image(std::size_t height, std::size_t width, std::uint64_t seed,
                                             double max_step_deg = 5.0);

/// Decomposes r into axis and angle, draws the axis from vMF on S^2
/// (kappa1) and the angle from vMF on S^1 around the original angle
/// (kappa2), and recomposes. Near the identity the axis is drawn uniformly.
RotationMatrix perturb_so3(const RotationMatrix& r, const So3NoiseParams& p, Rng& rng);
RotationMatrix perturb_so3(const RotationMatrix& r, const So3NoiseParams& p, std::uint64_t seed);

/// Rotation angle of a^T b.
double rotation_angle_between(const RotationMatrix& a, const RotationMatrix& b);

// Color conversions.

using Rgb = std::array<double, 3>;

struct Hsv {
  std::array<double, 2> hue{1.0, 0.0};  ///< (cos theta, sin theta)
  double saturation = 0.0;
  double value = 0.0;
  bool hue_defined = true;
};

/// HSV with the hue angle measured from red (0) via green (2pi/3) and blue
/// (4pi/3). Gray pixels report hue_defined = false and hue angle 0.
Hsv rgb_to_hsv(const Rgb& rgb);
std::array<double, 2> rgb_to_hue(const Rgb& rgb, bool* defined = nullptr);
/// Inverse of rgb_to_hsv; `hue` is normalized first.
Rgb hue_to_rgb(std::span<const double> hue, double saturation, double value);

struct Chromaticity {
  std::array<double, 3> chroma{0.0, 0.0, 0.0};
  double brightness = 0.0;
  bool defined = true;
};

/// chroma = rgb / |rgb|, brightness = |rgb|. Black reports defined = false.
Chromaticity rgb_to_chromaticity_brightness(const Rgb& rgb);
Rgb chromaticity_brightness_to_rgb(std::span<const double> chroma, double brightness);

/// Smooth synthetic color image with values in [0, 1], row-major.
std::vector<Rgb> synthetic_color_image(std::size_t height, std::size_t width, std::uint64_t seed);

}  // namespace reltik
