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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "reltik/metrics.hpp"
#include "reltik/synth.hpp"
#include "test_util.hpp"

using namespace reltik;

namespace {

constexpr double kPi = std::numbers::pi;

double angle_between(std::span<const double> a, std::span<const double> b) {
  return std::acos(std::clamp(dot(a, b) / std::sqrt(dot(a, a) * dot(b, b)), -1.0, 1.0));
}

// E<x, mu> under vMF(mu, kappa) on S^(d-1).
double mean_resultant(int d, double kappa) {
  return std::cyl_bessel_i(d / 2.0, kappa) / std::cyl_bessel_i(d / 2.0 - 1.0, kappa);
}

}  // namespace

TEST_CASE("vMF input validation") {
  Rng rng(1);
  const std::vector<double> mu{1.0, 0.0, 0.0};
  CHECK_THROWS_AS(sample_vmf_one(mu, -1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_vmf_one(mu, INFINITY, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_vmf_one(std::vector<double>{1.0, 1.0}, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_vmf_one(std::vector<double>{1.0, 0, 0, 0, 0}, 1.0, rng), std::invalid_argument);
  CHECK_NOTHROW(sample_vmf_one(mu, 0.0, rng));
}

TEST_CASE("vMF draws are unit and deterministic") {
  for (int d = 2; d <= 4; ++d) {
    std::vector<double> mu(d, 0.0);
    mu[d - 1] = 1.0;
    const auto a = sample_vmf({mu, 5.0}, 77, 500);
    const auto b = sample_vmf({mu, 5.0}, 77, 500);
    const auto c = sample_vmf({mu, 5.0}, 78, 500);
    CHECK(a.is_unit(1e-12));
    CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
  }
}

TEST_CASE("vMF mean resultant length") {
  testutil::Rng pick(61);
  const std::size_t count = 100000;
  for (int d = 2; d <= 4; ++d) {
    for (double kappa : {0.5, 2.0, 10.0, 100.0}) {
      const auto mu = testutil::random_unit(pick, d);
      const auto s = sample_vmf({mu, kappa}, 1000 + d, count);
      double m = 0.0;
      for (std::size_t n = 0; n < count; ++n) m += dot(s[n], mu);
      m /= count;
      CAPTURE(d);
      CAPTURE(kappa);
      CHECK(m == doctest::Approx(mean_resultant(d, kappa)).scale(1.0).epsilon(0.01));
    }
  }
}

TEST_CASE("vMF at kappa 0 is uniform, large kappa concentrates") {
  const std::size_t count = 100000;
  for (int d = 2; d <= 4; ++d) {
    std::vector<double> mu(d, 0.0);
    mu[0] = 1.0;
    const auto s = sample_vmf({mu, 0.0}, 5, count);
    std::vector<double> mean(d, 0.0);
    for (std::size_t n = 0; n < count; ++n)
      for (int i = 0; i < d; ++i) mean[i] += s[n][i] / count;
    CHECK(std::sqrt(dot(mean, mean)) < 4.0 / std::sqrt(static_cast<double>(count)));

    const auto tight = sample_vmf({mu, 1e6}, 6, 1000);
    for (std::size_t n = 0; n < 1000; ++n) CHECK(angle_between(tight[n], mu) < 0.01);
  }
}

TEST_CASE("circle vMF matches the density histogram") {
  const std::size_t count = 100000;
  const int bins = 36;
  for (double kappa : {0.7, 4.0}) {
    const double mu_angle = 1.0;
    const std::vector<double> mu{std::cos(mu_angle), std::sin(mu_angle)};
    const auto s = sample_vmf({mu, kappa}, 11, count);
    std::vector<double> hist(bins, 0.0);
    for (std::size_t n = 0; n < count; ++n) {
      double a = std::atan2(s[n][1], s[n][0]);
      if (a < 0) a += 2 * kPi;
      hist[std::min(bins - 1, static_cast<int>(a / (2 * kPi) * bins))] += 1.0;
    }
    // Expected bin mass by the midpoint rule on a fine grid.
    std::vector<double> expect(bins, 0.0);
    const int fine = 2000;
    double total = 0.0;
    for (int b = 0; b < bins; ++b) {
      for (int k = 0; k < fine; ++k) {
        const double a = (b + (k + 0.5) / fine) * 2 * kPi / bins;
        expect[b] += std::exp(kappa * std::cos(a - mu_angle));
      }
      total += expect[b];
    }
    double chi2 = 0.0;
    for (int b = 0; b < bins; ++b) {
      const double e = expect[b] / total * count;
      chi2 += (hist[b] - e) * (hist[b] - e) / e;
    }
    CAPTURE(kappa);
    // 35 degrees of freedom; 70 is far in the tail.
    CHECK(chi2 < 70.0);
  }
}

TEST_CASE("noise helper") {
  const SphereSignal x = smooth_sphere_signal(50, 3, 1);
  const SphereSignal y = add_vmf_noise(x, 1e8, 2);
  CHECK(y.is_unit(1e-12));
  CHECK(rmse(y, x) < 1e-3);
  const SphereSignal y2 = add_vmf_noise(x, 1e8, 2);
  CHECK(std::equal(y.values().begin(), y.values().end(), y2.values().begin()));
}

TEST_CASE("smooth generators respect the increment bound") {
  const double bound = 5.0 * kPi / 180.0 + 1e-12;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto c = smooth_circle_signal(1000, seed);
    CHECK(c.dim() == 2);
    CHECK(c.is_unit(1e-12));
    double largest = 0.0;
    for (std::size_t n = 0; n + 1 < c.size(); ++n) largest = std::max(largest, angle_between(c[n], c[n + 1]));
    CHECK(largest <= bound);
    CHECK(largest > 0.2 * bound);

    for (int d = 2; d <= 4; ++d) {
      const auto s = smooth_sphere_signal(300, d, seed);
      CHECK(s.is_unit(1e-12));
      for (std::size_t n = 0; n + 1 < s.size(); ++n) CHECK(angle_between(s[n], s[n + 1]) <= bound);
      const std::size_t h = 20, w = 30;
      const auto img = smooth_sphere_image(h, w, d, seed);
      CHECK(img.size() == h * w);
      CHECK(img.is_unit(1e-12));
      for (std::size_t r = 0; r < h; ++r)
        for (std::size_t q = 0; q < w; ++q) {
          if (q + 1 < w) CHECK(angle_between(img[r * w + q], img[r * w + q + 1]) <= bound);
          if (r + 1 < h) CHECK(angle_between(img[r * w + q], img[(r + 1) * w + q]) <= bound);
        }
    }

    const auto rl = smooth_so3_signal(500, seed);
    for (const auto& r : rl) CHECK(r.is_rotation(1e-10));
    for (std::size_t n = 0; n + 1 < rl.size(); ++n) CHECK(rotation_angle_between(rl[n], rl[n + 1]) <= bound + 1e-9);
    const auto ri = smooth_so3_image(10, 12, seed);
    CHECK(ri.size() == 120);
    for (std::size_t n = 0; n + 1 < ri.size(); ++n)
      if ((n + 1) % 12 != 0) CHECK(rotation_angle_between(ri[n], ri[n + 1]) <= bound + 1e-9);
  }
  const auto a = smooth_circle_signal(100, 3);
  const auto b = smooth_circle_signal(100, 3);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST_CASE("rotation perturbation") {
  const RotationMatrix base = axis_angle_to_rotation({0, 0.6, 0.8}, 1.1);
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const RotationMatrix p = perturb_so3(base, {1e9, 1e9}, rng);
    CHECK(p.is_rotation(1e-10));
    CHECK(rotation_angle_between(p, base) < 1e-3);
  }
  const RotationMatrix near_id = perturb_so3(RotationMatrix::identity(), {1e9, 1e9}, rng);
  CHECK(near_id.is_rotation(1e-10));
  CHECK(rotation_angle_between(near_id, RotationMatrix::identity()) < 1e-3);

  const RotationMatrix a = perturb_so3(base, {30, 15}, 9);
  const RotationMatrix b = perturb_so3(base, {30, 15}, 9);
  CHECK(a.m == b.m);
  double mean_angle = 0.0;
  for (int t = 0; t < 2000; ++t) mean_angle += rotation_angle_between(perturb_so3(base, {30, 15}, rng), base);
  mean_angle /= 2000;
  CHECK(mean_angle > 0.05);
  CHECK(mean_angle < 0.8);
  CHECK(rotation_angle_between(base, base) == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));
}

TEST_CASE("metrics") {
  const SphereSignal x(2, std::vector<double>{1, 0, 0, 0.5, 0, 0});
  CHECK(mean_sphere_distance(x) == doctest::Approx((0.0 + 0.5 + 1.0) / 3.0));
  const SphereSignal t(2, std::vector<double>{1, 0, 1, 0, 0, 1});
  CHECK(rmse(x, t) == doctest::Approx(std::sqrt((0.0 + 1.25 + 1.0) / 3.0)));
  CHECK(rmse(t, t) == 0.0);
  const auto ang = angular_errors(x, t);
  REQUIRE(ang.size() == 3);
  CHECK(ang[0] == 0.0);
  CHECK(ang[1] == doctest::Approx(kPi / 2));
  CHECK(ang[2] == 0.0);
  CHECK_THROWS_AS(rmse(x, SphereSignal(2, 2)), std::invalid_argument);
}

TEST_CASE("HSV conversion") {
  auto hue_angle = [](const Hsv& h) { return std::atan2(h.hue[1], h.hue[0]); };
  const Hsv red = rgb_to_hsv({1, 0, 0});
  CHECK(red.hue_defined);
  CHECK(hue_angle(red) == doctest::Approx(0.0));
  CHECK(red.saturation == 1.0);
  CHECK(red.value == 1.0);
  CHECK(hue_angle(rgb_to_hsv({0, 1, 0})) == doctest::Approx(2 * kPi / 3));
  CHECK(hue_angle(rgb_to_hsv({0, 0, 1})) == doctest::Approx(-2 * kPi / 3));
  CHECK(hue_angle(rgb_to_hsv({1, 1, 0})) == doctest::Approx(kPi / 3));
  const Hsv half = rgb_to_hsv({0.5, 0.25, 0.25});
  CHECK(half.value == 0.5);
  CHECK(half.saturation == 0.5);
  const Hsv gray = rgb_to_hsv({0.3, 0.3, 0.3});
  CHECK_FALSE(gray.hue_defined);
  CHECK(gray.saturation == 0.0);
  bool defined = true;
  rgb_to_hue({0, 0, 0}, &defined);
  CHECK_FALSE(defined);

  testutil::Rng rng(62);
  for (int t = 0; t < 1000; ++t) {
    const Rgb c{testutil::uniform(rng, 0, 1), testutil::uniform(rng, 0, 1), testutil::uniform(rng, 0, 1)};
    const Hsv h = rgb_to_hsv(c);
    const Rgb back = hue_to_rgb(h.hue, h.saturation, h.value);
    for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(c[i]).scale(1.0).epsilon(1e-12));
    // Unnormalized hue input is normalized first.
    const std::array<double, 2> big{3 * h.hue[0], 3 * h.hue[1]};
    const Rgb back2 = hue_to_rgb(big, h.saturation, h.value);
    for (int i = 0; i < 3; ++i) CHECK(back2[i] == doctest::Approx(c[i]).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("chromaticity and brightness") {
  const auto cb = rgb_to_chromaticity_brightness({0, 0.3, 0.4});
  CHECK(cb.defined);
  CHECK(cb.brightness == doctest::Approx(0.5));
  CHECK(cb.chroma[1] == doctest::Approx(0.6));
  CHECK(cb.chroma[2] == doctest::Approx(0.8));
  CHECK_FALSE(rgb_to_chromaticity_brightness({0, 0, 0}).defined);
  testutil::Rng rng(63);
  for (int t = 0; t < 1000; ++t) {
    const Rgb c{testutil::uniform(rng, 0, 1), testutil::uniform(rng, 0, 1), testutil::uniform(rng, 0, 1)};
    const auto p = rgb_to_chromaticity_brightness(c);
    const Rgb back = chromaticity_brightness_to_rgb(p.chroma, p.brightness);
    for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(c[i]).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("synthetic color image") {
  const auto img = synthetic_color_image(40, 50, 4);
  REQUIRE(img.size() == 2000);
  for (const auto& c : img)
    for (double v : c) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  for (const auto& c : img) CHECK(rgb_to_hsv(c).hue_defined);
  const auto again = synthetic_color_image(40, 50, 4);
  CHECK(img == again);
}
