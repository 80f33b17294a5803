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

#include "reltik/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace reltik {

namespace {

constexpr double kPi = std::numbers::pi;

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

void normalize(std::span<double> v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  s = std::sqrt(s);
  for (double& a : v) a /= s;
}

// Uniform direction on S^{k-1}.
std::vector<double> uniform_direction(int k, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(k);
  double s = 0.0;
  do {
    s = 0.0;
    for (double& a : v) {
      a = normal(rng);
      s += a * a;
    }
  } while (s < 1e-20);
  normalize(v);
  return v;
}

// Signed angle offset theta with density proportional to exp(kappa cos theta).
double sample_circle_offset(double kappa, Rng& rng) {
  if (kappa <= 1.0) {
    // Uniform proposal; acceptance rate >= exp(-2).
    for (;;) {
      const double theta = kPi * (2.0 * uniform01(rng) - 1.0);
      if (std::log(uniform01(rng)) <= kappa * (std::cos(theta) - 1.0)) return theta;
    }
  }
  // Best and Fisher (1979).
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  double f = 1.0;
  for (;;) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double z = std::cos(kPi * u1);
    f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    if (c * (2.0 - c) - u2 > 0.0) break;
    if (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0) break;
  }
  const double theta = std::acos(std::clamp(f, -1.0, 1.0));
  return uniform01(rng) < 0.5 ? -theta : theta;
}

// Wood (1994): the component along the mean direction for d >= 3.
double sample_wood_w(int d, double kappa, Rng& rng) {
  const double dm1 = d - 1.0;
  const double b = dm1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + dm1 * dm1));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + dm1 * std::log(1.0 - x0 * x0);
  std::gamma_distribution<double> gamma(dm1 / 2.0, 1.0);
  for (;;) {
    const double g1 = gamma(rng);
    const double g2 = gamma(rng);
    if (g1 + g2 <= 0.0) continue;
    const double z = g1 / (g1 + g2);
    const double w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    const double u = uniform01(rng);
    if (u > 0.0 && kappa * w + dm1 * std::log(1.0 - x0 * w) - c >= std::log(u)) return w;
  }
}

void check_mean(std::span<const double> mu) {
  if (mu.size() < 2 || mu.size() > 4) throw std::invalid_argument("vMF dimension must be 2, 3 or 4");
  double s = 0.0;
  for (double a : mu) s += a * a;
  if (!(std::abs(std::sqrt(s) - 1.0) <= 1e-10)) throw std::invalid_argument("vMF mean direction must be a unit vector");
}

void check_kappa(double kappa) {
  if (!(kappa >= 0.0) || std::isinf(kappa)) throw std::invalid_argument("vMF concentration must be finite and >= 0");
}

// Angle between two unit vectors, accurate for small angles.
double unit_angle(std::span<const double> a, std::span<const double> b) {
  double dm = 0.0;
  double dp = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dm += (a[i] - b[i]) * (a[i] - b[i]);
    dp += (a[i] + b[i]) * (a[i] + b[i]);
  }
  return 2.0 * std::atan2(std::sqrt(dm), std::sqrt(dp));
}

struct Wave {
  std::vector<double> amp;  // d components
  double fu = 0.0;
  double fv = 0.0;
  double phase = 0.0;
};

// Normalized c + s * sum_k amp_k sin(2 pi (fu u + fv v) + phase_k) on an
// h x w grid of normalized coordinates. The scale s shrinks until every
// neighbouring pair differs by at most max_step radians.
SphereSignal trig_field(std::size_t h, std::size_t w, int d, std::uint64_t seed, double max_step) {
  Rng rng(seed);
  const auto c = uniform_direction(d, rng);
  std::vector<Wave> waves(3);
  for (auto& wave : waves) {
    wave.amp = uniform_direction(d, rng);
    for (double& a : wave.amp) a *= 0.3;
    wave.fu = 0.5 + 2.5 * uniform01(rng);
    wave.fv = 0.5 + 2.5 * uniform01(rng);
    wave.phase = 2.0 * kPi * uniform01(rng);
  }
  SphereSignal out(d, h * w);
  auto fill = [&](double s) {
    for (std::size_t r = 0; r < h; ++r) {
      const double v = h > 1 ? static_cast<double>(r) / static_cast<double>(h - 1) : 0.0;
      for (std::size_t q = 0; q < w; ++q) {
        const double u = w > 1 ? static_cast<double>(q) / static_cast<double>(w - 1) : 0.0;
        auto px = out[r * w + q];
        for (int i = 0; i < d; ++i) px[i] = c[i];
        for (const auto& wave : waves) {
          const double f = s * std::sin(2.0 * kPi * (wave.fu * u + wave.fv * v) + wave.phase);
          for (int i = 0; i < d; ++i) px[i] += f * wave.amp[i];
        }
        normalize(px);
      }
    }
  };
  auto max_increment = [&] {
    double m = 0.0;
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t q = 0; q < w; ++q) {
        if (q + 1 < w) m = std::max(m, unit_angle(out[r * w + q], out[r * w + q + 1]));
        if (r + 1 < h) m = std::max(m, unit_angle(out[r * w + q], out[(r + 1) * w + q]));
      }
    return m;
  };
  double s = 1.0;
  fill(s);
  for (int it = 0; it < 200 && max_increment() > max_step; ++it) {
    s *= 0.7;
    fill(s);
  }
  return out;
}

double deg(double d) { return d * kPi / 180.0; }

void check_step(double max_step_deg) {
  if (!(max_step_deg > 0.0)) throw std::invalid_argument("increment bound must be positive");
}

Quaternion slerp(const Quaternion& a, const Quaternion& b, double t) {
  const double c = std::clamp(quat_real_of_product_conj(a, b), -1.0, 1.0);
  const double omega = std::acos(c);
  if (omega < 1e-12) return a;
  const double s = std::sin(omega);
  Quaternion q = (std::sin((1.0 - t) * omega) / s) * a + (std::sin(t * omega) / s) * b;
  return (1.0 / quat_norm(q)) * q;
}

Quaternion random_unit_quaternion(Rng& rng) { return Quaternion::from_span(uniform_direction(4, rng)); }

}  // namespace

std::vector<double> sample_vmf_one(std::span<const double> mu, double kappa, Rng& rng) {
  check_mean(mu);
  check_kappa(kappa);
  const int d = static_cast<int>(mu.size());
  std::vector<double> out(d);
  if (d == 2) {
    const double t = sample_circle_offset(kappa, rng);
    const double ct = std::cos(t);
    const double st = std::sin(t);
    out[0] = ct * mu[0] - st * mu[1];
    out[1] = st * mu[0] + ct * mu[1];
    normalize(out);
    return out;
  }
  const double w = sample_wood_w(d, kappa, rng);
  const auto v = uniform_direction(d - 1, rng);
  const double sw = std::sqrt(std::max(0.0, 1.0 - w * w));
  out[0] = w;
  for (int i = 1; i < d; ++i) out[i] = sw * v[i - 1];
  // Householder reflection taking e1 to mu.
  std::vector<double> u(mu.begin(), mu.end());
  for (double& a : u) a = -a;
  u[0] += 1.0;
  double uu = 0.0;
  double uv = 0.0;
  for (int i = 0; i < d; ++i) {
    uu += u[i] * u[i];
    uv += u[i] * out[i];
  }
  if (uu > 1e-30)
    for (int i = 0; i < d; ++i) out[i] -= 2.0 * uv / uu * u[i];
  normalize(out);
  return out;
}

SphereSignal sample_vmf(const VmfParams& p, std::uint64_t seed, std::size_t count) {
  check_mean(p.mu);
  check_kappa(p.kappa);
  Rng rng(seed);
  const int d = static_cast<int>(p.mu.size());
  SphereSignal out(d, count);
  for (std::size_t n = 0; n < count; ++n) {
    const auto s = sample_vmf_one(p.mu, p.kappa, rng);
    std::copy(s.begin(), s.end(), out[n].begin());
  }
  return out;
}

SphereSignal add_vmf_noise(const SphereSignal& x, double kappa, std::uint64_t seed) {
  check_kappa(kappa);
  Rng rng(seed);
  SphereSignal out(x.dim(), x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    const auto s = sample_vmf_one(x[n], kappa, rng);
    std::copy(s.begin(), s.end(), out[n].begin());
  }
  return out;
}

SphereSignal smooth_circle_signal(std::size_t n, std::uint64_t seed, double max_step_deg) {
  check_step(max_step_deg);
  Rng rng(seed);
  const double phi0 = 2.0 * kPi * uniform01(rng);
  double a[3], f[3], ph[3];
  for (int k = 0; k < 3; ++k) {
    a[k] = 0.5 + 1.5 * uniform01(rng);
    f[k] = 0.5 + 2.5 * uniform01(rng);
    ph[k] = 2.0 * kPi * uniform01(rng);
  }
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += a[k] * std::sin(2.0 * kPi * f[k] * t + ph[k]);
    theta[i] = s;
  }
  double m = 0.0;
  for (std::size_t i = 1; i < n; ++i) m = std::max(m, std::abs(theta[i] - theta[i - 1]));
  // Increments are linear in the amplitude; keep a small margin.
  const double scale = m > 0.0 ? std::min(1.0, 0.95 * deg(max_step_deg) / m) : 1.0;
  SphereSignal out(2, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = phi0 + scale * theta[i];
    out[i][0] = std::cos(t);
    out[i][1] = std::sin(t);
  }
  return out;
}

SphereSignal smooth_sphere_signal(std::size_t n, int d, std::uint64_t seed, double max_step_deg) {
  check_step(max_step_deg);
  if (d < 2 || d > 4) throw std::invalid_argument("dimension must be 2, 3 or 4");
  if (d == 2) return smooth_circle_signal(n, seed, max_step_deg);
  return trig_field(1, n, d, seed, deg(max_step_deg));
}

SphereSignal smooth_sphere_image(std::size_t height, std::size_t width, int d, std::uint64_t seed,
                                 double max_step_deg) {
  check_step(max_step_deg);
  if (d < 2 || d > 4) throw std::invalid_argument("dimension must be 2, 3 or 4");
  return trig_field(height, width, d, seed, deg(max_step_deg));
}

std::vector<RotationMatrix> smooth_so3_signal(std::size_t n, std::uint64_t seed, double max_step_deg) {
  check_step(max_step_deg);
  Rng rng(seed);
  // The rotation angle between R(a) and R(b) is twice the quaternion angle.
  const double q_step = 0.95 * deg(max_step_deg) / 2.0;
  std::vector<RotationMatrix> out;
  out.reserve(n);
  Quaternion a = random_unit_quaternion(rng);
  out.push_back(quat_to_rotation(a));
  while (out.size() < n) {
    Quaternion b = random_unit_quaternion(rng);
    if (quat_real_of_product_conj(a, b) < 0.0) b = -b;
    const double omega = std::acos(std::clamp(quat_real_of_product_conj(a, b), -1.0, 1.0));
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(omega / q_step)));
    for (std::size_t s = 1; s <= steps && out.size() < n; ++s)
      out.push_back(quat_to_rotation(slerp(a, b, static_cast<double>(s) / static_cast<double>(steps))));
    a = b;
  }
  out.resize(n);
  return out;
}

std::vector<RotationMatrix> smooth_so3_image(std::size_t height, std::size_t width, std::uint64_t seed,
                                             double max_step_deg) {
  check_step(max_step_deg);
  const auto q = trig_field(height, width, 4, seed, deg(max_step_deg) / 2.0);
  std::vector<RotationMatrix> out(q.size());
  for (std::size_t n = 0; n < q.size(); ++n) out[n] = quat_to_rotation(Quaternion::from_span(q[n]));
  return out;
}

RotationMatrix perturb_so3(const RotationMatrix& r, const So3NoiseParams& p, Rng& rng) {
  check_kappa(p.kappa1);
  check_kappa(p.kappa2);
  const AxisAngle aa = rotation_to_axis_angle(r);
  std::vector<double> axis(aa.axis.begin(), aa.axis.end());
  if (aa.angle < 1e-8) axis = uniform_direction(3, rng);
  const auto w = sample_vmf_one(axis, p.kappa1, rng);
  const double ang[2] = {std::cos(aa.angle), std::sin(aa.angle)};
  const auto b = sample_vmf_one(ang, p.kappa2, rng);
  const double beta = std::atan2(b[1], b[0]);
  return axis_angle_to_rotation({w[0], w[1], w[2]}, beta);
}

RotationMatrix perturb_so3(const RotationMatrix& r, const So3NoiseParams& p, std::uint64_t seed) {
  Rng rng(seed);
  return perturb_so3(r, p, rng);
}

double rotation_angle_between(const RotationMatrix& a, const RotationMatrix& b) {
  double tr = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) tr += a(k, i) * b(k, i);
  return std::acos(std::clamp((tr - 1.0) / 2.0, -1.0, 1.0));
}

Hsv rgb_to_hsv(const Rgb& rgb) {
  const double r = rgb[0], g = rgb[1], b = rgb[2];
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  Hsv out;
  out.value = mx;
  out.saturation = mx > 0.0 ? delta / mx : 0.0;
  if (delta <= 0.0) {
    out.hue_defined = false;
    return out;
  }
  double h = 0.0;  // in sixths of a turn
  if (mx == r)
    h = (g - b) / delta;
  else if (mx == g)
    h = (b - r) / delta + 2.0;
  else
    h = (r - g) / delta + 4.0;
  const double theta = h * kPi / 3.0;
  out.hue = {std::cos(theta), std::sin(theta)};
  return out;
}

std::array<double, 2> rgb_to_hue(const Rgb& rgb, bool* defined) {
  const Hsv h = rgb_to_hsv(rgb);
  if (defined) *defined = h.hue_defined;
  return h.hue;
}

Rgb hue_to_rgb(std::span<const double> hue, double saturation, double value) {
  if (hue.size() != 2) throw std::invalid_argument("hue must be a 2-vector");
  double theta = std::atan2(hue[1], hue[0]);
  if (theta < 0.0) theta += 2.0 * kPi;
  double h = theta / (kPi / 3.0);
  if (h >= 6.0) h -= 6.0;
  const double c = value * saturation;
  const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  const double m = value - c;
  Rgb out{};
  switch (static_cast<int>(h)) {
    case 0: out = {c, x, 0.0}; break;
    case 1: out = {x, c, 0.0}; break;
    case 2: out = {0.0, c, x}; break;
    case 3: out = {0.0, x, c}; break;
    case 4: out = {x, 0.0, c}; break;
    default: out = {c, 0.0, x}; break;
  }
  for (double& v : out) v += m;
  return out;
}

Chromaticity rgb_to_chromaticity_brightness(const Rgb& rgb) {
  Chromaticity out;
  out.brightness = std::sqrt(rgb[0] * rgb[0] + rgb[1] * rgb[1] + rgb[2] * rgb[2]);
  if (out.brightness == 0.0) {
    out.defined = false;
    return out;
  }
  for (int i = 0; i < 3; ++i) out.chroma[i] = rgb[i] / out.brightness;
  return out;
}

Rgb chromaticity_brightness_to_rgb(std::span<const double> chroma, double brightness) {
  if (chroma.size() != 3) throw std::invalid_argument("chromaticity must be a 3-vector");
  return {chroma[0] * brightness, chroma[1] * brightness, chroma[2] * brightness};
}

std::vector<Rgb> synthetic_color_image(std::size_t height, std::size_t width, std::uint64_t seed) {
  const auto hue = smooth_sphere_image(height, width, 2, seed, 5.0);
  const auto sv = smooth_sphere_image(height, width, 2, seed ^ 0x9e3779b97f4a7c15ULL, 5.0);
  std::vector<Rgb> out(height * width);
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double s = 0.6 + 0.3 * sv[n][0];
    const double v = 0.65 + 0.3 * sv[n][1];
    out[n] = hue_to_rgb(hue[n], s, v);
  }
  return out;
}

}  // namespace reltik
