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

#include "reltik/experiments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "reltik/metrics.hpp"
#include "reltik/synth.hpp"

namespace reltik {

namespace {

constexpr std::uint64_t kNoiseSalt = 0x5851f42d4c957f2dULL;

void check_image(const io::Image& img, const Graph& g) {
  if (img.pixels.size() != img.width * img.height || img.pixels.size() != g.n_vertices())
    throw std::invalid_argument("image size does not match the graph");
}

// Unit copy of x_n, or `fallback` when x_n vanished.
template <std::size_t D>
std::array<double, D> unit_or(std::span<const double> x, std::span<const double> fallback) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  std::array<double, D> out{};
  for (std::size_t i = 0; i < D; ++i) out[i] = s < 1e-12 ? fallback[i] : x[i] / s;
  return out;
}

SphereSignal to_signal(std::span<const Quaternion> q) {
  SphereSignal s(4, q.size());
  for (std::size_t n = 0; n < q.size(); ++n) {
    const auto a = q[n].to_array();
    std::copy(a.begin(), a.end(), s[n].begin());
  }
  return s;
}

// Quaternion RMSE with the sign of each reference entry matched to x.
double rmse_up_to_sign(const SphereSignal& x, const SphereSignal& ref) {
  SphereSignal aligned = ref;
  for (std::size_t n = 0; n < x.size(); ++n)
    if (dot(x[n], ref[n]) < 0.0)
      for (double& v : aligned[n]) v = -v;
  return rmse(x, aligned);
}

double mean_rotation_error_deg(std::span<const RotationMatrix> a, std::span<const RotationMatrix> b) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s += rotation_angle_between(a[n], b[n]);
  return a.empty() ? 0.0 : s / static_cast<double>(a.size()) * 180.0 / std::numbers::pi;
}

void fill_common(ExperimentReport& rep, const DenoiseResult& r) {
  rep.iterations = r.iterations;
  rep.wall_time_seconds = r.wall_time_seconds;
  rep.final_residual = r.final_residual;
  rep.objective_K = r.objective_K;
  rep.mean_sphere_distance = r.mean_sphere_distance;
  rep.degenerate_vertices = r.degenerate_vertices.size();
}

SphereSignal hue_signal(const io::Image& img) {
  SphereSignal s(2, img.pixels.size());
  for (std::size_t n = 0; n < img.pixels.size(); ++n) {
    const auto h = rgb_to_hue(img.pixels[n]);
    s[n][0] = h[0];
    s[n][1] = h[1];
  }
  return s;
}

SphereSignal chroma_signal(const io::Image& img) {
  SphereSignal s(3, img.pixels.size());
  for (std::size_t n = 0; n < img.pixels.size(); ++n) {
    const auto c = rgb_to_chromaticity_brightness(img.pixels[n]).chroma;
    std::copy(c.begin(), c.end(), s[n].begin());
  }
  return s;
}

}  // namespace

IterationObserver Trace::observer() {
  return [this](const IterationInfo& info) {
    objective.push_back(info.objective);
    mean_sphere_distance.push_back(info.mean_sphere_distance);
    residual.push_back(info.residual);
  };
}

std::size_t iterations_to_settle(std::span<const double> objective, double eps) {
  if (objective.empty()) return 0;
  const double last = objective.back();
  std::size_t k = objective.size();
  while (k > 0 && std::abs(objective[k - 1] - last) <= eps) --k;
  return k + 1;
}

So3DenoiseOutput denoise_rotations(std::span<const RotationMatrix> r, const Graph& g, const Weights& wt,
                                   const SolverConfig& cfg, const IterationObserver& observer) {
  if (r.size() != g.n_vertices()) throw std::invalid_argument("rotation count does not match vertex count");
  std::vector<Quaternion> q(r.size());
  for (std::size_t n = 0; n < r.size(); ++n) q[n] = rotation_to_quat(r[n]);
  So3DenoiseOutput out{{}, {}, lift_signs(q, g), {SphereSignal(4, 0), {}}};
  out.lifted = out.lift.lifted;
  out.result = admm_solve(to_signal(out.lifted), g, wt, cfg, observer);
  out.rotations.resize(r.size());
  for (std::size_t n = 0; n < r.size(); ++n) {
    const auto fallback = out.lifted[n].to_array();
    const auto u = unit_or<4>(out.result.x[n], fallback);
    out.rotations[n] = quat_to_rotation(Quaternion::from_span(u));
  }
  return out;
}

ImageDenoiseOutput denoise_hue(const io::Image& img, const Graph& g, const Weights& wt, const SolverConfig& cfg,
                               const IterationObserver& observer) {
  check_image(img, g);
  ImageDenoiseOutput out{img, SphereSignal(2, img.pixels.size()), {SphereSignal(2, 0), {}}};
  std::vector<Hsv> hsv(img.pixels.size());
  for (std::size_t n = 0; n < hsv.size(); ++n) {
    hsv[n] = rgb_to_hsv(img.pixels[n]);
    if (!hsv[n].hue_defined) ++out.undefined_pixels;
    out.data[n][0] = hsv[n].hue[0];
    out.data[n][1] = hsv[n].hue[1];
  }
  out.result = admm_solve(out.data, g, wt, cfg, observer);
  for (std::size_t n = 0; n < hsv.size(); ++n) {
    const auto h = unit_or<2>(out.result.x[n], out.data[n]);
    out.image.pixels[n] = hue_to_rgb(h, hsv[n].saturation, hsv[n].value);
  }
  return out;
}

ImageDenoiseOutput denoise_chroma(const io::Image& img, const Graph& g, const Weights& wt, const SolverConfig& cfg,
                                  const IterationObserver& observer) {
  check_image(img, g);
  ImageDenoiseOutput out{img, SphereSignal(3, img.pixels.size()), {SphereSignal(3, 0), {}}};
  std::vector<double> brightness(img.pixels.size());
  const double gray = 1.0 / std::sqrt(3.0);
  for (std::size_t n = 0; n < brightness.size(); ++n) {
    auto c = rgb_to_chromaticity_brightness(img.pixels[n]);
    if (!c.defined) {
      ++out.undefined_pixels;
      c.chroma = {gray, gray, gray};
    }
    brightness[n] = c.brightness;
    std::copy(c.chroma.begin(), c.chroma.end(), out.data[n].begin());
  }
  out.result = admm_solve(out.data, g, wt, cfg, observer);
  for (std::size_t n = 0; n < brightness.size(); ++n) {
    const auto c = unit_or<3>(out.result.x[n], out.data[n]);
    out.image.pixels[n] = chromaticity_brightness_to_rgb(c, brightness[n]);
  }
  return out;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"circle-line", "circle-grid", "hue", "chroma", "so3-line", "so3-grid"};
  return names;
}

bool is_line_experiment(const std::string& name) { return name == "circle-line" || name == "so3-line"; }

ExperimentConfig default_experiment_config(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  c.solver.rho = 3.0;
  c.solver.retract = true;
  c.solver.tol = 1e-8;
  if (name == "circle-line") {
    c.kappa = 10.0;
    c.lambda = 25.0;
    c.solver.max_iter = 600;
  } else if (name == "circle-grid") {
    c.kappa = 20.0;
    c.lambda = 1.0;
    c.solver.max_iter = 6000;
    c.solver.tol = 0.0;
  } else if (name == "hue") {
    c.height = c.width = 100;
    c.kappa = 10.0;
    c.lambda = 1.0;
    c.solver.max_iter = 3000;
  } else if (name == "chroma") {
    c.height = c.width = 100;
    c.kappa = 100.0;
    c.lambda = 3.0;
    c.solver.max_iter = 3000;
  } else if (name == "so3-line") {
    c.kappa1 = 30.0;
    c.kappa2 = 15.0;
    c.lambda = 50.0;
    c.solver.max_iter = 600;
  } else if (name == "so3-grid") {
    c.kappa1 = 30.0;
    c.kappa2 = 5.0;
    c.lambda = 1.0;
    c.solver.max_iter = 2000;
  } else {
    throw std::invalid_argument("unknown experiment '" + name + "'");
  }
  return c;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  default_experiment_config(cfg.name);  // rejects unknown names
  cfg.solver.validate();
  const bool line = is_line_experiment(cfg.name);
  const Graph g = line ? line_graph(cfg.length) : grid_graph(cfg.height, cfg.width);
  const Weights wt = Weights::uniform(g, cfg.w, cfg.lambda);
  const std::uint64_t noise_seed = cfg.seed ^ kNoiseSalt;

  ExperimentResult out{{}, SphereSignal(2, 0), SphereSignal(2, 0), SphereSignal(2, 0)};
  ExperimentReport& rep = out.report;
  rep.config = cfg;
  rep.graph = line ? "line " + std::to_string(cfg.length)
                   : "grid " + std::to_string(cfg.height) + "x" + std::to_string(cfg.width);
  rep.n_vertices = g.n_vertices();
  rep.n_edges = g.n_edges();
  auto obs = rep.trace.observer();

  if (cfg.name == "circle-line" || cfg.name == "circle-grid") {
    rep.mode = "sphere";
    out.truth = line ? smooth_circle_signal(cfg.length, cfg.seed, cfg.max_step_deg)
                     : smooth_sphere_image(cfg.height, cfg.width, 2, cfg.seed, cfg.max_step_deg);
    out.noisy = add_vmf_noise(out.truth, cfg.kappa, noise_seed);
    const DenoiseResult r = admm_solve(out.noisy, g, wt, cfg.solver, obs);
    fill_common(rep, r);
    out.denoised = r.x;
  } else if (cfg.name == "hue" || cfg.name == "chroma") {
    const bool hue = cfg.name == "hue";
    rep.mode = cfg.name;
    io::Image truth{cfg.width, cfg.height, synthetic_color_image(cfg.height, cfg.width, cfg.seed)};
    io::Image noisy = truth;
    if (hue) {
      out.truth = hue_signal(truth);
      const SphereSignal nh = add_vmf_noise(out.truth, cfg.kappa, noise_seed);
      for (std::size_t n = 0; n < truth.pixels.size(); ++n) {
        const Hsv t = rgb_to_hsv(truth.pixels[n]);
        noisy.pixels[n] = hue_to_rgb(nh[n], t.saturation, t.value);
      }
    } else {
      out.truth = chroma_signal(truth);
      const SphereSignal nc = add_vmf_noise(out.truth, cfg.kappa, noise_seed);
      for (std::size_t n = 0; n < truth.pixels.size(); ++n) {
        const double b = rgb_to_chromaticity_brightness(truth.pixels[n]).brightness;
        noisy.pixels[n] = chromaticity_brightness_to_rgb(nc[n], b);
      }
    }
    ImageDenoiseOutput r = hue ? denoise_hue(noisy, g, wt, cfg.solver, obs) : denoise_chroma(noisy, g, wt, cfg.solver, obs);
    fill_common(rep, r.result);
    rep.undefined_pixels = r.undefined_pixels;
    out.noisy = r.data;
    out.denoised = r.result.x;
    out.truth_image = std::move(truth);
    out.noisy_image = std::move(noisy);
    out.denoised_image = std::move(r.image);
  } else {
    rep.mode = "so3";
    out.truth_rotations = line ? smooth_so3_signal(cfg.length, cfg.seed, cfg.max_step_deg)
                               : smooth_so3_image(cfg.height, cfg.width, cfg.seed, cfg.max_step_deg);
    Rng rng(noise_seed);
    const So3NoiseParams np{cfg.kappa1, cfg.kappa2};
    out.noisy_rotations.reserve(out.truth_rotations.size());
    for (const auto& r : out.truth_rotations) out.noisy_rotations.push_back(perturb_so3(r, np, rng));
    So3DenoiseOutput r = denoise_rotations(out.noisy_rotations, g, wt, cfg.solver, obs);
    fill_common(rep, r.result);
    rep.consistent = r.lift.consistent;
    rep.violating_edges = r.lift.violating_edges.size();
    std::vector<Quaternion> tq(out.truth_rotations.size());
    for (std::size_t n = 0; n < tq.size(); ++n) tq[n] = rotation_to_quat(out.truth_rotations[n]);
    out.truth = to_signal(tq);
    out.noisy = to_signal(r.lifted);
    out.denoised = r.result.x;
    out.denoised_rotations = std::move(r.rotations);
    rep.mean_rotation_error_noisy = mean_rotation_error_deg(out.noisy_rotations, out.truth_rotations);
    rep.mean_rotation_error_denoised = mean_rotation_error_deg(out.denoised_rotations, out.truth_rotations);
    rep.rmse_noisy = rmse_up_to_sign(out.noisy, out.truth);
    rep.rmse_denoised = rmse_up_to_sign(out.denoised, out.truth);
    return out;
  }
  rep.rmse_noisy = rmse(out.noisy, out.truth);
  rep.rmse_denoised = rmse(out.denoised, out.truth);
  return out;
}

}  // namespace reltik
