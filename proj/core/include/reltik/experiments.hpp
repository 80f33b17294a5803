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

// End-to-end pipelines (rotations, hue, chromaticity) and the seeded
// synthetic experiments built on them.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reltik/admm.hpp"
#include "reltik/graph.hpp"
#include "reltik/io.hpp"
#include "reltik/manifold.hpp"
#include "reltik/model.hpp"

namespace reltik {

/// Per-iteration values recorded by an observer.
struct Trace {
  std::vector<double> objective;
  std::vector<double> mean_sphere_distance;
  std::vector<double> residual;

  IterationObserver observer();
};

/// First iteration (1-based) after which the objective stays within eps of
/// its last recorded value; 0 for an empty trace.
std::size_t iterations_to_settle(std::span<const double> objective, double eps);

struct So3DenoiseOutput {
  std::vector<RotationMatrix> rotations;
  /// Sign-lifted input quaternions, i.e. the data handed to the solver.
  std::vector<Quaternion> lifted;
  LiftResult lift;
  DenoiseResult result;
};

/// Rotations -> quaternions -> sign lifting -> ADMM on S^3 -> rotations.
/// The returned rotations use the normalized iterate; vertices whose iterate
/// vanished keep their input rotation. `result.x` follows cfg.retract.
So3DenoiseOutput denoise_rotations(std::span<const RotationMatrix> r, const Graph& g, const Weights& wt,
                                   const SolverConfig& cfg, const IterationObserver& observer = {});

struct ImageDenoiseOutput {
  io::Image image;
  /// Sphere-valued channel handed to the solver.
  SphereSignal data;
  DenoiseResult result;
  /// Gray pixels (hue) or black pixels (chromaticity).
  std::size_t undefined_pixels = 0;
};

/// Denoises the hue on S^1 and keeps saturation and value.
ImageDenoiseOutput denoise_hue(const io::Image& img, const Graph& g, const Weights& wt, const SolverConfig& cfg,
                               const IterationObserver& observer = {});

/// Denoises the chromaticity on S^2 and keeps the brightness.
ImageDenoiseOutput denoise_chroma(const io::Image& img, const Graph& g, const Weights& wt, const SolverConfig& cfg,
                                  const IterationObserver& observer = {});

struct ExperimentConfig {
  std::string name;
  std::uint64_t seed = 1;
  /// Line experiments use `length`; image experiments use height x width.
  std::size_t length = 1000;
  std::size_t height = 90;
  std::size_t width = 90;
  double kappa = 10.0;
  double kappa1 = 30.0;
  double kappa2 = 15.0;
  double w = 1.0;
  double lambda = 1.0;
  double max_step_deg = 5.0;
  SolverConfig solver;
};

const std::vector<std::string>& experiment_names();

/// Built-in defaults; throws std::invalid_argument for an unknown name.
ExperimentConfig default_experiment_config(const std::string& name);

bool is_line_experiment(const std::string& name);

struct ExperimentReport {
  ExperimentConfig config;
  std::string mode;  ///< sphere, hue, chroma or so3
  std::string graph;
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  std::size_t iterations = 0;
  double wall_time_seconds = 0.0;
  double final_residual = 0.0;
  double objective_K = 0.0;
  /// Before retraction.
  double mean_sphere_distance = 0.0;
  double rmse_noisy = 0.0;
  double rmse_denoised = 0.0;
  std::size_t degenerate_vertices = 0;
  std::size_t undefined_pixels = 0;
  /// SO(3) runs only.
  std::optional<bool> consistent;
  std::size_t violating_edges = 0;
  /// Mean rotation angle to the ground truth, degrees.
  std::optional<double> mean_rotation_error_noisy;
  std::optional<double> mean_rotation_error_denoised;
  Trace trace;
};

struct ExperimentResult {
  ExperimentReport report;
  SphereSignal truth;
  SphereSignal noisy;
  SphereSignal denoised;
  std::vector<RotationMatrix> truth_rotations;
  std::vector<RotationMatrix> noisy_rotations;
  std::vector<RotationMatrix> denoised_rotations;
  std::optional<io::Image> truth_image;
  std::optional<io::Image> noisy_image;
  std::optional<io::Image> denoised_image;
};

/// Generates the ground truth, adds noise, solves and evaluates.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace reltik
