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

#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "reltik/error.hpp"
#include "reltik/io.hpp"
#include "reltik/metrics.hpp"

namespace reltik::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Options shared by denoise and experiment. Unset fields fall back to the
// config file and then to the built-in defaults.
struct SolverFlags {
  std::optional<double> rho;
  std::optional<std::size_t> max_iter;
  std::optional<double> tol;
  std::optional<bool> retract;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> outdir;
  std::optional<std::string> config;
};

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  app->add_option("--rho", f.rho, "ADMM penalty parameter")->check(CLI::PositiveNumber);
  app->add_option("--max-iter", f.max_iter, "iteration limit")->check(CLI::PositiveNumber);
  app->add_option("--tol", f.tol, "stop when the change of (x, l) drops below this; 0 runs max-iter")
      ->check(CLI::NonNegativeNumber);
  app->add_flag("--retract,!--no-retract", f.retract, "normalize the result onto the sphere");
  app->add_option("--threads", f.threads, "worker threads for the block projections")->check(CLI::PositiveNumber);
  app->add_option("--seed", f.seed, "random seed");
  app->add_option("--outdir", f.outdir, "output directory");
  app->add_option("--config", f.config, "JSON file with default option values")->check(CLI::ExistingFile);
}

json load_config(const std::optional<std::string>& path) {
  if (!path) return json::object();
  std::ifstream in(*path);
  if (!in) throw ParseError("cannot open " + *path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(*path + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(*path + ": config must be a JSON object");
  return j;
}

// flag > config > current value.
template <typename T>
void merge(T& target, const std::optional<T>& flag, const json& cfg, const char* key) {
  if (flag) {
    target = *flag;
    return;
  }
  if (cfg.contains(key)) {
    try {
      target = cfg.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("config key '") + key + "': " + e.what());
    }
  }
}

void merge_solver(SolverConfig& s, const SolverFlags& f, const json& cfg) {
  merge(s.rho, f.rho, cfg, "rho");
  merge(s.max_iter, f.max_iter, cfg, "max_iter");
  merge(s.tol, f.tol, cfg, "tol");
  merge(s.retract, f.retract, cfg, "retract");
  merge(s.threads, f.threads, cfg, "threads");
  s.validate();
}

// Config values for --lambda / --w may be numbers or paths.
std::string scalar_or_path(const json& v) {
  if (v.is_number()) return io::format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  throw ParseError("expected a number or a path");
}

std::optional<double> as_number(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size()) return v;
  return std::nullopt;
}

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return io::read_vector(in);
}

std::vector<double> resolve_weights(const std::string& spec, std::size_t count, const char* what) {
  if (auto v = as_number(spec)) return std::vector<double>(count, *v);
  auto vals = read_vector_file(spec);
  if (vals.size() != count)
    throw ParseError(std::string(what) + " file " + spec + " has " + std::to_string(vals.size()) + " entries, expected " +
                     std::to_string(count));
  return vals;
}

struct GraphSpec {
  std::string kind;  // line, grid, edgelist
  std::size_t height = 0;
  std::size_t width = 0;
  std::string path;
};

GraphSpec parse_graph_spec(const std::string& s) {
  GraphSpec g;
  if (s == "line" || s == "grid") {
    g.kind = s;
  } else if (s.rfind("grid:", 0) == 0) {
    g.kind = "grid";
    const std::string dims = s.substr(5);
    const auto x = dims.find('x');
    const auto h = x == std::string::npos ? std::nullopt : as_number(dims.substr(0, x));
    const auto w = x == std::string::npos ? std::nullopt : as_number(dims.substr(x + 1));
    if (!h || !w || *h < 1 || *w < 1) throw ParseError("grid spec must look like grid:<height>x<width>");
    g.height = static_cast<std::size_t>(*h);
    g.width = static_cast<std::size_t>(*w);
  } else if (s.rfind("edgelist:", 0) == 0) {
    g.kind = "edgelist";
    g.path = s.substr(9);
  } else {
    throw ParseError("unknown graph spec '" + s + "' (expected line, grid, grid:HxW or edgelist:<path>)");
  }
  return g;
}

struct BuiltGraph {
  Graph graph;
  std::vector<double> lambda_from_file;
  std::string description;
};

BuiltGraph build_graph(const GraphSpec& spec, std::size_t n, std::size_t img_h, std::size_t img_w) {
  if (spec.kind == "line") return {line_graph(n), {}, "line " + std::to_string(n)};
  if (spec.kind == "grid") {
    std::size_t h = spec.height;
    std::size_t w = spec.width;
    if (h == 0) {
      h = img_h;
      w = img_w;
    }
    if (h == 0) throw ParseError("--graph grid needs grid:<height>x<width> for non-image input");
    if (h * w != n)
      throw ParseError("grid " + std::to_string(h) + "x" + std::to_string(w) + " does not match " + std::to_string(n) +
                       " vertices");
    return {grid_graph(h, w), {}, "grid " + std::to_string(h) + "x" + std::to_string(w)};
  }
  std::ifstream in(spec.path);
  if (!in) throw ParseError("cannot open " + spec.path);
  io::EdgeList el = io::read_edge_list(in);
  if (el.max_vertex_id > n)
    throw ParseError("edge list refers to vertex " + std::to_string(el.max_vertex_id) + " but the input has " +
                     std::to_string(n) + " vertices");
  return {Graph(n, std::move(el.edges)), std::move(el.lambda), "edgelist " + spec.path};
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream f(p);
  if (!f) throw ParseError("cannot write " + p.string());
  f << s;
}

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

void write_signal(const fs::path& p, const SphereSignal& x) { io::write_signal_csv(p.string(), x); }

void write_rotation_file(const fs::path& p, std::span<const RotationMatrix> r, io::RotationFormat fmt) {
  std::ofstream f(p);
  if (!f) throw ParseError("cannot write " + p.string());
  io::write_rotations(f, r, fmt);
}

std::vector<RotationMatrix> read_rotation_file(const std::string& path, io::RotationFormat fmt) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  auto r = io::read_rotations(in, fmt);
  if (r.empty()) throw ParseError(path + " has no rows");
  return r;
}

// Weights given inline are reported as numbers, file paths as strings.
json number_or_string(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (!s.empty() && end == s.c_str() + s.size()) return v;
  return s;
}

fs::path prepare_outdir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw ParseError("cannot create " + dir + ": " + ec.message());
  return p;
}

json trace_to_json(const Trace& t) {
  return {{"objective", t.objective}, {"mean_sphere_distance", t.mean_sphere_distance}, {"residual", t.residual}};
}

// ---- denoise ----

struct DenoiseFlags {
  std::string input;
  std::optional<std::string> graph;
  std::optional<int> d;
  std::optional<std::string> mode;
  std::optional<std::string> lambda;
  std::optional<std::string> w;
  std::optional<std::string> rot_format;
  SolverFlags solver;
};

int cmd_denoise(const DenoiseFlags& f, std::ostream& out) {
  const json cfg = load_config(f.solver.config);
  std::string graph = "line";
  std::string mode = "sphere";
  std::string lambda = "1";
  std::string w = "1";
  std::string rot_format = "quat";
  std::string outdir = ".";
  int d = 0;
  std::uint64_t seed = 1;
  merge(graph, f.graph, cfg, "graph");
  merge(mode, f.mode, cfg, "mode");
  merge(rot_format, f.rot_format, cfg, "rot_format");
  merge(outdir, f.solver.outdir, cfg, "outdir");
  merge(d, f.d, cfg, "d");
  merge(seed, f.solver.seed, cfg, "seed");
  bool lambda_given = f.lambda.has_value() || cfg.contains("lambda");
  if (f.lambda)
    lambda = *f.lambda;
  else if (cfg.contains("lambda"))
    lambda = scalar_or_path(cfg["lambda"]);
  if (f.w)
    w = *f.w;
  else if (cfg.contains("w"))
    w = scalar_or_path(cfg["w"]);
  SolverConfig solver;
  merge_solver(solver, f.solver, cfg);
  if (mode != "sphere" && mode != "hue" && mode != "chroma" && mode != "so3")
    throw ParseError("unknown mode '" + mode + "'");
  const GraphSpec gspec = parse_graph_spec(graph);
  const io::RotationFormat rfmt = io::parse_rotation_format(rot_format);

  // Load input and fix the vertex count.
  std::optional<SphereSignal> signal;
  std::optional<io::Image> image;
  std::vector<RotationMatrix> rotations;
  std::size_t n = 0;
  if (mode == "sphere") {
    signal = io::read_signal_csv(f.input);
    if (d != 0 && signal->dim() != d)
      throw ParseError("input has " + std::to_string(signal->dim()) + " columns but --d is " + std::to_string(d));
    n = signal->size();
  } else if (mode == "hue" || mode == "chroma") {
    image = io::read_ppm(f.input);
    n = image->pixels.size();
  } else {
    rotations = read_rotation_file(f.input, rfmt);
    n = rotations.size();
  }
  const bool image_graph = image.has_value() && !f.graph && !cfg.contains("graph");
  BuiltGraph bg = image_graph ? build_graph({"grid"}, n, image->height, image->width)
                              : build_graph(gspec, n, image ? image->height : 0, image ? image->width : 0);
  Weights wt;
  wt.vertex = resolve_weights(w, n, "w");
  wt.edge = (!lambda_given && !bg.lambda_from_file.empty()) ? bg.lambda_from_file
                                                            : resolve_weights(lambda, bg.graph.n_edges(), "lambda");
  wt.validate(bg.graph);

  const fs::path dir = prepare_outdir(outdir);
  Trace trace;
  auto obs = trace.observer();
  DenoiseResult result{SphereSignal(2, 0), {}};
  json extra = json::object();
  if (signal) {
    result = admm_solve(*signal, bg.graph, wt, solver, obs);
    write_signal(dir / "signal.csv", result.x);
  } else if (image) {
    ImageDenoiseOutput r = mode == "hue" ? denoise_hue(*image, bg.graph, wt, solver, obs)
                                         : denoise_chroma(*image, bg.graph, wt, solver, obs);
    io::write_ppm((dir / "image.ppm").string(), r.image);
    write_signal(dir / "signal.csv", r.result.x);
    extra["undefined_pixels"] = r.undefined_pixels;
    result = std::move(r.result);
  } else {
    So3DenoiseOutput r = denoise_rotations(rotations, bg.graph, wt, solver, obs);
    write_rotation_file(dir / "signal.csv", r.rotations, rfmt);
    extra["consistent"] = r.lift.consistent;
    extra["violating_edges"] = r.lift.violating_edges.size();
    result = std::move(r.result);
  }

  json rep = {{"command", "denoise"},
              {"config",
               {{"input", f.input},
                {"mode", mode},
                {"graph", bg.description},
                {"lambda", number_or_string(lambda)},
                {"w", number_or_string(w)},
                {"rot_format", rot_format},
                {"seed", seed},
                {"solver", solver_to_json(solver)}}},
              {"n_vertices", bg.graph.n_vertices()},
              {"n_edges", bg.graph.n_edges()},
              {"iterations", result.iterations},
              {"wall_time_seconds", result.wall_time_seconds},
              {"final_residual", result.final_residual},
              {"objective_K", result.objective_K},
              {"mean_sphere_distance", result.mean_sphere_distance},
              {"degenerate_vertices", result.degenerate_vertices.size()},
              {"trace", trace_to_json(trace)}};
  rep.update(extra);
  write_json(dir / "report.json", rep);
  write_trace_csv((dir / "trace.csv").string(), trace);
  out << "denoised " << n << " vertices in " << result.iterations << " iterations, mean sphere distance "
      << io::format_double(result.mean_sphere_distance) << "\n";
  return kOk;
}

// ---- experiment ----

struct ExperimentFlags {
  std::string name;
  std::optional<std::size_t> length;
  std::optional<std::size_t> height;
  std::optional<std::size_t> width;
  std::optional<double> kappa;
  std::optional<double> kappa1;
  std::optional<double> kappa2;
  std::optional<double> lambda;
  std::optional<double> w;
  std::optional<double> max_step_deg;
  SolverFlags solver;
};

int cmd_experiment(const ExperimentFlags& f, std::ostream& out) {
  ExperimentConfig c = default_experiment_config(f.name);
  const json cfg = load_config(f.solver.config);
  merge(c.seed, f.solver.seed, cfg, "seed");
  merge(c.length, f.length, cfg, "length");
  merge(c.height, f.height, cfg, "height");
  merge(c.width, f.width, cfg, "width");
  merge(c.kappa, f.kappa, cfg, "kappa");
  merge(c.kappa1, f.kappa1, cfg, "kappa1");
  merge(c.kappa2, f.kappa2, cfg, "kappa2");
  merge(c.lambda, f.lambda, cfg, "lambda");
  merge(c.w, f.w, cfg, "w");
  merge(c.max_step_deg, f.max_step_deg, cfg, "max_step_deg");
  merge_solver(c.solver, f.solver, cfg);
  std::string outdir = ".";
  merge(outdir, f.solver.outdir, cfg, "outdir");

  const ExperimentResult r = run_experiment(c);
  const fs::path dir = prepare_outdir(outdir);
  if (r.report.mode == "so3") {
    write_rotation_file(dir / "signal.csv", r.denoised_rotations, io::RotationFormat::quaternion);
    write_rotation_file(dir / "truth.csv", r.truth_rotations, io::RotationFormat::quaternion);
    write_rotation_file(dir / "noisy.csv", r.noisy_rotations, io::RotationFormat::quaternion);
  } else {
    write_signal(dir / "signal.csv", r.denoised);
    write_signal(dir / "truth.csv", r.truth);
    write_signal(dir / "noisy.csv", r.noisy);
  }
  if (r.truth_image) {
    io::write_ppm((dir / "truth.ppm").string(), *r.truth_image);
    io::write_ppm((dir / "noisy.ppm").string(), *r.noisy_image);
    io::write_ppm((dir / "denoised.ppm").string(), *r.denoised_image);
  }
  write_json(dir / "report.json", report_to_json(r.report));
  write_trace_csv((dir / "trace.csv").string(), r.report.trace);
  out << f.name << ": " << r.report.iterations << " iterations, mean sphere distance "
      << io::format_double(r.report.mean_sphere_distance) << ", RMSE " << io::format_double(r.report.rmse_noisy)
      << " -> " << io::format_double(r.report.rmse_denoised) << "\n";
  return kOk;
}

// ---- eval ----

struct EvalFlags {
  std::string result;
  std::string truth;
  std::optional<std::string> output;
};

int cmd_eval(const EvalFlags& f, std::ostream& out) {
  const SphereSignal x = io::read_signal_csv(f.result);
  const SphereSignal t = io::read_signal_csv(f.truth);
  if (x.dim() != t.dim() || x.size() != t.size())
    throw ParseError("shape mismatch: result is " + std::to_string(x.size()) + "x" + std::to_string(x.dim()) +
                     ", truth is " + std::to_string(t.size()) + "x" + std::to_string(t.dim()));
  json j = {{"n_vertices", x.size()},
            {"dim", x.dim()},
            {"rmse", rmse(x, t)},
            {"mean_sphere_distance", mean_sphere_distance(x)},
            {"angular_error", angular_errors(x, t)}};
  if (f.output)
    write_json(*f.output, j);
  else
    out << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

nlohmann::json solver_to_json(const SolverConfig& cfg) {
  return {{"rho", cfg.rho},
          {"max_iter", cfg.max_iter},
          {"tol", cfg.tol},
          {"retract", cfg.retract},
          {"threads", cfg.threads},
          // Per-edge projections write disjoint blocks, so thread count does not change results.
          {"bitwise_reproducible", true}};
}

nlohmann::json report_to_json(const ExperimentReport& rep) {
  const ExperimentConfig& c = rep.config;
  json config = {{"experiment", c.name},
                 {"seed", c.seed},
                 {"graph", rep.graph},
                 {"w", c.w},
                 {"lambda", c.lambda},
                 {"max_step_deg", c.max_step_deg},
                 {"solver", solver_to_json(c.solver)}};
  if (rep.mode == "so3") {
    config["kappa1"] = c.kappa1;
    config["kappa2"] = c.kappa2;
  } else {
    config["kappa"] = c.kappa;
  }
  json j = {{"command", "experiment"},
            {"config", config},
            {"mode", rep.mode},
            {"n_vertices", rep.n_vertices},
            {"n_edges", rep.n_edges},
            {"iterations", rep.iterations},
            {"wall_time_seconds", rep.wall_time_seconds},
            {"final_residual", rep.final_residual},
            {"objective_K", rep.objective_K},
            {"mean_sphere_distance", rep.mean_sphere_distance},
            {"rmse_noisy", rep.rmse_noisy},
            {"rmse_denoised", rep.rmse_denoised},
            {"degenerate_vertices", rep.degenerate_vertices},
            {"trace", trace_to_json(rep.trace)}};
  if (rep.mode == "hue" || rep.mode == "chroma") j["undefined_pixels"] = rep.undefined_pixels;
  if (rep.consistent) {
    j["consistent"] = *rep.consistent;
    j["violating_edges"] = rep.violating_edges;
    j["mean_rotation_error_deg_noisy"] = rep.mean_rotation_error_noisy.value_or(0.0);
    j["mean_rotation_error_deg_denoised"] = rep.mean_rotation_error_denoised.value_or(0.0);
  }
  return j;
}

void write_trace_csv(const std::string& path, const Trace& t) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write " + path);
  f << "iteration,objective,mean_sphere_distance,residual\n";
  for (std::size_t k = 0; k < t.objective.size(); ++k)
    f << k + 1 << ',' << io::format_double(t.objective[k]) << ',' << io::format_double(t.mean_sphere_distance[k])
      << ',' << io::format_double(t.residual[k]) << '\n';
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Denoising of sphere- and rotation-valued signals on graphs"};
  app.require_subcommand(1);

  DenoiseFlags df;
  auto* den = app.add_subcommand("denoise", "denoise a signal file");
  den->add_option("input", df.input, "signal CSV, PPM image or rotation rows")->required();
  den->add_option("--graph", df.graph, "line, grid, grid:HxW or edgelist:<path>");
  den->add_option("--d", df.d, "expected signal dimension")->check(CLI::IsMember({2, 3, 4}));
  den->add_option("--mode", df.mode, "sphere, hue, chroma or so3")
      ->check(CLI::IsMember({"sphere", "hue", "chroma", "so3"}));
  den->add_option("--lambda", df.lambda, "edge weight or file with one weight per edge");
  den->add_option("--w", df.w, "vertex weight or file with one weight per vertex");
  den->add_option("--rot-format", df.rot_format, "quat, matrix or axis-angle")
      ->check(CLI::IsMember({"quat", "quaternion", "matrix", "axis-angle"}));
  add_solver_flags(den, df.solver);

  ExperimentFlags ef;
  auto* exp = app.add_subcommand("experiment", "run a seeded synthetic experiment");
  exp->add_option("name", ef.name, "experiment name")->required()->check(CLI::IsMember(experiment_names()));
  exp->add_option("--length", ef.length, "line length")->check(CLI::PositiveNumber);
  exp->add_option("--height", ef.height, "image height")->check(CLI::PositiveNumber);
  exp->add_option("--width", ef.width, "image width")->check(CLI::PositiveNumber);
  exp->add_option("--kappa", ef.kappa, "vMF concentration of the noise")->check(CLI::NonNegativeNumber);
  exp->add_option("--kappa1", ef.kappa1, "axis concentration (so3)")->check(CLI::NonNegativeNumber);
  exp->add_option("--kappa2", ef.kappa2, "angle concentration (so3)")->check(CLI::NonNegativeNumber);
  exp->add_option("--lambda", ef.lambda, "edge weight")->check(CLI::PositiveNumber);
  exp->add_option("--w", ef.w, "vertex weight")->check(CLI::PositiveNumber);
  exp->add_option("--max-step-deg", ef.max_step_deg, "ground-truth increment bound")->check(CLI::PositiveNumber);
  add_solver_flags(exp, ef.solver);

  EvalFlags vf;
  auto* ev = app.add_subcommand("eval", "compare a result signal with the ground truth");
  ev->add_option("result", vf.result, "result CSV")->required();
  ev->add_option("truth", vf.truth, "ground truth CSV")->required();
  ev->add_option("--output", vf.output, "write the metrics JSON here instead of stdout");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    if (den->parsed()) return cmd_denoise(df, out);
    if (exp->parsed()) return cmd_experiment(ef, out);
    return cmd_eval(vf, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const InvalidGraphError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kDivergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace reltik::cli
