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

// Text and image formats used by the command-line tool. Readers throw
// ParseError with a 1-based line number; writers emit doubles with 17
// significant digits so that a write/read cycle is exact.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reltik/graph.hpp"
#include "reltik/manifold.hpp"
#include "reltik/model.hpp"
#include "reltik/synth.hpp"

namespace reltik::io {

std::string format_double(double v);

/// Numeric rows separated by commas and/or whitespace. Blank lines and
/// lines starting with '#' are skipped. All rows must have equal length.
std::vector<std::vector<double>> read_rows(std::istream& in);

/// One vertex per row, d columns.
SphereSignal read_signal_csv(std::istream& in);
void write_signal_csv(std::ostream& out, const SphereSignal& x);

enum class RotationFormat { quaternion, matrix, axis_angle };

/// Parses "quat", "quaternion", "matrix" or "axis-angle".
RotationFormat parse_rotation_format(const std::string& s);

/// Quaternion rows are w,x,y,z; matrix rows are the 9 entries row-major;
/// axis-angle rows are v1,v2,v3,alpha.
std::vector<RotationMatrix> read_rotations(std::istream& in, RotationFormat fmt);
void write_rotations(std::ostream& out, std::span<const RotationMatrix> r, RotationFormat fmt);
void write_quaternions(std::ostream& out, std::span<const Quaternion> q);

struct EdgeList {
  std::vector<Edge> edges;          ///< 0-based
  std::vector<double> lambda;       ///< empty unless every row had a third column
  std::size_t max_vertex_id = 0;    ///< largest 1-based id seen
};

/// "n m [lambda]" per line, 1-based ids.
EdgeList read_edge_list(std::istream& in);

/// One value per line (or a single CSV row).
std::vector<double> read_vector(std::istream& in);

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Rgb> pixels;  ///< row-major, channels in [0, 1]
};

/// Binary PPM (P6), maxval up to 65535.
Image read_ppm(std::istream& in);
/// Writes 8-bit P6; channels are clamped to [0, 1] and rounded.
void write_ppm(std::ostream& out, const Image& img);

// File-path conveniences; open failures throw ParseError.
SphereSignal read_signal_csv(const std::string& path);
void write_signal_csv(const std::string& path, const SphereSignal& x);
Image read_ppm(const std::string& path);
void write_ppm(const std::string& path, const Image& img);

}  // namespace reltik::io
