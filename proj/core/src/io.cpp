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

#include "reltik/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "reltik/error.hpp"

namespace reltik::io {

namespace {

std::string at_line(std::size_t line, const std::string& msg) { return "line " + std::to_string(line) + ": " + msg; }

bool skip_line(const std::string& s) {
  const auto p = s.find_first_not_of(" \t\r");
  return p == std::string::npos || s[p] == '#';
}

std::vector<double> parse_numbers(const std::string& s, std::size_t line) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ',' || s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ',' && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + j, v);
    if (ec != std::errc() || ptr != s.data() + j)
      throw ParseError(at_line(line, "not a number: '" + s.substr(i, j - i) + "'"));
    if (!std::isfinite(v)) throw ParseError(at_line(line, "non-finite value"));
    out.push_back(v);
    i = j;
  }
  return out;
}

template <typename F>
void for_each_row(std::istream& in, F&& f) {
  std::string s;
  std::size_t line = 0;
  while (std::getline(in, s)) {
    ++line;
    if (skip_line(s)) continue;
    f(parse_numbers(s, line), line);
  }
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream f(path, mode);
  if (!f) throw ParseError("cannot open " + path);
  return f;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode);
  if (!f) throw ParseError("cannot write " + path);
  return f;
}

void write_row(std::ostream& out, std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << format_double(v[i]);
  }
  out << '\n';
}

// Next header token of a PPM file, skipping comments.
std::string ppm_token(std::istream& in) {
  std::string tok;
  int c = 0;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) throw ParseError("truncated PPM header");
  return tok;
}

std::size_t ppm_number(std::istream& in) {
  const std::string t = ppm_token(in);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) throw ParseError("bad PPM header field '" + t + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::vector<double>> read_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  for_each_row(in, [&](std::vector<double> r, std::size_t line) {
    if (!rows.empty() && r.size() != rows.front().size())
      throw ParseError(at_line(line, "expected " + std::to_string(rows.front().size()) + " columns, found " +
                                         std::to_string(r.size())));
    rows.push_back(std::move(r));
  });
  return rows;
}

SphereSignal read_signal_csv(std::istream& in) {
  const auto rows = read_rows(in);
  if (rows.empty()) throw ParseError("signal file has no rows");
  const auto d = rows.front().size();
  if (d < 2 || d > 4) throw ParseError("signal rows must have 2, 3 or 4 columns, found " + std::to_string(d));
  std::vector<double> v;
  v.reserve(rows.size() * d);
  for (const auto& r : rows) v.insert(v.end(), r.begin(), r.end());
  return SphereSignal(static_cast<int>(d), std::move(v));
}

void write_signal_csv(std::ostream& out, const SphereSignal& x) {
  for (std::size_t n = 0; n < x.size(); ++n) write_row(out, x[n]);
}

RotationFormat parse_rotation_format(const std::string& s) {
  if (s == "quat" || s == "quaternion") return RotationFormat::quaternion;
  if (s == "matrix") return RotationFormat::matrix;
  if (s == "axis-angle") return RotationFormat::axis_angle;
  throw std::invalid_argument("unknown rotation format '" + s + "'");
}

std::vector<RotationMatrix> read_rotations(std::istream& in, RotationFormat fmt) {
  const std::size_t cols = fmt == RotationFormat::quaternion ? 4 : fmt == RotationFormat::matrix ? 9 : 4;
  std::vector<RotationMatrix> out;
  for_each_row(in, [&](const std::vector<double>& r, std::size_t line) {
    if (r.size() != cols)
      throw ParseError(at_line(line, "expected " + std::to_string(cols) + " columns, found " + std::to_string(r.size())));
    try {
      switch (fmt) {
        case RotationFormat::quaternion: {
          Quaternion q = Quaternion::from_span(r);
          const double nq = quat_norm(q);
          if (std::abs(nq - 1.0) > 1e-6) throw ParseError("quaternion is not unit length");
          out.push_back(quat_to_rotation((1.0 / nq) * q));
          break;
        }
        case RotationFormat::matrix: {
          RotationMatrix m;
          std::copy(r.begin(), r.end(), m.m.begin());
          if (!m.is_rotation(1e-6)) throw ParseError("matrix is not a rotation");
          out.push_back(m);
          break;
        }
        case RotationFormat::axis_angle: {
          const double nv = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
          if (std::abs(nv - 1.0) > 1e-6) throw ParseError("axis is not unit length");
          out.push_back(axis_angle_to_rotation({r[0] / nv, r[1] / nv, r[2] / nv}, r[3]));
          break;
        }
      }
    } catch (const ParseError& e) {
      throw ParseError(at_line(line, e.what()));
    }
  });
  return out;
}

void write_rotations(std::ostream& out, std::span<const RotationMatrix> r, RotationFormat fmt) {
  for (const auto& m : r) {
    switch (fmt) {
      case RotationFormat::quaternion: {
        const auto q = rotation_to_quat(m).to_array();
        write_row(out, q);
        break;
      }
      case RotationFormat::matrix:
        write_row(out, m.m);
        break;
      case RotationFormat::axis_angle: {
        const AxisAngle aa = rotation_to_axis_angle(m);
        const double row[4] = {aa.axis[0], aa.axis[1], aa.axis[2], aa.angle};
        write_row(out, row);
        break;
      }
    }
  }
}

void write_quaternions(std::ostream& out, std::span<const Quaternion> q) {
  for (const auto& v : q) write_row(out, v.to_array());
}

EdgeList read_edge_list(std::istream& in) {
  EdgeList out;
  std::size_t with_lambda = 0;
  std::size_t rows = 0;
  for_each_row(in, [&](const std::vector<double>& r, std::size_t line) {
    if (r.size() != 2 && r.size() != 3)
      throw ParseError(at_line(line, "edge rows need 2 or 3 columns"));
    std::size_t id[2];
    for (int k = 0; k < 2; ++k) {
      if (r[k] < 1.0 || r[k] != std::floor(r[k]) || r[k] > 1e15)
        throw ParseError(at_line(line, "vertex ids must be positive integers"));
      id[k] = static_cast<std::size_t>(r[k]);
    }
    out.edges.push_back({id[0] - 1, id[1] - 1});
    out.max_vertex_id = std::max({out.max_vertex_id, id[0], id[1]});
    ++rows;
    if (r.size() == 3) {
      ++with_lambda;
      out.lambda.push_back(r[2]);
    }
  });
  if (rows == 0) throw ParseError("edge list is empty");
  if (with_lambda != 0 && with_lambda != rows) throw ParseError("either all or no edge rows may carry a weight");
  return out;
}

std::vector<double> read_vector(std::istream& in) {
  std::vector<double> out;
  std::size_t rows = 0, widest = 0;
  for_each_row(in, [&](const std::vector<double>& r, std::size_t line) {
    ++rows;
    widest = std::max(widest, r.size());
    if (rows > 1 && widest > 1) throw ParseError("line " + std::to_string(line) + ": expected one value per line");
    out.insert(out.end(), r.begin(), r.end());
  });
  if (out.empty()) throw ParseError("vector file is empty");
  return out;
}

Image read_ppm(std::istream& in) {
  if (ppm_token(in) != "P6") throw ParseError("only binary PPM (P6) is supported");
  Image img;
  img.width = ppm_number(in);
  img.height = ppm_number(in);
  const std::size_t maxval = ppm_number(in);
  if (img.width == 0 || img.height == 0) throw ParseError("PPM has zero size");
  if (maxval == 0 || maxval > 65535) throw ParseError("PPM maxval out of range");
  const std::size_t bytes = maxval < 256 ? 1 : 2;
  const std::size_t n = img.width * img.height;
  std::vector<unsigned char> raw(n * 3 * bytes);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw ParseError("truncated PPM pixel data");
  img.pixels.resize(n);
  for (std::size_t p = 0; p < n; ++p)
    for (int c = 0; c < 3; ++c) {
      const std::size_t k = (p * 3 + c) * bytes;
      const double v = bytes == 1 ? raw[k] : raw[k] * 256.0 + raw[k + 1];
      img.pixels[p][c] = v / static_cast<double>(maxval);
    }
  return img;
}

void write_ppm(std::ostream& out, const Image& img) {
  if (img.pixels.size() != img.width * img.height) throw std::invalid_argument("image size mismatch");
  out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  std::vector<unsigned char> raw(img.pixels.size() * 3);
  for (std::size_t p = 0; p < img.pixels.size(); ++p)
    for (int c = 0; c < 3; ++c) {
      const double v = std::clamp(img.pixels[p][c], 0.0, 1.0);
      raw[p * 3 + c] = static_cast<unsigned char>(std::lround(v * 255.0));
    }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

SphereSignal read_signal_csv(const std::string& path) {
  auto f = open_in(path);
  return read_signal_csv(f);
}

void write_signal_csv(const std::string& path, const SphereSignal& x) {
  auto f = open_out(path);
  write_signal_csv(f, x);
}

Image read_ppm(const std::string& path) {
  auto f = open_in(path, std::ios::in | std::ios::binary);
  return read_ppm(f);
}

void write_ppm(const std::string& path, const Image& img) {
  auto f = open_out(path, std::ios::out | std::ios::binary);
  write_ppm(f, img);
}

}  // namespace reltik::io
