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

#include <limits>

#include "reltik/error.hpp"
#include "reltik/model.hpp"
#include "reltik/smallsym.hpp"
#include "test_util.hpp"

using namespace reltik;
using namespace reltik::smallsym;
using testutil::to_eigen;

namespace {

Eigen::MatrixXd vectors_of(const EigenDecomposition& e) {
  Eigen::MatrixXd v(e.dim, e.dim);
  for (int i = 0; i < e.dim; ++i)
    for (int j = 0; j < e.dim; ++j) v(i, j) = e.vector_entry(i, j);
  return v;
}

Eigen::VectorXd values_of(const EigenDecomposition& e) {
  Eigen::VectorXd s(e.dim);
  for (int i = 0; i < e.dim; ++i) s(i) = e.values[i];
  return s;
}

// Matrix whose spectrum lies in [-1, inf): V diag(mu) V^T with mu >= -1.
Eigen::MatrixXd random_cone_point(testutil::Rng& rng, int n) {
  const Eigen::MatrixXd v = testutil::random_orthogonal(rng, n);
  Eigen::VectorXd mu(n);
  for (int i = 0; i < n; ++i) mu(i) = -1.0 + std::abs(testutil::normal(rng)) * 1.5;
  return v * mu.asDiagonal() * v.transpose();
}

}  // namespace

TEST_CASE("sym_eig on fixed inputs") {
  const auto e = sym_eig(SymMatrix::identity(4));
  for (int i = 0; i < 4; ++i) CHECK(e.values[i] == doctest::Approx(1.0).epsilon(1e-15));

  const double d[2] = {-3.0, 2.0};
  const auto f = sym_eig(SymMatrix::diagonal(d));
  CHECK(f.values[0] == doctest::Approx(-3.0));
  CHECK(f.values[1] == doctest::Approx(2.0));
  CHECK(std::abs(f.vector_entry(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(f.vector_entry(1, 1)) == doctest::Approx(1.0));
  CHECK(f.vector_entry(1, 0) == doctest::Approx(0.0));

  const double r[2] = {2.0, -3.0};
  const auto p = sym_eig(SymMatrix::diagonal(r));
  CHECK(p.values[0] == doctest::Approx(-3.0));
  CHECK(std::abs(p.vector_entry(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(p.vector_entry(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("sym_eig reconstructs and matches Eigen for every supported size") {
  testutil::Rng rng(1);
  for (int n = 1; n <= kMaxDim; ++n) {
    for (int t = 0; t < 40; ++t) {
      const SymMatrix a = testutil::random_sym(rng, n, testutil::uniform(rng, 0.01, 100.0));
      const auto e = sym_eig(a);
      const Eigen::MatrixXd v = vectors_of(e);
      const Eigen::VectorXd s = values_of(e);
      const double scale = std::max(1.0, to_eigen(a).cwiseAbs().maxCoeff());
      CHECK(testutil::max_abs_diff(v * s.asDiagonal() * v.transpose(), to_eigen(a)) < 1e-10 * scale);
      CHECK(testutil::max_abs_diff(v.transpose() * v, Eigen::MatrixXd::Identity(n, n)) < 1e-10);
      for (int i = 1; i < n; ++i) CHECK(s(i - 1) <= s(i));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(to_eigen(a));
      CHECK((oracle.eigenvalues() - s).cwiseAbs().maxCoeff() < 1e-10 * scale);
    }
  }
}

TEST_CASE("sym_eig handles repeated and clustered eigenvalues") {
  testutil::Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const int n = 6;
    const Eigen::MatrixXd q = testutil::random_orthogonal(rng, n);
    Eigen::VectorXd mu(n);
    mu << -1.0, -1.0, -1.0 + 1e-13, 0.5, 0.5, 2.0;
    const Eigen::MatrixXd a = q * mu.asDiagonal() * q.transpose();
    const auto e = sym_eig(testutil::from_eigen(a));
    const Eigen::MatrixXd v = vectors_of(e);
    CHECK(testutil::max_abs_diff(v * values_of(e).asDiagonal() * v.transpose(), a) < 1e-12);
    CHECK(testutil::max_abs_diff(v.transpose() * v, Eigen::MatrixXd::Identity(n, n)) < 1e-12);
  }
}

TEST_CASE("non-finite entries are rejected") {
  std::vector<double> a{1.0, 0.0, 0.0, std::numeric_limits<double>::quiet_NaN()};
  const SymMatrix m(2, a);
  CHECK_THROWS_AS(sym_eig(m), std::invalid_argument);
  CHECK_THROWS_AS(project_shifted_psd(m), std::invalid_argument);
  a[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(sym_eig(SymMatrix(2, a)), std::invalid_argument);
}

TEST_CASE("dimension limits") {
  CHECK_THROWS_AS(SymMatrix(0), std::invalid_argument);
  CHECK_THROWS_AS(SymMatrix(13), std::invalid_argument);
  CHECK_NOTHROW(SymMatrix(12));
  const std::vector<double> three(3, 0.0);
  CHECK_THROWS_AS(SymMatrix(2, three), std::invalid_argument);
}

TEST_CASE("construction symmetrizes") {
  const std::vector<double> a{1.0, 2.0, 4.0, 3.0};
  const SymMatrix m(2, a);
  CHECK(m(0, 1) == 3.0);
  CHECK(m(1, 0) == 3.0);
}

TEST_CASE("projection on fixed inputs") {
  const double in_cone[2] = {0.5, -0.5};
  const SymMatrix a = SymMatrix::diagonal(in_cone);
  const SymMatrix pa = project_shifted_psd(a);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(pa(i, j) == a(i, j));

  const double clip[2] = {-3.0, 2.0};
  const SymMatrix pb = project_shifted_psd(SymMatrix::diagonal(clip));
  CHECK(pb(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(pb(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(pb(0, 1) == doctest::Approx(0.0));

  std::vector<double> raw(a.data().begin(), a.data().end());
  CHECK_FALSE(project_shifted_psd_inplace(2, raw.data()));
  std::vector<double> rc{-3.0, 0.0, 0.0, 2.0};
  CHECK(project_shifted_psd_inplace(2, rc.data()));
}

TEST_CASE("projection matches the Eigen clip oracle") {
  testutil::Rng rng(3);
  for (int n = 1; n <= kMaxDim; ++n) {
    for (int t = 0; t < 60; ++t) {
      const SymMatrix a = testutil::random_sym(rng, n, testutil::uniform(rng, 0.1, 4.0));
      const SymMatrix p = project_shifted_psd(a);
      CHECK(testutil::max_abs_diff(to_eigen(p), testutil::eigen_clip_oracle(to_eigen(a))) < 1e-10);
      // Idempotence and membership.
      CHECK(testutil::max_abs_diff(to_eigen(project_shifted_psd(p)), to_eigen(p)) < 1e-10);
      CHECK(sym_eig(p).values[0] >= -1.0 - 1e-10);
    }
  }
}

TEST_CASE("projection is the nearest point of the shifted cone") {
  testutil::Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const SymMatrix a = testutil::random_sym(rng, 6, 2.0);
    const Eigen::MatrixXd ea = to_eigen(a);
    const Eigen::MatrixXd pa = to_eigen(project_shifted_psd(a));
    const double best = (pa - ea).norm();
    for (int c = 0; c < 20; ++c) {
      Eigen::MatrixXd b = random_cone_point(rng, 6);
      if (c % 2) {
        // Perturb the projection by a small PSD term; stays in the cone.
        const Eigen::VectorXd u = Eigen::VectorXd::Random(6) * 0.1;
        b = pa + u * u.transpose();
      }
      CHECK(best <= (b - ea).norm() + 1e-10);
    }
  }
}

TEST_CASE("is_psd and numerical_rank") {
  CHECK(is_psd(SymMatrix::identity(3), 0.0));
  const double d[2] = {1.0, -1e-3};
  CHECK_FALSE(is_psd(SymMatrix::diagonal(d), 1e-6));

  testutil::Rng rng(5);
  for (int dim = 2; dim <= 4; ++dim) {
    const auto xn = testutil::random_unit(rng, dim);
    const auto xm = testutil::random_unit(rng, dim);
    const SymMatrix q = build_constraint_block(xn, xm, dot(xn, xm));
    CHECK(is_psd(q, 1e-12));
    CHECK(numerical_rank(q, 1e-9) == dim);
  }
  CHECK(numerical_rank(SymMatrix(3), 1e-9) == 0);
}

TEST_CASE("schur complement") {
  SUBCASE("feasible block with equal unit vectors") {
    const double e1[2] = {1.0, 0.0};
    const SymMatrix s = schur_complement(build_constraint_block(e1, e1, 1.0), 2);
    REQUIRE(s.dim() == 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(s(i, j) == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("block diagonal") {
    testutil::Rng rng(6);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(5, 5);
    w.topLeftCorner(3, 3) = to_eigen(testutil::random_sym(rng, 3)) + 5.0 * Eigen::MatrixXd::Identity(3, 3);
    const Eigen::MatrixXd b = to_eigen(testutil::random_sym(rng, 2));
    w.bottomRightCorner(2, 2) = b;
    CHECK(testutil::max_abs_diff(to_eigen(schur_complement(testutil::from_eigen(w), 3)), b) < 1e-14);
  }
  SUBCASE("identity leading block gives B - C^T C") {
    testutil::Rng rng(7);
    for (int t = 0; t < 50; ++t) {
      Eigen::MatrixXd w = to_eigen(testutil::random_sym(rng, 6));
      w.topLeftCorner(4, 4).setIdentity();
      const Eigen::MatrixXd c = w.topRightCorner(4, 2);
      const Eigen::MatrixXd expect = w.bottomRightCorner(2, 2) - c.transpose() * c;
      CHECK(testutil::max_abs_diff(to_eigen(schur_complement(testutil::from_eigen(w), 4)), expect) < 1e-12);
    }
  }
  SUBCASE("singular leading block") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(4, 4);
    w(1, 1) = 0.0;
    CHECK_THROWS_AS(schur_complement(testutil::from_eigen(w), 2), SingularBlockError);
    CHECK_THROWS_AS(schur_complement(testutil::from_eigen(w), 0), std::invalid_argument);
    CHECK_THROWS_AS(schur_complement(testutil::from_eigen(w), 4), std::invalid_argument);
  }
}

TEST_CASE("W is PSD iff its Schur complement is, for positive definite A") {
  testutil::Rng rng(8);
  int psd_count = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 6;
    const int k = std::uniform_int_distribution<int>(1, 5)(rng);
    Eigen::MatrixXd m = Eigen::MatrixXd::Random(k, k);
    const Eigen::MatrixXd a = m * m.transpose() + 0.1 * Eigen::MatrixXd::Identity(k, k);
    const Eigen::MatrixXd c = Eigen::MatrixXd::Random(k, n - k);
    const Eigen::MatrixXd q = testutil::random_orthogonal(rng, n - k);
    Eigen::VectorXd s(n - k);
    for (int i = 0; i < n - k; ++i) {
      const double mag = testutil::uniform(rng, 0.05, 1.0);
      s(i) = testutil::uniform(rng, 0.0, 1.0) < 0.85 ? mag : -mag;
    }
    const Eigen::MatrixXd b = c.transpose() * a.inverse() * c + q * s.asDiagonal() * q.transpose();
    Eigen::MatrixXd w(n, n);
    w << a, c, c.transpose(), b;
    const SymMatrix ws = testutil::from_eigen(w);
    const bool whole = is_psd(ws, 1e-9);
    psd_count += whole;
    CHECK(whole == is_psd(schur_complement(ws, k), 1e-9));
  }
  CHECK(psd_count > 50);
  CHECK(psd_count < 950);
}
