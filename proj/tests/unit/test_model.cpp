// Copyright 2026 The epsense Authors
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

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "epsense/model.hpp"

using namespace epsense;

TEST_CASE("make_params validates and derives rates") {
  const SystemParams p = make_params(1.2325, 0.07, 5.0);
  CHECK(p.kappa() == doctest::Approx(4.93).epsilon(1e-15));
  CHECK(p.omega_ep() == doctest::Approx(1.2325).epsilon(1e-15));
  CHECK(p.gamma() == doctest::Approx(1.2675).epsilon(1e-15));

  const SystemParams hermitian = make_params(1.0, 0.0, 0.0);
  CHECK(hermitian.kappa() == 0.0);
  CHECK(hermitian.omega_ep() == 0.0);
  CHECK(hermitian.gamma() == 0.0);
}

TEST_CASE("make_params rejects negative and non-finite input") {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind_of([] { make_params(-1.0, 0.07, 5.0); }) == ErrorKind::NegativeRate);
  CHECK(kind_of([] { make_params(1.0, -0.1, 5.0); }) == ErrorKind::NegativeRate);
  CHECK(kind_of([] { make_params(1.0, 0.1, -5.0); }) == ErrorKind::NegativeRate);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(kind_of([&] { make_params(nan, 0.07, 5.0); }) == ErrorKind::NonFinite);
  CHECK(kind_of([&] { make_params(1.0, inf, 5.0); }) == ErrorKind::NonFinite);
  CHECK(kind_of([&] { make_params(1.0, 0.07, 5.0).with_omega(-2.0); }) == ErrorKind::NegativeRate);
}

TEST_CASE("balanced loss puts the EP at zero coupling") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double k = u(gen);
    CHECK(make_params(u(gen), k, k).omega_ep() == 0.0);
  }
}

TEST_CASE("canonicalize examples") {
  CHECK(canonicalize({0.0, 0.8}) == ComplexEnergy{0.0, -0.8});
  CHECK(canonicalize({1.5751, 0.0}) == ComplexEnergy{1.5751, 0.0});
  CHECK(canonicalize({-0.3, 0.1}) == ComplexEnergy{0.3, -0.1});
  CHECK(canonicalize({0.0, -0.8}) == ComplexEnergy{0.0, -0.8});
  CHECK_THROWS_AS(canonicalize({std::numeric_limits<double>::quiet_NaN(), 0.0}), Error);
}

TEST_CASE("canonicalize is idempotent and sign-covariant") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::bernoulli_distribution zero(0.2);
  for (int i = 0; i < 10000; ++i) {
    ComplexEnergy e{zero(gen) ? 0.0 : u(gen), zero(gen) ? 0.0 : u(gen)};
    const ComplexEnergy c = canonicalize(e);
    CHECK(c.re >= 0.0);
    if (c.re == 0.0) CHECK(c.im <= 0.0);
    CHECK(canonicalize(c) == c);
    CHECK(canonicalize(-e) == c);
    // c is +e or -e.
    const bool same = c.re == e.re && c.im == e.im;
    const bool flipped = c.re == -e.re && c.im == -e.im;
    CHECK((same || flipped));
  }
}

TEST_CASE("density helpers") {
  const Density3 dark = dark_projector();
  CHECK(dark.trace().real() == 1.0);
  const PureState2 psi{{0.6, 0.0}, {0.0, -0.8}};
  const Density3 rho = embed_projector(psi);
  CHECK(hermiticity_defect(rho) == 0.0);
  CHECK(rho.trace().real() == doctest::Approx(1.0));
  CHECK(min_eigenvalue(rho) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(rho(basis::kG1, basis::kE0) - std::complex<double>(0.0, -0.48)) < 1e-15);
}
