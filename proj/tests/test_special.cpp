#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mirror/error.hpp"
#include "mirror/special.hpp"

#include <cmath>
#include <random>

using namespace mirror;

namespace {

double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("log gamma values") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(kPi)) < 1e-14);
  cd z(3, 4);
  // Gamma(z) = (z-1)(z-2) Gamma(z-2)
  cd shifted = std::log((z - 1.0) * (z - 2.0)) + log_gamma(z - 2.0);
  CHECK(std::abs(std::exp(log_gamma(z)) - std::exp(shifted)) / std::abs(std::exp(shifted)) < 1e-13);
  // reference values from mpmath
  CHECK(std::abs(log_gamma(z) - cd(-1.7566267846037841, 4.7426644380346579)) < 1e-13);
  CHECK_THROWS_AS(log_gamma(0.0), MirrorError);
  CHECK_THROWS_AS(log_gamma(-3.0), MirrorError);
  // principal branch on the left half plane: mpmath loggamma(-2.5+0.5j)
  CHECK(std::abs(log_gamma(cd(-2.5, 0.5)) - cd(-0.93508562129827748, -8.8709628852474592)) < 1e-12);
}

TEST_CASE("reflection and shift identities on random points") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-20, 20);
  int checked = 0;
  double worst_reflection = 0, worst_shift = 0;
  while (checked < 1000) {
    cd z(u(rng), u(rng));
    if (std::abs(z) > 20) continue;
    if (std::abs(z.imag()) < 0.05 && std::abs(z.real() - std::round(z.real())) < 0.05) continue;
    cd lhs = gamma(z) * gamma(1.0 - z) * std::sin(kPi * z);
    worst_reflection = std::max(worst_reflection, rel(lhs, cd(kPi)));
    worst_shift = std::max(worst_shift, rel(gamma(z + 1.0), z * gamma(z)));
    ++checked;
  }
  CHECK(worst_reflection < 1e-12);
  CHECK(worst_shift < 1e-12);
}

TEST_CASE("polygamma") {
  CHECK(std::abs(digamma(1.0) + kEulerGamma) < 1e-14);
  CHECK(std::abs(polygamma(1, 1.0) - kPi * kPi / 6) < 1e-14);
  CHECK(std::abs(polygamma(2, 1.0) + 2 * 1.2020569031595942854) < 1e-13);
  CHECK(std::abs(digamma(0.5) - (-kEulerGamma - 2 * std::log(2.0))) < 1e-14);
  CHECK(std::abs(polygamma(3, 2.5) - 0.22390584881725205) < 1e-13);
}

TEST_CASE("gamma laurent expansions") {
  auto g0 = gamma_laurent(Q(0), 1);
  CHECK(g0.min_order == -1);
  CHECK(std::abs(g0.coefficient(-1) - 1.0) < 1e-15);
  CHECK(std::abs(g0.coefficient(0) + kEulerGamma) < 1e-14);
  auto gm1 = gamma_laurent(Q(-1), 1);
  CHECK(std::abs(gm1.coefficient(-1) + 1.0) < 1e-15);
  CHECK(std::abs(gm1.coefficient(0) - (kEulerGamma - 1)) < 1e-14);
  auto g1 = gamma_laurent(Q(1), 2);
  CHECK(std::abs(g1.coefficient(0) - 1.0) < 1e-15);
  CHECK(std::abs(g1.coefficient(1) + kEulerGamma) < 1e-14);
  auto gh = gamma_laurent(Q(-1, 2), 3);
  // Gamma(-1/2 + eps): value and derivative -2 sqrt(pi), Gamma'(-1/2) = Gamma(-1/2) psi(-1/2)
  double v = -2 * std::sqrt(kPi);
  CHECK(std::abs(gh.coefficient(0) - v) < 1e-13);
  CHECK(std::abs(gh.coefficient(1) - v * (2 - kEulerGamma - 2 * std::log(2.0))) < 1e-12);
}

TEST_CASE("gamma laurent residues") {
  double fact = 1;
  for (int m = 0; m <= 10; ++m) {
    if (m > 0) fact *= m;
    auto g = gamma_laurent(Q(-m), 3);
    double expected = ((m % 2) ? -1.0 : 1.0) / fact;
    CHECK(std::abs(g.coefficient(-1) - expected) < 1e-14);
  }
}

TEST_CASE("series arithmetic") {
  auto a = TruncatedSeries1::exp_linear(2.0, 6);
  auto b = TruncatedSeries1::exp_linear(-2.0, 6);
  auto p = a * b;
  CHECK(std::abs(p.coefficient(0) - 1.0) < 1e-15);
  for (int j = 1; j < 6; ++j) CHECK(std::abs(p.coefficient(j)) < 1e-14);
  auto inv = a.inverse();
  for (int j = 0; j < 6; ++j) CHECK(std::abs(inv.coefficient(j) - b.coefficient(j)) < 1e-14);
  // pole orders add
  auto g = gamma_laurent(Q(0), 3) * gamma_laurent(Q(-2), 3);
  CHECK(g.normalized().min_order == -2);
}

TEST_CASE("Stirling decay") {
  auto d1 = stirling_decay_bound({{1.0}, {1.0}}, {1.0, 1.0}, {1.0, 1.0});
  CHECK(std::abs(d1.rate({1.0}) - kPi) < 1e-14);
  auto d2 = stirling_decay_bound({{1.0}, {1.0}, {1.0}}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
  CHECK(std::abs(d2.rate({2.0}) - 3 * kPi) < 1e-14);
  CHECK(d1.rate({0.0}) == 0);
  CHECK(d1.bound({0.0}) >= 1.0);
  // measured decay slope of |Gamma(x+iy)| against the predicted pi/2 per unit
  auto single = stirling_decay_bound({{1.0}}, {0.7}, {0.7});
  for (double y = 10; y <= 100; y += 10) {
    double measured = -(log_gamma(cd(0.7, y + 1)).real() - log_gamma(cd(0.7, y)).real());
    double predicted = single.rate({1.0});
    CHECK(measured / predicted > 0.5);
    CHECK(measured / predicted < 2.0);
    CHECK(std::abs(gamma(cd(0.7, y))) <= single.bound({y}));
  }
}
