#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "focklab/errors.hpp"
#include "focklab/weight.hpp"

using namespace focklab;

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// independent 1D oracle: composite Simpson
double simpson(const std::function<double(double)>& f, double a, double b, int n = 4096) {
  double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int k = 1; k < n; ++k) acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_SUITE("weight") {

TEST_CASE("polar grid carries the area measure") {
  for (double R : {4.0, 7.5, 12.0}) {
    PolarGrid grid(R);
    CHECK(std::abs(grid.total_weight() / (kPi * R * R) - 1.0) < 1e-10);
  }
  PolarGrid off_center(3.0, 16, 32, Complex(2.0, -1.0));
  CHECK(std::abs(off_center.total_weight() / (kPi * 9.0) - 1.0) < 1e-10);
  CHECK_THROWS_AS(PolarGrid(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PolarGrid(4.0, 32, 7), std::invalid_argument);
  CHECK_THROWS_AS(PolarGrid(4.0, 32, 6), std::invalid_argument);
}

TEST_CASE("weight function values") {
  SpaceParams m0{0, 2.0, 1.0};
  CHECK(psi(m0, Complex(0.0, 2.0)) == doctest::Approx(2.0).epsilon(1e-14));
  SpaceParams m1{1, 2.0, 1.0};
  CHECK(psi(m1, Complex(1.0)) == doctest::Approx(0.5 - std::log(2.0)).epsilon(1e-14));
  SpaceParams m3{3, 2.0, 1.0};
  CHECK(psi(m3, Complex(0.0)) == doctest::Approx(0.0));
}

TEST_CASE("surrogate Laplacian and its pinch") {
  SpaceParams m0{0, 2.0, 1.0};
  CHECK(laplacian_psi(m0, Complex(3.0, -2.0)) == doctest::Approx(2.0));
  SpaceParams m1{1, 2.0, 1.0};
  CHECK(laplacian_psi(m1, Complex(0.0)) == doctest::Approx(0.0));
  SpaceParams m1b2{1, 2.0, 2.0};
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 1000; ++k) {
    double v = laplacian_psi(m1b2, Complex(u(rng), u(rng)));
    CHECK(v >= 1.0 - 1e-9);  // 2 (1 - m/beta) = 1
    CHECK(v <= 2.0 + 1e-9);
  }
}

TEST_CASE("normalization constant") {
  CHECK(normalization_constant(2.0, 0) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
  CHECK(normalization_constant(2.0, 1) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
  CHECK(normalization_constant(2.0, 2) == doctest::Approx(0.5 / kPi).epsilon(1e-13));
}

TEST_CASE("norms against Gaussian-integral oracles") {
  SpaceParams m0{0, 2.0, 1.0};
  PolarGrid grid(12.0);
  CHECK(space_norm(FunctionSymbol::poly(Polynomial{1.0}), m0, grid) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-11));
  CHECK(space_norm(FunctionSymbol(), m0, grid) == 0.0);
  for (int n : {1, 2, 5, 10, 20}) {
    double want = std::sqrt(kPi * factorial(n));
    double got = space_norm(FunctionSymbol::poly(Polynomial::monomial(n)), m0, grid);
    CHECK(std::abs(got - want) <= 1e-9 * want);
  }
}

TEST_CASE("norm reports an unconverged tail") {
  SpaceParams m0{0, 2.0, 1.0};
  PolarGrid tiny(2.0);
  FunctionSymbol slow = FunctionSymbol::exp_poly(Polynomial{1.0}, Polynomial{0.0, 0.0, 1.0 / 3.0});
  CHECK_THROWS_AS(space_norm(slow, m0, tiny), TailNotConverged);
}

TEST_CASE("monomial norms") {
  SpaceParams m0{0, 2.0, 1.0};
  CHECK(monomial_norm(0, m0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  CHECK(monomial_norm(3, m0) == doctest::Approx(std::sqrt(6.0 * kPi)).epsilon(1e-12));
  // m=1: 2 pi Int r (1+r)^2 e^{-r^2} dr = 2 pi + pi^{3/2}
  SpaceParams m1{1, 2.0, 1.0};
  CHECK(monomial_norm(0, m1) ==
        doctest::Approx(std::sqrt(2.0 * kPi + std::pow(kPi, 1.5))).epsilon(1e-12));
  BasisNorms norms(m0, 30);
  for (int n : {0, 7, 30})
    CHECK(norms.log_norm(n) == doctest::Approx(0.5 * std::log(kPi * factorial(n))).epsilon(1e-12));
  CHECK(norms.ratio(11, 10) == doctest::Approx(std::sqrt(11.0)).epsilon(1e-11));
}

TEST_CASE("membership classifier") {
  SpaceParams m0{0, 2.0, 1.0};
  auto gauss = [](Complex c) {
    return FunctionSymbol::exp_poly(Polynomial{1.0}, Polynomial{0.0, 0.0, c});
  };
  MembershipVerdict in = membership(gauss(1.0 / 3.0), m0);
  CHECK(in.status == MembershipStatus::Member);
  CHECK(in.value == doctest::Approx(in.trace.back().value));

  MembershipVerdict out = membership(gauss(1.0), m0);
  CHECK(out.status == MembershipStatus::NonMember);
  CHECK(out.growth_rate > 0.5);  // the exact rate is p (|a| - 1/2) = 1

  for (auto sp : {SpaceParams{0, 1.0, 1.0}, SpaceParams{1, 2.0, 1.0}, SpaceParams{2, 1.5, 1.0}})
    CHECK(membership(FunctionSymbol::poly(Polynomial{Complex(2.0, 1.0)}), sp).status ==
          MembershipStatus::Member);

  CHECK(membership(FunctionSymbol(), m0).status == MembershipStatus::Member);
  CHECK(membership(FunctionSymbol::poly(Polynomial::monomial(9)), m0).status ==
        MembershipStatus::Member);

  MembershipVerdict cubic =
      membership(FunctionSymbol::exp_poly(Polynomial{1.0}, Polynomial::monomial(3)), m0);
  CHECK(cubic.exponent_outside_quadratic);
  CHECK(cubic.status == MembershipStatus::NonMember);
}

TEST_CASE("membership catches directional blowup") {
  SpaceParams m0{0, 2.0, 1.0};
  for (double phase : {0.0, 0.7, 2.1}) {
    Complex a = 0.75 * Complex(std::cos(phase), std::sin(phase));
    MembershipVerdict v =
        membership(FunctionSymbol::exp_poly(Polynomial{1.0}, Polynomial{0.0, 0.0, a}), m0);
    CHECK(v.status == MembershipStatus::NonMember);
  }
}

TEST_CASE("kernel partial sums reproduce the Gaussian case") {
  SpaceParams m0{0, 2.0, 1.0};
  CHECK(kernel(m0, 1.0, 1.0, 60).real() == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
  for (Complex w : {Complex(0.5, 0.5), Complex(-2.0, 1.0), Complex(3.0, 0.0)})
    for (Complex z : {Complex(1.0, -1.0), Complex(0.0, 2.5), Complex(-3.0, 0.0)}) {
      Complex want = std::exp(std::conj(w) * z);
      CHECK(std::abs(kernel(m0, w, z, 80) - want) <= 1e-8 * std::abs(want) + 1e-12);
    }
  // only the constant term survives at the origin
  for (int m : {0, 1, 2}) {
    SpaceParams sp{m, 2.0, 1.0};
    double want = kPi / std::pow(monomial_norm(0, sp), 2.0);
    CHECK(kernel_norm_sq(sp, 0.0, 80) == doctest::Approx(want).epsilon(1e-11));
  }
  CHECK(kernel_norm_sq(m0, Complex(2.0, -1.0), 80) ==
        doctest::Approx(std::exp(5.0)).epsilon(1e-9));
}

TEST_CASE("kernel guards") {
  SpaceParams bad{0, 1.5, 1.0};
  CHECK_THROWS_AS(kernel(bad, 1.0, 1.0, 40), std::invalid_argument);
  SpaceParams m0{0, 2.0, 1.0};
  CHECK_THROWS_AS(kernel(m0, Complex(70.0, 0.0), Complex(70.0, 0.0), 40),
                  TruncationInsufficient);
}

TEST_CASE("kernel norm asymptotics stay within a band") {
  // the band includes the kernel lower bound, so beta > m applies
  for (int m : {0, 1, 2, 3}) {
    SpaceParams sp{m, 2.0, static_cast<double>(m + 1)};
    double lo = 1e300, hi = -1e300;
    for (double w = 0.0; w <= 6.0; w += 0.5) {
      double diff = std::log(kernel_norm_sq(sp, Complex(w, 0.0), 120)) - 2.0 * psi_radial(sp, w);
      lo = std::min(lo, diff);
      hi = std::max(hi, diff);
    }
    CHECK(hi - lo <= 3.0);
  }
}

TEST_CASE("near-diagonal kernel lower bound") {
  // |K(w, z)| against e^{psi(z) + psi(w)} on circles |z - w| = delta; report
  // the largest probed delta whose worst ratio stays above 1/4.
  for (int m : {0, 1}) {
    SpaceParams sp{m, 2.0, static_cast<double>(m + 1)};
    double best_delta = 0.0;
    for (double delta : {1.0, 0.5, 0.25}) {
      double worst = 1e300;
      for (Complex w : {Complex(1.0), Complex(0.0, 2.0), Complex(3.0, 0.0)})
        for (int j = 0; j < 16; ++j) {
          double theta = 2.0 * kPi * j / 16.0;
          Complex z = w + delta * Complex(std::cos(theta), std::sin(theta));
          double ratio = std::abs(kernel(sp, w, z, 120)) * std::exp(-psi(sp, z) - psi(sp, w));
          worst = std::min(worst, ratio);
        }
      if (worst >= 0.25) best_delta = std::max(best_delta, delta);
      CHECK(worst > 0.0);
    }
    INFO("m = ", m, ": largest delta with ratio >= 1/4 is ", best_delta);
    CHECK(best_delta >= 0.25);
  }
}

TEST_CASE("derivative-side norm") {
  SpaceParams m0{0, 2.0, 1.0};
  PolarGrid grid(12.0);
  CHECK(littlewood_paley(FunctionSymbol::poly(Polynomial{Complex(3.0, -4.0)}), m0, grid) ==
        doctest::Approx(5.0).epsilon(1e-12));

  // f = z: the weighted integrand collapses to e^{-r^2} / (1+r)^2
  double oracle = std::sqrt(
      2.0 * kPi * simpson([](double r) { return r * std::exp(-r * r) / ((1.0 + r) * (1.0 + r)); },
                          0.0, 12.0));
  CHECK(littlewood_paley(FunctionSymbol::poly(Polynomial{0.0, 1.0}), m0, grid) ==
        doctest::Approx(oracle).epsilon(1e-9));

  SpaceParams m2{2, 2.0, 1.0};
  FunctionSymbol z5 = FunctionSymbol::poly(Polynomial::monomial(5));
  double ratio = littlewood_paley(z5, m2, grid) / space_norm(z5, m2, grid);
  CHECK(ratio > 1.0 / 50.0);
  CHECK(ratio < 50.0);
}

TEST_CASE("norm equivalence holds across a function family") {
  std::vector<FunctionSymbol> family;
  for (int n = 0; n <= 10; ++n) family.push_back(FunctionSymbol::poly(Polynomial::monomial(n)));
  family.push_back(FunctionSymbol::exp_poly(Polynomial{1.0}, Polynomial{0.0, 0.7}));
  family.push_back(FunctionSymbol::exp_poly(Polynomial{1.0}, Polynomial{0.0, Complex(0.0, -1.0)}));
  family.push_back(FunctionSymbol::poly(Polynomial{1.0, 2.0, 1.0}));
  SpaceParams sp{1, 2.0, 1.0};
  PolarGrid grid(12.0);
  double lo = 1e300, hi = 0.0;
  for (const auto& f : family) {
    double r = littlewood_paley(f, sp, grid) / space_norm(f, sp, grid);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo <= 50.0);
}

TEST_CASE("weight is radially increasing beyond the critical radius") {
  for (int m : {0, 1, 3}) {
    SpaceParams sp{m, 2.0, 1.0};
    double r0 = regularity_report(sp).r0;
    for (double theta : {0.0, 1.0, 2.5}) {
      double prev = -1e300;
      for (double r = r0 + 0.05; r < 12.0; r += 0.25) {
        double v = psi(sp, r * Complex(std::cos(theta), std::sin(theta)));
        CHECK(v > prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("regularity diagnostics") {
  SpaceParams m0{0, 2.0, 1.0};
  RegularityReport r0 = regularity_report(m0);
  CHECK(r0.r0 == doctest::Approx(1.0));
  const RegularitySample* at100 = nullptr;
  const RegularitySample* at20 = nullptr;
  for (const auto& s : r0.samples) {
    if (s.r == 100.0) at100 = &s;
    if (s.r == 20.0) at20 = &s;
  }
  REQUIRE(at100 != nullptr);
  CHECK(std::abs(at100->curvature) < 1e-3);
  CHECK(at100->curvature == doctest::Approx(2.0 / (100.0 * 101.0 * 101.0)).epsilon(1e-12));
  REQUIRE(at20 != nullptr);
  CHECK(std::abs(at20->decay) < 1e-10);
  CHECK(r0.decay_vanishes);
  CHECK(r0.curvature_below_p);
  CHECK(r0.curvature_bounded_below);

  SpaceParams m2{2, 2.0, 1.0};
  CHECK(regularity_report(m2).r0 == doctest::Approx(2.0));
}

}  // TEST_SUITE
