#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "focklab/errors.hpp"
#include "focklab/spectral.hpp"

using namespace focklab;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> circle(double radius, int count) {
  std::vector<Complex> out;
  for (int k = 0; k < count; ++k) {
    double theta = 2.0 * kPi * k / count;
    out.push_back(radius * Complex(std::cos(theta), std::sin(theta)));
  }
  return out;
}

Polynomial random_poly(std::mt19937& rng, int max_deg) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(0, max_deg);
  int deg = pick(rng);
  std::vector<Complex> c(deg + 1);
  for (auto& x : c) x = Complex(u(rng), u(rng));
  if (c.back() == Complex(0.0)) c.back() = 1.0;
  return Polynomial(std::move(c));
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("resolvent formula closed cases") {
  CHECK_THROWS_AS(ResolventSpec(1.0, 0.0), std::invalid_argument);

  // h = 1: (1/lambda) e^{a z^2 / lambda}
  ResolventSpec spec(Complex(1.0), Complex(3.0));
  FunctionSymbol one = FunctionSymbol::poly(Polynomial{1.0});
  for (Complex z : {Complex(1.0, 0.5), Complex(-2.0, 1.0)}) {
    Complex want = std::exp(z * z / 3.0) / 3.0;
    CHECK(std::abs(resolvent_apply(spec, one, z) - want) < 1e-12 * (1.0 + std::abs(want)));
  }

  // a = 0: plain division by lambda
  ResolventSpec trivial(Complex(0.0), Complex(2.0, 1.0));
  FunctionSymbol h = FunctionSymbol::poly(Polynomial{1.0, 0.0, 1.0});
  for (Complex z : {Complex(0.3, -0.8), Complex(1.5)})
    CHECK(std::abs(resolvent_apply(trivial, h, z) - h.eval(z) / Complex(2.0, 1.0)) < 1e-13);
}

TEST_CASE("resolvent solves the defining equation") {
  std::mt19937 rng(31);
  for (auto [a, lambda] : {std::pair<Complex, Complex>{Complex(1.0), Complex(3.0)},
                           std::pair<Complex, Complex>{Complex(1.0, 1.0), Complex(4.0)}}) {
    ResolventSpec spec(a, lambda);
    Polynomial dg = Polynomial{0.0, 0.0, a}.derivative();
    for (int trial = 0; trial < 5; ++trial) {
      Polynomial hp = random_poly(rng, 4);
      FunctionSymbol h = FunctionSymbol::poly(hp);
      double scale = 0.0;
      for (int j = 0; j < 20; ++j) scale = std::max(scale, std::abs(hp(circle(2.0, 20)[j])));
      for (int j = 0; j < 20; ++j) {
        Complex z = circle(2.0, 20)[j] * (0.4 + 0.03 * j);
        Complex fz = resolvent_apply(spec, h, z);
        Complex vf =
            line_integral([&](Complex w) { return resolvent_apply(spec, h, w) * dg(w); }, z);
        CHECK(std::abs(lambda * fz - vf - h.eval(z)) <= 1e-8 * (1.0 + scale));
      }
    }
  }
}

TEST_CASE("scan recovers the closed disk") {
  const std::vector<int> sizes = {30, 60, 120};
  for (int m : {0, 1}) {
    SpaceParams sp{m, 2.0, 1.0};
    for (double r : {0.5, 0.9}) {
      SpectrumScan scan = spectrum_scan(1.0, sp, circle(2.0 * r, 24), sizes);
      for (const auto& rec : scan.records)
        CHECK(rec.classification == ScanClass::Spectrum);
    }
    for (double r : {1.25, 2.0}) {
      SpectrumScan scan = spectrum_scan(1.0, sp, circle(2.0 * r, 24), sizes);
      for (const auto& rec : scan.records)
        CHECK(rec.classification == ScanClass::Resolvent);
    }
  }
}

TEST_CASE("scan of the compact part sees only the origin") {
  SpaceParams sp{0, 2.0, 1.0};
  SpectrumScan scan = spectrum_scan(0.0, sp, {Complex(0.0), Complex(0.5)}, {30, 60});
  CHECK(scan.records[0].classification == ScanClass::Spectrum);
  CHECK(scan.records[1].classification == ScanClass::Resolvent);
  // zero symbol: resolvent norms are exactly 1/|lambda|
  CHECK(scan.records[1].resolvent_norms[0].second == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("scan classification is rotation equivariant") {
  SpaceParams sp{0, 2.0, 1.0};
  std::vector<Complex> lambdas = {Complex(1.0), Complex(0.0, 1.2), Complex(3.0),
                                  Complex(1.4, 1.4)};
  SpectrumScan base = spectrum_scan(1.0, sp, lambdas, {30, 60});
  for (double theta : {kPi / 3.0, kPi / 2.0}) {
    Complex rot = Complex(std::cos(theta), std::sin(theta));
    std::vector<Complex> rotated;
    for (Complex l : lambdas) rotated.push_back(rot * l);
    SpectrumScan turned = spectrum_scan(rot * 1.0, sp, rotated, {30, 60});
    for (std::size_t k = 0; k < lambdas.size(); ++k)
      CHECK(turned.records[k].classification == base.records[k].classification);
  }
}

TEST_CASE("truncations are nilpotent so eigenvalues must not be trusted") {
  SpaceParams sp{0, 2.0, 1.0};
  OperatorKind op = OperatorKind::volterra(Polynomial{0.0, 0.0, 1.0});
  for (int n : {16, 64}) {
    OperatorMatrix mat = matrix(op, sp, n);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(mat.entries);
    for (int k = 0; k < n; ++k) CHECK(std::abs(eig.eigenvalues()(k)) < 1e-6);
  }
  // lambda = 1 lies strictly inside the disk yet every truncated eigenvalue is
  // 0: the scan must classify it Spectrum anyway (membership + resolvent norms).
  SpectrumScan scan = spectrum_scan(1.0, sp, {Complex(1.0)}, {30, 60, 120});
  CHECK(scan.records[0].classification == ScanClass::Spectrum);
  CHECK(scan.records[0].membership.status == MembershipStatus::NonMember);
}

TEST_CASE("scan csv layout") {
  SpaceParams sp{0, 2.0, 1.0};
  SpectrumScan scan = spectrum_scan(1.0, sp, {Complex(3.0)}, {30, 60});
  std::string csv = scan.csv();
  CHECK(csv.find("lambda_re,lambda_im,membership_status,growth_rate,resnorm_N30,resnorm_N60,"
                 "classification\n") == 0);
  CHECK(csv.find("Resolvent") != std::string::npos);
}

TEST_CASE("twisted derivative bound") {
  SpaceParams m0{0, 2.0, 1.0};
  PolarGrid grid(12.0);
  ResolventSpec spec(Complex(1.0), Complex(3.0));

  TwistedBoundReport flat = twisted_paley_check(FunctionSymbol::poly(Polynomial{1.0}), spec, m0, grid);
  CHECK_FALSE(flat.degenerate);
  CHECK(flat.rhs == doctest::Approx(1.0));
  CHECK(flat.lhs > 0.0);
  CHECK(std::isfinite(flat.ratio));

  TwistedBoundReport linear =
      twisted_paley_check(FunctionSymbol::poly(Polynomial{0.0, 1.0}), spec, m0, grid);
  CHECK(std::isfinite(linear.ratio));
  CHECK(linear.ratio > 0.0);

  TwistedBoundReport zero = twisted_paley_check(FunctionSymbol(), spec, m0, grid);
  CHECK(zero.degenerate);
  CHECK(zero.ratio == 0.0);

  CHECK_THROWS_AS(
      twisted_paley_check(FunctionSymbol::poly(Polynomial{1.0}), ResolventSpec(1.0, 1.5), m0, grid),
      std::invalid_argument);
}

TEST_CASE("twisted bound ratios stay bounded over the monomial family") {
  ResolventSpec spec(Complex(1.0), Complex(3.0));
  for (int m : {0, 1}) {
    SpaceParams sp{m, 2.0, 1.0};
    auto max_ratio = [&](int nodes, int angles) {
      PolarGrid grid(12.0, nodes, angles);
      double worst = 0.0;
      for (int n = 0; n <= 6; ++n) {
        TwistedBoundReport rep =
            twisted_paley_check(FunctionSymbol::poly(Polynomial::monomial(n)), spec, sp, grid);
        worst = std::max(worst, rep.ratio);
      }
      return worst;
    };
    double coarse = max_ratio(32, 64);
    double fine = max_ratio(48, 96);
    CHECK(coarse < 100.0);
    CHECK(std::abs(fine - coarse) <= 0.02 * coarse);
  }
}

TEST_CASE("companion and multiplier spectra") {
  CHECK(companion_spectrum(Complex(2.0), Complex(2.0)).is_spectrum);
  auto off = companion_spectrum(Complex(2.0), Complex(5.0));
  CHECK_FALSE(off.is_spectrum);
  CHECK(off.resolvent_scale == Complex(1.0 / 3.0));
  CHECK(companion_spectrum(Complex(0.0), Complex(0.0)).is_spectrum);

  // norm contract of the scalar resolvent: ||R h|| = ||h|| / |lambda - c|
  SpaceParams sp{0, 2.0, 1.0};
  PolarGrid grid(12.0);
  FunctionSymbol h = FunctionSymbol::poly(Polynomial{1.0, 0.0, 1.0});
  double base = space_norm(h, sp, grid);
  FunctionSymbol scaled = FunctionSymbol::poly(h.prefactor().scaled(off.resolvent_scale));
  CHECK(space_norm(scaled, sp, grid) == doctest::Approx(base / 3.0).epsilon(1e-12));

  CHECK(multiplier_spectrum(Complex(1.0, 1.0), Complex(1.0, 1.0)).is_spectrum);
  CHECK_FALSE(multiplier_spectrum(Complex(0.0), Complex(1.0)).is_spectrum);
  CHECK_FALSE(multiplier_spectrum(Complex(3.0), Complex(3.0 + 1e-12)).is_spectrum);
}

}  // TEST_SUITE
