#include "focklab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "focklab/carleson.hpp"
#include "focklab/errors.hpp"
#include "focklab/io.hpp"
#include "focklab/operators.hpp"
#include "focklab/spectral.hpp"
#include "focklab/weight.hpp"

namespace focklab {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  double scale;
  std::ostringstream failures;
  int checked = 0;
  int failed = 0;

  explicit Checker(double s) : scale(s) {}

  // |value - target| <= tol * scale
  void near(double value, double target, double tol, const std::string& label) {
    ++checked;
    if (!(std::abs(value - target) <= tol * scale)) {
      ++failed;
      failures << "  " << label << ": got " << format_number(value) << ", want "
               << format_number(target) << " +- " << format_number(tol * scale) << "\n";
    }
  }

  void below(double value, double bound, const std::string& label) {
    ++checked;
    if (!(value <= bound * scale)) {
      ++failed;
      failures << "  " << label << ": " << format_number(value) << " exceeds "
               << format_number(bound * scale) << "\n";
    }
  }

  // plain predicates and lower bounds are not tolerance-scaled
  void require(bool ok, const std::string& label) {
    ++checked;
    if (!ok) {
      ++failed;
      failures << "  " << label << "\n";
    }
  }

  bool pass() const { return failed == 0; }
  std::string detail() const {
    if (failed == 0) return std::to_string(checked) + " checks";
    return std::to_string(failed) + "/" + std::to_string(checked) + " checks failed\n" +
           failures.str();
  }
};

FunctionSymbol quadratic_exponential(Complex coeff) {
  return FunctionSymbol::exp_poly(Polynomial{1.0}, Polynomial{0.0, 0.0, coeff});
}

// ---------------------------------------------------------------- criterion 1
CriterionResult criterion_spectrum_disk(double scale) {
  CriterionResult res;
  res.index = 1;
  res.title = "spectrum disk of the quadratic-symbol integral operator";
  Checker ck(scale);
  for (int m : {0, 1, 2}) {
    SpaceParams sp{m, 2.0, 1.0};
    for (double lam : {1.0, 1.5, 1.9}) {
      MembershipVerdict v = membership(quadratic_exponential(1.0 / lam), sp);
      ck.require(v.status == MembershipStatus::NonMember,
                 "m=" + std::to_string(m) + " |lambda|=" + format_number(lam) +
                     ": expected NonMember, got " + v.status_name());
    }
    for (double lam : {2.5, 3.0, 5.0}) {
      MembershipVerdict v = membership(quadratic_exponential(1.0 / lam), sp);
      ck.require(v.status == MembershipStatus::Member,
                 "m=" + std::to_string(m) + " |lambda|=" + format_number(lam) +
                     ": expected Member, got " + v.status_name());
    }
    OperatorKind op = OperatorKind::volterra(Polynomial{0.0, 0.0, 1.0});
    std::vector<double> at_one, at_three;
    for (int n : {50, 100, 200}) {
      OperatorMatrix mat = matrix(op, sp, n);
      at_one.push_back(resolvent_norm(mat, 1.0));
      at_three.push_back(resolvent_norm(mat, 3.0));
    }
    ck.require(at_one.back() >= 10.0 * at_one.front(),
               "m=" + std::to_string(m) + ": resolvent norm at lambda=1 grew only " +
                   format_number(at_one.back() / at_one.front()) + "x");
    double lo = *std::min_element(at_three.begin(), at_three.end());
    double hi = *std::max_element(at_three.begin(), at_three.end());
    ck.require(hi <= 1.5 * lo, "m=" + std::to_string(m) + ": resolvent norm at lambda=3 varies " +
                                   format_number(hi / lo) + "x");
  }
  res.pass = ck.pass();
  res.detail = ck.detail();
  return res;
}

// ---------------------------------------------------------------- criterion 2
CriterionResult criterion_schatten(double scale) {
  CriterionResult res;
  res.index = 2;
  res.title = "Schatten dichotomy of the degree-one Volterra operator";
  Checker ck(scale);
  OperatorKind op = OperatorKind::volterra(Polynomial{0.0, 1.0});

  SpaceParams m0{0, 2.0, 1.0};
  OperatorMatrix mat = matrix(op, m0, 400);
  std::vector<double> s = singular_values(mat, 399);
  double worst = 0.0;
  for (std::size_t n = 0; n < s.size(); ++n)
    worst = std::max(worst, std::abs(s[n] - 1.0 / std::sqrt(n + 1.0)));
  ck.below(worst, 1e-9, "m=0 singular values against 1/sqrt(n+1)");

  auto recs = schatten_diagnostic(op, m0, {2.0, 2.5}, 400);
  ck.require(!recs[0].convergent, "m=0 p=2 expected Divergent");
  ck.near(recs[0].tail_trend, 1.0, 0.10, "m=0 p=2 increment against the log-growth model");
  ck.require(recs[1].convergent, "m=0 p=2.5 expected Convergent");
  ck.below(recs[1].tail_trend, 0.01, "m=0 p=2.5 tail change on doubling");
  ck.near(recs[0].decay_exponent, -0.5, 0.05, "m=0 decay exponent");

  SpaceParams m1{1, 2.0, 1.0};
  auto recs1 = schatten_diagnostic(op, m1, {2.0, 2.5}, 400);
  ck.require(!recs1[0].convergent, "m=1 p=2 expected Divergent");
  ck.require(recs1[1].convergent, "m=1 p=2.5 expected Convergent");
  ck.near(recs1[0].decay_exponent, -0.5, 0.10, "m=1 decay exponent");

  res.pass = ck.pass();
  res.detail = ck.detail();
  return res;
}

// ---------------------------------------------------------------- criterion 3
BoundednessVerdict table_verdict(OperatorTag tag, int deg, double p, double q) {
  if (tag == OperatorTag::Volterra) {
    if (deg <= 0) return BoundednessVerdict::Compact;
    if (p <= q) {
      if (deg == 1) return BoundednessVerdict::Compact;
      if (deg == 2) return BoundednessVerdict::Bounded;
      return BoundednessVerdict::Unbounded;
    }
    if (q > 2.0 * p / (p + 2.0) && deg == 1) return BoundednessVerdict::Compact;
    return BoundednessVerdict::Unbounded;
  }
  if (deg < 0) return BoundednessVerdict::Compact;
  if (p <= q && deg == 0) return BoundednessVerdict::Bounded;
  return BoundednessVerdict::Unbounded;
}

CriterionResult criterion_boundedness_table(double scale) {
  CriterionResult res;
  res.index = 3;
  res.title = "boundedness and compactness table with numeric witnesses";
  Checker ck(scale);
  const std::vector<std::pair<std::string, Polynomial>> symbols = {
      {"1", Polynomial{1.0}},
      {"z", Polynomial{0.0, 1.0}},
      {"z^2", Polynomial{0.0, 0.0, 1.0}},
      {"z^3", Polynomial{0.0, 0.0, 0.0, 1.0}},
      {"z^2+z", Polynomial{0.0, 1.0, 1.0}}};
  const std::vector<std::pair<double, double>> exponents = {{2.0, 2.0}, {2.0, 3.0}, {2.0, 1.5}, {2.0, 0.8}};

  for (auto tag : {OperatorTag::Volterra, OperatorTag::Companion, OperatorTag::Multiplier})
    for (const auto& [gname, g] : symbols)
      for (const auto& [p, q] : exponents)
        for (int m : {0, 1}) {
          OperatorKind op{tag, g};
          std::string label = op.name() + " g=" + gname + " (p,q)=(" + format_number(p) + "," +
                              format_number(q) + ") m=" + std::to_string(m);
          BoundednessVerdict expected = table_verdict(tag, g.degree(), p, q);
          try {
            Classification cls = classify(op, p, q, m);
            ck.require(cls.verdict == expected,
                       label + ": verdict " + verdict_name(cls.verdict) + ", table says " +
                           verdict_name(expected));
            if (expected == BoundednessVerdict::Unbounded) {
              double at100 = 0.0;
              for (const auto& [n, v] : cls.witness.growth)
                if (n == 100) at100 = v;
              ck.require(at100 >= 5.0,
                         label + ": probe ratio at n=100 is " + format_number(at100) + " < 5");
            }
          } catch (const WitnessDisagreement& e) {
            ck.require(false, label + ": WitnessDisagreement: " + e.what());
          }
        }
  res.pass = ck.pass();
  res.detail = ck.detail();
  return res;
}

// ---------------------------------------------------------------- criterion 4
std::vector<FunctionSymbol> equivalence_family() {
  std::vector<FunctionSymbol> family;
  for (int n = 0; n <= 10; ++n) family.push_back(FunctionSymbol::poly(Polynomial::monomial(n)));
  for (Complex b : {Complex(1.0), Complex(-1.0), Complex(0.0, 1.0), Complex(0.5, -0.5), Complex(0.3)})
    family.push_back(FunctionSymbol::exp_poly(Polynomial{1.0}, Polynomial{0.0, b}));
  family.push_back(FunctionSymbol::poly(Polynomial{1.0, 0.0, 1.0}));
  family.push_back(FunctionSymbol::poly(Polynomial{0.0, -1.0, 1.0}));
  family.push_back(FunctionSymbol::poly(Polynomial{2.0, 0.0, Complex(0.5, 0.5)}));
  family.push_back(FunctionSymbol::poly(Polynomial{1.0, 1.0, 3.0}));
  return family;
}

CriterionResult criterion_paley_equivalence(double scale) {
  CriterionResult res;
  res.index = 4;
  res.title = "derivative-norm equivalence over the test family";
  Checker ck(scale);
  auto family = equivalence_family();
  for (int m : {0, 1, 2})
    for (double p : {1.0, 2.0}) {
      SpaceParams sp{m, p, 1.0};
      auto interval = [&](int nodes, int angles) {
        PolarGrid grid(12.0, nodes, angles);
        double lo = 1e300, hi = 0.0;
        for (const auto& f : family) {
          double ratio = littlewood_paley(f, sp, grid) / space_norm(f, sp, grid);
          lo = std::min(lo, ratio);
          hi = std::max(hi, ratio);
        }
        return std::pair<double, double>(lo, hi);
      };
      auto [lo, hi] = interval(32, 64);
      std::string label = "m=" + std::to_string(m) + " p=" + format_number(p);
      ck.below(hi / lo, 50.0, label + " ratio spread");
      auto [lo2, hi2] = interval(48, 96);
      ck.below(std::abs(hi2 / hi - 1.0), 0.02, label + " upper end under refinement");
      ck.below(std::abs(lo2 / lo - 1.0), 0.02, label + " lower end under refinement");
    }
  res.pass = ck.pass();
  res.detail = ck.detail();
  return res;
}

// ---------------------------------------------------------------- criterion 5
CriterionResult criterion_kernel_asymptotics(double scale) {
  CriterionResult res;
  res.index = 5;
  res.title = "kernel norm asymptotics against e^{2 psi}";
  Checker ck(scale);
  for (int m : {0, 1, 2, 3}) {
    // two-sided band including the lower bound, hence the beta > m regime
    SpaceParams sp{m, 2.0, static_cast<double>(m + 1)};
    double lo = 1e300, hi = -1e300;
    double worst_rel = 0.0;
    for (double w = 0.0; w <= 6.0 + 1e-9; w += 0.25) {
      double ks = kernel_norm_sq(sp, Complex(w, 0.0), 160);
      double diff = std::log(ks) - 2.0 * psi_radial(sp, w);
      lo = std::min(lo, diff);
      hi = std::max(hi, diff);
      if (m == 0) worst_rel = std::max(worst_rel, std::abs(ks - std::exp(w * w)) / std::exp(w * w));
    }
    ck.below(hi - lo, 3.0, "m=" + std::to_string(m) + " variation of log K - 2 psi");
    if (m == 0) ck.below(worst_rel, 1e-8, "m=0 exact Gaussian kernel norm");
  }
  res.pass = ck.pass();
  res.detail = ck.detail();
  return res;
}

// ---------------------------------------------------------------- criterion 6
CriterionResult criterion_resolvent_identity(double scale) {
  CriterionResult res;
  res.index = 6;
  res.title = "resolvent formula solves (lambda I - V) f = h";
  Checker ck(scale);
  const std::vector<std::pair<Complex, Complex>> cases = {
      {Complex(1.0), Complex(3.0)}, {Complex(1.0, 1.0), Complex(4.0)}, {Complex(2.0), Complex(5.0)}};
  const std::vector<FunctionSymbol> hs = {
      FunctionSymbol::poly(Polynomial{1.0}), FunctionSymbol::poly(Polynomial{0.0, 1.0}),
      FunctionSymbol::poly(Polynomial{1.0, 0.0, 1.0})};
  for (const auto& [a, lambda] : cases) {
    ResolventSpec spec(a, lambda);
    OperatorKind op = OperatorKind::volterra(Polynomial{0.0, 0.0, a});
    Polynomial dg = Polynomial{0.0, 0.0, a}.derivative();
    for (const auto& h : hs) {
      double worst = 0.0;
      for (int j = 0; j < 20; ++j) {
        double r = 0.5 + 1.5 * (j % 4) / 3.0;
        double theta = 2.0 * std::numbers::pi * j / 20.0;
        Complex z = r * Complex(std::cos(theta), std::sin(theta));
        Complex fz = resolvent_apply(spec, h, z);
        Complex vf = line_integral(
            [&](Complex w) { return resolvent_apply(spec, h, w) * dg(w); }, z);
        worst = std::max(worst, std::abs(lambda * fz - vf - h.eval(z)));
      }
      ck.below(worst, 1e-8,
               "a=" + format_complex(a) + " lambda=" + format_complex(lambda) + " h=" +
                   format_symbol(h));
    }
  }
  res.pass = ck.pass();
  res.detail = ck.detail();
  return res;
}

// ---------------------------------------------------------------- criterion 7
CriterionResult criterion_parts_identity(double scale) {
  CriterionResult res;
  res.index = 7;
  res.title = "integration-by-parts identity over random polynomial triples";
  Checker ck(scale);
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_poly = [&](int max_deg) {
    std::uniform_int_distribution<int> pick(0, max_deg);
    int deg = pick(rng);
    std::vector<Complex> c(deg + 1);
    for (auto& x : c) x = Complex(unit(rng), unit(rng));
    return Polynomial(std::move(c));
  };
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial f = random_poly(5);
    Polynomial g = random_poly(5);
    Complex z = 2.0 * Complex(unit(rng), unit(rng));
    FunctionSymbol fs = FunctionSymbol::poly(f);
    Complex lhs = apply(OperatorKind::volterra(g), fs, z) + apply(OperatorKind::companion(g), fs, z);
    Complex rhs = g(z) * f(z) - f(Complex(0.0)) * g(Complex(0.0));
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(g(z) * f(z))));
  }
  ck.below(worst, 1e-10, "largest scaled residual over 50 triples");
  res.pass = ck.pass();
  res.detail = ck.detail();
  return res;
}

// ---------------------------------------------------------------- criterion 8
CriterionResult criterion_weight_regularity(double scale, int m_override) {
  CriterionResult res;
  res.index = 8;
  res.title = "weight regularity limits and Laplacian pinch";
  Checker ck(scale);
  std::vector<int> ms = {0, 1, 2, 3};
  if (m_override >= 0) ms.push_back(m_override);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int m : ms) {
    SpaceParams sp{m, 2.0, 1.0};
    RegularityReport report = regularity_report(sp);
    ck.near(report.r0, 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * m)), 1e-12,
            "m=" + std::to_string(m) + " vanishing radius of psi'");
    double decay_at_20 = 0.0, curvature_at_100 = 0.0;
    for (const auto& s : report.samples) {
      if (s.r == 20.0) decay_at_20 = s.decay;
      if (s.r == 100.0) curvature_at_100 = s.curvature;
    }
    ck.below(std::abs(decay_at_20), 1e-10, "m=" + std::to_string(m) + " decay diagnostic at r=20");
    ck.below(std::abs(curvature_at_100), 1e-3,
             "m=" + std::to_string(m) + " curvature diagnostic at r=100");
    ck.require(report.decay_vanishes && report.curvature_below_p && report.curvature_bounded_below,
               "m=" + std::to_string(m) + " regularity flags");

    // the pinch needs beta > m; the suite switches to beta = m + 1
    SpaceParams pinch{m, 2.0, static_cast<double>(m + 1)};
    double lower = 2.0 * (1.0 - static_cast<double>(m) / pinch.beta);
    double worst_low = 0.0, worst_high = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      Complex z = 10.0 * Complex(unit(rng), unit(rng));
      double lap = laplacian_psi(pinch, z);
      worst_low = std::max(worst_low, lower - lap);
      worst_high = std::max(worst_high, lap - 2.0);
    }
    ck.below(worst_low, 1e-9, "m=" + std::to_string(m) + " Laplacian lower pinch");
    ck.below(worst_high, 1e-9, "m=" + std::to_string(m) + " Laplacian upper pinch");
  }
  res.pass = ck.pass();
  res.detail = ck.detail();
  return res;
}

// ---------------------------------------------------------------- criterion 9
CriterionResult criterion_differentiation(double scale) {
  CriterionResult res;
  res.index = 9;
  res.title = "differentiation stays unbounded";
  Checker ck(scale);
  OperatorKind d = OperatorKind::differentiation();
  auto probe0 = growth_probe(d, SpaceParams{0, 2.0, 1.0}, 100);
  ck.near(probe0.back().second, 10.0, 1e-9, "m=0 probe ratio at n=100");
  for (int m : {1, 2}) {
    auto probe = growth_probe(d, SpaceParams{m, 2.0, 1.0}, 100);
    ck.require(probe.back().second >= 5.0, "m=" + std::to_string(m) + " probe ratio at n=100 is " +
                                               format_number(probe.back().second));
  }
  res.pass = ck.pass();
  res.detail = ck.detail();
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options, std::ostream* log) {
  std::vector<CriterionResult> results;
  const double scale = options.tolerance_scale;
  auto wanted = [&](int index) {
    return options.criteria.empty() ||
           std::find(options.criteria.begin(), options.criteria.end(), index) !=
               options.criteria.end();
  };
  auto run = [&](int index, auto&& fn, double budget_seconds) {
    if (!wanted(index)) return;
    auto t0 = Clock::now();
    CriterionResult r = fn();
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (budget_seconds > 0 && r.seconds > budget_seconds) {
      r.pass = false;
      r.detail += (r.detail.empty() ? "" : "\n") + std::string("  runtime ") +
                  format_number(r.seconds) + "s over the " + format_number(budget_seconds) +
                  "s budget";
    }
    if (log)
      *log << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.index << ": " << r.title
           << " (" << format_number(r.seconds) << "s)\n"
           << (r.pass ? "" : "       " + r.detail + "\n");
    results.push_back(std::move(r));
  };
  run(1, [&] { return criterion_spectrum_disk(scale); }, 10.0);
  run(2, [&] { return criterion_schatten(scale); }, 0.0);
  run(3, [&] { return criterion_boundedness_table(scale); }, 60.0);
  run(4, [&] { return criterion_paley_equivalence(scale); }, 0.0);
  run(5, [&] { return criterion_kernel_asymptotics(scale); }, 0.0);
  run(6, [&] { return criterion_resolvent_identity(scale); }, 0.0);
  run(7, [&] { return criterion_parts_identity(scale); }, 0.0);
  run(8, [&] { return criterion_weight_regularity(scale, options.m_override); }, 0.0);
  run(9, [&] { return criterion_differentiation(scale); }, 0.0);
  return results;
}

}  // namespace focklab
