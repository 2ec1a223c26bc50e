#include "focklab/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "focklab/errors.hpp"

namespace focklab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2Pi = std::log(2.0 * std::numbers::pi);
const double kLogPi = std::log(std::numbers::pi);

}  // namespace

void SpaceParams::validate() const {
  if (m < 0) throw std::invalid_argument("SpaceParams: m must be nonnegative");
  if (!(p > 0)) throw std::invalid_argument("SpaceParams: p must be positive");
  if (!(beta > 0)) throw std::invalid_argument("SpaceParams: beta must be positive");
}

double psi_radial(const SpaceParams& sp, double r) {
  return 0.5 * r * r - sp.m * std::log(sp.beta + r);
}

double psi(const SpaceParams& sp, Complex z) { return psi_radial(sp, std::abs(z)); }

double laplacian_psi(const SpaceParams& sp, Complex z) {
  double r2 = std::norm(z);
  double d = sp.beta + r2;
  return 2.0 - 2.0 * sp.m * sp.beta / (d * d);
}

double normalization_constant(double p, int m) {
  double a = 0.5 * m * p;
  return std::exp((a + 1.0) * std::log(0.5 * p) - kLogPi - std::lgamma(a + 1.0));
}

namespace {

// log of 2 pi * Integral_0^rmax r^{pn+1} (beta+r)^{pm} e^{-p r^2 / 2} dr.
double log_radial_moment(double a_power, const SpaceParams& sp, double r_max) {
  double pm = sp.p * sp.m;
  double beta = sp.beta;
  double p = sp.p;
  return kLog2Pi + log_line_integralexp(0.0, r_max, 32, [&](double r) {
           if (r <= 0.0) return -kInf;
           return a_power * std::log(r) + pm * std::log(beta + r) - 0.5 * p * r * r;
         });
}

}  // namespace

double log_monomial_norm(int n, const SpaceParams& sp) {
  if (n < 0) throw std::invalid_argument("log_monomial_norm: negative degree");
  sp.validate();
  double a = sp.p * n + 1.0;
  double peak = std::sqrt(a / sp.p);
  double r_max = std::max(16.0, peak + 14.0);
  double v = log_radial_moment(a, sp, r_max);
  for (int round = 0; round < 4; ++round) {
    double wider = log_radial_moment(a, sp, r_max + 8.0);
    if (std::abs(wider - v) < 1e-10) return wider / sp.p;
    r_max += 8.0;
    v = wider;
  }
  throw TailNotConverged("log_monomial_norm: radial tail did not settle");
}

double monomial_norm(int n, const SpaceParams& sp) { return std::exp(log_monomial_norm(n, sp)); }

BasisNorms::BasisNorms(SpaceParams sp, int max_degree) : params_(sp) {
  sp.validate();
  if (max_degree < 0) throw std::invalid_argument("BasisNorms: negative max degree");
  log_norms_.reserve(max_degree + 1);
  for (int n = 0; n <= max_degree; ++n) log_norms_.push_back(log_monomial_norm(n, sp));
}

double BasisNorms::log_norm(int n) const {
  if (n < 0 || n > max_degree()) throw std::out_of_range("BasisNorms: degree out of range");
  return log_norms_[n];
}

double BasisNorms::norm(int n) const { return std::exp(log_norm(n)); }

double BasisNorms::ratio(int num, int den) const {
  return std::exp(log_norm(num) - log_norm(den));
}

double log_norm_power(const FunctionSymbol& f, const SpaceParams& sp, const PolarGrid& grid) {
  sp.validate();
  const double p = sp.p;
  return grid.log_integrate([&](Complex z) { return p * (f.log_abs(z) - psi(sp, z)); });
}

double space_norm(const FunctionSymbol& f, const SpaceParams& sp, const PolarGrid& grid) {
  if (f.is_zero()) return 0.0;
  double base = log_norm_power(f, sp, grid);
  PolarGrid doubled(2.0 * grid.outer_radius(), grid.nodes_per_unit(), grid.n_angles(),
                    grid.center());
  double wide = log_norm_power(f, sp, doubled);
  if (base == -kInf && wide == -kInf) return 0.0;
  double rel = std::abs(1.0 - std::exp(base - wide));
  if (!(rel < 1e-6))
    throw TailNotConverged("space_norm: doubling the grid radius moved the integral by " +
                           std::to_string(rel));
  return std::exp(wide / sp.p);
}

std::string MembershipVerdict::status_name() const {
  switch (status) {
    case MembershipStatus::Member: return "Member";
    case MembershipStatus::NonMember: return "NonMember";
    default: return "Inconclusive";
  }
}

MembershipVerdict membership(const FunctionSymbol& f, const SpaceParams& sp) {
  sp.validate();
  static const std::vector<double> schedule = {4.0, 6.0, 8.0, 12.0, 16.0, 24.0};
  MembershipVerdict verdict;
  verdict.exponent_outside_quadratic = f.exponent_outside_quadratic();

  if (f.is_zero()) {
    verdict.status = MembershipStatus::Member;
    for (double R : schedule) verdict.trace.push_back({R, -kInf, 0.0});
    return verdict;
  }

  // One grid out to the largest radius; prefix sums give every truncation.
  const double R_max = schedule.back();
  const int nodes_per_unit = 32;
  const int n_angles = 64;
  PolarGrid grid(R_max, nodes_per_unit, n_angles);
  const double p = sp.p;

  LogSum acc;
  std::size_t next = 0;
  std::vector<double> log_values;
  const std::size_t per_radius = static_cast<std::size_t>(nodes_per_unit);
  for (std::size_t i = 0; i < grid.radial_count(); ++i) {
    // radial nodes are laid out unit panel by unit panel
    double r_done = static_cast<double>(i / per_radius);
    while (next < schedule.size() && r_done >= schedule[next]) {
      log_values.push_back(acc.value());
      ++next;
    }
    double lw = std::log(grid.weight(i));
    for (int j = 0; j < grid.n_angles(); ++j) {
      Complex z = grid.node(i, j);
      double v = p * (f.log_abs(z) - psi(sp, z));
      if (std::isfinite(v)) acc.add(v + lw);
    }
  }
  while (next < schedule.size()) {
    log_values.push_back(acc.value());
    ++next;
  }

  for (std::size_t k = 0; k < schedule.size(); ++k)
    verdict.trace.push_back({schedule[k], log_values[k], std::exp(log_values[k])});

  // Cauchy on the last two increments.
  auto rel_gap = [&](std::size_t k) {
    if (log_values[k] == -kInf && log_values[k + 1] == -kInf) return 0.0;
    return std::abs(1.0 - std::exp(log_values[k] - log_values[k + 1]));
  };
  std::size_t last = schedule.size() - 1;
  if (rel_gap(last - 1) < 1e-8 && rel_gap(last - 2) < 1e-8) {
    verdict.status = MembershipStatus::Member;
    verdict.value = std::exp(log_values[last]);
    return verdict;
  }

  // Divergence: log of the truncated integral affine in R^2 with positive slope.
  std::vector<double> xs, ys;
  for (std::size_t k = schedule.size() - 3; k < schedule.size(); ++k) {
    if (!std::isfinite(log_values[k])) break;
    xs.push_back(schedule[k] * schedule[k]);
    ys.push_back(log_values[k]);
  }
  if (xs.size() == 3) {
    LineFit fit = fit_line(xs, ys);
    if (fit.slope > 0.01) {
      verdict.status = MembershipStatus::NonMember;
      verdict.growth_rate = fit.slope;
      return verdict;
    }
  }
  verdict.status = MembershipStatus::Inconclusive;
  return verdict;
}

namespace {

// Cached p = 2 basis norms keyed on (m, beta); kernel evaluation touches these
// once per node, so recomputing the radial integrals each call would dominate.
std::vector<double> p2_log_norms(const SpaceParams& sp, int max_degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& vec = cache[{sp.m, sp.beta}];
  SpaceParams two = sp;
  two.p = 2.0;
  while (static_cast<int>(vec.size()) <= max_degree)
    vec.push_back(log_monomial_norm(static_cast<int>(vec.size()), two));
  return std::vector<double>(vec.begin(), vec.begin() + max_degree + 1);
}

// Partial sum of sum_n (z conj(w))^n * pi / nu_n^2 plus the last-term ratio.
Complex kernel_series(const SpaceParams& sp, Complex w, Complex z, int terms,
                      double* last_over_sum) {
  std::vector<double> log_norms = p2_log_norms(sp, terms - 1);
  Complex zw = z * std::conj(w);
  Complex sum = 0.0;
  double last_mag = 0.0;
  if (zw == Complex(0.0)) {
    sum = std::exp(kLogPi - 2.0 * log_norms[0]);
    last_mag = 0.0;
  } else {
    Complex log_zw = std::log(zw);
    for (int n = 0; n < terms; ++n) {
      Complex term = std::exp(static_cast<double>(n) * log_zw + kLogPi - 2.0 * log_norms[n]);
      sum += term;
      if (n == terms - 1) last_mag = std::abs(term);
    }
  }
  if (last_over_sum) {
    double denom = std::abs(sum);
    *last_over_sum = (denom == 0.0) ? 0.0 : last_mag / denom;
  }
  return sum;
}

Complex kernel_adaptive(const SpaceParams& sp, Complex w, Complex z, int truncation) {
  if (sp.p != 2.0) throw std::invalid_argument("kernel: requires p = 2");
  if (truncation < 1) throw std::invalid_argument("kernel: truncation must be positive");
  int terms = truncation;
  for (; terms <= 4096; terms *= 2) {
    double tail_ratio = 0.0;
    Complex value = kernel_series(sp, w, z, terms, &tail_ratio);
    if (tail_ratio < 1e-10) return value;
  }
  throw TruncationInsufficient("kernel: series tail above 1e-10 of the partial sum");
}

}  // namespace

Complex kernel(const SpaceParams& sp, Complex w, Complex z, int truncation) {
  return kernel_adaptive(sp, w, z, truncation);
}

double kernel_norm_sq(const SpaceParams& sp, Complex w, int truncation) {
  return kernel_adaptive(sp, w, w, truncation).real();
}

double littlewood_paley(const FunctionSymbol& f, const SpaceParams& sp, const PolarGrid& grid) {
  sp.validate();
  const double p = sp.p;
  const double m = sp.m;
  FunctionSymbol df = f.derivative();
  auto log_weighted = [&](Complex z) {
    double r = std::abs(z);
    double denom = 1.0 + r + std::abs(r * r + r - m);
    return p * (df.log_abs(z) + std::log1p(r) - psi(sp, z) - std::log(denom));
  };
  double li = grid.log_integrate(log_weighted);
  PolarGrid doubled(2.0 * grid.outer_radius(), grid.nodes_per_unit(), grid.n_angles(),
                    grid.center());
  double wide = doubled.log_integrate(log_weighted);
  if (li != -kInf || wide != -kInf) {
    double rel = std::abs(1.0 - std::exp(li - wide));
    if (!(rel < 1e-6)) throw TailNotConverged("littlewood_paley: tail not converged");
  }
  double integral = (wide == -kInf) ? 0.0 : std::exp(wide);
  return std::pow(std::pow(std::abs(f.at_zero()), p) + integral, 1.0 / p);
}

RegularityReport regularity_report(const SpaceParams& sp) {
  sp.validate();
  const double p = sp.p;
  const double m = sp.m;
  RegularityReport report;
  report.r0 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * m));
  SpaceParams unit_beta = sp;
  unit_beta.beta = 1.0;
  for (double r : {10.0, 20.0, 50.0, 100.0, 200.0}) {
    RegularitySample s;
    s.r = r;
    double dpsi = (r * r + r - m) / (1.0 + r);
    s.decay = r * std::exp(-p * psi_radial(unit_beta, r)) / dpsi;
    double den = r * r + r - m;
    s.curvature = (2.0 * r * r - 2.0 * r * m - m) / (r * den * den);
    report.samples.push_back(s);
  }
  const auto& first = report.samples.front();
  const auto& last = report.samples.back();
  report.decay_vanishes = std::abs(last.decay) < 1e-10 && std::abs(last.decay) <= std::abs(first.decay);
  double cmax = -kInf, cmin = kInf;
  for (const auto& s : report.samples) {
    cmax = std::max(cmax, s.curvature);
    cmin = std::min(cmin, s.curvature);
  }
  report.curvature_below_p = cmax < p;
  report.curvature_bounded_below = cmin > -1.0;
  return report;
}

}  // namespace focklab
