#include "focklab/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "focklab/errors.hpp"
#include "focklab/io.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/weight.hpp"

namespace focklab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void CarlesonQuery::validate() const {
  if (!(p > 0) || !(q > 0)) throw std::invalid_argument("CarlesonQuery: exponents must be positive");
  if (m < 0) throw std::invalid_argument("CarlesonQuery: m must be nonnegative");
  if (t < 0) throw std::invalid_argument("CarlesonQuery: t must be nonnegative");
}

double mu_density(const CarlesonQuery& query, Complex z) {
  query.validate();
  Polynomial dg = query.g.derivative();
  Complex gv = dg(z);
  if (gv == Complex(0.0)) return 0.0;
  double r = std::abs(z);
  double q = query.q;
  double m = query.m;
  double denom = 1.0 + r + std::abs(r * r + r - m);
  double log_value = q * (std::log(std::abs(gv)) + (m + 1.0) * std::log1p(r) - std::log(denom));
  return std::exp(log_value);
}

namespace {

double tilde_mu_on_radius(const CarlesonQuery& query, Complex w, double radius) {
  const double t = query.gaussian_t();
  const double q = query.q;
  const double mq = query.m * query.q;
  PolarGrid grid(radius, 16, 48, w);
  Polynomial dg = query.g.derivative();
  double log_value = grid.log_integrate([&](Complex z) {
    Complex gv = dg(z);
    if (gv == Complex(0.0)) return -kInf;
    double r = std::abs(z);
    double denom = 1.0 + r + std::abs(r * r + r - query.m);
    double log_density = q * (std::log(std::abs(gv)) + (query.m + 1.0) * std::log1p(r) -
                              std::log(denom));
    return -0.5 * t * std::norm(z - w) - mq * std::log1p(r) + log_density;
  });
  return (log_value == -kInf) ? 0.0 : std::exp(log_value);
}

}  // namespace

double tilde_mu(const CarlesonQuery& query, Complex w) {
  query.validate();
  if (query.g.degree() <= 0) return 0.0;
  const double t = query.gaussian_t();
  double radius = std::sqrt(2.0 * 45.0 / t) + 2.0;
  double value = tilde_mu_on_radius(query, w, radius);
  for (int round = 0; round < 3; ++round) {
    double wider = tilde_mu_on_radius(query, w, radius + 2.0);
    if (value == 0.0 && wider == 0.0) return 0.0;
    if (std::abs(wider - value) <= 1e-8 * std::max(wider, value)) return wider;
    radius += 2.0;
    value = wider;
  }
  throw TailNotConverged("tilde_mu: Gaussian window did not settle");
}

namespace {

// Angular max of tilde_mu on the circle |w| = radius.
double tilde_ring_max(const CarlesonQuery& query, double radius, int n_angles = 8) {
  double best = 0.0;
  for (int j = 0; j < n_angles; ++j) {
    double theta = 2.0 * std::numbers::pi * j / n_angles;
    Complex w = radius * Complex(std::cos(theta), std::sin(theta));
    best = std::max(best, tilde_mu(query, w));
  }
  return best;
}

}  // namespace

CarlesonScanResult carleson_scan(const CarlesonQuery& query, CarlesonMode mode) {
  CarlesonScanResult result;
  result.mode = mode;
  switch (mode) {
    case CarlesonMode::Sup: {
      double sup10 = 0.0;
      for (double r : {0.0, 2.0, 4.0, 6.0, 8.0, 10.0}) {
        double v = (r == 0.0) ? tilde_mu(query, 0.0) : tilde_ring_max(query, r);
        result.samples.emplace_back(r, v);
        sup10 = std::max(sup10, v);
      }
      double ring6 = 0.0;
      for (const auto& [r, v] : result.samples)
        if (r <= 6.0) ring6 = std::max(ring6, v);
      double ring12 = std::max(tilde_ring_max(query, 11.0), tilde_ring_max(query, 12.0));
      result.samples.emplace_back(12.0, ring12);
      result.value = std::max(sup10, 0.0);
      // growing sup: the outer ring dominates the inner one twofold
      result.stable = !(ring12 >= 2.0 * ring6 && ring12 > sup10 * 0.999 && ring12 > 0.0);
      return result;
    }
    case CarlesonMode::Vanishing: {
      std::vector<double> xs, ys;
      bool all_zero = true;
      for (double r : {4.0, 6.0, 8.0, 10.0}) {
        double v = tilde_ring_max(query, r);
        result.samples.emplace_back(r, v);
        if (v > 1e-14) {
          all_zero = false;
          xs.push_back(std::log1p(r));
          ys.push_back(std::log(v));
        }
      }
      if (all_zero) {
        result.value = 0.0;
        result.fitted_decay = -kInf;
        return result;
      }
      if (xs.size() >= 2) result.fitted_decay = fit_line(xs, ys).slope;
      result.value = result.samples.back().second;
      return result;
    }
    case CarlesonMode::Integrability: {
      if (!(query.q < query.p))
        throw ModeMismatch("carleson_scan: integrability mode needs q < p");
      const double exponent = query.p / (query.p - query.q);
      const double W = 10.0;
      PolarGrid grid(W, 4, 16);
      double integral = grid.integrate([&](Complex w) {
        double v = tilde_mu(query, w);
        return v <= 0.0 ? 0.0 : std::pow(v, exponent);
      });
      // tail: fit tilde_mu ~ c (1+|w|)^{-s} on the outer rings
      std::vector<double> xs, ys;
      for (double r : {6.0, 8.0, 10.0}) {
        double v = tilde_ring_max(query, r);
        result.samples.emplace_back(r, v);
        if (v > 1e-14) {
          xs.push_back(std::log1p(r));
          ys.push_back(std::log(v));
        }
      }
      result.value = integral;
      if (xs.size() < 2) {
        result.finite = true;  // density vanishes at infinity faster than any power
        return result;
      }
      LineFit fit = fit_line(xs, ys);
      result.fitted_decay = fit.slope;
      double tail_exponent = -fit.slope * exponent;  // integrand ~ (1+r)^{-tail_exponent}
      if (tail_exponent <= 2.05) {
        result.finite = false;
        return result;
      }
      double c_pow = std::exp(fit.intercept * exponent);
      result.value += 2.0 * std::numbers::pi * c_pow * std::pow(1.0 + W, 2.0 - tail_exponent) /
                      (tail_exponent - 2.0);
      return result;
    }
  }
  throw std::logic_error("carleson_scan: unreachable");
}

double berezin_multiplier(const Polynomial& g, double q, int m, Complex w, int truncation) {
  if (!(q > 0)) throw std::invalid_argument("berezin_multiplier: q must be positive");
  if (g.is_zero()) return 0.0;
  SpaceParams sp{m, 2.0, 1.0};
  double radius = std::sqrt(2.0 * 45.0 / q) + 2.0;
  double log_norm_sq = (m == 0) ? std::norm(w) : std::log(kernel_norm_sq(sp, w, truncation));
  if (m == 0 && w == Complex(0.0)) log_norm_sq = 0.0;

  auto log_kernel_abs = [&](Complex z) {
    if (m == 0) return (std::conj(w) * z).real();
    Complex k = kernel(sp, w, z, truncation);
    if (k == Complex(0.0)) return -kInf;
    return std::log(std::abs(k));
  };

  auto attempt = [&](double R) {
    PolarGrid grid(R, 16, 48, w);
    return grid.log_integrate([&](Complex z) {
      Complex gv = g(z);
      if (gv == Complex(0.0)) return -kInf;
      double lk = log_kernel_abs(z);
      if (lk == -kInf) return -kInf;
      return q * (lk - 0.5 * log_norm_sq + std::log(std::abs(gv)) - psi(sp, z));
    });
  };

  double value = attempt(radius);
  for (int round = 0; round < 3; ++round) {
    double wider = attempt(radius + 2.0);
    if (value == -kInf && wider == -kInf) return 0.0;
    if (std::abs(1.0 - std::exp(value - wider)) < 1e-8) return std::exp(wider);
    radius += 2.0;
    value = wider;
  }
  throw TailNotConverged("berezin_multiplier: window did not settle");
}

namespace {

LineFit upper_window_fit(const std::vector<std::pair<int, double>>& seq) {
  // slope of log ratio against log n over the top half of the sampled degrees
  std::vector<double> xs, ys;
  int n_max = seq.back().first;
  for (const auto& [n, v] : seq) {
    if (n * 2 < n_max || n < 1 || v <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 2) return {};
  return fit_line(xs, ys);
}

}  // namespace

Classification classify(const OperatorKind& op, double p, double q, int m) {
  RuleResult rule = boundedness_rule(op, p, q);
  Classification cls;
  cls.verdict = rule.verdict;
  cls.rule = rule.rule;
  ClassificationWitness& wit = cls.witness;

  SpaceParams source{m, p, 1.0};
  CarlesonQuery query{op.g, p, q, m};
  if (op.tag == OperatorTag::Differentiation) query.g = Polynomial();

  const bool zero_operator =
      (op.tag == OperatorTag::Volterra && op.g.degree() <= 0) ||
      (op.tag != OperatorTag::Volterra && op.tag != OperatorTag::Differentiation &&
       op.g.is_zero());

  switch (rule.verdict) {
    case BoundednessVerdict::Unbounded: {
      wit.growth = growth_probe(op, source, q, 100);
      wit.growth_slope = upper_window_fit(wit.growth).slope;
      double last = wit.growth.back().second;
      bool grows = wit.growth_slope > 0.02 && last > wit.growth.front().second;
      if (grows || last > 100.0) {
        wit.summary = "probe ratio " + format_number(last) + " at n=100, log-log slope " +
                      format_number(wit.growth_slope);
        return cls;
      }
      // Monomials spread too slowly to witness the q < p integrability failure
      // of low-degree symbols; the scan sees it directly.
      if (op.tag == OperatorTag::Volterra && q < p) {
        CarlesonScanResult scan = carleson_scan(query, CarlesonMode::Integrability);
        wit.integrability_finite = scan.finite;
        wit.tilde_samples = scan.samples;
        if (!scan.finite) {
          wit.summary = "integrability scan divergent (tail exponent fit " +
                        format_number(-scan.fitted_decay * p / (p - q)) + " <= 2)";
          return cls;
        }
      }
      throw WitnessDisagreement("classify: unbounded verdict for " + op.name() +
                                " but no witness grows; probe at n=100 is " +
                                format_number(last));
    }
    case BoundednessVerdict::Compact: {
      if (zero_operator) {
        wit.summary = "zero operator";
        wit.tilde_samples = {{4.0, 0.0}, {6.0, 0.0}, {8.0, 0.0}, {10.0, 0.0}};
        return cls;
      }
      CarlesonScanResult scan = carleson_scan(query, CarlesonMode::Vanishing);
      wit.tilde_samples = scan.samples;
      wit.tilde_decay_slope = scan.fitted_decay;
      if (scan.fitted_decay <= -0.25) {
        wit.summary = "tilde_mu decays with slope " + format_number(scan.fitted_decay);
        return cls;
      }
      throw WitnessDisagreement("classify: compact verdict for " + op.name() +
                                " but tilde_mu does not vanish (slope " +
                                format_number(scan.fitted_decay) + ")");
    }
    case BoundednessVerdict::Bounded: {
      CarlesonScanResult scan = carleson_scan(query, CarlesonMode::Sup);
      wit.tilde_samples = scan.samples;
      wit.tilde_sup = scan.value;
      if (scan.stable) {
        wit.summary = "tilde_mu sup " + format_number(scan.value) + " stable out to |w| = 12";
        return cls;
      }
      throw WitnessDisagreement("classify: bounded verdict for " + op.name() +
                                " but tilde_mu sup keeps growing");
    }
  }
  throw std::logic_error("classify: unreachable");
}

}  // namespace focklab
