#include "focklab/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace focklab {

namespace {

GaussLegendre compute_gauss_legendre(int n) {
  // Newton iteration on the Legendre three-term recurrence.
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double eps = 1e-15;
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double z1 = 2.0;
    double pp = 0.0;
    int guard = 0;
    while (std::abs(z - z1) > eps && guard++ < 100) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    }
    rule.nodes[i - 1] = -z;
    rule.nodes[n - i] = z;
    rule.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - i] = rule.weights[i - 1];
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
  return it->second;
}

CompositeRule composite_rule(double a, double b, int nodes_per_panel) {
  if (!(b > a)) throw std::invalid_argument("composite_rule: empty interval");
  CompositeRule rule;
  const GaussLegendre& gl = gauss_legendre(nodes_per_panel);
  double left = a;
  while (left < b - 1e-12) {
    double right = std::min(left + 1.0, b);
    double mid = 0.5 * (left + right);
    double half = 0.5 * (right - left);
    for (int k = 0; k < nodes_per_panel; ++k) {
      rule.nodes.push_back(mid + half * gl.nodes[k]);
      rule.weights.push_back(half * gl.weights[k]);
    }
    left = right;
  }
  return rule;
}

PolarGrid::PolarGrid(double outer_radius, int nodes_per_unit, int n_angles, Complex center)
    : outer_radius_(outer_radius),
      nodes_per_unit_(nodes_per_unit),
      n_angles_(n_angles),
      center_(center) {
  if (!(outer_radius > 0)) throw std::invalid_argument("PolarGrid: radius must be positive");
  if (n_angles < 8 || n_angles % 2 != 0)
    throw std::invalid_argument("PolarGrid: n_angles must be even and at least 8");
  CompositeRule radial = composite_rule(0.0, outer_radius, nodes_per_unit);
  radii_ = std::move(radial.nodes);
  radial_weights_ = std::move(radial.weights);
  phases_.resize(n_angles);
  angle_weight_ = 2.0 * std::numbers::pi / n_angles;
  for (int j = 0; j < n_angles; ++j) {
    double theta = angle_weight_ * j;
    phases_[j] = Complex(std::cos(theta), std::sin(theta));
  }
}

double PolarGrid::total_weight() const {
  double total = 0.0;
  for (std::size_t i = 0; i < radii_.size(); ++i) total += weight(i);
  return total * n_angles_;
}

double PolarGrid::integrate(const std::function<double(Complex)>& f) const {
  double total = 0.0;
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    double w = weight(i);
    for (int j = 0; j < n_angles_; ++j) total += w * f(node(i, j));
  }
  return total;
}

double PolarGrid::log_integrate(const std::function<double(Complex)>& log_f) const {
  LogSum sum;
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    double lw = std::log(weight(i));
    for (int j = 0; j < n_angles_; ++j) {
      double v = log_f(node(i, j));
      if (std::isfinite(v)) sum.add(v + lw);
    }
  }
  return sum.value();
}

double log_line_integralexp(double a, double b, int nodes_per_unit,
                            const std::function<double(double)>& log_f) {
  CompositeRule rule = composite_rule(a, b, nodes_per_unit);
  LogSum sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double v = log_f(rule.nodes[i]);
    if (std::isfinite(v)) sum.add(v + std::log(rule.weights[i]));
  }
  return sum.value();
}

void LogSum::add(double log_term) {
  if (log_term == -std::numeric_limits<double>::infinity()) return;
  if (!any_) {
    max_ = log_term;
    sum_ = 1.0;
    any_ = true;
    return;
  }
  if (log_term <= max_) {
    sum_ += std::exp(log_term - max_);
  } else {
    sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
    max_ = log_term;
  }
}

double LogSum::value() const {
  if (!any_) return -std::numeric_limits<double>::infinity();
  return max_ + std::log(sum_);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace focklab
