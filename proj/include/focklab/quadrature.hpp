#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace focklab {

using Complex = std::complex<double>;

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached rule of the given order (thread-safe).
const GaussLegendre& gauss_legendre(int order);

// Composite Gauss-Legendre rule on [a, b]: unit-length panels (the last one
// shorter), nodes_per_panel points each.
struct CompositeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
CompositeRule composite_rule(double a, double b, int nodes_per_panel);

// Polar quadrature over the disk |z - center| <= outer_radius.  Radial part is
// composite Gauss-Legendre, angular part the equispaced trapezoid rule (exact
// for trigonometric polynomials up to degree n_angles - 1).  The node weight
// includes the r dr dtheta Jacobian, so plain sums approximate area integrals.
class PolarGrid {
 public:
  PolarGrid(double outer_radius, int nodes_per_unit = 32, int n_angles = 64,
            Complex center = 0.0);

  double outer_radius() const { return outer_radius_; }
  int nodes_per_unit() const { return nodes_per_unit_; }
  int n_angles() const { return n_angles_; }
  Complex center() const { return center_; }
  std::size_t radial_count() const { return radii_.size(); }

  Complex node(std::size_t i, std::size_t j) const {
    return center_ + radii_[i] * phases_[j];
  }
  double weight(std::size_t i) const { return radial_weights_[i] * radii_[i] * angle_weight_; }
  double total_weight() const;  // equals pi R^2 up to rounding

  // Sum of f over nodes with weights; f returns the integrand value.
  double integrate(const std::function<double(Complex)>& f) const;

  // log of the integral of exp(log_f(z)); log_f may return -inf for zero
  // integrand values.  Uses a running log-sum-exp so huge dynamic ranges and
  // divergent integrands do not overflow.
  double log_integrate(const std::function<double(Complex)>& log_f) const;

 private:
  double outer_radius_;
  int nodes_per_unit_;
  int n_angles_;
  Complex center_;
  std::vector<double> radii_;
  std::vector<double> radial_weights_;
  std::vector<Complex> phases_;
  double angle_weight_;
};

// log of integral over [a, b] of exp(log_f(r)) dr, composite Gauss-Legendre.
double log_line_integralexp(double a, double b, int nodes_per_unit,
                            const std::function<double(double)>& log_f);

// Running log-sum-exp accumulator.
class LogSum {
 public:
  void add(double log_term);
  double value() const;  // -inf when empty

 private:
  double max_ = -1e308 * 10;  // -inf
  double sum_ = 0.0;
  bool any_ = false;
};

// Least-squares slope and intercept of y against x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace focklab
