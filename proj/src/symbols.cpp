#include "focklab/symbols.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "focklab/errors.hpp"
#include "focklab/quadrature.hpp"

namespace focklab {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::monomial(int degree, Complex scale) {
  if (degree < 0) throw std::invalid_argument("monomial: negative degree");
  std::vector<Complex> c(degree + 1, Complex(0.0));
  c.back() = scale;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
}

Complex Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[k];
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) return Polynomial();
  std::vector<Complex> a(coeffs_.size() + 1, Complex(0.0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / (k + 1.0);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Complex> s(std::max(coeffs_.size(), other.coeffs_.size()), Complex(0.0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) s[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) s[k] += other.coeffs_[k];
  return Polynomial(std::move(s));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return Polynomial();
  std::vector<Complex> prod(coeffs_.size() + other.coeffs_.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
      prod[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(prod));
}

Polynomial Polynomial::scaled(Complex factor) const {
  std::vector<Complex> s(coeffs_);
  for (auto& c : s) c *= factor;
  return Polynomial(std::move(s));
}

FunctionSymbol FunctionSymbol::poly(Polynomial p) {
  FunctionSymbol f;
  f.prefactor_ = std::move(p);
  return f;
}

FunctionSymbol FunctionSymbol::exp_poly(Polynomial prefactor, Polynomial exponent) {
  FunctionSymbol f;
  f.prefactor_ = std::move(prefactor);
  f.exponent_ = std::move(exponent);
  if (f.prefactor_.is_zero()) f.exponent_ = Polynomial();  // zero stays canonical
  return f;
}

Complex FunctionSymbol::eval(Complex z) const {
  Complex p = prefactor_(z);
  if (exponent_.is_zero()) return p;
  Complex q = exponent_(z);
  if (q.real() > 700.0)
    throw OverflowError("FunctionSymbol::eval: exponent exceeds the double range");
  return p * std::exp(q);
}

double FunctionSymbol::log_abs(Complex z) const {
  Complex p = prefactor_(z);
  double lp = (p == Complex(0.0)) ? -std::numeric_limits<double>::infinity() : std::log(std::abs(p));
  if (exponent_.is_zero()) return lp;
  return lp + exponent_(z).real();
}

FunctionSymbol FunctionSymbol::derivative() const {
  Polynomial dp = prefactor_.derivative();
  if (exponent_.is_zero()) return FunctionSymbol::poly(dp);
  return FunctionSymbol::exp_poly(dp + prefactor_ * exponent_.derivative(), exponent_);
}

FunctionSymbol FunctionSymbol::times(const Polynomial& factor) const {
  return FunctionSymbol::exp_poly(prefactor_ * factor, exponent_);
}

Complex FunctionSymbol::at_zero() const {
  Complex p = prefactor_(0.0);
  if (exponent_.is_zero()) return p;
  return p * std::exp(exponent_(0.0));
}

Complex line_integral(const std::function<Complex(Complex)>& integrand, Complex z,
                      int n_nodes) {
  if (n_nodes < 2) throw std::invalid_argument("line_integral: need at least two nodes");
  if (z == Complex(0.0)) return 0.0;
  const GaussLegendre& gl = gauss_legendre(n_nodes);
  Complex acc = 0.0;
  for (int k = 0; k < n_nodes; ++k) {
    double t = 0.5 * (gl.nodes[k] + 1.0);
    acc += 0.5 * gl.weights[k] * integrand(t * z);
  }
  return acc * z;
}

}  // namespace focklab
