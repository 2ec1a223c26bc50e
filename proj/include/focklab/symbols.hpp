#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace focklab {

using Complex = std::complex<double>;

// Dense complex polynomial; coeffs[k] multiplies z^k.  The zero polynomial is
// the empty coefficient list and reports degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs);

  static Polynomial monomial(int degree, Complex scale = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Complex coeff(int k) const;
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  Complex operator()(Complex z) const;
  Polynomial derivative() const;
  Polynomial antiderivative() const;  // vanishes at 0

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;  // coefficient convolution
  Polynomial scaled(Complex factor) const;

  bool operator==(const Polynomial& other) const { return coeffs_ == other.coeffs_; }

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

// Entire function of the closed form prefactor(z) * exp(exponent(z)).  Plain
// polynomials are the exponent == 0 case, so Poly(p) and ExpPoly(p, 0) compare
// equal by construction.
class FunctionSymbol {
 public:
  FunctionSymbol() = default;  // the zero function
  static FunctionSymbol poly(Polynomial p);
  static FunctionSymbol exp_poly(Polynomial prefactor, Polynomial exponent);

  bool is_poly() const { return exponent_.is_zero(); }
  bool is_zero() const { return prefactor_.is_zero(); }
  const Polynomial& prefactor() const { return prefactor_; }
  const Polynomial& exponent() const { return exponent_; }

  // Exponent degree above two is allowed but outside the classified families;
  // callers flag it in reports.
  bool exponent_outside_quadratic() const { return exponent_.degree() > 2; }

  // Throws OverflowError when Re(exponent(z)) exceeds the double range.
  Complex eval(Complex z) const;

  // log|value|; -inf at zeros of the prefactor.  Never overflows.
  double log_abs(Complex z) const;

  FunctionSymbol derivative() const;  // (P e^Q)' = (P' + P Q') e^Q
  FunctionSymbol times(const Polynomial& factor) const;
  Complex at_zero() const;

  bool operator==(const FunctionSymbol& other) const {
    return prefactor_ == other.prefactor_ && exponent_ == other.exponent_;
  }

 private:
  Polynomial prefactor_;
  Polynomial exponent_;
};

// Gauss-Legendre approximation of the integral of `integrand` over the straight
// segment from 0 to z.  Exact to rounding for polynomial integrands of degree
// <= 2 * n_nodes - 1; spectrally accurate for entire integrands.
Complex line_integral(const std::function<Complex(Complex)>& integrand, Complex z,
                      int n_nodes = 64);

}  // namespace focklab
