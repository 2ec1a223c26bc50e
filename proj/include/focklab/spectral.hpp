#pragma once

#include <string>
#include <vector>

#include "focklab/operators.hpp"
#include "focklab/symbols.hpp"
#include "focklab/weight.hpp"

namespace focklab {

// Resolvent data for the quadratic-symbol Volterra operator with g1(z) = a z^2.
struct ResolventSpec {
  Complex a;
  Complex lambda;

  ResolventSpec(Complex a_, Complex lambda_);
  bool inside_disk() const { return std::abs(lambda) <= 2.0 * std::abs(a); }
};

// (lambda I - V_{g1})^{-1} h at z:
//   (1/lambda) h(0) e^{g1(z)/lambda}
//     + (1/lambda) e^{g1(z)/lambda} * Integral_0^z e^{-g1(w)/lambda} h'(w) dw.
Complex resolvent_apply(const ResolventSpec& spec, const FunctionSymbol& h, Complex z);

enum class ScanClass { Spectrum, Resolvent, Boundary };
std::string scan_class_name(ScanClass c);

struct LambdaRecord {
  Complex lambda;
  MembershipVerdict membership;  // of e^{a z^2 / lambda}
  std::vector<std::pair<int, double>> resolvent_norms;  // (truncation, norm)
  ScanClass classification = ScanClass::Boundary;
};

struct SpectrumScan {
  Complex a;
  SpaceParams params;
  bool extrapolated_exponent = false;  // p < 1 sits outside the theorem range
  std::vector<LambdaRecord> records;

  std::string csv() const;
};

// Per lambda: membership of e^{a z^2/lambda} plus, when p = 2, spectral norms
// of the truncated resolvents.  Classified Spectrum when the exponential
// escapes the space or the truncated-resolvent norms grow tenfold across the
// truncation list; Resolvent when it belongs and the norms stay within 50%;
// Boundary inside a 2% band around |lambda| = 2|a| and for undecided cases.
// Truncated eigenvalues are useless here (the truncations are nilpotent), so
// they are deliberately never consulted.
SpectrumScan spectrum_scan(Complex a, const SpaceParams& sp, const std::vector<Complex>& lambdas,
                           const std::vector<int>& truncations = {50, 100, 200});

// Ratio check of the derivative-side bound for the twisted weight
// e^{g1/lambda}: LHS = Integral |e^{g1/lambda} f|^p e^{-p psi},
// RHS = |f(0)|^p + Integral |f' e^{g1/lambda}|^p (1+psi')^{-p} e^{-p psi}.
// Requires |lambda| > 2|a|.
struct TwistedBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool degenerate = false;  // zero argument: 0/0 guarded
};
TwistedBoundReport twisted_paley_check(const FunctionSymbol& f, const ResolventSpec& spec,
                                       const SpaceParams& sp, const PolarGrid& grid);

// Spectrum of the companion operator with constant symbol c: the single point
// {c}; away from it the resolvent is h -> h / (lambda - c).
struct CompanionSpectrumResult {
  bool is_spectrum = false;
  Complex resolvent_scale = 0.0;  // 1 / (lambda - c) when defined
};
CompanionSpectrumResult companion_spectrum(Complex c, Complex lambda);

// Spectrum of the multiplier with constant symbol alpha: {alpha}, as point
// spectrum too.  Exact equality semantics.
struct MultiplierSpectrumResult {
  bool is_spectrum = false;
};
MultiplierSpectrumResult multiplier_spectrum(Complex alpha, Complex lambda);

}  // namespace focklab
