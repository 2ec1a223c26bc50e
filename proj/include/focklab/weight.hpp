#pragma once

#include <string>
#include <vector>

#include "focklab/quadrature.hpp"
#include "focklab/symbols.hpp"

namespace focklab {

// Parameters of the weighted space: weight psi_m(z) = |z|^2/2 - m log(beta + |z|).
struct SpaceParams {
  int m = 0;        // Sobolev order
  double p = 2.0;   // integrability exponent
  double beta = 1.0;

  void validate() const;  // m >= 0, p > 0, beta > 0
};

double psi(const SpaceParams& sp, Complex z);
double psi_radial(const SpaceParams& sp, double r);

// Laplacian of the smooth surrogate |z|^2/2 - (m/2) log(beta + |z|^2):
// 2 - 2 m beta / (beta + |z|^2)^2.  For beta > m it is pinched between
// 2(1 - m/beta) and 2.
double laplacian_psi(const SpaceParams& sp, Complex z);

// (p/2)^{mp/2+1} / (pi * Gamma(mp/2 + 1)).  Exposed for completeness; all
// norms below omit it.
double normalization_constant(double p, int m);

// log nu_n with nu_n^p = 2 pi * Integral_0^inf r^{pn+1} (beta+r)^{pm}
// exp(-p r^2/2) dr.  The normalized monomial basis is z^n / nu_n.
double log_monomial_norm(int n, const SpaceParams& sp);
double monomial_norm(int n, const SpaceParams& sp);

// Cache of log nu_0 .. log nu_max; immutable after construction and safe to
// share across threads.
class BasisNorms {
 public:
  BasisNorms(SpaceParams sp, int max_degree);

  int max_degree() const { return static_cast<int>(log_norms_.size()) - 1; }
  const SpaceParams& params() const { return params_; }
  double log_norm(int n) const;
  double norm(int n) const;             // may overflow for large n
  double ratio(int num, int den) const; // nu_num / nu_den, overflow-safe

 private:
  SpaceParams params_;
  std::vector<double> log_norms_;
};

// (Integral |f|^p e^{-p psi} dA)^{1/p} over the plane, computed on the given
// grid and revalidated on a grid of twice the radius.  Throws TailNotConverged
// when the doubled radius moves the value by more than 1e-6 relative.
double space_norm(const FunctionSymbol& f, const SpaceParams& sp, const PolarGrid& grid);

// log Integral_{|z|<=R} |f|^p e^{-p psi} dA  (no root, no tail check).
double log_norm_power(const FunctionSymbol& f, const SpaceParams& sp, const PolarGrid& grid);

enum class MembershipStatus { Member, NonMember, Inconclusive };

struct MembershipTracePoint {
  double radius;
  double log_value;  // log of the truncated integral
  double value;      // exp(log_value); may be inf for divergent integrands
};

struct MembershipVerdict {
  MembershipStatus status = MembershipStatus::Inconclusive;
  double value = 0.0;        // Member: last truncated integral
  double growth_rate = 0.0;  // NonMember: slope of log-integral against R^2
  std::vector<MembershipTracePoint> trace;
  bool exponent_outside_quadratic = false;

  std::string status_name() const;
};

// Truncated norm integrals at R in {4, 6, 8, 12, 16, 24}.  Member when the
// last two increments are below 1e-8 relative; NonMember when the log of the
// integral grows affinely in R^2 with fitted slope above 0.01.  The angular
// sweep of the grid picks up directional blowup of Re(exponent * e^{2 i theta}).
MembershipVerdict membership(const FunctionSymbol& f, const SpaceParams& sp);

// Reproducing-kernel partial sums in the p = 2 space (series over the
// normalized monomials).  The basis here is scaled against e^{-2 psi} dA / pi
// so the unweighted Gaussian case reproduces exp(conj(w) z) and exp(|w|^2)
// exactly.  The truncation is raised until the last term falls below 1e-10 of
// the partial sum; TruncationInsufficient if that never happens.
Complex kernel(const SpaceParams& sp, Complex w, Complex z, int truncation);
double kernel_norm_sq(const SpaceParams& sp, Complex w, int truncation);

// Derivative-side norm: (|f(0)|^p + Integral |f'|^p (1+|z|)^p e^{-p psi}
// / (1+|z|+||z|^2+|z|-m|)^p dA)^{1/p}.
double littlewood_paley(const FunctionSymbol& f, const SpaceParams& sp, const PolarGrid& grid);

// Radial regularity diagnostics of the weight at sample radii.
struct RegularitySample {
  double r;
  double decay;      // r e^{-p psi(r)} / psi'(r)
  double curvature;  // (2r^2 - 2rm - m) / (r (r^2 + r - m)^2)
};

struct RegularityReport {
  double r0 = 0.0;  // (1 + sqrt(1 + 4m)) / 2; psi' may vanish below it
  std::vector<RegularitySample> samples;
  bool decay_vanishes = false;
  bool curvature_below_p = false;
  bool curvature_bounded_below = false;
};

// Evaluated at r in {10, 20, 50, 100, 200} with the unit-beta algebraic forms
// psi'(r) = (r^2 + r - m) / (1 + r).
RegularityReport regularity_report(const SpaceParams& sp);

}  // namespace focklab
