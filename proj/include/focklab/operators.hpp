#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "focklab/symbols.hpp"
#include "focklab/weight.hpp"

namespace focklab {

enum class OperatorTag { Volterra, Companion, Multiplier, Differentiation };

// One of the four transforms under study:
//   Volterra        f -> Integral_0^z f g'
//   Companion       f -> Integral_0^z f' g
//   Multiplier      f -> g f
//   Differentiation f -> f'
struct OperatorKind {
  OperatorTag tag = OperatorTag::Differentiation;
  Polynomial g;

  static OperatorKind volterra(Polynomial g);
  static OperatorKind companion(Polynomial g);
  static OperatorKind multiplier(Polynomial g);
  static OperatorKind differentiation();

  std::string name() const;
};

// Exact symbol-level action on a polynomial argument.
Polynomial apply_to_polynomial(const OperatorKind& op, const Polynomial& f);

// Pointwise action; closed form for polynomial arguments, line integrals for
// exponential-polynomial ones.
Complex apply(const OperatorKind& op, const FunctionSymbol& f, Complex z);

// The operator in the normalized monomial basis of the p = 2 space.  Entries
// come from exact termwise integration of monomial actions, so the only
// numerical input is the one-dimensional basis-norm integrals.
struct OperatorMatrix {
  int size = 0;
  int bandwidth = 0;  // structural distance from the diagonal
  bool lower = true;  // Volterra/Companion/Multiplier shift degrees up; D down
  Eigen::MatrixXcd entries;
  std::vector<double> log_basis_norms;  // nu_0 .. nu_{size+bandwidth}

  // Columns whose image leaves the truncation; excluded from singular values.
  int truncated_columns() const { return lower ? bandwidth : 0; }
};

OperatorMatrix matrix(const OperatorKind& op, const SpaceParams& sp, int size);

// Top-k singular values (descending) of the matrix with the truncation-polluted
// columns removed.  For a one-band shift they equal the band moduli.
std::vector<double> singular_values(const OperatorMatrix& mat, int k);

// Spectral norm of (lambda I - T)^{-1} for the truncated matrix.
double resolvent_norm(const OperatorMatrix& mat, Complex lambda);

// CSV rows "row,col,re,im" of the nonzero entries.
std::string matrix_csv(const OperatorMatrix& mat);

enum class BoundednessVerdict { Bounded, Compact, Unbounded };
std::string verdict_name(BoundednessVerdict v);

// Rule table for the map from the p-space to the q-space, keyed on the symbol
// degree.  Compact implies bounded; the Bounded verdict means bounded but not
// compact.
struct RuleResult {
  BoundednessVerdict verdict;
  std::string rule;
};
RuleResult boundedness_rule(const OperatorKind& op, double p, double q);

// Schatten-class diagnostics from truncated singular values.
struct SchattenRecord {
  double p = 0.0;
  bool convergent = false;
  double partial_sum_half = 0.0;
  double partial_sum_full = 0.0;
  // Convergent: relative change of the tail-extrapolated sum on doubling the
  // truncation.  Divergent: ratio of the observed increment to the c log 2
  // increment of a log-divergent sum.
  double tail_trend = 0.0;
  double decay_exponent = 0.0;  // alpha from s_n ~ C n^alpha on the fit window
};
std::vector<SchattenRecord> schatten_diagnostic(const OperatorKind& op, const SpaceParams& sp,
                                                const std::vector<double>& p_list, int size);

// Normalized-monomial norm ratios ||T e~_n|| / ||e~_n||: the boundedness /
// unboundedness witness sequence.  Exact basis-norm ratios when p = 2,
// quadrature otherwise.
std::vector<std::pair<int, double>> growth_probe(const OperatorKind& op, const SpaceParams& sp,
                                                 int n_max);

// Mixed-norm variant: argument normalized in the source space, image measured
// in the q-norm with the same order and beta.
std::vector<std::pair<int, double>> growth_probe(const OperatorKind& op,
                                                 const SpaceParams& source, double target_q,
                                                 int n_max);

// log of the q-norm of a polynomial against the order-m weight.
double log_polynomial_qnorm(const Polynomial& poly, double q, int m, double beta);

}  // namespace focklab
