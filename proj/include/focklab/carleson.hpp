#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "focklab/operators.hpp"
#include "focklab/symbols.hpp"

namespace focklab {

// Parameters of the density mu_{(g,q)} and its Gaussian transform.
struct CarlesonQuery {
  Polynomial g;
  double p = 2.0;
  double q = 2.0;
  int m = 0;
  double t = 0.0;  // Gaussian parameter; defaults to q when unset
  double beta = 1.0;

  double gaussian_t() const { return t > 0.0 ? t : q; }
  void validate() const;  // p, q > 0; m >= 0; t >= 0
};

// |g'(z)|^q (1+|z|)^{qm+q} / (1+|z|+||z|^2+|z|-m|)^q.
double mu_density(const CarlesonQuery& query, Complex z);

// Integral e^{-t|z-w|^2/2} (1+|z|)^{-mq} dmu_{(g,q)}(z), quadrature on a disk
// around w wide enough that the Gaussian tail is negligible.
double tilde_mu(const CarlesonQuery& query, Complex w);

enum class CarlesonMode { Sup, Vanishing, Integrability };

struct CarlesonScanResult {
  CarlesonMode mode;
  double value = 0.0;         // sup / integral, mode dependent
  double fitted_decay = 0.0;  // vanishing: slope of log tilde_mu vs log(1+|w|)
  bool stable = true;         // sup: no doubling between the probe rings
  bool finite = true;         // integrability: extrapolated tail converges
  std::vector<std::pair<double, double>> samples;  // (|w|, angular max of tilde_mu)
};

// Sup mode scans |w| <= 10 and rechecks out to 12; vanishing mode fits the
// decay along |w| in {4, 6, 8, 10}; integrability mode integrates
// tilde_mu^{p/(p-q)} over |w| <= 10 with a power-law tail extrapolation and
// requires q < p (ModeMismatch otherwise).
CarlesonScanResult carleson_scan(const CarlesonQuery& query, CarlesonMode mode);

// Berezin-type transform of |g|^q at w: Integral |k_w|^q |g|^q e^{-q psi} dA
// with the normalized kernel k_w of the p = 2 space.  Exact Gaussian form when
// m = 0, truncated kernel series otherwise.
double berezin_multiplier(const Polynomial& g, double q, int m, Complex w, int truncation = 160);

// Everything classify() measured while checking the rule.
struct ClassificationWitness {
  std::vector<std::pair<int, double>> growth;           // growth_probe samples
  double growth_slope = 0.0;                            // log-log slope, upper window
  std::vector<std::pair<double, double>> tilde_samples; // (|w|, angular max)
  double tilde_sup = 0.0;
  double tilde_decay_slope = 0.0;
  std::optional<bool> integrability_finite;             // q < p fallback witness
  std::string summary;
};

struct Classification {
  BoundednessVerdict verdict;
  std::string rule;
  ClassificationWitness witness;
};

// Rule-table verdict for the map from the p-space into the q-space with a
// numeric witness attached: a growing probe sequence for Unbounded, decay of
// tilde_mu for Compact, a stable sup of tilde_mu for Bounded.  Monomial probes
// cannot see the q < p integrability failures of slowly growing symbols, so
// an Unbounded verdict whose probe does not grow falls back to the
// integrability scan.  Throws WitnessDisagreement when the evidence
// contradicts the rule.
Classification classify(const OperatorKind& op, double p, double q, int m);

}  // namespace focklab
