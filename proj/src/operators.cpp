#include "focklab/operators.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "focklab/errors.hpp"
#include "focklab/io.hpp"

namespace focklab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

OperatorKind OperatorKind::volterra(Polynomial g) { return {OperatorTag::Volterra, std::move(g)}; }
OperatorKind OperatorKind::companion(Polynomial g) { return {OperatorTag::Companion, std::move(g)}; }
OperatorKind OperatorKind::multiplier(Polynomial g) { return {OperatorTag::Multiplier, std::move(g)}; }
OperatorKind OperatorKind::differentiation() { return {OperatorTag::Differentiation, Polynomial()}; }

std::string OperatorKind::name() const {
  switch (tag) {
    case OperatorTag::Volterra: return "volterra";
    case OperatorTag::Companion: return "companion";
    case OperatorTag::Multiplier: return "multiplier";
    default: return "differentiation";
  }
}

Polynomial apply_to_polynomial(const OperatorKind& op, const Polynomial& f) {
  switch (op.tag) {
    case OperatorTag::Volterra: return (f * op.g.derivative()).antiderivative();
    case OperatorTag::Companion: return (f.derivative() * op.g).antiderivative();
    case OperatorTag::Multiplier: return f * op.g;
    default: return f.derivative();
  }
}

Complex apply(const OperatorKind& op, const FunctionSymbol& f, Complex z) {
  if (f.is_poly()) return apply_to_polynomial(op, f.prefactor())(z);
  switch (op.tag) {
    case OperatorTag::Volterra: {
      FunctionSymbol fg = f.times(op.g.derivative());
      return line_integral([&](Complex w) { return fg.eval(w); }, z);
    }
    case OperatorTag::Companion: {
      FunctionSymbol dfg = f.derivative().times(op.g);
      return line_integral([&](Complex w) { return dfg.eval(w); }, z);
    }
    case OperatorTag::Multiplier: return op.g(z) * f.eval(z);
    default: return f.derivative().eval(z);
  }
}

namespace {

// Coefficients of T z^n as pairs (degree, coefficient); exact monomial action.
std::vector<std::pair<int, Complex>> monomial_action(const OperatorKind& op, int n) {
  std::vector<std::pair<int, Complex>> out;
  switch (op.tag) {
    case OperatorTag::Volterra:
      for (int k = 1; k <= op.g.degree(); ++k) {
        Complex c = op.g.coeff(k);
        if (c == Complex(0.0)) continue;
        out.emplace_back(n + k, static_cast<double>(k) * c / static_cast<double>(n + k));
      }
      break;
    case OperatorTag::Companion:
      if (n >= 1)
        for (int k = 0; k <= op.g.degree(); ++k) {
          Complex c = op.g.coeff(k);
          if (c == Complex(0.0)) continue;
          out.emplace_back(n + k, static_cast<double>(n) * c / static_cast<double>(n + k));
        }
      break;
    case OperatorTag::Multiplier:
      for (int k = 0; k <= op.g.degree(); ++k) {
        Complex c = op.g.coeff(k);
        if (c == Complex(0.0)) continue;
        out.emplace_back(n + k, c);
      }
      break;
    default:
      if (n >= 1) out.emplace_back(n - 1, Complex(static_cast<double>(n)));
      break;
  }
  return out;
}

int structural_bandwidth(const OperatorKind& op) {
  if (op.tag == OperatorTag::Differentiation) return 1;
  return std::max(op.g.degree(), 0);
}

Eigen::MatrixXcd reported_block(const OperatorMatrix& mat) {
  int drop = mat.truncated_columns();
  return mat.entries.leftCols(mat.size - drop);
}

std::vector<double> svd_values(const Eigen::MatrixXcd& a) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  if (svd.info() != Eigen::Success)
    throw ConvergenceFailure("singular_values: decomposition failed");
  std::vector<double> out(svd.singularValues().data(),
                          svd.singularValues().data() + svd.singularValues().size());
  return out;
}

}  // namespace

OperatorMatrix matrix(const OperatorKind& op, const SpaceParams& sp, int size) {
  if (sp.p != 2.0) throw std::invalid_argument("matrix: monomials are orthogonal only for p = 2");
  if (size < 4) throw std::invalid_argument("matrix: size must be at least 4");
  OperatorMatrix mat;
  mat.size = size;
  mat.bandwidth = structural_bandwidth(op);
  mat.lower = op.tag != OperatorTag::Differentiation;
  BasisNorms norms(sp, size + mat.bandwidth);
  mat.log_basis_norms.resize(size + mat.bandwidth + 1);
  for (int n = 0; n <= size + mat.bandwidth; ++n) mat.log_basis_norms[n] = norms.log_norm(n);
  mat.entries = Eigen::MatrixXcd::Zero(size, size);
  for (int n = 0; n < size; ++n)
    for (const auto& [deg, coef] : monomial_action(op, n)) {
      if (deg < 0 || deg >= size) continue;
      mat.entries(deg, n) = coef * norms.ratio(deg, n);
    }
  return mat;
}

std::vector<double> singular_values(const OperatorMatrix& mat, int k) {
  if (k < 1 || k > mat.size - mat.truncated_columns())
    throw std::invalid_argument("singular_values: k outside the reported range");
  std::vector<double> s = svd_values(reported_block(mat));
  s.resize(k);
  return s;
}

double resolvent_norm(const OperatorMatrix& mat, Complex lambda) {
  Eigen::MatrixXcd shifted =
      lambda * Eigen::MatrixXcd::Identity(mat.size, mat.size) - mat.entries;
  std::vector<double> s = svd_values(shifted);
  double smallest = s.back();
  if (smallest <= 0.0) return kInf;
  return 1.0 / smallest;
}

std::string matrix_csv(const OperatorMatrix& mat) {
  std::ostringstream out;
  out << "row,col,re,im\n";
  for (int col = 0; col < mat.size; ++col)
    for (int row = 0; row < mat.size; ++row) {
      Complex v = mat.entries(row, col);
      if (v == Complex(0.0)) continue;
      out << row << "," << col << "," << format_number(v.real()) << ","
          << format_number(v.imag()) << "\n";
    }
  return out.str();
}

std::string verdict_name(BoundednessVerdict v) {
  switch (v) {
    case BoundednessVerdict::Bounded: return "Bounded";
    case BoundednessVerdict::Compact: return "Compact";
    default: return "Unbounded";
  }
}

RuleResult boundedness_rule(const OperatorKind& op, double p, double q) {
  if (!(p > 0) || !(q > 0)) throw std::invalid_argument("boundedness_rule: exponents must be positive");
  const int deg = op.g.degree();
  switch (op.tag) {
    case OperatorTag::Volterra: {
      if (deg <= 0)
        return {BoundednessVerdict::Compact, "volterra: constant symbol gives the zero operator"};
      if (p <= q) {
        if (deg == 1) return {BoundednessVerdict::Compact, "volterra: deg(g) <= 1 is compact for p <= q"};
        if (deg == 2) return {BoundednessVerdict::Bounded, "volterra: deg(g) = 2 is bounded, not compact, for p <= q"};
        return {BoundednessVerdict::Unbounded, "volterra: deg(g) > 2 is unbounded"};
      }
      if (q > 2.0 * p / (p + 2.0)) {
        if (deg == 1)
          return {BoundednessVerdict::Compact, "volterra: deg(g) = 1 is compact for q < p with q > 2p/(p+2)"};
        return {BoundednessVerdict::Unbounded, "volterra: deg(g) > 1 is unbounded for q < p"};
      }
      return {BoundednessVerdict::Unbounded,
              "volterra: q <= 2p/(p+2) admits constant symbols only"};
    }
    case OperatorTag::Companion: {
      if (deg < 0) return {BoundednessVerdict::Compact, "companion: zero symbol gives the zero operator"};
      if (p <= q) {
        if (deg == 0) return {BoundednessVerdict::Bounded, "companion: constant symbol is bounded, not compact"};
        return {BoundednessVerdict::Unbounded, "companion: nonconstant symbol is unbounded"};
      }
      return {BoundednessVerdict::Unbounded, "companion: only the zero symbol maps into a smaller exponent"};
    }
    case OperatorTag::Multiplier: {
      if (deg < 0) return {BoundednessVerdict::Compact, "multiplier: zero symbol gives the zero operator"};
      if (p <= q) {
        if (deg == 0) return {BoundednessVerdict::Bounded, "multiplier: constant symbol is a scalar multiple of the identity"};
        return {BoundednessVerdict::Unbounded, "multiplier: nonconstant symbol is unbounded"};
      }
      return {BoundednessVerdict::Unbounded, "multiplier: only the zero symbol maps into a smaller exponent"};
    }
    default:
      return {BoundednessVerdict::Unbounded, "differentiation: unbounded on every space"};
  }
}

double log_polynomial_qnorm(const Polynomial& poly, double q, int m, double beta) {
  if (poly.is_zero()) return -kInf;
  int low = 0;
  while (poly.coeff(low) == Complex(0.0)) ++low;
  // relative polynomial h with poly(z) = z^low * h(z); keeps magnitudes tame
  std::vector<Complex> rel(poly.coeffs().begin() + low, poly.coeffs().end());
  Polynomial h(std::move(rel));
  int n_angles = 64;
  double angle_weight = 2.0 * std::numbers::pi / n_angles;
  std::vector<Complex> phases(n_angles);
  for (int j = 0; j < n_angles; ++j)
    phases[j] = Complex(std::cos(angle_weight * j), std::sin(angle_weight * j));

  double a = q * low + 1.0;
  double peak = std::sqrt((a + q * poly.degree() - q * low) / q);
  double r_max = std::max(16.0, peak + 14.0);

  auto attempt = [&](double R) {
    CompositeRule rule = composite_rule(0.0, R, 32);
    LogSum acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      double r = rule.nodes[i];
      if (r <= 0.0) continue;
      double base = a * std::log(r) + q * m * std::log(beta + r) - 0.5 * q * r * r +
                    std::log(rule.weights[i] * angle_weight);
      for (int j = 0; j < n_angles; ++j) {
        Complex hv = h(r * phases[j]);
        if (hv == Complex(0.0)) continue;
        acc.add(base + q * std::log(std::abs(hv)));
      }
    }
    return acc.value();
  };

  double v = attempt(r_max);
  for (int round = 0; round < 4; ++round) {
    double wider = attempt(r_max + 8.0);
    if (std::abs(wider - v) < 1e-9) return wider / q;
    r_max += 8.0;
    v = wider;
  }
  throw TailNotConverged("log_polynomial_qnorm: radial tail did not settle");
}

namespace {

// ||T z^n||_q / nu^{(p)}_n with both sides in log form.
double probe_ratio(const OperatorKind& op, const SpaceParams& source, double target_q, int n,
                   const BasisNorms* p2norms) {
  auto action = monomial_action(op, n);
  if (action.empty()) return 0.0;
  SpaceParams target = source;
  target.p = target_q;
  double log_num;
  if (target_q == 2.0 && p2norms) {
    // orthogonal expansion: ||sum c_j z^j||^2 = sum |c_j|^2 nu_j^2
    double base = p2norms->log_norm(action.front().first);
    double acc = 0.0;
    for (const auto& [deg, coef] : action)
      acc += std::norm(coef) * std::exp(2.0 * (p2norms->log_norm(deg) - base));
    log_num = base + 0.5 * std::log(acc);
  } else {
    std::vector<Complex> coeffs(action.back().first + 1, Complex(0.0));
    for (const auto& [deg, coef] : action) coeffs[deg] = coef;
    log_num = log_polynomial_qnorm(Polynomial(std::move(coeffs)), target_q, target.m, target.beta);
  }
  double log_den = (source.p == 2.0 && p2norms) ? p2norms->log_norm(n)
                                                : log_monomial_norm(n, source);
  return std::exp(log_num - log_den);
}

}  // namespace

std::vector<std::pair<int, double>> growth_probe(const OperatorKind& op, const SpaceParams& sp,
                                                 int n_max) {
  return growth_probe(op, sp, sp.p, n_max);
}

std::vector<std::pair<int, double>> growth_probe(const OperatorKind& op,
                                                 const SpaceParams& source, double target_q,
                                                 int n_max) {
  source.validate();
  if (n_max < 1) throw std::invalid_argument("growth_probe: n_max must be positive");
  const bool cheap = source.p == 2.0 && target_q == 2.0;
  std::vector<int> degrees;
  if (cheap) {
    for (int n = 0; n <= n_max; ++n) degrees.push_back(n);
  } else {
    // quadrature per point; sample geometrically and keep the endpoint
    for (int n = 1; n < n_max; n *= 2) degrees.push_back(n);
    if (n_max >= 50 && std::find(degrees.begin(), degrees.end(), n_max / 2) == degrees.end())
      degrees.push_back(n_max / 2);
    degrees.push_back(n_max);
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  }
  int band = structural_bandwidth(op);
  std::unique_ptr<BasisNorms> p2;
  if (source.p == 2.0 || target_q == 2.0) {
    SpaceParams two = source;
    two.p = 2.0;
    p2 = std::make_unique<BasisNorms>(two, n_max + band);
  }
  std::vector<std::pair<int, double>> out;
  out.reserve(degrees.size());
  for (int n : degrees) out.emplace_back(n, probe_ratio(op, source, target_q, n, p2.get()));
  return out;
}

std::vector<SchattenRecord> schatten_diagnostic(const OperatorKind& op, const SpaceParams& sp,
                                                const std::vector<double>& p_list, int size) {
  if (p_list.empty()) throw std::invalid_argument("schatten_diagnostic: empty exponent list");
  RuleResult rule = boundedness_rule(op, 2.0, 2.0);
  if (rule.verdict != BoundednessVerdict::Compact)
    throw NotCompact("schatten_diagnostic: " + rule.rule);

  SpaceParams two = sp;
  two.p = 2.0;
  OperatorMatrix full = matrix(op, two, size);
  OperatorMatrix half = matrix(op, two, size / 2);
  int k_full = size - full.truncated_columns();
  int k_half = size / 2 - half.truncated_columns();
  std::vector<double> s_full = singular_values(full, k_full);
  std::vector<double> s_half = singular_values(half, k_half);

  // decay fit over the middle window of the large truncation
  std::vector<double> xs, ys;
  for (int n = std::max(1, size / 4); n <= size / 2; ++n) {
    if (s_full[n] <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(s_full[n]));
  }

  std::vector<SchattenRecord> records;
  for (double p : p_list) {
    SchattenRecord rec;
    rec.p = p;
    for (double s : s_half) rec.partial_sum_half += std::pow(s, p);
    for (double s : s_full) rec.partial_sum_full += std::pow(s, p);
    if (rec.partial_sum_full == 0.0) {
      rec.convergent = true;
      rec.tail_trend = 0.0;
      rec.decay_exponent = std::numeric_limits<double>::quiet_NaN();
      records.push_back(rec);
      continue;
    }
    LineFit fit = fit_line(xs, ys);
    rec.decay_exponent = fit.slope;
    double amplitude_p = std::exp(p * fit.intercept);
    double exponent = p * fit.slope + 1.0;  // tail integrand n^{p alpha}
    if (exponent < -0.02) {
      // power-law tails; compare the extrapolated totals at both truncations
      auto total = [&](double sum, int k) {
        return sum + amplitude_p * std::pow(static_cast<double>(k), exponent) / (-exponent);
      };
      double t_half = total(rec.partial_sum_half, k_half);
      double t_full = total(rec.partial_sum_full, k_full);
      rec.tail_trend = std::abs(t_full - t_half) / t_full;
      rec.convergent = rec.tail_trend < 0.01;
    } else {
      // increment of a log-divergent (or worse) sum
      double predicted = amplitude_p * std::log(static_cast<double>(k_full) / k_half);
      if (exponent > 0.02)
        predicted = amplitude_p *
                    (std::pow(static_cast<double>(k_full), exponent) -
                     std::pow(static_cast<double>(k_half), exponent)) /
                    exponent;
      rec.tail_trend = (rec.partial_sum_full - rec.partial_sum_half) / predicted;
      rec.convergent = false;
    }
    records.push_back(rec);
  }
  return records;
}

}  // namespace focklab
