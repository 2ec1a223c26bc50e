#include "focklab/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "focklab/errors.hpp"
#include "focklab/io.hpp"

namespace focklab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

FunctionSymbol twist_exponential(Complex coeff) {
  return FunctionSymbol::exp_poly(Polynomial{1.0}, Polynomial{0.0, 0.0, coeff});
}
}  // namespace

ResolventSpec::ResolventSpec(Complex a_, Complex lambda_) : a(a_), lambda(lambda_) {
  if (lambda == Complex(0.0)) throw std::invalid_argument("ResolventSpec: lambda must be nonzero");
}

Complex resolvent_apply(const ResolventSpec& spec, const FunctionSymbol& h, Complex z) {
  const Complex coeff = spec.a / spec.lambda;
  FunctionSymbol grow = twist_exponential(coeff);
  FunctionSymbol decay = twist_exponential(-coeff);
  FunctionSymbol dh = h.derivative();
  Complex integral =
      line_integral([&](Complex w) { return decay.eval(w) * dh.eval(w); }, z);
  return (h.at_zero() * grow.eval(z) + grow.eval(z) * integral) / spec.lambda;
}

std::string scan_class_name(ScanClass c) {
  switch (c) {
    case ScanClass::Spectrum: return "Spectrum";
    case ScanClass::Resolvent: return "Resolvent";
    default: return "Boundary";
  }
}

SpectrumScan spectrum_scan(Complex a, const SpaceParams& sp, const std::vector<Complex>& lambdas,
                           const std::vector<int>& truncations) {
  sp.validate();
  SpectrumScan scan;
  scan.a = a;
  scan.params = sp;
  scan.extrapolated_exponent = sp.p < 1.0;

  // The same truncated matrices serve every lambda.
  std::vector<OperatorMatrix> mats;
  if (sp.p == 2.0) {
    OperatorKind op = OperatorKind::volterra(Polynomial{0.0, 0.0, a});
    for (int n : truncations) mats.push_back(matrix(op, sp, n));
  }

  const double radius = 2.0 * std::abs(a);
  for (Complex lambda : lambdas) {
    LambdaRecord rec;
    rec.lambda = lambda;
    if (lambda == Complex(0.0)) {
      // 0 always belongs: the operators here are never boundedly invertible at 0.
      rec.classification = ScanClass::Spectrum;
      scan.records.push_back(std::move(rec));
      continue;
    }
    rec.membership = membership(twist_exponential(a / lambda), sp);
    for (std::size_t i = 0; i < mats.size(); ++i)
      rec.resolvent_norms.emplace_back(truncations[i], resolvent_norm(mats[i], lambda));

    bool near_boundary = radius > 0.0 && std::abs(std::abs(lambda) - radius) <= 0.02 * radius;
    bool norm_growth = false;
    bool norms_stable = true;
    if (!rec.resolvent_norms.empty()) {
      double first = rec.resolvent_norms.front().second;
      double last = rec.resolvent_norms.back().second;
      norm_growth = last >= 10.0 * first;
      double lo = kInf, hi = 0.0;
      for (const auto& [n, v] : rec.resolvent_norms) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      norms_stable = hi <= 1.5 * lo;
    }
    if (near_boundary) {
      rec.classification = ScanClass::Boundary;
    } else if (rec.membership.status == MembershipStatus::NonMember || norm_growth) {
      rec.classification = ScanClass::Spectrum;
    } else if (rec.membership.status == MembershipStatus::Member && norms_stable) {
      rec.classification = ScanClass::Resolvent;
    } else {
      rec.classification = ScanClass::Boundary;  // undecided edge
    }
    scan.records.push_back(std::move(rec));
  }
  return scan;
}

std::string SpectrumScan::csv() const {
  std::ostringstream out;
  out << "lambda_re,lambda_im,membership_status,growth_rate";
  std::vector<int> ns;
  if (!records.empty())
    for (const auto& [n, v] : records.front().resolvent_norms) ns.push_back(n);
  for (int n : ns) out << ",resnorm_N" << n;
  out << ",classification\n";
  for (const auto& rec : records) {
    out << format_number(rec.lambda.real()) << "," << format_number(rec.lambda.imag()) << ","
        << rec.membership.status_name() << "," << format_number(rec.membership.growth_rate);
    for (const auto& [n, v] : rec.resolvent_norms) out << "," << format_number(v);
    out << "," << scan_class_name(rec.classification) << "\n";
  }
  return out.str();
}

TwistedBoundReport twisted_paley_check(const FunctionSymbol& f, const ResolventSpec& spec,
                                       const SpaceParams& sp, const PolarGrid& grid) {
  sp.validate();
  if (!(std::abs(spec.lambda) > 2.0 * std::abs(spec.a)))
    throw std::invalid_argument("twisted_paley_check: requires |lambda| > 2|a|");
  TwistedBoundReport report;
  if (f.is_zero()) {
    report.degenerate = true;
    return report;
  }
  const double p = sp.p;
  const double m = sp.m;
  const Complex coeff = spec.a / spec.lambda;
  FunctionSymbol twisted = FunctionSymbol::exp_poly(f.prefactor(), f.exponent() + Polynomial{0.0, 0.0, coeff});
  FunctionSymbol twisted_df =
      FunctionSymbol::exp_poly(f.derivative().prefactor(),
                               f.derivative().exponent() + Polynomial{0.0, 0.0, coeff});
  double log_lhs = grid.log_integrate(
      [&](Complex z) { return p * (twisted.log_abs(z) - psi(sp, z)); });
  double log_rhs_integral = grid.log_integrate([&](Complex z) {
    double r = std::abs(z);
    double dpsi = (r * r + sp.beta * r - m) / (sp.beta + r);
    double denom = std::abs(1.0 + dpsi);
    if (denom < 1e-300) return -kInf;
    return p * (twisted_df.log_abs(z) - psi(sp, z) - std::log(denom));
  });
  report.lhs = (log_lhs == -kInf) ? 0.0 : std::exp(log_lhs);
  double rhs_integral = (log_rhs_integral == -kInf) ? 0.0 : std::exp(log_rhs_integral);
  report.rhs = std::pow(std::abs(f.at_zero()), p) + rhs_integral;
  if (report.rhs == 0.0) {
    report.degenerate = true;
    report.ratio = 0.0;
  } else {
    report.ratio = report.lhs / report.rhs;
  }
  return report;
}

CompanionSpectrumResult companion_spectrum(Complex c, Complex lambda) {
  CompanionSpectrumResult res;
  res.is_spectrum = (lambda == c);
  if (!res.is_spectrum) res.resolvent_scale = 1.0 / (lambda - c);
  return res;
}

MultiplierSpectrumResult multiplier_spectrum(Complex alpha, Complex lambda) {
  return {lambda == alpha};
}

}  // namespace focklab
