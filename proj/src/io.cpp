#include "focklab/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "focklab/errors.hpp"

namespace focklab {

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double parse_real_part(const std::string& s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("parse_complex: bad number '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("parse_complex: trailing characters in '" + s + "'");
  return v;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s = strip(text);
  if (s.empty()) throw ConfigError("parse_complex: empty literal");
  bool has_i = (s.back() == 'i' || s.back() == 'I');
  if (!has_i) return Complex(parse_real_part(s), 0.0);
  s.pop_back();
  // Split at the last top-level +/- that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    char c = s[k];
    if ((c == '+' || c == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return Complex(0.0, parse_real_part(s));
  std::string re = strip(s.substr(0, split));
  std::string im = strip(s.substr(split));
  return Complex(parse_real_part(re), parse_real_part(im));
}

std::string format_complex(Complex z) {
  std::ostringstream out;
  out << format_number(z.real());
  out << (z.imag() < 0 ? "-" : "+") << format_number(std::abs(z.imag())) << "i";
  return out.str();
}

Polynomial parse_polynomial_list(const std::string& bracketed) {
  std::string s = strip(bracketed);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ConfigError("parse_symbol: expected bracketed coefficient list, got '" + bracketed + "'");
  std::string inner = s.substr(1, s.size() - 2);
  std::vector<Complex> coeffs;
  if (!strip(inner).empty()) {
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) coeffs.push_back(parse_complex(item));
  }
  return Polynomial(std::move(coeffs));
}

FunctionSymbol parse_symbol(const std::string& text) {
  std::string s = strip(text);
  if (s.rfind("poly:", 0) == 0) return FunctionSymbol::poly(parse_polynomial_list(s.substr(5)));
  if (s.rfind("exppoly:", 0) == 0) {
    std::string rest = s.substr(8);
    std::size_t bar = rest.find('|');
    if (bar == std::string::npos)
      throw ConfigError("parse_symbol: exppoly needs '[p]|[q]' parts in '" + text + "'");
    return FunctionSymbol::exp_poly(parse_polynomial_list(rest.substr(0, bar)),
                                    parse_polynomial_list(rest.substr(bar + 1)));
  }
  throw ConfigError("parse_symbol: unknown symbol syntax '" + text + "'");
}

std::string format_symbol(const FunctionSymbol& f) {
  auto list = [](const Polynomial& p) {
    std::string out = "[";
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
      if (k) out += ",";
      out += format_complex(p.coeffs()[k]);
    }
    return out + "]";
  };
  if (f.is_poly()) return "poly:" + list(f.prefactor());
  return "exppoly:" + list(f.prefactor()) + "|" + list(f.exponent());
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace focklab
