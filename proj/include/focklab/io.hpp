#pragma once

#include <string>
#include <vector>

#include "focklab/symbols.hpp"

namespace focklab {

// Complex literals of the form "re+imi": "2", "-1.5", "i", "-i", "2i",
// "1+2i", "1-2i", "1e-3+2.5i".  Throws ConfigError on malformed input.
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

// Symbol syntax: "poly:[c0,c1,...]" and "exppoly:[p-coeffs]|[q-coeffs]"
// with complex entries as above.
FunctionSymbol parse_symbol(const std::string& text);
Polynomial parse_polynomial_list(const std::string& bracketed);
std::string format_symbol(const FunctionSymbol& f);

// Deterministic number formatting for CSV bodies.
std::string format_number(double x);

// FNV-1a 64-bit hash, hex-encoded; used for config provenance.
std::string fnv1a_hex(const std::string& data);

}  // namespace focklab
