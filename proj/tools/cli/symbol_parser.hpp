#pragma once

#include <stdexcept>
#include <string>

#include "shiftreal/symbols.hpp"

namespace shiftreal::cli {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "1.5", "-2i", "0.5-3i", "1e-3+2e-1i"
cplx parse_complex(const std::string& text);

/// rational:n0,n1,.../d0,d1,...   delay:TAU   blaschke:z1,z2,...
/// matinner:FILE (JSON with "a0" and "b"; entries real or [re, im])
/// product:(SYM;SYM;...)
/// Coefficients are in ascending powers of s.
TransferSymbol parse_symbol(const std::string& text);

}  // namespace shiftreal::cli
