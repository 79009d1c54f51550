#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fhk/types.hpp"

namespace fhk {

/// Parses `a`, `bi`, `a+bi`, `a-bi` (also `i`, `-i`). Throws ParameterError.
cplx parse_complex(std::string_view text);

/// Comma-separated list of complex literals, e.g. "0.6+0i,0-0.8i".
std::vector<cplx> parse_complex_list(std::string_view text);

/// `a+bi` with round-trip precision.
std::string format_complex(cplx z);

}  // namespace fhk
