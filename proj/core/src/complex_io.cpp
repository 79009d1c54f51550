#include "fhk/complex_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>

#include "fhk/errors.hpp"

namespace fhk {
namespace {

double parse_real(std::string_view s, std::string_view whole) {
  if (s == "" || s == "+") return 1.0;
  if (s == "-") return -1.0;
  const std::string buf(s);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE)
    throw ParameterError("malformed complex literal '" + std::string(whole) + "'");
  return v;
}

}  // namespace

cplx parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw ParameterError("empty complex literal");
  const std::string_view sv(s);
  if (sv.back() != 'i') {
    const double re = parse_real(sv, text);
    if (sv == "+" || sv == "-") throw ParameterError("malformed complex literal '" + std::string(text) + "'");
    return {re, 0.0};
  }
  const std::string_view body = sv.substr(0, sv.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_real(body, text)};
  const std::string_view re_part = body.substr(0, split);
  if (re_part.empty()) throw ParameterError("malformed complex literal '" + std::string(text) + "'");
  const double re = parse_real(re_part, text);
  if (re_part == "+" || re_part == "-") throw ParameterError("malformed complex literal '" + std::string(text) + "'");
  return {re, parse_real(body.substr(split), text)};
}

std::vector<cplx> parse_complex_list(std::string_view text) {
  std::vector<cplx> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t stop = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_complex(text.substr(start, stop - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_complex(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

}  // namespace fhk
