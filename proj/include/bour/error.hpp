#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bour {

enum class Errc {
  syntax,
  unknown_identifier,
  non_integer_exponent,
  domain,
  not_divisible,
  invalid_argument,
  non_vanishing_low_derivative,
  non_positive_u,
  star_violation,
  negative_radicand,
  quadrature_failure,
  ladder_violated,
  not_diffeo,
  wrong_multiplicity,
  unsupported_k,
  no_convergence,
  not_generic,
};

const char* errc_name(Errc code);

// Shortest representation that round-trips; used in messages and file names.
std::string format_short(double v);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Parse failures carry the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(Errc code, std::size_t offset, const std::string& what);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace bour
