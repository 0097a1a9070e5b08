#include "bour/error.hpp"

#include <charconv>

namespace bour {

std::string format_short(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::syntax: return "SyntaxError";
    case Errc::unknown_identifier: return "UnknownIdentifier";
    case Errc::non_integer_exponent: return "NonIntegerExponent";
    case Errc::domain: return "DomainError";
    case Errc::not_divisible: return "NotDivisible";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::non_vanishing_low_derivative: return "NonVanishingLowDerivative";
    case Errc::non_positive_u: return "NonPositiveU";
    case Errc::star_violation: return "StarViolation";
    case Errc::negative_radicand: return "NegativeRadicand";
    case Errc::quadrature_failure: return "QuadratureFailure";
    case Errc::ladder_violated: return "LadderViolated";
    case Errc::not_diffeo: return "NotDiffeo";
    case Errc::wrong_multiplicity: return "WrongMultiplicity";
    case Errc::unsupported_k: return "UnsupportedK";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::not_generic: return "NotGeneric";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

ParseError::ParseError(Errc code, std::size_t offset, const std::string& what)
    : Error(code, what + " at offset " + std::to_string(offset)), offset_(offset) {}

}  // namespace bour
