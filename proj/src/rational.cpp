#include "infotop/rational.hpp"

#include <cctype>
#include <cstdio>
#include <cstring>

#include "infotop/error.hpp"

namespace infotop {

namespace {

// Explicit base 10: the mpz string constructor otherwise auto-detects and
// reads a leading zero as octal.
Int int_base10(const std::string& digits) { return Int(digits, 10); }

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::NotInUniverse: return "NotInUniverse";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::GroundMismatch: return "GroundMismatch";
    case ErrorCode::ScaleOutOfRange: return "ScaleOutOfRange";
    case ErrorCode::AmbiguousWitness: return "AmbiguousWitness";
    case ErrorCode::NotATopology: return "NotATopology";
    case ErrorCode::EmptyInteriorFamily: return "EmptyInteriorFamily";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::NoComplement: return "NoComplement";
    case ErrorCode::NonUniqueComplement: return "NonUniqueComplement";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::TargetMismatch: return "TargetMismatch";
    case ErrorCode::NonCommutativeMeet: return "NonCommutativeMeet";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::NotIntertwining: return "NotIntertwining";
    case ErrorCode::NotHomeomorphism: return "NotHomeomorphism";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::IncompatibleIndexSets: return "IncompatibleIndexSets";
    case ErrorCode::Undecidable: return "Undecidable";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::MethodSetMismatch: return "MethodSetMismatch";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

Rat parse_rational(const std::string& token) {
  if (token.empty()) raise(ErrorCode::SyntaxError, "empty numeric token");
  const auto slash = token.find('/');
  if (slash != std::string::npos) {
    const std::string num = token.substr(0, slash);
    const std::string den = token.substr(slash + 1);
    if (num.empty() || den.empty())
      raise(ErrorCode::SyntaxError, "malformed fraction '" + token + "'");
    try {
      Int n = int_base10(num), d = int_base10(den);
      if (d == 0) raise(ErrorCode::SyntaxError, "zero denominator in '" + token + "'");
      Rat value{n, d};
      value.canonicalize();
      return value;
    } catch (const std::invalid_argument&) {
      raise(ErrorCode::SyntaxError, "malformed fraction '" + token + "'");
    }
  }
  const auto dot = token.find('.');
  if (dot != std::string::npos) {
    std::string digits = token.substr(0, dot) + token.substr(dot + 1);
    const std::size_t frac_digits = token.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      raise(ErrorCode::SyntaxError, "malformed decimal '" + token + "'");
    for (std::size_t i = 0; i < digits.size(); ++i) {
      const char c = digits[i];
      if (!(std::isdigit(static_cast<unsigned char>(c)) ||
            (i == 0 && (c == '-' || c == '+'))))
        raise(ErrorCode::SyntaxError, "malformed decimal '" + token + "'");
    }
    Int num = int_base10(digits);
    Int den = 1;
    for (std::size_t i = 0; i < frac_digits; ++i) den *= 10;
    Rat value(num, den);
    value.canonicalize();
    return value;
  }
  try {
    return Rat(int_base10(token));
  } catch (const std::invalid_argument&) {
    raise(ErrorCode::SyntaxError, "malformed number '" + token + "'");
  }
}

std::string rational_to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_decimal(double value) {
  if (value == 0.0) return "0";  // normalizes -0 as well
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string format_decimal(const Rat& value) { return format_decimal(value.get_d()); }

Int floor_rat(const Rat& value) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
  return q;
}

}  // namespace infotop
