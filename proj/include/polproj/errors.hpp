#ifndef POLPROJ_ERRORS_HPP
#define POLPROJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polproj {

enum class Errc {
  NonPrime,
  OrderTooLarge,
  DivisionByZero,
  NoInvolution,
  DimensionMismatch,
  WrongKind,
  TooLarge,
  NotOpposite,
  NotContained,
  BadDimension,
  NoSuchP3,
  DegenerateD,
  NotAHomology,
  Singular,
  DegreeMismatch,
  NotSubgroup,
  UnknownFamily,
  DisconnectedOppositionGraph,
  ConditionNotMet,
  NoConfigurationFound,
  ParseError,
  SemanticError,
  UnknownCheck,
  IoError,
  Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace polproj

#endif
