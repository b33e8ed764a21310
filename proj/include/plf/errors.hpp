#pragma once

#include <stdexcept>
#include <string>

namespace plf {

// Every domain error carries one of the stable code strings below; the CLI
// surfaces the code verbatim so configs and reports can be grepped for it.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

struct NonOddPrime : Error {
  explicit NonOddPrime(const std::string& w) : Error("NonOddPrime", w) {}
};
struct PrecisionTooSmall : Error {
  explicit PrecisionTooSmall(const std::string& w) : Error("PrecisionTooSmall", w) {}
};
struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& w) : Error("DivisionByZero", w) {}
};
struct PrecisionLoss : Error {
  explicit PrecisionLoss(const std::string& w) : Error("PrecisionLoss", w) {}
};
struct NotNormOne : Error {
  explicit NotNormOne(const std::string& w) : Error("NotNormOne", w) {}
};
struct LevelTooDeep : Error {
  explicit LevelTooDeep(const std::string& w) : Error("LevelTooDeep", w) {}
};
struct DivideByZeroRational : Error {
  explicit DivideByZeroRational(const std::string& w) : Error("DivideByZeroRational", w) {}
};
struct ZeroArgument : Error {
  explicit ZeroArgument(const std::string& w) : Error("ZeroArgument", w) {}
};
struct NotTrivialOnF : Error {
  explicit NotTrivialOnF(const std::string& w) : Error("NotTrivialOnF", w) {}
};
struct NonStabilizingShells : Error {
  explicit NonStabilizingShells(const std::string& w) : Error("NonStabilizingShells", w) {}
};
struct DegenerateTestFunction : Error {
  explicit DegenerateTestFunction(const std::string& w) : Error("DegenerateTestFunction", w) {}
};
struct NotConstant : Error {
  explicit NotConstant(const std::string& w) : Error("NotConstant", w) {}
};
struct NormalizationMismatch : Error {
  explicit NormalizationMismatch(const std::string& w) : Error("NormalizationMismatch", w) {}
};
struct ZeroDenominator : Error {
  explicit ZeroDenominator(const std::string& w) : Error("ZeroDenominator", w) {}
};
struct BadSize : Error {
  explicit BadSize(const std::string& w) : Error("BadSize", w) {}
};
struct NotInSourceGroup : Error {
  explicit NotInSourceGroup(const std::string& w) : Error("NotInSourceGroup", w) {}
};
struct NotStabilizing : Error {
  explicit NotStabilizing(const std::string& w) : Error("NotStabilizing", w) {}
};
struct UnknownCase : Error {
  explicit UnknownCase(const std::string& w) : Error("UnknownCase", w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error("ConfigError", w) {}
};

}  // namespace plf
