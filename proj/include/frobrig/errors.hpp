#ifndef FROBRIG_ERRORS_HPP
#define FROBRIG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frobrig {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPrime : Error {
  explicit NotPrime(const std::string& m) : Error("not prime: " + m) {}
};
struct ReducibleModulus : Error {
  explicit ReducibleModulus(const std::string& m) : Error("reducible modulus: " + m) {}
};
struct DegreeMismatch : Error {
  explicit DegreeMismatch(const std::string& m) : Error("degree mismatch: " + m) {}
};
struct DivideByZero : Error {
  DivideByZero() : Error("division by zero field element") {}
};
struct CtxMismatch : Error {
  CtxMismatch() : Error("operands belong to different field contexts") {}
};
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& m) : Error("enumeration budget exceeded: " + m) {}
};
struct ExponentOverflow : Error {
  explicit ExponentOverflow(const std::string& m) : Error("exponent cap exceeded: " + m) {}
};
struct NegativeExponentInOuter : Error {
  NegativeExponentInOuter() : Error("outer polynomial of a composition must have nonnegative exponents") {}
};
struct ZeroAtPole : Error {
  ZeroAtPole() : Error("evaluation at 0 of a polynomial with negative exponents") {}
};
struct ConstantInput : Error {
  ConstantInput() : Error("constant polynomial where a nonconstant one is required") {}
};
struct ZeroPolynomial : Error {
  ZeroPolynomial() : Error("zero polynomial not allowed here") {}
};
struct ZeroParameter : Error {
  ZeroParameter() : Error("family parameter must be nonzero") {}
};
struct DivideByZeroSeries : Error {
  DivideByZeroSeries() : Error("division by a series that is zero to working precision") {}
};
struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& m) : Error("precision exhausted: " + m) {}
};
struct ConstantMap : Error {
  ConstantMap() : Error("map must be nonconstant") {}
};
struct InseparableMap : Error {
  InseparableMap() : Error("map has identically zero derivative; strip p-th powers first") {}
};
struct DegenerateGraph : Error {
  explicit DegenerateGraph(const std::string& m) : Error("degenerate twisted graph: " + m) {}
};
struct InconsistencyDetected : Error {
  explicit InconsistencyDetected(const std::string& m) : Error("internal consistency violation: " + m) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("parse error: " + m) {}
};
struct CoefficientOutOfField : Error {
  explicit CoefficientOutOfField(const std::string& m) : Error("coefficient not in field: " + m) {}
};
struct UsageError : Error {
  explicit UsageError(const std::string& m) : Error("usage: " + m) {}
};

}  // namespace frobrig

#endif
