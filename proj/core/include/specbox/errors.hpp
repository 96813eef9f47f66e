#pragma once

#include <stdexcept>
#include <string>

namespace specbox {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotHermitian : public Error {
public:
  explicit NotHermitian(const std::string& what) : Error(what) {}
};

class NotSquare : public Error {
public:
  explicit NotSquare(const std::string& what) : Error(what) {}
};

class TooLarge : public Error {
public:
  explicit TooLarge(const std::string& what) : Error(what) {}
};

class NonConvergence : public Error {
public:
  explicit NonConvergence(const std::string& what) : Error(what) {}
};

class IndexOutsideRange : public Error {
public:
  explicit IndexOutsideRange(const std::string& what) : Error(what) {}
};

class BandWidthExceeded : public Error {
public:
  explicit BandWidthExceeded(const std::string& what) : Error(what) {}
};

class EmptyFamily : public Error {
public:
  explicit EmptyFamily(const std::string& what) : Error(what) {}
};

class EmptyWindow : public Error {
public:
  explicit EmptyWindow(const std::string& what) : Error(what) {}
};

class TooMany : public Error {
public:
  explicit TooMany(const std::string& what) : Error(what) {}
};

class NegativeDelta : public Error {
public:
  explicit NegativeDelta(const std::string& what) : Error(what) {}
};

class EmptySet : public Error {
public:
  explicit EmptySet(const std::string& what) : Error(what) {}
};

class AllZeroWeights : public Error {
public:
  explicit AllZeroWeights(const std::string& what) : Error(what) {}
};

class PeriodMismatch : public Error {
public:
  explicit PeriodMismatch(const std::string& what) : Error(what) {}
};

class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace specbox
