#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surf4 {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// chart
class DomainError : public Error { public: using Error::Error; };
class EvalError : public Error { public: using Error::Error; };
class DegenerateMetric : public Error { public: using Error::Error; };

// exprlang
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error("syntax error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset) {}

  /// Byte offset into the parsed text.
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public SyntaxError { public: using SyntaxError::SyntaxError; };

// invariants
class InternalInconsistency : public Error { public: using Error::Error; };
class PrincipalUndefined : public Error { public: using Error::Error; };
class NotFlatPoint : public Error { public: using Error::Error; };

// frenet
class NotGeneralType : public Error { public: using Error::Error; };
class GaugeBreak : public Error { public: using Error::Error; };

// catalog
class ArcLengthViolation : public Error { public: using Error::Error; };
class NonPositiveRadius : public Error { public: using Error::Error; };
class CurvatureVanishes : public Error { public: using Error::Error; };
class InfeasibleProfile : public Error { public: using Error::Error; };
class DegenerateRuling : public Error { public: using Error::Error; };
class UnknownFixture : public Error { public: using Error::Error; };

// cli
class InputError : public Error { public: using Error::Error; };

}  // namespace surf4
