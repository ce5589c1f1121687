#pragma once

#include <stdexcept>
#include <string>

namespace schubcell {

// All library errors derive from Error; `code()` is a stable machine-readable
// tag used by the CLI to map failures to exit status 2 messages.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct MalformedPermutationError : Error {
  explicit MalformedPermutationError(const std::string& what)
      : Error("malformed-permutation", what) {}
};

struct NoReductionError : Error {
  explicit NoReductionError(const std::string& what) : Error("no-reduction", what) {}
};

struct ZeroDivisorError : Error {
  explicit ZeroDivisorError(const std::string& what) : Error("zero-divisor", what) {}
};

struct PoleError : Error {
  explicit PoleError(const std::string& what) : Error("pole", what) {}
};

struct InvalidEndpointError : Error {
  explicit InvalidEndpointError(const std::string& what) : Error("invalid-endpoint", what) {}
};

struct DegenerateDecompositionError : Error {
  explicit DegenerateDecompositionError(const std::string& what)
      : Error("degenerate-decomposition", what) {}
};

struct DivergentRegionError : Error {
  explicit DivergentRegionError(const std::string& what) : Error("divergent-region", what) {}
};

struct InsufficientRegularizationError : Error {
  explicit InsufficientRegularizationError(const std::string& what)
      : Error("insufficient-regularization", what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse", what) {}
};

struct RangeError : Error {
  explicit RangeError(const std::string& what) : Error("out-of-range", what) {}
};

}  // namespace schubcell
