#ifndef SPINLAB_ERROR_HPP_
#define SPINLAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace spinlab {

// Every failure raised by the core carries one of these codes. The C API
// returns them unchanged as spinlab_status values, so the numbering is ABI.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kConfigSyntax = 2,
  kNotAutomorphism = 3,    // sigma fails to generate a cyclic Galois group
  kEvenDegree = 4,         // n even or below 3
  kEvenClassNumber = 5,    // configured h is even
  kC4Violation = 6,        // f reducible mod 2
  kBadUnit = 7,
  kBadDiscriminant = 8,
  kRamifiedPrime = 9,
  kGeneratorNotFound = 10,
  kAmbiguousSign = 11,
  kConsistency = 12,       // spin relation / R-membership disagreement
  kIo = 13,
  kInternal = 14,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace spinlab

#endif  // SPINLAB_ERROR_HPP_
