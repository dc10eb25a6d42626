#ifndef FIBDIFF_ERRORS_HPP
#define FIBDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fibdiff {

// Precondition or argument violation (parity mismatch, x = 0, non-prime, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Sequence index beyond the implementation cap.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A certified computation could not resolve at the maximum working precision.
class PrecisionExhausted : public std::runtime_error {
 public:
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

// A proof stage cannot certify its conclusion (non-numeric reasons).
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace fibdiff

#endif
