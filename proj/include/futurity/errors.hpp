#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace futurity {

// Domain errors carry a stable short name; the command-line layer prints the
// name on stderr and exits with status 1 when one escapes.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string name, const std::string& msg)
      : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct BadJ : DomainError {
  explicit BadJ(const std::string& m) : DomainError("BadJ", m) {}
};

struct BadPeriod : DomainError {
  explicit BadPeriod(const std::string& m) : DomainError("BadPeriod", m) {}
};

struct BadDist : DomainError {
  explicit BadDist(const std::string& m) : DomainError("BadDist", m) {}
};

struct BadPattern : DomainError {
  explicit BadPattern(const std::string& m) : DomainError("BadPattern", m) {}
};

struct BadK : DomainError {
  explicit BadK(const std::string& m) : DomainError("BadK", m) {}
};

struct SingularSystem : DomainError {
  explicit SingularSystem(const std::string& m) : DomainError("SingularSystem", m) {}
};

struct DegenerateVariance : DomainError {
  explicit DegenerateVariance(const std::string& m) : DomainError("DegenerateVariance", m) {}
};

struct SpecParseError : DomainError {
  explicit SpecParseError(const std::string& m) : DomainError("SpecParseError", m) {}
};

}  // namespace futurity
