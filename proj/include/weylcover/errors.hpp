#pragma once

#include <stdexcept>
#include <string>

namespace weylcover {

// Error taxonomy. `usage` maps to CLI exit 2, `numerical` to exit 3,
// `check_failed` to exit 1.
enum class ErrorKind {
  usage,
  numerical,
  check_failed,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

private:
  ErrorKind kind_;
  std::string name_;
};

#define WEYLCOVER_DEFINE_ERROR(Name, Kind)                                     \
  class Name : public Error {                                                 \
  public:                                                                      \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, #Name, what) {} \
  }

WEYLCOVER_DEFINE_ERROR(NotSelfAdjoint, numerical);
WEYLCOVER_DEFINE_ERROR(NoConvergence, numerical);
WEYLCOVER_DEFINE_ERROR(NotUnitary, numerical);
WEYLCOVER_DEFINE_ERROR(DegenerateSpectrum, numerical);
WEYLCOVER_DEFINE_ERROR(NotPositiveDefinite, numerical);
WEYLCOVER_DEFINE_ERROR(UnknownInstance, usage);
WEYLCOVER_DEFINE_ERROR(NotGroupElement, numerical);
WEYLCOVER_DEFINE_ERROR(NotRegular, numerical);
WEYLCOVER_DEFINE_ERROR(RejectionOverflow, numerical);
WEYLCOVER_DEFINE_ERROR(CatalogCorrupt, numerical);
WEYLCOVER_DEFINE_ERROR(FiberDefect, check_failed);
WEYLCOVER_DEFINE_ERROR(EscapeDefect, check_failed);
WEYLCOVER_DEFINE_ERROR(InsufficientSamples, usage);
WEYLCOVER_DEFINE_ERROR(BadInput, usage);

#undef WEYLCOVER_DEFINE_ERROR

}  // namespace weylcover
