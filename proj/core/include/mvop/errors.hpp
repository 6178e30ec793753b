#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvop {

/// Categories used by the CLI to pick an exit code and by reports to label
/// structural failures.
enum class ErrorKind {
  invalid_argument,
  singular_matrix,
  singular_moment,
  divergent_moment,
  degenerate_parameters,
  step_failure,
  iteration_diverged,
  index_out_of_range,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define MVOP_DEFINE_ERROR(Name, Kind)                          \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& what) : Error(Kind, what) {} \
  };

MVOP_DEFINE_ERROR(InvalidArgument, ErrorKind::invalid_argument)
MVOP_DEFINE_ERROR(SingularMatrix, ErrorKind::singular_matrix)
MVOP_DEFINE_ERROR(SingularMoment, ErrorKind::singular_moment)
MVOP_DEFINE_ERROR(DivergentMoment, ErrorKind::divergent_moment)
MVOP_DEFINE_ERROR(DegenerateParameters, ErrorKind::degenerate_parameters)
MVOP_DEFINE_ERROR(IterationDiverged, ErrorKind::iteration_diverged)
MVOP_DEFINE_ERROR(IndexError, ErrorKind::index_out_of_range)

#undef MVOP_DEFINE_ERROR

/// Raised by the s-flow integrator; carries the last s reached cleanly.
class StepFailure : public Error {
 public:
  StepFailure(const std::string& what, long double last_good_s)
      : Error(ErrorKind::step_failure, what), last_good_s_(last_good_s) {}
  long double last_good_s() const noexcept { return last_good_s_; }

 private:
  long double last_good_s_;
};

}  // namespace mvop
