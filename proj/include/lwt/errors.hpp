#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace lwt {

// Scientific-notation formatting for error messages; std::to_string renders
// anything below 5e-7 as "0.000000", which hides the actual magnitudes.
inline std::string err_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// Base class for every error the library throws on purpose.  Numerical
// routines never return NaN silently; they throw one of the types below.
class error : public std::runtime_error {
public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

#define LWT_DEFINE_ERROR(NAME)                                   \
  class NAME : public error {                                    \
  public:                                                        \
    explicit NAME(const std::string& msg) : error(msg) {}        \
  }

LWT_DEFINE_ERROR(PoleError);              // argument at/near a Gamma pole
LWT_DEFINE_ERROR(OverflowError);          // exp(log_gamma) exceeds double range
LWT_DEFINE_ERROR(DomainError);            // argument outside the stated domain
LWT_DEFINE_ERROR(IndexError);             // index pair outside a valid range
LWT_DEFINE_ERROR(UnsupportedRank);        // rank without a calibrated parameter map
LWT_DEFINE_ERROR(DegenerateParameters);   // coincident spectral parameters
LWT_DEFINE_ERROR(ContourTruncationError); // contour tail estimate above budget
LWT_DEFINE_ERROR(ConvergenceError);       // oscillatory tail failed to converge
LWT_DEFINE_ERROR(TailBudgetExceeded);     // integration-domain tail above budget
LWT_DEFINE_ERROR(BudgetExceeded);         // refinement budget exhausted
LWT_DEFINE_ERROR(UsageError);             // bad CLI flags or config
LWT_DEFINE_ERROR(BoundaryError);          // evaluation exactly on a jump point

#undef LWT_DEFINE_ERROR

}  // namespace lwt
