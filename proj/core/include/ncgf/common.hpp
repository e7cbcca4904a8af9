#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ncgf {

inline constexpr const char* kVersion = "ncgf 0.1.0";

using Complex = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

struct GroupMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested point sits at or beyond the principal domain of the logarithm.
struct CutLocusError : std::domain_error {
  using std::domain_error::domain_error;
};

struct OutOfDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct OutOfRangeError : std::domain_error {
  using std::domain_error::domain_error;
};

struct GridMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Distributional object evaluated where it is not a regular function.
struct NotRegularError : std::domain_error {
  using std::domain_error::domain_error;
};

struct UnsupportedChartError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ChartAnomalyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ncgf
