#pragma once

#include <cmath>
#include <stdexcept>

namespace fsosec {

inline constexpr double kPi = 3.14159265358979323846;

/// Converts a decibel value to a linear power ratio.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Converts a linear power ratio (> 0) to decibels.
inline double linear_to_db(double linear) {
  if (!(linear > 0.0))
    throw std::domain_error("linear_to_db: ratio must be positive");
  return 10.0 * std::log10(linear);
}

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::domain_error(std::string(what) + ": value must be finite");
}

}  // namespace fsosec
