#ifndef WGEO_SCALAR_HPP
#define WGEO_SCALAR_HPP

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "wgeo/error.hpp"

namespace wgeo {

/// Arithmetic policy for a scalar field. Every algorithm in the library is
/// written against this interface so the same code runs in binary floating
/// point and, via <wgeo/rational.hpp>, in exact rational arithmetic.
///
/// Exact scalars ignore every tolerance argument: comparisons are exact.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "double";

  /// Pivot threshold for elimination and the simplex method.
  static constexpr double eps = 1e-11;

  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static double from_int(long x) { return static_cast<double>(x); }
  static double from_ratio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  /// Key used for deduplication: 12 decimal digits.
  static std::string dedup_key(double x) {
    double r = std::round(x * 1e12) / 1e12;
    if (r == 0.0) r = 0.0;  // fold -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", r);
    return buf;
  }

  static std::string to_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }

  /// Parses "n/d" or a decimal literal.
  static double parse(const std::string& text) {
    try {
      std::size_t used = 0;
      if (auto slash = text.find('/'); slash != std::string::npos) {
        double num = std::stod(text.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument(text);
        const std::string den_text = text.substr(slash + 1);
        double den = std::stod(den_text, &used);
        if (used != den_text.size() || den == 0.0) throw std::invalid_argument(text);
        return num / den;
      }
      double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw InputError("bad number literal '" + text + "'");
    }
  }
};

template <class S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

template <class S>
S abs_value(const S& x) {
  return ScalarTraits<S>::abs(x);
}

/// |x| <= tol, or x == 0 for exact scalars.
template <class S>
bool near_zero(const S& x, double tol) {
  if constexpr (is_exact_v<S>) {
    return x == 0;
  } else {
    return ScalarTraits<S>::abs(x) <= tol;
  }
}

/// |a - b| <= tol, or a == b for exact scalars.
template <class S>
bool near_equal(const S& a, const S& b, double tol) {
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    return ScalarTraits<S>::abs(a - b) <= tol;
  }
}

/// a >= b - tol, or a >= b for exact scalars.
template <class S>
bool at_least(const S& a, const S& b, double tol) {
  if constexpr (is_exact_v<S>) {
    return a >= b;
  } else {
    return a >= b - tol;
  }
}

/// a > b + tol, or a > b for exact scalars.
template <class S>
bool clearly_greater(const S& a, const S& b, double tol) {
  if constexpr (is_exact_v<S>) {
    return a > b;
  } else {
    return a > b + tol;
  }
}

template <class S>
double to_double(const S& x) {
  return ScalarTraits<S>::to_double(x);
}

}  // namespace wgeo

#endif  // WGEO_SCALAR_HPP
