#ifndef WGEO_RATIONAL_HPP
#define WGEO_RATIONAL_HPP

// Exact rational scalar support. Including this header requires linking
// against gmpxx and gmp.

#include <gmpxx.h>

#include <string>

#include "wgeo/error.hpp"
#include "wgeo/scalar.hpp"

namespace wgeo {

using Rational = mpq_class;

template <>
struct ScalarTraits<mpq_class> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";

  static mpq_class abs(const mpq_class& x) { return ::abs(x); }
  static double to_double(const mpq_class& x) { return x.get_d(); }
  /// Exact binary value of the double.
  static mpq_class from_double(double x) { return mpq_class(x); }
  static mpq_class from_int(long x) { return mpq_class(x); }
  static mpq_class from_ratio(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  static std::string dedup_key(const mpq_class& x) { return x.get_str(); }
  static std::string to_string(const mpq_class& x) { return x.get_str(); }
  static mpq_class parse(const std::string& text);
};

/// Parses "n", "n/d", or a decimal literal such as "-0.125" or "1e-3" into an
/// exact rational. Decimal literals are read as the decimal number they
/// denote, not as the nearest double.
inline mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw InputError("empty rational literal");
  if (text.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw InputError("bad rational literal '" + text + "'");
    if (q.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  }
  std::string mant = text;
  long exp10 = 0;
  if (auto e = mant.find_first_of("eE"); e != std::string::npos) {
    try {
      exp10 = std::stol(mant.substr(e + 1));
    } catch (const std::exception&) {
      throw InputError("bad exponent in '" + text + "'");
    }
    mant = mant.substr(0, e);
  }
  bool negative = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    negative = mant[0] == '-';
    mant = mant.substr(1);
  }
  std::string digits;
  if (auto dot = mant.find('.'); dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  for (char c : mant) {
    if (c < '0' || c > '9') throw InputError("bad rational literal '" + text + "'");
    digits.push_back(c);
  }
  if (digits.empty()) throw InputError("bad rational literal '" + text + "'");
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  mpq_class q = exp10 >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

inline mpq_class ScalarTraits<mpq_class>::parse(const std::string& text) { return parse_rational(text); }

}  // namespace wgeo

#endif  // WGEO_RATIONAL_HPP
