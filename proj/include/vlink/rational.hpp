#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>

#include "vlink/error.hpp"

namespace vlink {

using Rational = mpq_class;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline std::string_view strip_sign(std::string_view s, bool& negative) {
  negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  return s;
}

}  // namespace detail

/// True for literals of the form `[-]p` or `[-]p/q`; decimals return false.
inline bool is_rational_literal(std::string_view text) {
  bool neg = false;
  auto s = detail::strip_sign(text, neg);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return detail::all_digits(s);
  return detail::all_digits(s.substr(0, slash)) && detail::all_digits(s.substr(slash + 1));
}

/// Parses `p/q`, integers and decimals (`-1.25`, `3e-2`) exactly.
inline Rational parse_rational(std::string_view text) {
  bool neg = false;
  auto s = detail::strip_sign(text, neg);
  const std::string original(text);
  Rational value;

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw Error(ErrorCode::Parse, "malformed rational '" + original + "'");
    const mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + original + "'");
    value = Rational(n, d);
    value.canonicalize();
  } else {
    std::string_view mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      std::string exp_text(s.substr(e + 1));
      bool exp_neg = false;
      auto digits = detail::strip_sign(exp_text, exp_neg);
      if (!detail::all_digits(digits))
        throw Error(ErrorCode::Parse, "malformed exponent in '" + original + "'");
      exponent = std::strtol(std::string(digits).c_str(), nullptr, 10);
      if (exp_neg) exponent = -exponent;
    }
    std::string_view int_part = mantissa, frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      int_part = mantissa.substr(0, dot);
      frac_part = mantissa.substr(dot + 1);
    }
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !detail::all_digits(int_part)) ||
        (!frac_part.empty() && !detail::all_digits(frac_part)))
      throw Error(ErrorCode::Parse, "malformed number '" + original + "'");
    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class num(digits.empty() ? std::string("0") : digits);
    exponent -= static_cast<long>(frac_part.size());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    value = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
    value.canonicalize();
  }
  if (neg) value = -value;
  return value;
}

/// p/q in lowest terms.
inline Rational make_rational(long p, long q) {
  Rational out(p, q);
  out.canonicalize();
  return out;
}

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

}  // namespace vlink
