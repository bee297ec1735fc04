#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/rational.hpp>

#include "widthlab/errors.hpp"

namespace widthlab {

using Rational = boost::rational<std::int64_t>;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return boost::rational_cast<double>(v); }

/// An extended exponent p in [1, inf], stored through its reciprocal 1/p.
///
/// The reciprocal of the dual exponent is stored alongside, so dual() is a swap
/// and dual(dual(e)) reproduces e bit for bit. Ordering operators compare
/// exponents by p (so p = inf is the largest), using the exact reciprocals.
template <class T>
class BasicExponent {
 public:
  BasicExponent() = default;

  static BasicExponent from_reciprocal(T recip) {
    if (!(recip >= T(0) && recip <= T(1))) {
      throw domain_error("exponent reciprocal must lie in [0, 1]");
    }
    return BasicExponent(recip, T(1) - recip);
  }

  static BasicExponent from_value(T p) {
    if (!(p >= T(1))) throw domain_error("exponent p must satisfy p >= 1");
    if constexpr (std::is_floating_point_v<T>) {
      if (std::isinf(p)) return infinity();
    }
    return from_reciprocal(T(1) / p);
  }

  static BasicExponent infinity() { return BasicExponent(T(0), T(1)); }

  const T& reciprocal() const noexcept { return recip_; }
  const T& dual_reciprocal() const noexcept { return conj_; }
  bool is_infinite() const noexcept { return recip_ == T(0); }
  bool is_one() const noexcept { return recip_ == T(1); }

  /// p as a double; +inf when the exponent is infinite.
  double value() const {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return 1.0 / to_double(recip_);
  }

  BasicExponent dual() const noexcept { return BasicExponent(conj_, recip_); }

  friend bool operator==(const BasicExponent& a, const BasicExponent& b) { return a.recip_ == b.recip_; }
  friend bool operator!=(const BasicExponent& a, const BasicExponent& b) { return !(a == b); }
  friend bool operator<(const BasicExponent& a, const BasicExponent& b) { return a.recip_ > b.recip_; }
  friend bool operator>(const BasicExponent& a, const BasicExponent& b) { return b < a; }
  friend bool operator<=(const BasicExponent& a, const BasicExponent& b) { return !(b < a); }
  friend bool operator>=(const BasicExponent& a, const BasicExponent& b) { return !(a < b); }

 private:
  BasicExponent(T recip, T conj) : recip_(recip), conj_(conj) {}

  T recip_ = T(1) / T(2);
  T conj_ = T(1) / T(2);
};

using Exponent = BasicExponent<double>;
using ExactExponent = BasicExponent<Rational>;

template <class T>
BasicExponent<T> dual_exponent(const BasicExponent<T>& e) {
  return e.dual();
}

inline Exponent to_double(const ExactExponent& e) {
  return Exponent::from_reciprocal(to_double(e.reciprocal()));
}

/// Interpolation parameter lambda with 1/q = (1 - lambda)/p_i + lambda/p_j.
///
/// Requires p_i <= q <= p_j and p_i != p_j.
template <class T>
T solve_lambda(const BasicExponent<T>& p_i, const BasicExponent<T>& p_j, const BasicExponent<T>& q) {
  if (p_i == p_j) throw domain_error("solve_lambda: p_i and p_j coincide");
  if (!(p_i <= q && q <= p_j)) throw domain_error("solve_lambda: q must lie between p_i and p_j");
  return (p_i.reciprocal() - q.reciprocal()) / (p_i.reciprocal() - p_j.reciprocal());
}

/// The exponent whose reciprocal is (1 - lambda)/p_i + lambda/p_j.
template <class T>
BasicExponent<T> interpolate(const BasicExponent<T>& p_i, const BasicExponent<T>& p_j, T lambda) {
  T r = (T(1) - lambda) * p_i.reciprocal() + lambda * p_j.reciprocal();
  if constexpr (std::is_floating_point_v<T>) r = std::clamp(r, T(0), T(1));
  return BasicExponent<T>::from_reciprocal(r);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool is_infinity_literal(std::string_view s) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return lower == "inf" || lower == "infinity" || lower == "+inf";
}

inline std::int64_t parse_int64(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw parse_error("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

/// Parses "a/b", an integer, or a plain decimal such as "1.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.empty()) throw parse_error("empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t num = detail::parse_int64(s.substr(0, slash));
    std::int64_t den = detail::parse_int64(s.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_point = false;
  int digits = 0;
  for (char c : s) {
    if (c == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw parse_error("not an exact decimal or fraction: '" + std::string(text) + "'");
    }
    if (++digits > 18) throw parse_error("too many digits for exact parsing: '" + std::string(text) + "'");
    num = num * 10 + (c - '0');
    if (seen_point) den *= 10;
  }
  if (digits == 0) throw parse_error("not a number: '" + std::string(text) + "'");
  return Rational(negative ? -num : num, den);
}

inline double parse_real(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.find('/') != std::string_view::npos) return to_double(parse_rational(s));
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw parse_error("not a number: '" + std::string(text) + "'");
  }
  return v;
}

/// Accepts "inf", a fraction "a/b", or a decimal.
inline Exponent parse_exponent(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (detail::is_infinity_literal(s)) return Exponent::infinity();
  double p = parse_real(s);
  if (!(p >= 1.0)) throw parse_error("exponent must be >= 1, got '" + std::string(s) + "'");
  return Exponent::from_value(p);
}

inline ExactExponent parse_exact_exponent(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (detail::is_infinity_literal(s)) return ExactExponent::infinity();
  Rational p = parse_rational(s);
  if (p < Rational(1)) throw parse_error("exponent must be >= 1, got '" + std::string(s) + "'");
  return ExactExponent::from_value(p);
}

/// Twelve significant digits, the precision used in every output document.
inline std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_exponent(const Exponent& e) {
  return e.is_infinite() ? std::string("inf") : format_real(e.value());
}

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline std::string format_exponent(const ExactExponent& e) {
  return e.is_infinite() ? std::string("inf") : format_rational(Rational(1) / e.reciprocal());
}

}  // namespace widthlab
