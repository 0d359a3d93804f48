#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qwalk/core.hpp"

namespace qwalk::cli {

namespace detail {

inline double parse_number(std::string_view text, std::string_view whole) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw std::invalid_argument("cannot parse angle '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace detail

/**
 * Radians, either as a decimal ("0.5236") or as a multiple of pi:
 * "pi", "pi/6", "2pi/3", "2*pi/3", "0.25pi".  The pi forms are evaluated as
 * (k * pi) / d in double precision, so "pi/4" is exactly pi/4.0.
 */
inline double parse_angle(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  const auto at = s.find("pi");
  if (at == std::string::npos) return detail::parse_number(s, text);

  std::string_view coef(s.data(), at);
  if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
  std::string_view rest(s.data() + at + 2, s.size() - at - 2);
  const double k = coef.empty() ? 1.0 : detail::parse_number(coef, text);
  double value = k * pi;
  if (!rest.empty()) {
    if (rest.front() != '/') throw std::invalid_argument("cannot parse angle '" + std::string(text) + "'");
    rest.remove_prefix(1);
    const double d = detail::parse_number(rest, text);
    if (d == 0.0) throw std::invalid_argument("zero denominator in angle '" + std::string(text) + "'");
    value /= d;
  }
  return value;
}

/// Largest distance outside [lo, hi] that is still read as the endpoint itself.
inline constexpr double kAngleSnap = 1e-4;

/**
 * Decimal input such as 1.5708 lands slightly outside [0, pi/2]; values within
 * kAngleSnap of an endpoint are moved onto it, anything further is left for
 * CoinParameters to reject.
 */
inline double snap_to_range(double value, double lo, double hi) {
  if (value < lo && lo - value <= kAngleSnap) return lo;
  if (value > hi && value - hi <= kAngleSnap) return hi;
  return value;
}

}  // namespace qwalk::cli
