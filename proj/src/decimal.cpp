/*
 * Copyright 2026 The cloudsel Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cloudsel/decimal.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace cloudsel {

namespace {

using Wide = boost::multiprecision::cpp_int;

const Wide& pow10(int n) {
  static const auto table = [] {
    std::array<Wide, 80> t;
    t[0] = 1;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * 10;
    return t;
  }();
  if (n < 0 || n >= static_cast<int>(table.size())) throw std::overflow_error("decimal exponent out of range");
  return table[static_cast<std::size_t>(n)];
}

Wide to_wide(Decimal::Raw v) {
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Wide w = static_cast<std::uint64_t>(mag >> 64);
  w <<= 64;
  w += static_cast<std::uint64_t>(mag);
  return neg ? Wide(-w) : w;
}

Decimal::Raw from_wide(const Wide& w) {
  static const Wide kMax = to_wide(std::numeric_limits<Decimal::Raw>::max());
  static const Wide kMin = to_wide(std::numeric_limits<Decimal::Raw>::min());
  if (w > kMax || w < kMin) throw std::overflow_error("decimal overflow");
  const bool neg = w < 0;
  Wide mag = neg ? Wide(-w) : w;
  const auto hi = static_cast<std::uint64_t>(mag >> 64);
  const auto lo = static_cast<std::uint64_t>(mag & Wide(std::numeric_limits<std::uint64_t>::max()));
  unsigned __int128 u = (static_cast<unsigned __int128>(hi) << 64) | lo;
  if (neg) return static_cast<Decimal::Raw>(~u + 1);
  return static_cast<Decimal::Raw>(u);
}

// Integer division rounding half to even.
Wide div_half_even(const Wide& num, const Wide& den) {
  Wide q = num / den;
  Wide r = num % den;
  if (r == 0) return q;
  Wide twice = abs(r) * 2;
  Wide ad = abs(den);
  const bool negative = (num < 0) != (den < 0);
  if (twice > ad || (twice == ad && (q % 2) != 0)) q += negative ? -1 : 1;
  return q;
}

// Integer division rounding half away from zero.
Wide div_half_up(const Wide& num, const Wide& den) {
  Wide q = num / den;
  Wide r = num % den;
  if (r == 0) return q;
  const bool negative = (num < 0) != (den < 0);
  if (abs(r) * 2 >= abs(den)) q += negative ? -1 : 1;
  return q;
}

std::string unsigned_digits(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace

Decimal Decimal::parse(std::string_view text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  Wide digits = 0;
  int frac_len = 0;
  int n_digits = 0;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      ++n_digits;
      if (seen_dot) ++frac_len;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (n_digits == 0) throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
  int exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    const auto* first = text.data() + i;
    const auto* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr == first) {
      throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    }
    i = static_cast<std::size_t>(ptr - text.data());
  }
  if (i != text.size()) throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
  if (exponent > 40 || exponent < -60) throw std::overflow_error("decimal exponent out of range");

  const int shift = kScale - frac_len + exponent;
  Wide raw = shift >= 0 ? Wide(digits * pow10(shift)) : div_half_even(digits, pow10(-shift));
  if (neg) raw = -raw;
  return from_raw(from_wide(raw));
}

std::optional<Decimal> Decimal::try_parse(std::string_view text) noexcept {
  try {
    return parse(text);
  } catch (...) {
    return std::nullopt;
  }
}

Decimal Decimal::from_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::invalid_argument("cannot represent double as decimal");
  return parse(std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data())));
}

double Decimal::to_double() const {
  const std::string s = to_string();
  double out = 0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

std::string Decimal::to_string() const {
  std::string s = to_string(kScale);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s == "-0" ? "0" : s;
}

std::string Decimal::to_string(int digits) const {
  digits = std::clamp(digits, 0, kScale);
  const Raw rounded = round(digits).raw_;
  const bool neg = rounded < 0;
  const unsigned __int128 mag =
      neg ? static_cast<unsigned __int128>(-(rounded + 1)) + 1 : static_cast<unsigned __int128>(rounded);
  const auto one = static_cast<unsigned __int128>(kOne);
  std::string out = neg ? "-" : "";
  out += unsigned_digits(mag / one);
  if (digits > 0) {
    std::string frac = unsigned_digits(mag % one);
    frac.insert(0, static_cast<std::size_t>(kScale) - frac.size(), '0');
    out += '.';
    out += frac.substr(0, static_cast<std::size_t>(digits));
  }
  return out;
}

Decimal Decimal::round(int digits) const {
  digits = std::clamp(digits, 0, kScale);
  if (digits == kScale) return *this;
  const Wide unit = pow10(kScale - digits);
  return from_raw(from_wide(div_half_up(to_wide(raw_), unit) * unit));
}

Decimal Decimal::floor() const {
  Raw q = raw_ / kOne;
  if (raw_ % kOne != 0 && raw_ < 0) --q;
  return from_raw(q * kOne);
}

Decimal Decimal::ceil() const {
  Raw q = raw_ / kOne;
  if (raw_ % kOne != 0 && raw_ > 0) ++q;
  return from_raw(q * kOne);
}

int Decimal::fractional_digits() const {
  Raw frac = raw_ % kOne;
  if (frac == 0) return 0;
  int digits = kScale;
  while (frac % 10 == 0) {
    frac /= 10;
    --digits;
  }
  return digits;
}

Decimal& Decimal::operator+=(Decimal o) {
  if (__builtin_add_overflow(raw_, o.raw_, &raw_)) throw std::overflow_error("decimal overflow");
  return *this;
}

Decimal& Decimal::operator-=(Decimal o) {
  if (__builtin_sub_overflow(raw_, o.raw_, &raw_)) throw std::overflow_error("decimal overflow");
  return *this;
}

Decimal& Decimal::operator*=(Decimal o) {
  Raw product = 0;
  if (!__builtin_mul_overflow(raw_, o.raw_, &product)) {
    // Fast path: the raw product fits, round it back down to scale.
    Raw q = product / kOne;
    Raw r = product % kOne;
    if (r != 0) {
      Raw twice = (r < 0 ? -r : r) * 2;
      if (twice > kOne || (twice == kOne && (q % 2) != 0)) q += product < 0 ? -1 : 1;
    }
    raw_ = q;
    return *this;
  }
  raw_ = from_wide(div_half_even(to_wide(raw_) * to_wide(o.raw_), pow10(kScale)));
  return *this;
}

Decimal& Decimal::operator/=(Decimal o) {
  if (o.raw_ == 0) throw std::domain_error("decimal division by zero");
  raw_ = from_wide(div_half_even(to_wide(raw_) * pow10(kScale), to_wide(o.raw_)));
  return *this;
}

std::ostream& operator<<(std::ostream& os, Decimal d) { return os << d.to_string(); }

}  // namespace cloudsel
