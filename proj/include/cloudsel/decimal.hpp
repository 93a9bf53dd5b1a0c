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

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace cloudsel {

/// Fixed-point decimal with 12 fractional digits, backed by a 128-bit integer.
///
/// Addition and subtraction are exact. Multiplication and division are exact
/// whenever the true result has at most 12 fractional digits and otherwise
/// round half-to-even at the 12th digit. Results that do not fit the 128-bit
/// mantissa throw std::overflow_error.
///
/// Money never goes through binary floating point: parse() reads decimal text
/// directly, and from_double() goes through the shortest round-trip
/// representation so JSON numbers such as 0.1365 arrive unchanged.
class Decimal {
 public:
  using Raw = __int128;
  static constexpr int kScale = 12;
  static constexpr std::int64_t kOne = 1'000'000'000'000;

  constexpr Decimal() = default;
  constexpr Decimal(int v) : raw_(static_cast<Raw>(v) * kOne) {}  // NOLINT(implicit)
  constexpr Decimal(std::int64_t v) : raw_(static_cast<Raw>(v) * kOne) {}  // NOLINT(implicit)

  static constexpr Decimal from_raw(Raw raw) {
    Decimal d;
    d.raw_ = raw;
    return d;
  }

  /// Parses "[-]digits[.digits]" (optionally with an exponent). More than 12
  /// fractional digits round half-to-even. Throws std::invalid_argument.
  static Decimal parse(std::string_view text);
  static std::optional<Decimal> try_parse(std::string_view text) noexcept;
  static Decimal from_double(double v);

  constexpr Raw raw() const { return raw_; }
  double to_double() const;

  /// Canonical text: no trailing fractional zeros, "0" for zero.
  std::string to_string() const;
  /// Fixed text with exactly `digits` fractional digits, rounded half away from zero.
  std::string to_string(int digits) const;

  /// Rounds half away from zero to `digits` fractional digits (0..12).
  Decimal round(int digits) const;
  Decimal ceil() const;
  Decimal floor() const;
  Decimal abs() const { return raw_ < 0 ? from_raw(-raw_) : *this; }
  int sign() const { return raw_ < 0 ? -1 : (raw_ > 0 ? 1 : 0); }
  bool is_zero() const { return raw_ == 0; }
  bool is_integer() const { return raw_ % kOne == 0; }
  /// Number of significant fractional digits (0..12).
  int fractional_digits() const;

  Decimal operator-() const { return from_raw(-raw_); }
  Decimal& operator+=(Decimal o);
  Decimal& operator-=(Decimal o);
  Decimal& operator*=(Decimal o);
  Decimal& operator/=(Decimal o);

  friend Decimal operator+(Decimal a, Decimal b) { return a += b; }
  friend Decimal operator-(Decimal a, Decimal b) { return a -= b; }
  friend Decimal operator*(Decimal a, Decimal b) { return a *= b; }
  friend Decimal operator/(Decimal a, Decimal b) { return a /= b; }

  friend constexpr bool operator==(Decimal a, Decimal b) { return a.raw_ == b.raw_; }
  friend constexpr std::strong_ordering operator<=>(Decimal a, Decimal b) {
    return a.raw_ <=> b.raw_;
  }

 private:
  Raw raw_ = 0;
};

inline Decimal min(Decimal a, Decimal b) { return b < a ? b : a; }
inline Decimal max(Decimal a, Decimal b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, Decimal d);

namespace decimal_literals {
inline Decimal operator""_d(const char* text) { return Decimal::parse(text); }
inline Decimal operator""_d(const char* text, std::size_t size) { return Decimal::parse({text, size}); }
}  // namespace decimal_literals

}  // namespace cloudsel
