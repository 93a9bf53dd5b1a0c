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

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cloudsel/decimal.hpp"

namespace cloudsel {

/// JSON numbers and numeric strings both read as Decimal. Floating-point
/// numbers go through their shortest round-trip text, so 0.1365 stays 0.1365.
inline Decimal json_to_decimal(const nlohmann::json& v) {
  if (v.is_number_integer()) return Decimal(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return Decimal::parse(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_float()) return Decimal::from_double(v.get<double>());
  if (v.is_string()) return Decimal::parse(v.get<std::string>());
  throw std::invalid_argument("expected a number");
}

/// Integers become JSON integers; other values become JSON numbers when a
/// double reproduces them exactly and strings otherwise.
inline nlohmann::json decimal_to_json(Decimal d) {
  if (d.is_integer() && d.abs() < Decimal(std::int64_t{1'000'000'000'000'000})) {
    return nlohmann::json(static_cast<std::int64_t>(d.raw() / Decimal::kOne));
  }
  const double as_double = d.to_double();
  if (Decimal::from_double(as_double) == d) return nlohmann::json(as_double);
  return nlohmann::json(d.to_string());
}

}  // namespace cloudsel
