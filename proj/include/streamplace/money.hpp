// Copyright 2026 The streamplace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace streamplace {

/// Hourly price or cost in thousandths of a US dollar (tenths of a cent).
///
/// Catalog prices carry three decimals (0.398 USD/hr), so every price is an
/// exact integer in this unit and sums/comparisons are exact.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_millis(std::int64_t millis) { return Money(millis); }
  /// Rounds to the nearest thousandth.
  static Money from_usd(double usd);

  constexpr std::int64_t millis() const { return millis_; }
  double usd() const { return static_cast<double>(millis_) / 1000.0; }

  constexpr Money operator+(Money o) const { return Money(millis_ + o.millis_); }
  constexpr Money operator-(Money o) const { return Money(millis_ - o.millis_); }
  constexpr Money operator*(std::int64_t k) const { return Money(millis_ * k); }
  constexpr Money& operator+=(Money o) {
    millis_ += o.millis_;
    return *this;
  }
  constexpr auto operator<=>(const Money&) const = default;

 private:
  constexpr explicit Money(std::int64_t m) : millis_(m) {}
  std::int64_t millis_ = 0;
};

/// "3.00" when the third decimal is zero, otherwise "0.398".
std::string format_usd(Money m);

}  // namespace streamplace
