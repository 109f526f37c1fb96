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

#include "streamplace/money.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

namespace streamplace {

Money Money::from_usd(double usd) {
  return Money(static_cast<std::int64_t>(std::llround(usd * 1000.0)));
}

std::string format_usd(Money m) {
  const std::int64_t v = m.millis();
  const char* sign = v < 0 ? "-" : "";
  const std::int64_t a = std::llabs(v);
  if (a % 10 == 0) {
    return fmt::format("{}{}.{:02d}", sign, a / 1000, (a % 1000) / 10);
  }
  return fmt::format("{}{}.{:03d}", sign, a / 1000, a % 1000);
}

}  // namespace streamplace
