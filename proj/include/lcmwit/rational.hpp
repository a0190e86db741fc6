// Copyright 2026 The lcmwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace lcmwit {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "a/b" or "a" into a canonical rational. Floats ("0.3") are rejected
/// so that exact inputs stay exact.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form (den omitted when 1).
std::string format_rational(const Rational& value);

/// Parses a non-negative decimal integer; rejects signs, blanks and garbage.
BigInt parse_decimal(std::string_view text);

std::uint64_t to_u64(const BigInt& value);
BigInt from_u64(std::uint64_t value);

/// Positive rational rendered with `digits` significant digits, truncated
/// toward zero. Deterministic: computed from the exact value, no floating
/// point. Large or small magnitudes use "d.ddde+N".
std::string format_significant(const Rational& value, int digits);

/// value^exponent for a non-negative integer exponent.
Rational pow(const Rational& value, unsigned long exponent);

/// Smallest integer w >= 0 with w^den >= base^num, i.e. ceil(base^(num/den)).
/// exponent must be non-negative.
BigInt ceil_rational_power(const BigInt& base, const Rational& exponent);

/// Sign of (base^exponent - value), decided exactly. base >= 1, value > 0,
/// exponent any rational.
int compare_rational_power(const BigInt& base, const Rational& exponent,
                           const Rational& value);

}  // namespace lcmwit
