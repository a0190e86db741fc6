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

#include "lcmwit/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "lcmwit/error.hpp"

namespace lcmwit {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigInt pow10(long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                         : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) +
                                      "' (expected a/b with decimal integers)");
  }
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::Parse, "rational with zero denominator");
  Rational r(negative ? BigInt(-n) : n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

BigInt parse_decimal(std::string_view text) {
  if (!all_digits(text)) {
    throw Error(ErrorKind::Parse, "malformed decimal integer '" + std::string(text) + "'");
  }
  return BigInt(std::string(text), 10);
}

std::uint64_t to_u64(const BigInt& value) {
  if (value < 0 || mpz_sizeinbase(value.get_mpz_t(), 2) > 64) {
    throw Error(ErrorKind::Domain, "value does not fit in 64 bits: " + value.get_str());
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

BigInt from_u64(std::uint64_t value) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(value), 0, 0, &value);
  return out;
}

std::string format_significant(const Rational& value, int digits) {
  if (digits < 1) throw Error(ErrorKind::Domain, "digits must be positive");
  if (value == 0) return "0";
  Rational v = abs(value);
  std::string sign = value < 0 ? "-" : "";

  // Decimal exponent e with 10^e <= v < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(v.get_den_mpz_t(), 10));
  auto scaled = [&](long exp10) {
    Rational s = v;
    if (exp10 >= 0) s /= Rational(pow10(exp10));
    else s *= Rational(pow10(-exp10));
    return s;
  };
  while (scaled(e) >= 1) ++e;
  while (scaled(e) < 1) --e;
  // v / 10^e in [1, 10)
  Rational m = scaled(e) * Rational(pow10(digits - 1));
  BigInt mant = m.get_num() / m.get_den();
  std::string s = mant.get_str();

  std::string out;
  if (e >= -4 && e < 21) {
    if (e >= 0) {
      if (static_cast<long>(s.size()) <= e + 1) {
        out = s + std::string(static_cast<std::size_t>(e + 1 - static_cast<long>(s.size())), '0');
      } else {
        out = s.substr(0, static_cast<std::size_t>(e + 1)) + "." +
              s.substr(static_cast<std::size_t>(e + 1));
      }
    } else {
      out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + s;
    }
    if (out.find('.') != std::string::npos) {
      while (out.back() == '0') out.pop_back();
      if (out.back() == '.') out.pop_back();
    }
  } else {
    std::string frac = s.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = s.substr(0, 1) + (frac.empty() ? "" : "." + frac) + "e" + (e >= 0 ? "+" : "-") +
          std::to_string(e >= 0 ? e : -e);
  }
  return sign + out;
}

Rational pow(const Rational& value, unsigned long exponent) {
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), value.get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), value.get_den_mpz_t(), exponent);
  return Rational(n, d);
}

namespace {

unsigned long small_exponent(const BigInt& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p() || v > 1'000'000) {
    throw Error(ErrorKind::Domain, std::string(what) + " too large for exact power arithmetic");
  }
  return v.get_ui();
}

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace

BigInt ceil_rational_power(const BigInt& base, const Rational& exponent) {
  if (exponent < 0) throw Error(ErrorKind::Domain, "ceil_rational_power needs exponent >= 0");
  if (base < 0) throw Error(ErrorKind::Domain, "ceil_rational_power needs base >= 0");
  unsigned long a = small_exponent(exponent.get_num(), "exponent numerator");
  unsigned long b = small_exponent(exponent.get_den(), "exponent denominator");
  BigInt target = ipow(base, a);
  BigInt w;
  mpz_root(w.get_mpz_t(), target.get_mpz_t(), b);
  if (ipow(w, b) < target) ++w;
  return w;
}

int compare_rational_power(const BigInt& base, const Rational& exponent, const Rational& value) {
  if (base < 1) throw Error(ErrorKind::Domain, "compare_rational_power needs base >= 1");
  if (value <= 0) throw Error(ErrorKind::Domain, "compare_rational_power needs value > 0");
  // base^(a/b) ? u/v  <=>  base^a * v^b ? u^b   (a may be negative)
  BigInt a_signed = exponent.get_num();
  unsigned long b = small_exponent(exponent.get_den(), "exponent denominator");
  bool negative = a_signed < 0;
  unsigned long a = small_exponent(negative ? BigInt(-a_signed) : a_signed, "exponent numerator");
  BigInt u_b = ipow(value.get_num(), b);
  BigInt v_b = ipow(value.get_den(), b);
  BigInt base_a = ipow(base, a);
  int c = negative ? cmp(v_b, u_b * base_a) : cmp(base_a * v_b, u_b);
  return (c > 0) - (c < 0);
}

}  // namespace lcmwit
