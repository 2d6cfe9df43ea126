// Copyright 2026 The coopnet Authors
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

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace coopnet {

// Exact arbitrary-precision rational, always kept in lowest terms with a
// positive denominator. Every value in the library is one of these; no
// floating point is used anywhere in the computation paths.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

// Renders as "p" for integers and "p/q" otherwise, lowest terms.
inline std::string to_string(const Rational& r) {
  const BigInt num = numerator_of(r);
  const BigInt den = denominator_of(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Parses "p", "-p", or "p/q". Returns nullopt on malformed input or a zero
// denominator; never throws on bad text (callers attach file positions).
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace coopnet
