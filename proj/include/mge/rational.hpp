// Copyright 2026 The MGE Authors
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

#ifndef MGE_RATIONAL_HPP_
#define MGE_RATIONAL_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mge {

// All utilities, probabilities and gaps are exact rationals. Verdicts compare
// gap signs, so nothing in the evaluation pipeline may round.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct MgeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Renders as "p/q"; integers render without the denominator.
inline std::string rat_to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

// Accepts "p", "-p", "p/q". Used by the CLI and game files.
inline Rat rat_from_string(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) throw MgeError("rational with zero denominator: " + text);
    return Rat(num, den);
  } catch (const std::exception&) {
    throw MgeError("malformed rational: '" + text + "'");
  }
}

inline Rat rat_pow(const Rat& base, unsigned exp) {
  Rat acc = 1;
  for (unsigned i = 0; i < exp; ++i) acc *= base;
  return acc;
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace mge

#endif  // MGE_RATIONAL_HPP_
