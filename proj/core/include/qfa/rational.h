// Copyright 2026 The qfa-cutpoint Authors
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

#ifndef QFA_RATIONAL_H
#define QFA_RATIONAL_H

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "qfa/errors.h"

namespace qfa {

/// Arbitrary-precision fraction used by exact-rational automata.
using Rational = mpq_class;

/// Parses "p/q", "p", or a finite decimal such as "-0.25".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        bool negative = !s.empty() && s[0] == '-';
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::string denominator = "1" + std::string(s.size() - dot - 1, '0');
        if (negative) {
            digits.erase(0, 1);
        }
        Rational r;
        if (r.get_num().set_str(digits.empty() ? "0" : digits, 10) != 0 ||
            r.get_den().set_str(denominator, 10) != 0) {
            throw InvariantViolation("malformed rational '" + s + "'");
        }
        r.canonicalize();
        return negative ? Rational(-r) : r;
    }
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
        throw InvariantViolation("malformed rational '" + s + "'");
    }
    r.canonicalize();
    return r;
}

/// Canonical "p/q" text ("p" when q = 1).
inline std::string rational_to_string(const Rational &r) {
    return r.get_str(10);
}

/// Scalar-mode traits shared by the templated GFA/PFA code paths.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char *mode_name = "float";
    static double to_double(double x) {
        return x;
    }
    static double abs(double x) {
        return x < 0 ? -x : x;
    }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char *mode_name = "exact-rational";
    static double to_double(const Rational &x) {
        return x.get_d();
    }
    static Rational abs(const Rational &x) {
        return ::abs(x);
    }
};

}  // namespace qfa

#endif
