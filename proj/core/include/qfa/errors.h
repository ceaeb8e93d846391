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

#ifndef QFA_ERRORS_H
#define QFA_ERRORS_H

#include <stdexcept>
#include <string>

namespace qfa {

/// Operand shapes are incompatible (matrix products, channel dimensions, ...).
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A value failed one of its type invariants (not Hermitian, not stochastic, ...).
struct InvariantViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A word contains a symbol outside the automaton's alphabet.
struct UnknownSymbol : std::invalid_argument {
    explicit UnknownSymbol(const std::string &symbol)
        : std::invalid_argument("unknown symbol '" + symbol + "'"), symbol(symbol) {
    }
    std::string symbol;
};

/// A construction parameter is outside its supported range.
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A serialized document is malformed or uses an unsupported schema.
struct FormatError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace qfa

#endif
