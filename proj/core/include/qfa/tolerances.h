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

#ifndef QFA_TOLERANCES_H
#define QFA_TOLERANCES_H

#include <string_view>

namespace qfa {

/// Numerical thresholds shared by every module. Defaults are the library
/// constants; callers (e.g. the CLI's --tol flag) may pass an adjusted copy.
struct Tolerances {
    /// ||H - H^dagger||_max allowed for a Hermitian operator.
    double herm = 1e-12;
    /// Eigenvalues down to -psd still count as nonnegative.
    double psd = 1e-10;
    /// |f - lambda| below this is reported as ambiguous at a cutpoint.
    double eq = 1e-9;
    /// Singular values below rank * sigma_max count as zero.
    double rank = 1e-8;

    /// Sets a field by name ("herm", "psd", "eq", "rank"). Returns false for
    /// unknown keys.
    bool set(std::string_view key, double value) {
        if (key == "herm") {
            herm = value;
        } else if (key == "psd") {
            psd = value;
        } else if (key == "eq") {
            eq = value;
        } else if (key == "rank") {
            rank = value;
        } else {
            return false;
        }
        return true;
    }
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace qfa

#endif
