// Copyright 2026 The disprx Authors
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

#ifndef DISPRX_ERRORS_HPP
#define DISPRX_ERRORS_HPP

#include <stdexcept>

namespace disprx {

/// Operands whose sizes do not agree (channel vs. prior vs. Gram matrix).
struct DimensionMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computation produced values outside its certified range (complex or
/// negative eigenvalues past tolerance, and the like).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace disprx

#endif
