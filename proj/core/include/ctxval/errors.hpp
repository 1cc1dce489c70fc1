// Copyright 2026 The ctxval authors
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

#include <stdexcept>

namespace ctxval {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatchError : Error { using Error::Error; };
struct NotOrthonormalError : Error { using Error::Error; };
struct NotHermitianError : Error { using Error::Error; };
struct NotUnitaryError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };

struct EquivalentContextsError : Error { using Error::Error; };
struct SpanMismatchError : Error { using Error::Error; };
struct NotPermutationError : Error { using Error::Error; };
struct NotStableError : Error { using Error::Error; };

struct InvalidConfigError : Error { using Error::Error; };
struct BlockMassMismatchError : Error { using Error::Error; };
struct UnlabeledPointError : Error { using Error::Error; };
struct ZeroMassLabelError : Error { using Error::Error; };
struct AmbiguousTubeError : Error { using Error::Error; };

struct GFuncViolationError : Error { using Error::Error; };
struct NTrnsViolationError : Error { using Error::Error; };
struct AssertionFailureError : Error { using Error::Error; };

struct FormatError : Error { using Error::Error; };

}  // namespace ctxval
