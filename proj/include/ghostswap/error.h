// Copyright 2026 The ghostswap Authors
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
#include <string>

namespace ghostswap {

/// Base of every error thrown by the library.
struct GhostError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dimension outside the supported range, or operands of different dimensions.
struct DimensionError : GhostError {
    using GhostError::GhostError;
};

/// Malformed input value (mask entry, projector index, config field, ...).
struct InvalidArgument : GhostError {
    using GhostError::GhostError;
};

/// Experiment or mask file that does not match its schema.
struct ConfigError : GhostError {
    using GhostError::GhostError;
};

/// A quantity that is undefined for the given input, e.g. the contrast of a
/// mask with no dark pixels.
struct DegenerateError : GhostError {
    using GhostError::GhostError;
};

/// An identity that must hold by construction was violated.
struct InvariantError : GhostError {
    using GhostError::GhostError;
};

}  // namespace ghostswap
