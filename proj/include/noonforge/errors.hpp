// Copyright 2026 The noonforge Authors
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

#include <stdexcept>
#include <string>

namespace noonforge {

/// Base for every error raised by the library. Input errors and numeric
/// failures are split so front ends can map them to distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// Input errors.
class ShapeError : public InputError {
 public:
  using InputError::InputError;
};
class SubspaceError : public InputError {
 public:
  using InputError::InputError;
};
class ModeNotFoundError : public InputError {
 public:
  using InputError::InputError;
};
class CapacityError : public InputError {
 public:
  using InputError::InputError;
};
class SpecError : public InputError {
 public:
  using InputError::InputError;
};
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

// Numeric failures.
class SingularMatrixError : public NumericError {
 public:
  using NumericError::NumericError;
};
class NotUnitaryError : public NumericError {
 public:
  using NumericError::NumericError;
};
class NotHermitianError : public NumericError {
 public:
  using NumericError::NumericError;
};
class BranchCutError : public NumericError {
 public:
  using NumericError::NumericError;
};
class ZeroProbabilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace noonforge
