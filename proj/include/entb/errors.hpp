// Copyright 2026 The entb Authors
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

namespace entb {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or subsystem layouts are incompatible.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class NonHermitianError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be positive semidefinite has an eigenvalue below the
/// clamp tolerance.
class NotPsdError : public Error {
 public:
  using Error::Error;
};

/// A scalar argument lies outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Copier amplitudes violate the isometry conditions.
class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

class BadWeightsError : public Error {
 public:
  using Error::Error;
};

/// The separability scan did not find the single sign change per half
/// interval that the window solver requires.
class NoSignChange : public Error {
 public:
  using Error::Error;
};

/// Malformed copier text record.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace entb
