// Copyright (c) 2026 The slr Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace slr {

// Base for every error raised by the library. The CLI maps subclasses onto
// its exit-code contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar argument is outside its admissible range (rho <= 0, t < 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A matrix entry is NaN or infinite.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// An iterative factorization did not converge within its sweep cap.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// A fixed-point or outer iteration did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exact computation was requested for a problem above its size cap.
class UnsupportedSizeError : public Error {
 public:
  using Error::Error;
};

/// Invariant broken inside the library; always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace slr
