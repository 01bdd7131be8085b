// Copyright 2026 The ioc Authors
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

namespace ioc {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A marginal was constructed from an empty weight list.
class EmptyMarginalError : public Error {
 public:
  using Error::Error;
};

/// A marginal weight was zero or negative.
class NonPositiveWeightError : public Error {
 public:
  using Error::Error;
};

/// Marginal weights do not sum to one within the accepted input tolerance.
class NotNormalizedError : public Error {
 public:
  using Error::Error;
};

/// A structural invariant of a matrix or solver state failed validation.
class InvariantViolationError : public Error {
 public:
  using Error::Error;
};

/// No admissible leading-zero index exists for a row (requires a
/// non-positive row marginal, which valid inputs exclude).
class NoAdmissibleIndexError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure exhausted its iteration budget.
class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A rectangle-corner operation was called with p1 = p or q1 = q.
class DegenerateCornerError : public Error {
 public:
  using Error::Error;
};

/// The rectangle closed form produced a negative entry: the instance does
/// not have a single rectangular zero block.
class NotEligibleError : public Error {
 public:
  using Error::Error;
};

/// An operation requiring the margin feasibility condition was invoked on
/// margins that do not satisfy it.
class ConditionHViolatedError : public Error {
 public:
  using Error::Error;
};

/// A constructive margin recipe would produce a zero weight.
class ZeroWeightError : public Error {
 public:
  using Error::Error;
};

/// Input text could not be parsed as a problem or report.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ioc
