// Copyright 2026 The rkwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RKWAVE_ERRORS_HPP_
#define RKWAVE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rkwave {

// Root of every library exception.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The inputs were admissible but the numerics could not deliver.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class OrderRangeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SingularityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class BoundaryLeakageError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class WrapAroundError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class QuadratureFailure : public NumericError {
 public:
  QuadratureFailure(const std::string& what, double estimate, double partial)
      : NumericError(what), estimate_(estimate), partial_(partial) {}
  double estimate() const { return estimate_; }
  double partial() const { return partial_; }

 private:
  double estimate_;
  double partial_;
};

// |det A| fell below the inversion threshold.
class ConditioningError : public NumericError {
 public:
  ConditioningError(const std::string& what, double abs_det)
      : NumericError(what), abs_det_(abs_det) {}
  double abs_det() const { return abs_det_; }

 private:
  double abs_det_;
};

// |1 + alpha F| fell below the admissible threshold.
class ConditionViolation : public NumericError {
 public:
  ConditionViolation(const std::string& what, double margin)
      : NumericError(what), margin_(margin) {}
  double margin() const { return margin_; }

 private:
  double margin_;
};

class PvDivergence : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace rkwave

#endif  // RKWAVE_ERRORS_HPP_
