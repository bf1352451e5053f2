// Copyright 2026 The entgame Authors
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

#ifndef ENTGAME_ERRORS_HPP_
#define ENTGAME_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace entgame {

// Base class for all domain errors raised by the library. The CLI maps these
// to exit code 3 unless a more specific class below applies.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed instance documents. Carries the path of the offending field,
// e.g. "generators[1][0][2]". CLI exit code 2.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// An iterative procedure terminated without meeting its target. CLI exit
// code 4.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class NonSquareError : public Error {
 public:
  NonSquareError() : Error("rate matrix is not square") {}
};

class NegativeRateError : public Error {
 public:
  NegativeRateError(int x, int y)
      : Error("negative off-diagonal rate at (" + std::to_string(x) + "," +
              std::to_string(y) + ")"),
        x_(x),
        y_(y) {}
  int x() const { return x_; }
  int y() const { return y_; }

 private:
  int x_;
  int y_;
};

class RowSumViolationError : public Error {
 public:
  explicit RowSumViolationError(int row)
      : Error("row " + std::to_string(row) + " does not sum to zero"),
        row_(row) {}
  int row() const { return row_; }

 private:
  int row_;
};

class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& what =
                                      "operands have mismatched dimensions")
      : Error(what) {}
};

class DimensionTooLargeError : public Error {
 public:
  explicit DimensionTooLargeError(int dim, int cap)
      : Error("state space of size " + std::to_string(dim) +
              " exceeds the cap of " + std::to_string(cap)) {}
};

class NegativeArgumentError : public Error {
 public:
  NegativeArgumentError() : Error("f is only defined on [0, inf)") {}
};

class InfiniteDivergenceError : public Error {
 public:
  InfiniteDivergenceError() : Error("divergence is not finite") {}
};

class UnsupportedSpecError : public Error {
 public:
  explicit UnsupportedSpecError(const std::string& what)
      : Error("unsupported divergence spec: " + what) {}
};

class DegenerateFamilyError : public Error {
 public:
  explicit DegenerateFamilyError(const std::string& what)
      : Error("degenerate family: " + what) {}
};

class EmptyInputError : public Error {
 public:
  EmptyInputError() : Error("input must not be empty") {}
};

class TooManyMembersError : public Error {
 public:
  TooManyMembersError(int n, int cap)
      : Error("family of " + std::to_string(n) +
              " members exceeds the oracle cap of " + std::to_string(cap)) {}
};

class ClassViolationError : public Error {
 public:
  explicit ClassViolationError(int member)
      : Error("member " + std::to_string(member) +
              " is not of the form P - I with a zero-diagonal transition "
              "matrix P"),
        member_(member) {}
  int member() const { return member_; }

 private:
  int member_;
};

class ToleranceNotReachedError : public ConvergenceError {
 public:
  explicit ToleranceNotReachedError(int max_iterations)
      : ConvergenceError("scalar minimizer did not reach its tolerance in " +
                         std::to_string(max_iterations) + " iterations"),
        max_iterations_(max_iterations) {}
  int max_iterations() const { return max_iterations_; }

 private:
  int max_iterations_;
};

class NonFiniteIterateError : public ConvergenceError {
 public:
  NonFiniteIterateError()
      : ConvergenceError("a per-member divergence became infinite mid-run") {}
};

class NotConvergedError : public ConvergenceError {
 public:
  explicit NotConvergedError(double gap, double required)
      : ConvergenceError("run has duality gap " + std::to_string(gap) +
                         " above the required " + std::to_string(required)) {}
};

}  // namespace entgame

#endif  // ENTGAME_ERRORS_HPP_
