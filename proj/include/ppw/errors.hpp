// Copyright 2026 The ppw Authors
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

#ifndef PPW_ERRORS_HPP_
#define PPW_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ppw {

// Argument outside the mathematical domain of an operation (point outside S,
// nonpositive radius, parameter outside its admissible interval).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Violated caller contract that is not a pure domain issue (mismatched sizes,
// non-uniform weights where uniform ones are required, bad configuration).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation only defined for some ground spaces.
class UnsupportedSpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Weights that cannot be scaled to integers under the denominator cap.
class UnsupportedWeightsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RunawayCascadeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested ε lies outside the window on which the covering lower bound holds.
class WindowViolationError : public std::domain_error {
 public:
  WindowViolationError(const std::string& what, double window_edge)
      : std::domain_error(what), window_edge_(window_edge) {}
  double window_edge() const noexcept { return window_edge_; }

 private:
  double window_edge_;
};

// Formula evaluated outside the parameter regime where it is valid
// (concentration with p >= 2).
class OutOfRegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ppw

#endif  // PPW_ERRORS_HPP_
