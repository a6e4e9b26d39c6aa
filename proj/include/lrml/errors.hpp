// Copyright 2026 The lrml Authors. All Rights Reserved.
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

#ifndef LRML_ERRORS_HPP_
#define LRML_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lrml {

// Bad shapes, out-of-range parameters, non-finite inputs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative numerical routine failed to converge.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, int iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

// A modelling constraint cannot be met (e.g. no admissible coarse level).
class ConstraintViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or truncated input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lrml

#endif  // LRML_ERRORS_HPP_
