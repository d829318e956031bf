// Copyright 2026 The corrlab developers.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace corrlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Inputs whose shapes do not match the algebra or each other.
class conformance_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Inputs that are well-shaped but violate a domain invariant
/// (non-unitary entry, weights that do not sum to one, bad Gram matrix).
class validation_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or malformed input/output files.
class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An iterative solve that exhausted its budget without meeting its tolerance.
class convergence_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace corrlab
