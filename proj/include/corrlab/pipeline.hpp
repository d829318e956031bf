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

#include <array>
#include <vector>

#include "corrlab/types.hpp"

namespace corrlab {

/// One dimension of the end-to-end reproduction sweep.
struct PipelineRow {
    int d = 0;
    int m = 0;                    ///< choose_parameters(κ, d)
    double theta_over_2pi = 0.0;  ///< m/(2d), the rational phase actually realized
    double max_error = 0.0;       ///< max entrywise |compute_gram(witness at d) − limit_gram(κ)|
    std::array<double, 4> c_theta{}; ///< certificate at θ_d/2π (should be 2 exactly)
    std::array<double, 4> c_kappa{}; ///< certificate at the requested κ
    Complex det;                  ///< determinant of S₁S₂S₃S₄ (±1 up to round-off)
};

struct PipelineReport {
    double kappa = 0.0;
    int n = 8;
    std::vector<PipelineRow> rows;
    /// max_error is non-increasing along the dimension sweep.
    bool convergence_non_increasing = false;
    /// Every c_theta value is 2 within 1e−9 and every det is ±1 within 1e−8.
    bool certificates_exact = false;
    bool determinants_pm_one = false;

    bool all_contracts_hold() const {
        return convergence_non_increasing && certificates_exact && determinants_pm_one;
    }
};

/**
 * End-to-end reproduction: for each d, pick m, build the symmetry quadruple
 * and witness tuple, compute its Gram matrix, measure the distance to
 * limit_gram(κ, n), evaluate the certificate both at the realized rational
 * phase θ_d/2π and at the requested κ, and record the product determinant.
 */
PipelineReport pipeline_check(double kappa, const std::vector<int>& dims, int n = 8);

/// Defaults: κ = √2 − 1, dims = 64, 128, 256, 512.
PipelineReport pipeline_check();

} // namespace corrlab
