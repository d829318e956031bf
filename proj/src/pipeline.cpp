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
#include "corrlab/pipeline.hpp"

#include <cmath>
#include <numbers>

#include "corrlab/certificate.hpp"
#include "corrlab/witness.hpp"

namespace corrlab {

PipelineReport pipeline_check(double kappa, const std::vector<int>& dims, int n) {
    if (dims.empty()) throw conformance_error("pipeline_check: dims must be non-empty");
    if (n < 8) throw conformance_error("pipeline_check: n must be at least 8");

    PipelineReport report;
    report.kappa = kappa;
    report.n = n;
    report.convergence_non_increasing = true;
    report.certificates_exact = true;
    report.determinants_pm_one = true;

    const GramMatrix limit = limit_gram(kappa, n);

    for (const int d : dims) {
        PipelineRow row;
        row.d = d;
        row.m = choose_parameters(kappa, d);
        row.theta_over_2pi = static_cast<double>(row.m) / (2.0 * static_cast<double>(d));

        const SymmetryQuadruple q = build_symmetries(d, row.m);
        const TracialAlgebra alg = TracialAlgebra::single_block(d);
        row.det = det_obstruction(alg, q.list()).front();

        const GramMatrix g = compute_gram(build_witness_tuple(d, row.m, n));
        row.max_error = (g.entries - limit.entries).cwiseAbs().maxCoeff();
        row.c_theta = certificate(g, row.theta_over_2pi).c;
        row.c_kappa = certificate(g, kappa).c;

        for (const double c : row.c_theta)
            if (std::abs(c - 2.0) > 1e-9) report.certificates_exact = false;
        if (std::min(std::abs(row.det - Complex(1.0)), std::abs(row.det + Complex(1.0))) > 1e-8)
            report.determinants_pm_one = false;
        if (!report.rows.empty() && row.max_error > report.rows.back().max_error)
            report.convergence_non_increasing = false;

        report.rows.push_back(std::move(row));
    }
    return report;
}

PipelineReport pipeline_check() { return pipeline_check(std::numbers::sqrt2 - 1.0, {64, 128, 256, 512}, 8); }

} // namespace corrlab
