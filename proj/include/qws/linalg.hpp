// Copyright 2026 The qws Authors
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

#include <complex>

#include <Eigen/Dense>

namespace qws {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using complex = std::complex<double>;

/// ‖A†A − I‖_F, zero for a unitary.
double unitarity_residual(const CMat& u);

/// ‖AAᵀ − I‖_F for a real matrix.
double orthogonality_residual(const Mat& w);

bool is_power_of_two(long n);

/// log2 of a power of two; throws std::invalid_argument otherwise.
int log2_exact(long n, const char* what);

}  // namespace qws
