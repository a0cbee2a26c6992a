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

#include "qws/linalg.hpp"

#include <stdexcept>
#include <string>

namespace qws {

double unitarity_residual(const CMat& u) {
    return (u.adjoint() * u - CMat::Identity(u.cols(), u.cols())).norm();
}

double orthogonality_residual(const Mat& w) {
    return (w * w.transpose() - Mat::Identity(w.rows(), w.rows())).norm();
}

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(long n, const char* what) {
    if (!is_power_of_two(n)) {
        throw std::invalid_argument(std::string(what) + " must be a power of two, got " +
                                    std::to_string(n));
    }
    int bits = 0;
    while ((1L << bits) < n) ++bits;
    return bits;
}

}  // namespace qws
