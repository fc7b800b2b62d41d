#pragma once

#include "posred/numerics.hpp"

namespace posred {

struct NnlsResult {
    Vector x;
    double residual_norm = 0.0;
    int iterations = 0;
};

/// Lawson-Hanson active-set solver for min ||E x - d||_2 subject to x >= 0.
NnlsResult nnls(const Matrix& e, const Vector& d, int max_iterations = 0);

}  // namespace posred
