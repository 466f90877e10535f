#pragma once

#include <cstddef>
#include <vector>

namespace pharmonic {

/// Dense symmetric positive-definite solve via Cholesky, for the direct
/// linear-Laplacian route at p = 2. Row-major a (n x n), overwritten.
std::vector<double> cholesky_solve(std::vector<double> a, std::vector<double> b, std::size_t n);

} // namespace pharmonic
