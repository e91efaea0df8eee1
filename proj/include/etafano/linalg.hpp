#pragma once

#include <optional>
#include <vector>

#include "etafano/rational.hpp"

namespace etafano {

using Mat = std::vector<std::vector<Rat>>;

// Solves the square system m * x = rhs by exact Gaussian elimination.
// Returns nullopt when m is singular.
std::optional<std::vector<Rat>> solve_linear(Mat m, std::vector<Rat> rhs);

// Symmetric input assumed. Decided by the signs of the exact elimination
// pivots of -m (all positive iff -m is positive definite). The empty matrix
// counts as definite.
bool is_negative_definite(const Mat& m);

}  // namespace etafano
