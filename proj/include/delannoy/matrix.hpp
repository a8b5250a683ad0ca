#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "delannoy/scalar.hpp"

namespace delannoy {

// Dense matrix over Q or F_p, row-major.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    Field field{};
    std::vector<Scalar> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, Field f = {});
    Scalar& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    std::string str() const;
};

// Fraction-free (Bareiss) elimination; exact over either field type.
std::size_t rank(const Matrix& m);

struct SolveResult {
    bool solvable = false;
    std::vector<Scalar> x;            // a solution when solvable
    std::vector<Scalar> certificate;  // y with y*A = 0 and y*b != 0 otherwise
};

SolveResult solve(const Matrix& A, const std::vector<Scalar>& b);

}  // namespace delannoy
