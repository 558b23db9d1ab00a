#pragma once

#include "decaylab/model.hpp"

#include <span>
#include <vector>

namespace decaylab {

// Real polynomial with coefficients stored in ascending powers:
// c[0] + c[1] z + ... + c[n] z^n.
using RealPolynomial = std::vector<double>;

Complex evaluate(std::span<const double> ascending, Complex z) noexcept;

/// Roots as eigenvalues of the companion matrix of the monic normalization.
/// Leading coefficients that are exactly zero are dropped first; a polynomial
/// that is constant after that has no roots.
std::vector<Complex> polynomial_roots(std::span<const double> ascending);

/// Discriminant of a quartic a z^4 + b z^3 + c z^2 + d z + e (ascending input,
/// size 5). Positive: four distinct real roots or two conjugate pairs;
/// negative: two real roots and one conjugate pair; zero: repeated root.
double quartic_discriminant(std::span<const double> ascending);

}  // namespace decaylab
