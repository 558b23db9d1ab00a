#include "decaylab/polynomial.hpp"

#include "decaylab/errors.hpp"

#include <Eigen/Eigenvalues>

namespace decaylab {

Complex evaluate(std::span<const double> ascending, Complex z) noexcept {
    Complex acc{0.0, 0.0};
    for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

std::vector<Complex> polynomial_roots(std::span<const double> ascending) {
    std::size_t degree = ascending.size();
    while (degree > 0 && ascending[degree - 1] == 0.0) --degree;
    if (degree <= 1) return {};
    const auto n = static_cast<Eigen::Index>(degree - 1);
    const double lead = ascending[degree - 1];

    if (n == 1) return {Complex{-ascending[0] / lead, 0.0}};

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        companion(i, n - 1) = -ascending[static_cast<std::size_t>(i)] / lead;
    }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw SolverError("polynomial_roots: companion eigenvalue iteration did not converge");
    }
    std::vector<Complex> roots(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return roots;
}

double quartic_discriminant(std::span<const double> c) {
    if (c.size() != 5) throw DomainError("quartic_discriminant: expected 5 coefficients");
    const double e = c[0], d = c[1], cc = c[2], b = c[3], a = c[4];
    // Standard expansion of the resultant of p and p'.
    return 256 * a * a * a * e * e * e
         - 192 * a * a * b * d * e * e
         - 128 * a * a * cc * cc * e * e
         + 144 * a * a * cc * d * d * e
         - 27 * a * a * d * d * d * d
         + 144 * a * b * b * cc * e * e
         - 6 * a * b * b * d * d * e
         - 80 * a * b * cc * cc * d * e
         + 18 * a * b * cc * d * d * d
         + 16 * a * cc * cc * cc * cc * e
         - 4 * a * cc * cc * cc * d * d
         - 27 * b * b * b * b * e * e
         + 18 * b * b * b * cc * d * e
         - 4 * b * b * b * d * d * d
         - 4 * b * b * cc * cc * cc * e
         + b * b * cc * cc * d * d;
}

}  // namespace decaylab
