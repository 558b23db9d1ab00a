#pragma once

// Quadrature rules for the semi-infinite edge integrals.

#include <complex>
#include <functional>
#include <string_view>
#include <vector>

namespace decaylab {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Generalized Gauss-Laguerre rule for the weight x^alpha e^{-x} on [0, inf),
/// built by Golub-Welsch. Rules are cached; the returned reference stays valid
/// for the lifetime of the program. Thread-safe.
const QuadratureRule& gauss_laguerre_rule(int n, double alpha);

enum class QuadratureMethod { GaussLaguerre, TanhSinh };

std::string_view to_string(QuadratureMethod m) noexcept;

struct QuadratureResult {
    std::complex<double> value;
    // |I_fine - I_coarse| between the last two refinements (node doubling for
    // Gauss-Laguerre, step halving for tanh-sinh).
    double refinement_change = 0.0;
    QuadratureMethod method = QuadratureMethod::GaussLaguerre;
    int evaluations = 0;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// int_0^inf x^alpha e^{-x} f(x) dx with n and 2n nodes; value from 2n nodes.
QuadratureResult gauss_laguerre(const ComplexIntegrand& f, double alpha, int n);

/// int_a^b f(x) dx by tanh-sinh with step halving until successive estimates
/// differ by at most tol * max(1, |I|). Throws QuadratureError when max_level is
/// reached without meeting tol.
QuadratureResult tanh_sinh(const ComplexIntegrand& f, double a, double b, double tol, int max_level = 10);

}  // namespace decaylab
