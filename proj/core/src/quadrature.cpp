#include "decaylab/quadrature.hpp"

#include "decaylab/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

namespace decaylab {

namespace {

// Orthonormal Laguerre polynomials from the Jacobi-matrix recurrence
// x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}, evaluated up to p_n with
// its derivative and the Christoffel sum of p_0^2 .. p_{n-1}^2. Values are
// rescaled on the fly; `log_scale` is the log of the factor divided out.
struct LaguerreEval {
    double p_n = 0.0;
    double dp_n = 0.0;
    double christoffel = 0.0;
    double log_scale = 0.0;
};

LaguerreEval laguerre_eval(int n, double alpha, double x) {
    auto a = [alpha](int k) { return 2.0 * k + alpha + 1.0; };
    auto b = [alpha](int k) { return std::sqrt(k * (k + alpha)); };
    LaguerreEval out;
    double p_prev = 0.0, p = 1.0 / std::sqrt(std::tgamma(alpha + 1.0));
    double d_prev = 0.0, d = 0.0;
    for (int k = 0; k < n; ++k) {
        out.christoffel += p * p;
        const double p_next = ((x - a(k)) * p - (k > 0 ? b(k) * p_prev : 0.0)) / b(k + 1);
        const double d_next = (p + (x - a(k)) * d - (k > 0 ? b(k) * d_prev : 0.0)) / b(k + 1);
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        if (std::abs(p) > 1e100 || std::abs(d) > 1e100) {
            constexpr double kShrink = 1e-100;
            p *= kShrink;
            p_prev *= kShrink;
            d *= kShrink;
            d_prev *= kShrink;
            out.christoffel *= kShrink * kShrink;
            out.log_scale += 100.0 * std::numbers::ln10;
        }
    }
    out.p_n = p;
    out.dp_n = d;
    return out;
}

// Golub-Welsch nodes, Newton-polished on p_n; weights are the inverse
// Christoffel sums, which keep the tiny tail weights to full relative
// precision.
QuadratureRule build_laguerre(int n, double alpha) {
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n - 1);
    for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + alpha + 1.0;
    for (int i = 1; i < n; ++i) sub(i - 1) = std::sqrt(i * (i + alpha));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw QuadratureError("gauss_laguerre_rule: Golub-Welsch eigensolver failed for n = " + std::to_string(n));
    }
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = solver.eigenvalues()(i);
        for (int iter = 0; iter < 6; ++iter) {
            const LaguerreEval v = laguerre_eval(n, alpha, x);
            const double step = v.p_n / v.dp_n;
            x -= step;
            if (std::abs(step) <= 1e-16 * x) break;
        }
        const LaguerreEval v = laguerre_eval(n, alpha, x);
        rule.nodes[i] = x;
        rule.weights[i] = std::exp(-2.0 * v.log_scale) / v.christoffel;
    }
    return rule;
}

std::complex<double> apply(const QuadratureRule& rule, const ComplexIntegrand& f, int* evaluations) {
    std::complex<double> sum{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        // Weights beyond the last few hundred nodes underflow to zero.
        if (rule.weights[i] == 0.0) continue;
        sum += rule.weights[i] * f(rule.nodes[i]);
        ++*evaluations;
    }
    return sum;
}

}  // namespace

std::string_view to_string(QuadratureMethod m) noexcept {
    return m == QuadratureMethod::GaussLaguerre ? "gauss-laguerre" : "tanh-sinh";
}

const QuadratureRule& gauss_laguerre_rule(int n, double alpha) {
    if (n < 2) throw DomainError("gauss_laguerre_rule: need at least 2 nodes");
    if (!(alpha > -1.0)) throw DomainError("gauss_laguerre_rule: alpha must exceed -1");
    static std::mutex mutex;
    static std::map<std::pair<int, double>, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{n, alpha}];
    if (!slot) slot = std::make_unique<QuadratureRule>(build_laguerre(n, alpha));
    return *slot;
}

QuadratureResult gauss_laguerre(const ComplexIntegrand& f, double alpha, int n) {
    QuadratureResult out;
    out.method = QuadratureMethod::GaussLaguerre;
    const std::complex<double> coarse = apply(gauss_laguerre_rule(n, alpha), f, &out.evaluations);
    out.value = apply(gauss_laguerre_rule(2 * n, alpha), f, &out.evaluations);
    out.refinement_change = std::abs(out.value - coarse);
    return out;
}

QuadratureResult tanh_sinh(const ComplexIntegrand& f, double a, double b, double tol, int max_level) {
    constexpr double kHalfPi = std::numbers::pi / 2.0;
    constexpr double kTauMax = 6.5;  // weights underflow beyond this
    const double half = 0.5 * (b - a);

    QuadratureResult out;
    out.method = QuadratureMethod::TanhSinh;

    // Node at parameter tau; the abscissa distance to the nearer endpoint is
    // computed directly to keep resolution next to a and b.
    auto term = [&](double tau) -> std::complex<double> {
        const double u = kHalfPi * std::sinh(tau);
        const double c = std::cosh(u);
        const double gap = half / (std::exp(std::abs(u)) * c);  // half * (1 - tanh|u|)
        const double weight = half * kHalfPi * std::cosh(tau) / (c * c);
        const double x = tau < 0.0 ? a + gap : b - gap;
        if (weight == 0.0 || x <= a || x >= b) return {};
        ++out.evaluations;
        return weight * f(x);
    };

    double h = 0.5;
    std::complex<double> sum = term(0.0);
    for (int k = 1; k * h <= kTauMax; ++k) sum += term(k * h) + term(-k * h);
    std::complex<double> estimate = h * sum;

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        // Only the odd multiples of the new step are new nodes.
        for (int k = 1; k * h <= kTauMax; k += 2) sum += term(k * h) + term(-k * h);
        const std::complex<double> refined = h * sum;
        out.refinement_change = std::abs(refined - estimate);
        estimate = refined;
        if (level >= 3 && out.refinement_change <= tol * std::max(1.0, std::abs(estimate))) {
            out.value = estimate;
            return out;
        }
    }
    char message[160];
    std::snprintf(message, sizeof message, "tanh_sinh: no convergence to %.3g after %d halvings (last change %.3g)", tol,
                  max_level, out.refinement_change);
    throw QuadratureError(message);
}

}  // namespace decaylab
