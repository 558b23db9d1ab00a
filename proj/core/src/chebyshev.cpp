#include "decaylab/chebyshev.hpp"

#include "decaylab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace decaylab {

namespace {

// Expansion order at which J_k(a t) has dropped far below double precision.
int order_for(double x) {
    return static_cast<int>(std::ceil(x + 12.0 * std::cbrt(std::max(x, 1.0)) + 30.0));
}

}  // namespace

std::vector<double> bessel_j_sequence(int k_max, double x) {
    if (k_max < 0) throw DomainError("bessel_j_sequence: k_max must be >= 0");
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_j_sequence: x must be finite and >= 0");
    std::vector<double> out(k_max + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    int start = std::max(k_max, static_cast<int>(x)) + 20 + static_cast<int>(std::sqrt(40.0 * std::max(k_max, static_cast<int>(x))));
    if (start % 2 != 0) ++start;
    double next = 0.0;     // J_{k+1}
    double current = 1e-300;  // J_k
    double norm = 0.0;
    for (int k = start; k >= 1; --k) {
        const double prev = 2.0 * k / x * current - next;  // J_{k-1}
        next = current;
        current = prev;
        if (k - 1 <= k_max) out[k - 1] = current;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * current;
        if (std::abs(current) > 1e250) {
            next *= 1e-250;
            current *= 1e-250;
            norm *= 1e-250;
            for (int j = k - 1; j <= k_max; ++j) out[j] *= 1e-250;
        }
    }
    norm += current;  // J_0
    for (double& v : out) v /= norm;
    return out;
}

ChebyshevPropagator::ChebyshevPropagator(const FiniteLattice& lat, double t_max)
    : n_sites_(lat.n_sites), t_max_(t_max) {
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw DomainError("ChebyshevPropagator: t_max must be >= 0");
    const Eigen::SparseMatrix<double> h = build_hamiltonian_sparse(lat);
    double lo = 0.0;
    double hi = 0.0;
    for (int col = 0; col < h.outerSize(); ++col) {
        double diag = 0.0;
        double radius = 0.0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(h, col); it; ++it) {
            if (it.row() == col) {
                diag += it.value();
            } else {
                radius += std::abs(it.value());
            }
        }
        lo = std::min(lo, diag - radius);
        hi = std::max(hi, diag + radius);
    }
    center_ = 0.5 * (hi + lo);
    half_width_ = 0.5 * (hi - lo) * 1.01;

    const int order = order_for(half_width_ * t_max);
    moments_.resize(order + 1);
    const Eigen::Index dim = h.rows();
    Eigen::VectorXd v0 = Eigen::VectorXd::Zero(dim);
    v0(0) = 1.0;
    auto apply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return (h * v - center_ * v) / half_width_;
    };
    Eigen::VectorXd v1 = apply(v0);
    moments_[0] = 1.0;
    if (order >= 1) moments_[1] = v1(0);
    for (int k = 2; k <= order; ++k) {
        Eigen::VectorXd v2 = 2.0 * apply(v1) - v0;
        moments_[k] = v2(0);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
}

ComplexEnergy ChebyshevPropagator::amplitude(double t) const {
    if (!(std::abs(t) <= t_max_)) {
        throw DomainError("ChebyshevPropagator: t = " + std::to_string(t) + " beyond the precomputed t_max");
    }
    if (std::abs(t) > reliable_time(n_sites_)) {
        throw TimeRangeError("ChebyshevPropagator: t = " + std::to_string(t) + " exceeds the echo horizon; use n >= " +
                             std::to_string(min_lattice_size(std::abs(t))));
    }
    const double x = half_width_ * std::abs(t);
    const int order = std::min<int>(order_for(x), static_cast<int>(moments_.size()) - 1);
    const std::vector<double> j = bessel_j_sequence(order, x);
    // exp(-i x y) = J_0(x) + 2 sum_k (-i)^k J_k(x) T_k(y).
    static const ComplexEnergy kPowers[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
    ComplexEnergy sum = j[0] * moments_[0];
    for (int k = 1; k <= order; ++k) sum += 2.0 * kPowers[k % 4] * j[k] * moments_[k];
    if (t < 0.0) sum = std::conj(sum);
    return std::exp(ComplexEnergy{0.0, -center_ * t}) * sum;
}

}  // namespace decaylab
