#include "hyperent/entanglement.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperent {

Eigen::MatrixXcd partial_transpose_first(const Eigen::MatrixXcd& rho, int dim_a) {
    if (dim_a <= 0 || rho.rows() != rho.cols() || rho.rows() % dim_a != 0) {
        throw std::invalid_argument("partial transpose: dimension mismatch");
    }
    const Eigen::Index db = rho.rows() / dim_a;
    Eigen::MatrixXcd out(rho.rows(), rho.cols());
    for (int a = 0; a < dim_a; ++a)
        for (int b = 0; b < dim_a; ++b) out.block(a * db, b * db, db, db) = rho.block(b * db, a * db, db, db);
    return out;
}

double negative_part(const Eigen::MatrixXcd& hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
    double sum = 0.0;
    for (const double l : solver.eigenvalues()) sum += 0.5 * (std::abs(l) - l);
    return sum;
}

double negativity_dense(const Eigen::MatrixXcd& rho, int dim_a) {
    return negative_part(partial_transpose_first(rho, dim_a));
}

namespace {

const IsotropicBound& default_bound() {
    static const IsotropicBound bound = isotropic_bound(0.5);
    return bound;
}

}  // namespace

NegativityResult negativity(const JointState& state) {
    NegativityResult result;
    result.per_sector.reserve(state.sectors.size());
    for (const auto& s : state.sectors) {
        const double n = s.K.twice() == 0 ? 0.0 : s.weight * negativity_dense(s.rho, 2);
        result.per_sector.emplace_back(s.K, n);
        result.total += n;
    }
    if (result.total < kNegativityClamp) result.total = 0.0;
    result.bound = default_bound().value();
    return result;
}

Eigen::MatrixXcd isotropic_state(double kappa) {
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    return kappa * phi * phi.adjoint() + (1.0 - kappa) * Eigen::MatrixXcd::Identity(4, 4) / 4.0;
}

double isotropic_negativity(double kappa) { return negativity_dense(isotropic_state(kappa), 2); }

IsotropicBound isotropic_bound(double purity) {
    if (!(purity >= 0.25 && purity <= 1.0)) throw std::invalid_argument("two-qubit purity must lie in [1/4, 1]");
    auto purity_of = [](double kappa) {
        const Eigen::MatrixXcd rho = isotropic_state(kappa);
        return (rho * rho).trace().real();
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (purity_of(mid) < purity ? lo : hi) = mid;
    }
    IsotropicBound out;
    out.purity = purity;
    out.kappa = 0.5 * (lo + hi);
    out.negativity = isotropic_negativity(out.kappa);
    out.trace_norm_negativity = 2.0 * out.negativity;
    return out;
}

}  // namespace hyperent
