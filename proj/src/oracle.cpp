#include "hyperent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperent::oracle {

namespace {

using Mat = Eigen::MatrixXcd;
const std::complex<double> I{0.0, 1.0};

struct SpinMatrices {
    Mat x, y, z;
};

// Spin-j matrices in the basis m = j, j-1, ..., -j.
SpinMatrices spin_matrices(int twice_j) {
    const int d = twice_j + 1;
    const double j = 0.5 * twice_j;
    Mat raise = Mat::Zero(d, d);
    Mat z = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double m = j - i;
        z(i, i) = m;
        if (i > 0) raise(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const Mat lower = raise.adjoint();
    return {0.5 * (raise + lower), -0.5 * I * (raise - lower), z};
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

long checked_dim(const BathSpec& spec, const OracleLimits& limits) {
    if (spec.n < 1) throw std::invalid_argument("oracle: bath needs at least one nucleus");
    if (spec.F.twice() < 1) throw std::invalid_argument("oracle: nuclear spin must be positive");
    long dim = 2;
    for (int k = 0; k < spec.n; ++k) {
        dim *= spec.F.twice() + 1;
        if (dim > limits.max_dim) {
            throw std::invalid_argument("oracle: product-basis dimension exceeds cap of " +
                                        std::to_string(limits.max_dim));
        }
    }
    return dim;
}

}  // namespace

ProductBasisOperator build_full_hamiltonian(const BathSpec& spec, const PhysicalParams& params,
                                            const OracleLimits& limits) {
    const long dim = checked_dim(spec, limits);
    const long bath = dim / 2;
    const long local = spec.F.twice() + 1;
    const SpinMatrices s = spin_matrices(1);
    const SpinMatrices f = spin_matrices(spec.F.twice());

    ProductBasisOperator op;
    op.labels.push_back("qubit");
    for (int k = 0; k < spec.n; ++k) op.labels.push_back("nucleus" + std::to_string(k));

    op.matrix = -params.g * params.mu_B * params.B * kron(s.z, Mat::Identity(bath, bath));
    long before = 1;
    for (int k = 0; k < spec.n; ++k) {
        const long after = bath / (before * local);
        const Mat left = Mat::Identity(before, before);
        const Mat right = Mat::Identity(after, after);
        op.matrix += params.A * kron(s.x, kron(kron(left, f.x), right));
        op.matrix += params.A * kron(s.y, kron(kron(left, f.y), right));
        op.matrix += params.A * kron(s.z, kron(kron(left, f.z), right));
        before *= local;
    }
    return op;
}

std::vector<double> full_spectrum(const BathSpec& spec, const PhysicalParams& params, const OracleLimits& limits) {
    const auto h = build_full_hamiltonian(spec, params, limits);
    Eigen::SelfAdjointEigenSolver<Mat> solver(h.matrix, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("oracle: eigensolver failed");
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(out.begin(), out.end());
    return out;
}

OracleEvolution::OracleEvolution(const BathSpec& spec, const PhysicalParams& params, const QubitState& qubit,
                                 const OracleLimits& limits)
    : hbar_(params.hbar) {
    const auto h = build_full_hamiltonian(spec, params, limits);
    Eigen::SelfAdjointEigenSolver<Mat> solver(h.matrix);
    if (solver.info() != Eigen::Success) throw std::runtime_error("oracle: eigensolver failed");
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();

    const long bath = h.matrix.rows() / 2;
    Eigen::Vector2cd psi(qubit.alpha, qubit.beta);
    const Mat rho0 = kron(psi * psi.adjoint(), Mat::Identity(bath, bath) / static_cast<double>(bath));
    rho0_eigenbasis_ = vectors_.adjoint() * rho0 * vectors_;
}

Eigen::MatrixXcd OracleEvolution::state(double t) const {
    const Eigen::Index d = energies_.size();
    Eigen::VectorXcd phase(d);
    for (Eigen::Index i = 0; i < d; ++i) phase(i) = std::exp(-I * energies_(i) * t / hbar_);
    const Mat evolved = phase.asDiagonal() * rho0_eigenbasis_ * phase.conjugate().asDiagonal();
    return vectors_ * evolved * vectors_.adjoint();
}

double OracleEvolution::negativity(double t) const {
    const Mat rho = state(t);
    const Eigen::Index half = rho.rows() / 2;
    Mat pt = rho;
    pt.topRightCorner(half, half) = rho.bottomLeftCorner(half, half);
    pt.bottomLeftCorner(half, half) = rho.topRightCorner(half, half);
    Eigen::SelfAdjointEigenSolver<Mat> solver(pt, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("oracle: eigensolver failed");
    double neg = 0.0;
    for (const double l : solver.eigenvalues())
        if (l < 0.0) neg -= l;
    return neg;
}

NegativityTrace oracle_negativity_trace(const BathSpec& spec, const PhysicalParams& params, const QubitState& qubit,
                                        const std::vector<double>& times, const OracleLimits& limits) {
    const OracleEvolution evo(spec, params, qubit, limits);
    NegativityTrace trace;
    trace.times = times;
    trace.values.reserve(times.size());
    for (const double t : times) trace.values.push_back(evo.negativity(t));
    trace.params = {spec.n, spec.F.value(), qubit.alpha.real(), std::arg(qubit.beta), params.B, params.A, "oracle"};
    return trace;
}

}  // namespace hyperent::oracle
