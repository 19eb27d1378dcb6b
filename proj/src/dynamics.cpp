#include "hyperent/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperent {

QubitState QubitState::from_alpha(double alpha, double phase) {
    if (!(std::abs(alpha) <= 1.0)) throw std::invalid_argument("qubit amplitude alpha must lie in [-1, 1]");
    const double b = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
    return {cplx{alpha, 0.0}, std::polar(b, phase)};
}

void QubitState::validate() const {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-12) {
        throw std::invalid_argument("qubit state must satisfy |alpha|^2 + |beta|^2 = 1");
    }
}

JointState initial_state(const QubitState& qubit, const SectorTable& table) {
    qubit.validate();
    Eigen::Matrix2cd q;
    q << qubit.alpha * std::conj(qubit.alpha), qubit.alpha * std::conj(qubit.beta),
        qubit.beta * std::conj(qubit.alpha), qubit.beta * std::conj(qubit.beta);

    JointState state{table.spec, {}, 0.0};
    state.sectors.reserve(table.entries.size());
    for (const auto& s : table.entries) {
        const int d = s.dim();
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                rho.block(a * d, b * d, d, d).diagonal().setConstant(q(a, b) / static_cast<double>(d));
        state.sectors.push_back({s.K, s.multiplicity, s.weight(), std::move(rho)});
    }
    return state;
}

SectorPropagator::SectorPropagator(const PhysicalParams& params, HalfInt K) : K_(K), hbar_(params.hbar) {
    params.validate();
    const int d = K.twice() + 1;
    for (int i = 0; i + 1 < d; ++i) {
        const HalfInt m = HalfInt::from_twice(2 * i - K.twice());
        const auto eig = block_eigensystem(params, K, m);
        pairs_.push_back({i, d + i + 1, eig.cos_theta, eig.sin_theta, eig.E_plus, eig.E_minus});
    }
    const auto lone = unpaired_levels(params, K);
    top_index_ = d - 1;
    bottom_index_ = d;
    top_energy_ = lone.up_top;
    bottom_energy_ = lone.down_bottom;
}

std::vector<SectorPropagator::Row> SectorPropagator::rows(double t) const {
    const int d = K_.twice() + 1;
    std::vector<Row> out(static_cast<std::size_t>(2 * d));
    auto phase = [&](double e) { return std::polar(1.0, -e * t / hbar_); };
    for (const auto& p : pairs_) {
        const cplx ep = phase(p.e_plus);
        const cplx em = phase(p.e_minus);
        const double cc = p.cos_theta * p.cos_theta;
        const double ss = p.sin_theta * p.sin_theta;
        const cplx off = p.cos_theta * p.sin_theta * (ep - em);
        out[p.up] = {p.down, cc * ep + ss * em, off};
        out[p.down] = {p.up, ss * ep + cc * em, off};
    }
    out[top_index_] = {-1, phase(top_energy_), {}};
    out[bottom_index_] = {-1, phase(bottom_energy_), {}};
    return out;
}

Eigen::MatrixXcd SectorPropagator::unitary(double t) const {
    const auto r = rows(t);
    const auto dim = static_cast<Eigen::Index>(r.size());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        u(i, i) = r[i].diag;
        if (r[i].partner >= 0) u(i, r[i].partner) = r[i].off;
    }
    return u;
}

Eigen::MatrixXcd SectorPropagator::apply(const Eigen::MatrixXcd& rho, double t) const {
    const auto r = rows(t);
    const auto dim = static_cast<Eigen::Index>(r.size());
    if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("sector density matrix has wrong dimension");
    Eigen::MatrixXcd left(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        left.row(i) = r[i].diag * rho.row(i);
        if (r[i].partner >= 0) left.row(i) += r[i].off * rho.row(r[i].partner);
    }
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        out.col(j) = std::conj(r[j].diag) * left.col(j);
        if (r[j].partner >= 0) out.col(j) += std::conj(r[j].off) * left.col(r[j].partner);
    }
    return out;
}

JointPropagator::JointPropagator(const PhysicalParams& params, const JointState& like) {
    sectors_.reserve(like.sectors.size());
    for (const auto& s : like.sectors) sectors_.emplace_back(params, s.K);
}

JointState JointPropagator::apply(const JointState& state, double t) const {
    if (state.sectors.size() != sectors_.size()) throw std::invalid_argument("propagator built for a different bath");
    JointState out{state.spec, {}, state.time + t};
    out.sectors.reserve(state.sectors.size());
    for (std::size_t i = 0; i < sectors_.size(); ++i) {
        const auto& s = state.sectors[i];
        if (s.K != sectors_[i].K()) throw std::invalid_argument("propagator built for a different bath");
        out.sectors.push_back({s.K, s.multiplicity, s.weight, sectors_[i].apply(s.rho, t)});
    }
    return out;
}

JointState evolve(const JointState& state, const PhysicalParams& params, double t) {
    return JointPropagator(params, state).apply(state, t);
}

Eigen::Matrix2cd reduced_qubit_state(const JointState& state) {
    Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
    for (const auto& s : state.sectors) {
        const int d = s.bath_dim();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) q(a, b) += s.weight * s.rho.block(a * d, b * d, d, d).trace();
    }
    return q;
}

double purity(const JointState& state) {
    double p = 0.0;
    for (const auto& s : state.sectors) {
        // g copies each holding (w/g) rho: g (w/g)^2 tr(rho^2)
        p += s.weight * s.weight / static_cast<double>(s.multiplicity) * s.rho.cwiseAbs2().sum();
    }
    return p;
}

double total_weight(const JointState& state) {
    double w = 0.0;
    for (const auto& s : state.sectors) w += s.weight;
    return w;
}

Eigen::MatrixXcd assemble_dense(const JointState& state, long max_dim) {
    long bath = 0;
    for (const auto& s : state.sectors) {
        bath += static_cast<long>(s.multiplicity) * s.bath_dim();
        if (2 * bath > max_dim) throw std::length_error("dense joint state exceeds dimension cap");
    }
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(2 * bath, 2 * bath);
    long offset = 0;
    for (const auto& s : state.sectors) {
        const int d = s.bath_dim();
        const double scale = s.weight / static_cast<double>(s.multiplicity);
        for (BigCount copy = 0; copy < s.multiplicity; ++copy) {
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    full.block(a * bath + offset, b * bath + offset, d, d) = scale * s.rho.block(a * d, b * d, d, d);
            offset += d;
        }
    }
    return full;
}

}  // namespace hyperent
