// dynamics.hpp: product initial states and exact sector-wise propagation

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "hyperent/box_hamiltonian.hpp"
#include "hyperent/spin_basis.hpp"

namespace hyperent {

using cplx = std::complex<double>;

struct QubitState {
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};

    /// alpha real in [-1, 1], beta = sqrt(1 - alpha^2) e^{i phase}.
    static QubitState from_alpha(double alpha, double phase = 0.0);
    void validate() const;
};

/// One total-spin sector. The full bath contains `multiplicity` identical copies,
/// each carrying weight / multiplicity of the probability.
struct SectorState {
    HalfInt K;
    BigCount multiplicity{1};
    double weight{0.0};
    Eigen::MatrixXcd rho;  // unit trace, basis index qubit * (2K+1) + (m + K)

    int bath_dim() const { return K.twice() + 1; }
};

struct JointState {
    BathSpec spec;
    std::vector<SectorState> sectors;  // ascending K
    double time{0.0};                  // ns
};

JointState initial_state(const QubitState& qubit, const SectorTable& table);

/// Closed-form propagator of one sector: 2x2 blocks plus two unpaired phases.
class SectorPropagator {
public:
    SectorPropagator(const PhysicalParams& params, HalfInt K);

    /// U(t) rho U(t)^dagger in O(d^2) using the block structure.
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho, double t) const;
    /// Dense U(t), for tests.
    Eigen::MatrixXcd unitary(double t) const;

    HalfInt K() const { return K_; }

private:
    struct Pair {
        int up;    // |up, m>
        int down;  // |down, m+1>
        double cos_theta;
        double sin_theta;
        double e_plus;
        double e_minus;
    };
    HalfInt K_;
    double hbar_;
    std::vector<Pair> pairs_;
    int top_index_;
    int bottom_index_;
    double top_energy_;
    double bottom_energy_;

    struct Row {
        int partner{-1};
        cplx diag;
        cplx off;
    };
    std::vector<Row> rows(double t) const;
};

/// Propagators for every sector of a bath, reusable across times.
class JointPropagator {
public:
    JointPropagator(const PhysicalParams& params, const JointState& like);
    /// Evolves `state` by `t` from its own time stamp.
    JointState apply(const JointState& state, double t) const;

private:
    std::vector<SectorPropagator> sectors_;
};

/// Exact evolution by t (negative t evolves backwards); time stamp advances by t.
JointState evolve(const JointState& state, const PhysicalParams& params, double t);

/// Partial trace over the bath.
Eigen::Matrix2cd reduced_qubit_state(const JointState& state);

/// tr(rho^2) of the full qubit x bath density matrix.
double purity(const JointState& state);

/// Sum of sector weights.
double total_weight(const JointState& state);

/// Full density matrix in the basis qubit x (direct sum over sectors and copies).
/// Throws if the dimension would exceed `max_dim`.
Eigen::MatrixXcd assemble_dense(const JointState& state, long max_dim = 4096);

}  // namespace hyperent
