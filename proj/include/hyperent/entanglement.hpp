// entanglement.hpp: negativity of qubit x bath states

#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "hyperent/dynamics.hpp"

namespace hyperent {

/// Negativities below this are reported as exactly zero.
inline constexpr double kNegativityClamp = 1e-12;

struct NegativityResult {
    double total{0.0};
    std::vector<std::pair<HalfInt, double>> per_sector;  // weighted contributions
    double bound{0.0};
};

/// Partial transpose on the first factor (dimension dim_a) of a bipartite matrix.
Eigen::MatrixXcd partial_transpose_first(const Eigen::MatrixXcd& rho, int dim_a);

/// sum_i (|l_i| - l_i) / 2 over eigenvalues l_i of a Hermitian matrix.
double negative_part(const Eigen::MatrixXcd& hermitian);

/// Negativity of a dense bipartite state with respect to its first factor.
double negativity_dense(const Eigen::MatrixXcd& rho, int dim_a);

/// Sector-wise negativity: the partial transpose over the qubit keeps the
/// direct-sum structure in K, so each sector is diagonalized on its own.
NegativityResult negativity(const JointState& state);

/// Two-qubit isotropic state kappa |Phi+><Phi+| + (1 - kappa) 1/4.
Eigen::MatrixXcd isotropic_state(double kappa);
double isotropic_negativity(double kappa);

struct IsotropicBound {
    double purity{0.5};
    double kappa{0.0};
    double negativity{0.0};             // sum of negative parts
    double trace_norm_negativity{0.0};  // ||rho^T_A||_1 - 1 = 2 * negativity
    /// Reported bound; uses the trace-norm convention (0.3661 at purity 1/2).
    double value() const { return trace_norm_negativity; }
};

/// Isotropic state whose purity matches `purity` (in [1/4, 1]); kappa by bisection.
IsotropicBound isotropic_bound(double purity = 0.5);

}  // namespace hyperent
