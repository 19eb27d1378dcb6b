// oracle.hpp: brute-force reference in the full product basis
//
// Builds H = -g mu_B B S_z + A sum_k S.F_k from individual spin matrices
// (qubit first, then nuclei in index order), diagonalizes it densely and
// computes negativity by full-matrix partial transposition. Shares no
// numerical code with the sector path; only data types and constants.

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "hyperent/box_hamiltonian.hpp"
#include "hyperent/dynamics.hpp"
#include "hyperent/negativity_trace.hpp"
#include "hyperent/spin_basis.hpp"

namespace hyperent::oracle {

struct OracleLimits {
    long max_dim{2 * 4096};
};

struct ProductBasisOperator {
    Eigen::MatrixXcd matrix;
    std::vector<std::string> labels;  // tensor factors, outermost first
};

/// Throws std::invalid_argument naming the cap when 2(2F+1)^n > max_dim.
ProductBasisOperator build_full_hamiltonian(const BathSpec& spec, const PhysicalParams& params,
                                            const OracleLimits& limits = {});

/// Sorted eigenvalues of the full Hamiltonian.
std::vector<double> full_spectrum(const BathSpec& spec, const PhysicalParams& params,
                                  const OracleLimits& limits = {});

/// Dense evolution from |psi><psi| x 1/(2F+1)^n; one eigensolve, reused for all times.
class OracleEvolution {
public:
    OracleEvolution(const BathSpec& spec, const PhysicalParams& params, const QubitState& qubit,
                    const OracleLimits& limits = {});

    Eigen::MatrixXcd state(double t) const;
    double negativity(double t) const;
    long dim() const { return static_cast<long>(energies_.size()); }

private:
    double hbar_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd vectors_;
    Eigen::MatrixXcd rho0_eigenbasis_;
};

NegativityTrace oracle_negativity_trace(const BathSpec& spec, const PhysicalParams& params,
                                        const QubitState& qubit, const std::vector<double>& times,
                                        const OracleLimits& limits = {});

}  // namespace hyperent::oracle
