// box_hamiltonian.hpp: box-model qubit/bath Hamiltonian in the |K,m> basis
//
// H = -g mu_B B S_z + A S.K with S.K = S_z K_z + (S+ K- + S- K+)/2.
// Within a total-spin sector K the Hamiltonian splits into 2x2 blocks on
// span{|up,K,m>, |down,K,m+1>} for m = -K..K-1, plus the two unpaired
// states |up,K,K> and |down,K,-K>. Energies are in micro-eV, times in ns.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <istream>
#include <string>
#include <vector>

#include "hyperent/spin_basis.hpp"

namespace hyperent {

namespace units {
inline constexpr double kHbar = 0.658211951;          // ueV ns
inline constexpr double kBohrMagneton = 57.883818;    // ueV / T
inline constexpr double kElectronG = -0.44;
inline constexpr double kBoxCouplingA = 83.0;         // ueV
}  // namespace units

struct PhysicalParams {
    double A{units::kBoxCouplingA};  // ueV
    double B{0.0};                   // T
    double g{units::kElectronG};
    double mu_B{units::kBohrMagneton};
    double hbar{units::kHbar};

    /// Coefficient of S_z in the qubit Zeeman term, -g mu_B B (ueV).
    double zeeman() const { return -g * mu_B * B; }
    void validate() const;
};

using Block2 = Eigen::Matrix2d;

/// Hamiltonian restricted to span{|up,K,m>, |down,K,m+1>}; requires -K <= m <= K-1.
Block2 assemble_block(const PhysicalParams& params, HalfInt K, HalfInt m);

struct BlockEigensystem {
    HalfInt K;
    HalfInt m;
    double sin_theta{0.0};
    double cos_theta{1.0};  // >= 0 by convention
    double E_plus{0.0};     // eigenvector ( cos, sin)
    double E_minus{0.0};    // eigenvector (-sin, cos)
};

BlockEigensystem block_eigensystem(const PhysicalParams& params, HalfInt K, HalfInt m);

struct UnpairedLevels {
    double up_top{0.0};       // |up, K, K>
    double down_bottom{0.0};  // |down, K, -K>
};

UnpairedLevels unpaired_levels(const PhysicalParams& params, HalfInt K);

/// Dense sector Hamiltonian of dimension 2(2K+1) built from spin matrices.
/// Basis index: qubit * (2K+1) + (m + K), qubit 0 = up.
Eigen::MatrixXd sector_hamiltonian(const PhysicalParams& params, HalfInt K);

/// All 2(2K+1) eigenvalues of sector K from the closed-form blocks (unsorted).
std::vector<double> sector_spectrum(const PhysicalParams& params, HalfInt K);

// ---------------------------------------------------------------------------
// Coupling constant of the box model from the dot envelope and materials.

struct DotGeometry {
    double l_perp_nm{20.0};
    double l_z_nm{2.0};
    /// Volume per lattice cell holding one cation and one anion site (GaAs a^3/4).
    double cell_volume_nm3{0.56533 * 0.56533 * 0.56533 / 4.0};
};

struct MaterialRow {
    std::string species;
    double abundance{1.0};        // fraction of its sublattice, in [0, 1]
    HalfInt F{kHalf};
    double A0_ueV{0.0};
    double gamma_1e7{0.0};        // 10^7 rad T^-1 s^-1
};

struct MaterialTable {
    std::vector<MaterialRow> rows;
    double V0_nm3{800.0};
    double gamma_e_1e7{0.176};

    static MaterialTable gaas_defaults();
    /// Coupling of one lattice cell, sum over rows of abundance * A0.
    double cell_coupling() const;
};

/// CSV rows `species,abundance,F,A0_ueV,gamma_1e7`; '#' starts a comment.
MaterialTable load_material_table(std::istream& in);
MaterialTable load_material_table(const std::string& path);
void write_material_table(std::ostream& out, const MaterialTable& table);

/// A_k = A0 V |psi(r_k)|^2 for one nucleus.
inline double site_coupling(double A0_ueV, double cell_volume_nm3, double psi_sq_per_nm3) {
    return A0_ueV * cell_volume_nm3 * psi_sq_per_nm3;
}

/// Normalized anisotropic Gaussian |psi(r)|^2 in nm^-3.
double envelope_density(const DotGeometry& dot, double x, double y, double z);

/// Box-model A = sum_k A_k over lattice cells weighted by the Gaussian envelope.
double average_coupling(const DotGeometry& dot, const MaterialTable& materials);

}  // namespace hyperent
