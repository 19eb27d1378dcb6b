#include "hyperent/box_hamiltonian.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hyperent {

void PhysicalParams::validate() const {
    if (!std::isfinite(A) || A < 0.0) throw std::invalid_argument("hyperfine coupling A must be finite and >= 0");
    if (!std::isfinite(B)) throw std::invalid_argument("magnetic field B must be finite");
    if (!std::isfinite(g) || !std::isfinite(mu_B)) throw std::invalid_argument("g and mu_B must be finite");
    if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
}

namespace {

void check_block_index(HalfInt K, HalfInt m) {
    if (K.twice() < 0) throw std::invalid_argument("negative total spin K");
    if (m < -K || m > K - HalfInt::from_int(1) || (K - m).twice() % 2 != 0) {
        throw std::out_of_range("block index m = " + m.str() + " outside -K..K-1 for K = " + K.str());
    }
}

// <K,m+1| K+ |K,m>
double ladder(HalfInt K, HalfInt m) {
    const double k = K.value();
    const double mm = m.value();
    return std::sqrt(std::max(0.0, k * (k + 1.0) - mm * (mm + 1.0)));
}

}  // namespace

Block2 assemble_block(const PhysicalParams& params, HalfInt K, HalfInt m) {
    check_block_index(K, m);
    const double z = params.zeeman();
    const double mu = m.value();
    Block2 h;
    h(0, 0) = 0.5 * z + 0.5 * params.A * mu;
    h(1, 1) = -0.5 * z - 0.5 * params.A * (mu + 1.0);
    h(0, 1) = h(1, 0) = 0.5 * params.A * ladder(K, m);
    return h;
}

BlockEigensystem block_eigensystem(const PhysicalParams& params, HalfInt K, HalfInt m) {
    const Block2 h = assemble_block(params, K, m);
    const double c = 0.5 * (h(0, 0) + h(1, 1));
    const double d = 0.5 * (h(0, 0) - h(1, 1));
    const double off = h(0, 1);
    const double r = std::hypot(d, off);

    BlockEigensystem out{K, m};
    out.E_plus = c + r;
    out.E_minus = c - r;
    if (r == 0.0) return out;
    // cos^2 = (r + d) / 2r, sin^2 = (r - d) / 2r; avoid cancellation on the small side.
    const double r_plus_d = d >= 0.0 ? r + d : off * off / (r - d);
    const double r_minus_d = d >= 0.0 ? off * off / (r + d) : r - d;
    out.cos_theta = std::sqrt(r_plus_d / (2.0 * r));
    out.sin_theta = std::copysign(std::sqrt(r_minus_d / (2.0 * r)), off);
    return out;
}

UnpairedLevels unpaired_levels(const PhysicalParams& params, HalfInt K) {
    const double z = params.zeeman();
    const double k = K.value();
    return {0.5 * z + 0.5 * params.A * k, -0.5 * z + 0.5 * params.A * k};
}

Eigen::MatrixXd sector_hamiltonian(const PhysicalParams& params, HalfInt K) {
    const int d = K.twice() + 1;
    Eigen::MatrixXd kz = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd kplus = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const HalfInt m = HalfInt::from_twice(2 * i - K.twice());
        kz(i, i) = m.value();
        if (i + 1 < d) kplus(i + 1, i) = ladder(K, m);
    }
    Eigen::Matrix2d sz{{0.5, 0.0}, {0.0, -0.5}};
    Eigen::Matrix2d splus{{0.0, 1.0}, {0.0, 0.0}};
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);

    auto kron = [](const Eigen::Matrix2d& a, const Eigen::MatrixXd& b) {
        Eigen::MatrixXd out(2 * b.rows(), 2 * b.cols());
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return out;
    };
    Eigen::MatrixXd h = params.zeeman() * kron(sz, id);
    h += params.A * kron(sz, kz);
    h += 0.5 * params.A * (kron(splus, kplus.transpose()) + kron(splus.transpose(), kplus));
    return h;
}

std::vector<double> sector_spectrum(const PhysicalParams& params, HalfInt K) {
    std::vector<double> out;
    out.reserve(2 * (K.twice() + 1));
    for (HalfInt m = -K; m < K; m = m + HalfInt::from_int(1)) {
        const auto eig = block_eigensystem(params, K, m);
        out.push_back(eig.E_plus);
        out.push_back(eig.E_minus);
    }
    const auto lone = unpaired_levels(params, K);
    out.push_back(lone.up_top);
    out.push_back(lone.down_bottom);
    return out;
}

// ---------------------------------------------------------------------------

MaterialTable MaterialTable::gaas_defaults() {
    MaterialTable t;
    const HalfInt three_halves = HalfInt::from_twice(3);
    t.rows = {
        {"Ga69", 0.604, three_halves, 36.0, 6.44},
        {"Ga71", 0.396, three_halves, 46.0, 8.18},
        {"As75", 1.000, three_halves, 43.0, 7.29},
    };
    return t;
}

double MaterialTable::cell_coupling() const {
    double sum = 0.0;
    for (const auto& r : rows) sum += r.abundance * r.A0_ueV;
    return sum;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, int line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw std::runtime_error("material table line " + std::to_string(line) + ": bad number '" + field + "'");
    }
    return v;
}

}  // namespace

MaterialTable load_material_table(std::istream& in) {
    MaterialTable table;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(trim(f));
        if (!header_seen) {
            header_seen = true;
            if (fields.size() == 5 && fields[0] == "species") continue;
        }
        if (fields.size() != 5) {
            throw std::runtime_error("material table line " + std::to_string(lineno) + ": expected 5 columns");
        }
        MaterialRow row;
        row.species = fields[0];
        row.abundance = parse_number(fields[1], lineno);
        row.F = HalfInt::from_double(parse_number(fields[2], lineno));
        row.A0_ueV = parse_number(fields[3], lineno);
        row.gamma_1e7 = parse_number(fields[4], lineno);
        if (row.abundance < 0.0 || row.abundance > 1.0) {
            throw std::runtime_error("material table line " + std::to_string(lineno) + ": abundance outside [0, 1]");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

MaterialTable load_material_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open material table '" + path + "'");
    return load_material_table(in);
}

void write_material_table(std::ostream& out, const MaterialTable& table) {
    out << "species,abundance,F,A0_ueV,gamma_1e7\n";
    for (const auto& r : table.rows) {
        out << r.species << ',' << r.abundance << ',' << r.F.value() << ',' << r.A0_ueV << ',' << r.gamma_1e7
            << '\n';
    }
}

double envelope_density(const DotGeometry& dot, double x, double y, double z) {
    const double norm = std::pow(std::numbers::pi, 1.5) * dot.l_perp_nm * dot.l_perp_nm * dot.l_z_nm;
    const double arg = (x * x + y * y) / (dot.l_perp_nm * dot.l_perp_nm) + z * z / (dot.l_z_nm * dot.l_z_nm);
    return std::exp(-arg) / norm;
}

namespace {

// sum_i exp(-(s (i + 1/2))^2 / l^2) over all integers i
double lattice_gaussian_sum(double spacing, double width) {
    double sum = 0.0;
    for (long i = 0;; ++i) {
        const double x = spacing * (static_cast<double>(i) + 0.5);
        const double term = std::exp(-(x * x) / (width * width));
        sum += 2.0 * term;
        if (term < 1e-18) break;
    }
    return sum;
}

}  // namespace

double average_coupling(const DotGeometry& dot, const MaterialTable& materials) {
    if (!(dot.l_perp_nm > 0.0) || !(dot.l_z_nm > 0.0) || !(dot.cell_volume_nm3 > 0.0)) {
        throw std::invalid_argument("dot widths and cell volume must be positive");
    }
    if (materials.rows.empty()) throw std::invalid_argument("material table is empty");
    // Cubic lattice of cells; the Gaussian factorizes, so the 3D sum is a product of 1D sums.
    const double spacing = std::cbrt(dot.cell_volume_nm3);
    const double sx = lattice_gaussian_sum(spacing, dot.l_perp_nm);
    const double sz = lattice_gaussian_sum(spacing, dot.l_z_nm);
    const double norm = std::pow(std::numbers::pi, 1.5) * dot.l_perp_nm * dot.l_perp_nm * dot.l_z_nm;
    const double weight = dot.cell_volume_nm3 * sx * sx * sz / norm;
    return materials.cell_coupling() * weight;
}

}  // namespace hyperent
