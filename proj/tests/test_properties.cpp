#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "hyperent/entanglement.hpp"
#include "hyperent/oracle.hpp"

using namespace hyperent;

namespace {

struct Case {
    BathSpec spec;
    PhysicalParams params;
    double alpha;
    double phase;
    double t;
};

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    Case next(int max_n, int max_twice_f) {
        Case c;
        c.spec.n = std::uniform_int_distribution<int>(1, max_n)(rng_);
        c.spec.F = HalfInt::from_twice(std::uniform_int_distribution<int>(1, max_twice_f)(rng_));
        c.params.B = std::uniform_real_distribution<double>(-6.0, 6.0)(rng_);
        c.params.A = std::uniform_real_distribution<double>(10.0, 150.0)(rng_);
        c.alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
        c.phase = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng_);
        c.t = std::uniform_real_distribution<double>(-0.5, 0.5)(rng_);
        return c;
    }

private:
    std::mt19937_64 rng_;
};

double total_sz(const JointState& state) {
    double out = 0.0;
    for (const auto& sec : state.sectors) {
        const int d = sec.K.twice() + 1;
        for (int i = 0; i < 2 * d; ++i) {
            const double qubit = i < d ? 0.5 : -0.5;
            const double m = (i % d) - 0.5 * sec.K.twice();
            out += sec.weight * sec.rho(i, i).real() * (qubit + m);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("randomized invariants of the sector evolution (1200 cases)") {
    Generator gen(20261015);
    const double bound = isotropic_bound().value();
    int checked = 0;
    for (int i = 0; i < 1200; ++i) {
        const Case c = gen.next(12, 5);
        CAPTURE(i);
        CAPTURE(c.spec.n);
        CAPTURE(c.spec.F.twice());
        CAPTURE(c.params.B);
        CAPTURE(c.t);
        const auto table = enumerate_sectors(c.spec);
        const auto s = initial_state(QubitState::from_alpha(c.alpha, c.phase), table);
        const auto e = evolve(s, c.params, c.t);

        CHECK(std::abs(total_weight(e) - 1.0) < 1e-12);
        CHECK(std::abs(purity(e) - purity(s)) < 1e-10);
        const auto q = reduced_qubit_state(e);
        CHECK(std::abs(q.trace() - 1.0) < 1e-12);
        CHECK(std::abs(q(0, 1) - std::conj(q(1, 0))) < 1e-12);
        // Both terms of H commute with S_z + K_z.
        CHECK(std::abs(total_sz(e) - total_sz(s)) < 1e-10);

        const auto r = negativity(e);
        CHECK(r.total >= 0.0);
        CHECK(r.total <= 0.5);
        CHECK(r.total <= bound);
        ++checked;
    }
    CHECK(checked == 1200);
}

TEST_CASE("randomized spin-flip symmetry N(alpha, beta, B) = N(beta, alpha, -B) (300 cases)") {
    Generator gen(7);
    for (int i = 0; i < 300; ++i) {
        Case c = gen.next(8, 4);
        CAPTURE(i);
        const auto table = enumerate_sectors(c.spec);
        const double beta = std::sqrt(1.0 - c.alpha * c.alpha);
        PhysicalParams flipped = c.params;
        flipped.B = -c.params.B;
        const double a = negativity(evolve(initial_state(QubitState::from_alpha(c.alpha), table), c.params, c.t)).total;
        const double b = negativity(evolve(initial_state(QubitState::from_alpha(beta), table), flipped, c.t)).total;
        CHECK(std::abs(a - b) < 1e-10);
    }
}

TEST_CASE("randomized agreement with the product-basis oracle (60 cases)") {
    Generator gen(99);
    int compared = 0;
    while (compared < 60) {
        const Case c = gen.next(5, 3);
        if (2 * c.spec.bath_dim() > 256) continue;
        CAPTURE(compared);
        const auto q = QubitState::from_alpha(c.alpha, c.phase);
        const oracle::OracleEvolution ev(c.spec, c.params, q);
        const auto s = evolve(initial_state(q, enumerate_sectors(c.spec)), c.params, c.t);
        CHECK(std::abs(ev.negativity(c.t) - negativity(s).total) < 1e-8);
        // Different bath bases: compare the reduced qubit state and the spectrum.
        const Eigen::MatrixXcd full = ev.state(c.t);
        const long d = full.rows() / 2;
        Eigen::Matrix2cd q_oracle;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) q_oracle(a, b) = full.block(a * d, b * d, d, d).trace();
        CHECK((reduced_qubit_state(s) - q_oracle).cwiseAbs().maxCoeff() < 1e-10);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(full, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e2(assemble_dense(s), Eigen::EigenvaluesOnly);
        CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
        ++compared;
    }
}

TEST_CASE("randomized sector tables: probability mass and dimension (500 cases)") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const BathSpec spec{std::uniform_int_distribution<int>(1, 30)(rng),
                            HalfInt::from_twice(std::uniform_int_distribution<int>(1, 9)(rng))};
        BathLimits limits;
        limits.max_bath_dim = ~std::uint64_t{0};
        if (spec.bath_dim() > limits.max_bath_dim) continue;
        const auto t = enumerate_sectors(spec, limits);
        BigCount dim = 0;
        double mass = 0.0;
        for (const auto& s : t.entries) {
            dim += s.multiplicity * static_cast<BigCount>(s.dim());
            mass += s.weight();
        }
        CHECK(dim == spec.bath_dim());
        CHECK(std::abs(mass - 1.0) < 1e-9);
    }
}
