#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "hyperent/box_hamiltonian.hpp"
#include "hyperent/entanglement.hpp"
#include "hyperent/oracle.hpp"

using namespace hyperent;

TEST_CASE("one spin-1/2 nucleus at zero field: triplet A/4, singlet -3A/4") {
    const PhysicalParams p;
    const auto e = oracle::full_spectrum({1, kHalf}, p);
    REQUIRE(e.size() == 4);
    CHECK(e[0] == doctest::Approx(-3 * p.A / 4));
    for (int i = 1; i < 4; ++i) CHECK(e[i] == doctest::Approx(p.A / 4));
}

TEST_CASE("zero coupling leaves only the qubit Zeeman splitting") {
    PhysicalParams p;
    p.A = 0.0;
    p.B = 2.0;
    const auto e = oracle::full_spectrum({2, HalfInt::from_int(1)}, p);
    const double z = p.zeeman() / 2;
    const auto lo = std::count_if(e.begin(), e.end(), [&](double x) { return std::abs(x + std::abs(z)) < 1e-12; });
    const auto hi = std::count_if(e.begin(), e.end(), [&](double x) { return std::abs(x - std::abs(z)) < 1e-12; });
    CHECK(lo == 9);
    CHECK(hi == 9);
}

TEST_CASE("full spectrum equals the sector spectra repeated g_K times") {
    for (const double B : {0.0, 1.0, 3.0}) {
        PhysicalParams p;
        p.B = B;
        for (int n = 1; n <= 4; ++n)
            for (int f2 = 1; f2 <= 3; ++f2) {
                const BathSpec spec{n, HalfInt::from_twice(f2)};
                if (2 * std::pow(f2 + 1, n) > 512) continue;
                const auto full = oracle::full_spectrum(spec, p);
                std::vector<double> sectors;
                for (const auto& s : enumerate_sectors(spec).entries)
                    for (BigCount c = 0; c < s.multiplicity; ++c)
                        for (double e : sector_spectrum(p, s.K)) sectors.push_back(e);
                std::sort(sectors.begin(), sectors.end());
                REQUIRE(sectors.size() == full.size());
                double worst = 0.0;
                for (std::size_t i = 0; i < full.size(); ++i) worst = std::max(worst, std::abs(full[i] - sectors[i]));
                CHECK(worst < 1e-10);
            }
    }
}

TEST_CASE("oracle evolution conserves trace and purity") {
    PhysicalParams p;
    p.B = 1.0;
    const BathSpec spec{3, HalfInt::from_int(1)};
    const oracle::OracleEvolution ev(spec, p, QubitState::from_alpha(0.9, 0.3));
    CHECK(ev.dim() == 54);
    const double p0 = 1.0 / 27.0;
    for (const double t : {0.0, 0.02, 0.3}) {
        const auto rho = ev.state(t);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
        CHECK(std::abs((rho * rho).trace().real() - p0) < 1e-12);
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("oracle and sector path agree on negativity") {
    for (const double B : {0.0, 1.0}) {
        PhysicalParams p;
        p.B = B;
        for (const BathSpec spec : {BathSpec{1, kHalf}, BathSpec{2, HalfInt::from_twice(3)}, BathSpec{4, kHalf}}) {
            const auto q = QubitState::from_alpha(0.8, 0.5);
            const oracle::OracleEvolution ev(spec, p, q);
            const auto s = initial_state(q, enumerate_sectors(spec));
            for (const double t : {0.005, 0.02, 0.045}) CHECK(std::abs(ev.negativity(t) - negativity(evolve(s, p, t)).total) < 1e-8);
        }
    }
}

TEST_CASE("oracle refuses oversized problems and empty baths") {
    try {
        oracle::full_spectrum({12, HalfInt::from_twice(3)}, PhysicalParams{});
        FAIL("expected a cap error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("cap") != std::string::npos);
    }
    CHECK_THROWS_AS(oracle::full_spectrum({0, kHalf}, PhysicalParams{}), std::invalid_argument);
}
