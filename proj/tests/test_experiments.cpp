#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "hyperent/experiments.hpp"

using namespace hyperent;

namespace {

constexpr double pi = std::numbers::pi;

PhysicalParams field(double B) {
    PhysicalParams p;
    p.B = B;
    return p;
}

}  // namespace

TEST_CASE("time grid") {
    const auto t = TimeGrid{0.0, 1.0, 5}.times();
    REQUIRE(t.size() == 5);
    CHECK(t[2] == doctest::Approx(0.5));
    CHECK(t.back() == 1.0);
    CHECK_THROWS_AS(TimeGrid({0.0, 1.0, 1}).times(), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({1.0, 1.0, 10}).times(), std::invalid_argument);
    const PhysicalParams p;
    CHECK(default_grid(p).t_end == doctest::Approx(12 * p.hbar / p.A));
    CHECK(default_grid(p).points == 2000);
}

TEST_CASE("single spin-1/2 at zero field: tau = pi hbar / A, close to 3 hbar / A") {
    const PhysicalParams p;
    const NegativityEvaluator eval({1, kHalf}, p, QubitState::from_alpha(1.0));
    const auto trace = trace_negativity(eval, default_grid(p).times());
    const auto tau = find_tau(trace, eval);
    CHECK(tau.tau == doctest::Approx(pi * p.hbar / p.A).epsilon(1e-6));
    CHECK(tau.value_at_tau <= kZeroThreshold);
    CHECK(std::abs(tau.tau / (3 * p.hbar / p.A) - 1.0) < 0.05);
    // closed form maximum (sqrt 2 - 1) / 4 at t = pi hbar / 2A
    CHECK(max_negativity(trace, eval, tau.tau) == doctest::Approx((std::sqrt(2.0) - 1) / 4).epsilon(1e-9));
}

TEST_CASE("single spin-1/2 in a field: tau = 2 pi hbar / Omega") {
    for (const double B : {1.0, 3.0}) {
        const auto p = field(B);
        const double omega = std::hypot(p.A, p.zeeman());
        const auto a = analyze({1, kHalf}, p, QubitState::from_alpha(1.0));
        REQUIRE(a.tau);
        CHECK(a.tau->tau == doctest::Approx(2 * pi * p.hbar / omega).epsilon(1e-6));
        CHECK(a.error.empty());
    }
}

TEST_CASE("tau is insensitive to the grid resolution") {
    for (const auto& [spec, B] : {std::pair{BathSpec{3, HalfInt::from_int(1)}, 0.0}, std::pair{BathSpec{1, kHalf}, 1.0}}) {
        const auto p = field(B);
        const NegativityEvaluator eval(spec, p, QubitState::from_alpha(1.0));
        const double end = 16 * pi * p.hbar / p.A;
        const auto coarse = find_tau(trace_negativity(eval, TimeGrid{0, end, 500}.times()), eval);
        const auto fine = find_tau(trace_negativity(eval, TimeGrid{0, end, 4000}.times()), eval);
        CHECK(std::abs(coarse.tau / fine.tau - 1.0) < 0.005);
    }
}

TEST_CASE("threshold crossing is never later than the first return to zero") {
    const PhysicalParams p;
    const NegativityEvaluator eval({2, kHalf}, p, QubitState::from_alpha(1.0));
    const auto trace = trace_negativity(eval, TimeGrid{0, 8 * pi * p.hbar / p.A, 2000}.times());
    const auto zero = find_tau(trace, eval);
    TauOptions loose;
    loose.method = TauMethod::ThresholdCrossing;
    loose.epsilon = 1e-3;
    const auto thr = find_tau(trace, eval, loose);
    CHECK(thr.tau <= zero.tau);
    CHECK(thr.value_at_tau <= 1e-3);
    CHECK(to_string(thr.method) == "threshold-crossing");
}

TEST_CASE("failure modes: never entangled, no return in window") {
    PhysicalParams p;
    p.A = 0.0;
    p.B = 1.0;
    const NegativityEvaluator flat({2, kHalf}, p, QubitState::from_alpha(0.9));
    CHECK_THROWS_AS(find_tau(trace_negativity(flat, TimeGrid{0, 1, 50}.times()), flat), NeverEntangled);

    AnalysisOptions opts;
    opts.window_ns = 1.0;
    const auto none = analyze({2, kHalf}, p, QubitState::from_alpha(0.9), opts);
    CHECK(none.error == "never entangled");
    CHECK(!none.tau);
    CHECK(none.max_negativity == 0.0);

    const PhysicalParams q;
    const NegativityEvaluator eval({1, kHalf}, q, QubitState::from_alpha(1.0));
    const double short_window = 0.5 * pi * q.hbar / q.A;
    CHECK_THROWS_AS(find_tau(trace_negativity(eval, TimeGrid{0, short_window, 100}.times()), eval), NoReturnInWindow);

    AnalysisOptions once;
    once.window_ns = short_window;
    once.max_doublings = 0;
    const auto cut = analyze({1, kHalf}, q, QubitState::from_alpha(1.0), once);
    CHECK(cut.error == "no return to zero in window");
    CHECK(cut.max_negativity > 0.0);

    once.max_doublings = 3;
    const auto grown = analyze({1, kHalf}, q, QubitState::from_alpha(1.0), once);
    REQUIRE(grown.tau);
    CHECK(grown.tau->tau == doctest::Approx(pi * q.hbar / q.A).epsilon(1e-6));
    CHECK(grown.trace.times.back() >= 2 * short_window);
}

TEST_CASE("least-squares fits") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> lin, lg, ex;
    for (double v : x) {
        lin.push_back(2 - 0.5 * v);
        lg.push_back(1 + 3 * std::log(v));
        ex.push_back(4 * std::exp(-0.2 * v));
    }
    const auto l = fit(FitModel::Linear, x, lin);
    CHECK(l.slope == doctest::Approx(-0.5));
    CHECK(l.intercept == doctest::Approx(2));
    CHECK(l.r_squared == doctest::Approx(1.0));
    CHECK(fit(FitModel::Log, x, lg).slope == doctest::Approx(3));
    const auto e = fit(FitModel::Exponential, x, ex);
    CHECK(e.slope == doctest::Approx(-0.2));
    CHECK(e.intercept == doctest::Approx(std::log(4.0)));

    const auto flat = fit(FitModel::Linear, x, std::vector<double>(5, 7.0));
    CHECK(flat.degenerate);
    CHECK(flat.r_squared == 0.0);

    // noisy data keeps R^2 in [0, 1]
    const auto noisy = fit(FitModel::Linear, x, {1, -1, 1, -1, 1});
    CHECK(noisy.r_squared >= 0.0);
    CHECK(noisy.r_squared < 0.1);

    CHECK_THROWS_AS(fit(FitModel::Linear, {1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(fit(FitModel::Linear, {1, 1}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(fit(FitModel::Log, {0, 1}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(fit(FitModel::Exponential, {0, 1}, {0, 2}), std::invalid_argument);
}

TEST_CASE("sweep axes parse") {
    CHECK(parse_sweep_axis("F") == SweepAxis::F);
    CHECK(parse_sweep_axis("n") == SweepAxis::n);
    CHECK(parse_sweep_axis("B") == SweepAxis::B);
    CHECK(parse_sweep_axis("alpha") == SweepAxis::alpha);
    CHECK_THROWS_AS(parse_sweep_axis("T"), std::invalid_argument);
    CHECK(to_string(SweepAxis::alpha) == "alpha");
}

TEST_CASE("sweep is deterministic across job counts and records per-point errors") {
    SweepRequest req;
    req.axis = SweepAxis::F;
    req.values = {0.5, 1.0, 0.3, 1.5};
    req.bath = {2, kHalf};
    const auto serial = sweep(req);
    req.jobs = 3;
    const auto threaded = sweep(req);
    REQUIRE(serial.size() == 4);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].value == req.values[i]);
        CHECK(serial[i].error == threaded[i].error);
        CHECK(serial[i].tau_ns == threaded[i].tau_ns);
        if (i != 2) CHECK(serial[i].max_negativity == threaded[i].max_negativity);
    }
    CHECK(std::isnan(serial[2].max_negativity));
    CHECK(!serial[2].error.empty());
    CHECK(!serial[2].tau_ns);
    CHECK(serial[0].tau_ns);

    SweepRequest bad_n = req;
    bad_n.axis = SweepAxis::n;
    bad_n.values = {1.5};
    CHECK(sweep(bad_n)[0].error == "n must be an integer");
    req.values.clear();
    CHECK_THROWS_AS(sweep(req), std::invalid_argument);
}

TEST_CASE("parallel_for propagates worker exceptions") {
    CHECK_THROWS_AS(parallel_for(8, 2,
                                 [](std::size_t i) {
                                     if (i == 5) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    std::vector<int> hit(100, 0);
    parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
    CHECK(std::count(hit.begin(), hit.end(), 1) == 100);
}

TEST_CASE("parity report") {
    const PhysicalParams p;
    CHECK_THROWS_AS(parity_report(HalfInt::from_int(1), {1, 2}, p), std::invalid_argument);
    CHECK_THROWS_AS(parity_report(kHalf, {2}, p), std::invalid_argument);
    const auto r = parity_report(kHalf, {1, 2, 3}, p);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.comparisons == 2);
    const double unit = pi * p.hbar / p.A;
    REQUIRE(r.rows[0].tau_ns);
    REQUIRE(r.rows[1].tau_ns);
    REQUIRE(r.rows[2].tau_ns);
    CHECK(*r.rows[0].tau_ns / unit == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(*r.rows[1].tau_ns / unit == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
    CHECK(*r.rows[2].tau_ns / unit == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.even_exceeds_odd);
}

TEST_CASE("field sweep preconditions and zero-field entanglement for a polarized qubit") {
    const BathSpec spec{1, kHalf};
    const PhysicalParams p;
    CHECK_THROWS_AS(field_birth_report(spec, 1.0, {0.0, 1.0}, p), std::invalid_argument);
    CHECK_THROWS_AS(field_birth_report(spec, 1.0, {0.5, 1.0, 2.0}, p), std::invalid_argument);
    CHECK_THROWS_AS(field_birth_report(spec, 1.0, {-1.0, 0.0, 1.0, 2.0}, p), std::invalid_argument);
    const auto r = field_birth_report(spec, 1.0, {2.0, 0.0, 1.0}, p, 0.0, 400);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].B == 0.0);
    CHECK(r.rows[0].max_negativity == doctest::Approx((std::sqrt(2.0) - 1) / 4).epsilon(1e-8));
    CHECK(!r.zero_field_separable);
    CHECK(r.window_ns == doctest::Approx(4 * pi * p.hbar / p.A));
}
