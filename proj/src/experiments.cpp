#include "hyperent/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "hyperent/entanglement.hpp"

namespace hyperent {

std::vector<double> TimeGrid::times() const {
    if (points < 2) throw std::invalid_argument("time grid needs at least two points");
    if (!(t_end > t_begin)) throw std::invalid_argument("time grid needs t_end > t_begin");
    std::vector<double> out(static_cast<std::size_t>(points));
    const double step = (t_end - t_begin) / (points - 1);
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = t_begin + step * i;
    out.back() = t_end;
    return out;
}

TimeGrid default_grid(const PhysicalParams& params) {
    if (!(params.A > 0.0)) throw std::invalid_argument("default time grid needs A > 0");
    return {0.0, 12.0 * params.hbar / params.A, 2000};
}

// ---------------------------------------------------------------------------

NegativityEvaluator::NegativityEvaluator(const BathSpec& spec, const PhysicalParams& params, const QubitState& qubit,
                                         const BathLimits& limits)
    : params_(params),
      qubit_(qubit),
      initial_(initial_state(qubit, enumerate_sectors(spec, limits))),
      propagator_(params, initial_) {}

double NegativityEvaluator::operator()(double t) const {
    return negativity(propagator_.apply(initial_, t)).total;
}

TraceProvenance NegativityEvaluator::provenance() const {
    return {initial_.spec.n, initial_.spec.F.value(), qubit_.alpha.real(), std::arg(qubit_.beta),
            params_.B,       params_.A,               "sector"};
}

NegativityTrace trace_negativity(const NegativityEvaluator& eval, const std::vector<double>& times) {
    NegativityTrace trace;
    trace.times = times;
    trace.values.reserve(times.size());
    for (const double t : times) trace.values.push_back(eval(t));
    trace.params = eval.provenance();
    return trace;
}

NegativityTrace trace_negativity(const BathSpec& spec, const PhysicalParams& params, const QubitState& qubit,
                                 const TimeGrid& grid, const BathLimits& limits) {
    return trace_negativity(NegativityEvaluator(spec, params, qubit, limits), grid.times());
}

std::string to_string(TauMethod method) {
    return method == TauMethod::FirstReturnToZero ? "first-return-to-zero" : "threshold-crossing";
}

namespace {

constexpr double kGolden = 0.6180339887498949;

struct Extremum {
    double t;
    double value;
};

// Golden-section search for a minimum of f on [lo, hi].
template <class F>
Extremum golden_minimize(F&& f, double lo, double hi, double tol) {
    double a = lo;
    double b = hi;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = f(c);
    double fd = f(d);
    Extremum best = fc < fd ? Extremum{c, fc} : Extremum{d, fd};
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
            if (fc < best.value) best = {c, fc};
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
            if (fd < best.value) best = {d, fd};
        }
    }
    return best;
}

}  // namespace

DisentanglementTime find_tau(const NegativityTrace& trace, const NegativityEvaluator& eval, const TauOptions& options) {
    const auto& t = trace.times;
    const auto& v = trace.values;
    if (t.size() != v.size() || t.size() < 3) throw std::invalid_argument("find_tau needs a trace of >= 3 points");
    const double eps = options.epsilon;
    // Precision far below relative_precision so that touching zeros are resolved to <= eps.
    const double tol = std::max(std::abs(t.back()), std::abs(t.front())) * std::min(1e-12, options.relative_precision);

    bool rose = false;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (v[i] > eps) {
            if (!rose) {
                rose = true;
                continue;
            }
            const bool local_min = options.method == TauMethod::FirstReturnToZero && i + 1 < t.size() &&
                                   v[i] <= v[i - 1] && v[i] <= v[i + 1];
            if (!local_min) continue;
            const Extremum m = golden_minimize(eval, t[i - 1], t[i + 1], tol);
            if (m.value <= eps) return {m.t, options.method, eps, m.value};
            continue;
        }
        if (!rose) continue;
        // Downward crossing inside (t[i-1], t[i]]: bisect for the first point <= eps.
        double lo = t[i - 1];
        double hi = t[i];
        double at_hi = v[i];
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            const double nm = eval(mid);
            if (nm <= eps) {
                hi = mid;
                at_hi = nm;
            } else {
                lo = mid;
            }
        }
        return {hi, options.method, eps, at_hi};
    }
    if (!rose) throw NeverEntangled();
    throw NoReturnInWindow();
}

double max_negativity(const NegativityTrace& trace, const NegativityEvaluator& eval, double t_max) {
    const auto& t = trace.times;
    const auto& v = trace.values;
    std::size_t best = 0;
    for (std::size_t i = 0; i < t.size() && t[i] <= t_max; ++i)
        if (v[i] > v[best]) best = i;
    if (v.empty() || v[best] <= 0.0) return 0.0;
    const double lo = best > 0 ? t[best - 1] : t[best];
    const double hi = std::min(best + 1 < t.size() ? t[best + 1] : t[best], t_max);
    if (!(hi > lo)) return v[best];
    const Extremum m = golden_minimize([&](double x) { return -eval(x); }, lo, hi, (hi - lo) * 1e-6);
    return std::max(v[best], -m.value);
}

PointAnalysis analyze(const BathSpec& spec, const PhysicalParams& params, const QubitState& qubit,
                      const AnalysisOptions& options, const BathLimits& limits) {
    const NegativityEvaluator eval(spec, params, qubit, limits);
    double window = options.window_ns > 0.0 ? options.window_ns : default_grid(params).t_end;
    int points = options.points;
    PointAnalysis out;
    for (int attempt = 0;; ++attempt) {
        out.trace = trace_negativity(eval, TimeGrid{0.0, window, points}.times());
        try {
            out.tau = find_tau(out.trace, eval, options.tau);
            out.error.clear();
            out.max_negativity = max_negativity(out.trace, eval, out.tau->tau);
            return out;
        } catch (const NeverEntangled& e) {
            out.error = e.what();
            break;
        } catch (const NoReturnInWindow& e) {
            out.error = e.what();
            if (attempt >= options.max_doublings) break;
        }
        window *= 2.0;
        points = 2 * points - 1;
    }
    out.max_negativity = max_negativity(out.trace, eval, out.trace.times.back());
    return out;
}

// ---------------------------------------------------------------------------

std::string to_string(FitModel model) {
    switch (model) {
        case FitModel::Linear: return "linear";
        case FitModel::Log: return "log";
        case FitModel::Exponential: return "exponential";
    }
    return "unknown";
}

FitReport fit(FitModel model, const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs >= 2 paired points");
    std::vector<double> u(x.size());
    std::vector<double> w(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        u[i] = x[i];
        w[i] = y[i];
        if (model == FitModel::Log) {
            if (!(x[i] > 0.0)) throw std::invalid_argument("log fit needs x > 0");
            u[i] = std::log(x[i]);
        }
        if (model == FitModel::Exponential) {
            if (!(y[i] > 0.0)) throw std::invalid_argument("exponential fit needs y > 0");
            w[i] = std::log(y[i]);
        }
    }
    const double count = static_cast<double>(u.size());
    double mu = 0.0;
    double mw = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mu += u[i] / count;
        mw += w[i] / count;
    }
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        sxx += (u[i] - mu) * (u[i] - mu);
        sxy += (u[i] - mu) * (w[i] - mw);
        syy += (w[i] - mw) * (w[i] - mw);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit needs at least two distinct abscissae");
    FitReport r;
    r.model = model;
    r.points = u.size();
    r.slope = sxy / sxx;
    r.intercept = mw - r.slope * mu;
    // Spread below the tau time precision (1e-6 relative) carries no signal.
    const double scale = std::max(std::abs(mw), std::numeric_limits<double>::min());
    if (std::sqrt(syy / count) <= 1e-6 * scale) {
        r.degenerate = true;
        r.r_squared = 0.0;
        return r;
    }
    double ss_res = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double e = w[i] - (r.intercept + r.slope * u[i]);
        ss_res += e * e;
    }
    r.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return r;
}

// ---------------------------------------------------------------------------

std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::F: return "F";
        case SweepAxis::n: return "n";
        case SweepAxis::B: return "B";
        case SweepAxis::alpha: return "alpha";
    }
    return "unknown";
}

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "F" || name == "f") return SweepAxis::F;
    if (name == "n") return SweepAxis::n;
    if (name == "B" || name == "b" || name == "bfield") return SweepAxis::B;
    if (name == "alpha") return SweepAxis::alpha;
    throw std::invalid_argument("unknown sweep axis '" + name + "' (expected F, n, B or alpha)");
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < count; i = next++) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<SweepPoint> sweep(const SweepRequest& request) {
    if (request.values.empty()) throw std::invalid_argument("sweep needs at least one value");
    std::vector<SweepPoint> out(request.values.size());
    parallel_for(out.size(), request.jobs, [&](std::size_t i) {
        SweepPoint& point = out[i];
        point.value = request.values[i];
        try {
            BathSpec bath = request.bath;
            PhysicalParams params = request.params;
            double alpha = request.alpha;
            switch (request.axis) {
                case SweepAxis::F: bath.F = HalfInt::from_double(point.value); break;
                case SweepAxis::n:
                    if (point.value != std::floor(point.value)) throw std::invalid_argument("n must be an integer");
                    bath.n = static_cast<int>(point.value);
                    break;
                case SweepAxis::B: params.B = point.value; break;
                case SweepAxis::alpha: alpha = point.value; break;
            }
            const auto result =
                analyze(bath, params, QubitState::from_alpha(alpha, request.phase), request.analysis, request.limits);
            point.max_negativity = result.max_negativity;
            if (result.tau) point.tau_ns = result.tau->tau;
            point.error = result.error;
        } catch (const std::exception& e) {
            point.max_negativity = std::numeric_limits<double>::quiet_NaN();
            point.error = e.what();
        }
    });
    return out;
}

// ---------------------------------------------------------------------------

ParityReport parity_report(HalfInt F, const std::vector<int>& n_values, const PhysicalParams& params,
                           const AnalysisOptions& options, int jobs) {
    if (F != kHalf) throw std::invalid_argument("parity report applies to F = 1/2 only");
    if (n_values.size() < 2) throw std::invalid_argument("parity report needs at least two n values");
    ParityReport report;
    report.rows.resize(n_values.size());
    parallel_for(n_values.size(), jobs, [&](std::size_t i) {
        ParityRow& row = report.rows[i];
        row.n = n_values[i];
        row.even = row.n % 2 == 0;
        try {
            const auto a = analyze({row.n, F}, params, QubitState::from_alpha(1.0), options);
            if (a.tau) row.tau_ns = a.tau->tau;
            row.error = a.error;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });
    bool all = true;
    for (const auto& even : report.rows) {
        if (!even.even) continue;
        for (const auto& odd : report.rows) {
            if (odd.even || std::abs(odd.n - even.n) != 1) continue;
            ++report.comparisons;
            all = all && even.tau_ns && odd.tau_ns && *even.tau_ns > *odd.tau_ns;
        }
    }
    report.even_exceeds_odd = all && report.comparisons > 0;
    return report;
}

FieldBirthReport field_birth_report(const BathSpec& spec, double alpha, std::vector<double> B_values,
                                    const PhysicalParams& base, double window_ns, int points, int jobs) {
    std::sort(B_values.begin(), B_values.end());
    B_values.erase(std::unique(B_values.begin(), B_values.end()), B_values.end());
    const auto positive = std::count_if(B_values.begin(), B_values.end(), [](double b) { return b > 0.0; });
    if (!B_values.empty() && B_values.front() < 0.0) throw std::invalid_argument("field sweep takes B >= 0");
    if (B_values.empty() || B_values.front() != 0.0 || positive < 2) {
        throw std::invalid_argument("field sweep needs B = 0 and at least two positive fields");
    }
    FieldBirthReport report;
    report.window_ns = window_ns > 0.0 ? window_ns : 4.0 * std::numbers::pi * base.hbar / base.A;
    report.rows.resize(B_values.size());
    const auto times = TimeGrid{0.0, report.window_ns, points}.times();
    parallel_for(B_values.size(), jobs, [&](std::size_t i) {
        PhysicalParams p = base;
        p.B = B_values[i];
        const NegativityEvaluator eval(spec, p, QubitState::from_alpha(alpha));
        const auto trace = trace_negativity(eval, times);
        report.rows[i] = {p.B, max_negativity(trace, eval, report.window_ns)};
    });
    report.zero_field_separable = report.rows.front().max_negativity <= report.epsilon;
    report.birth_at_positive_field = std::any_of(report.rows.begin() + 1, report.rows.end(),
                                                 [&](const FieldRow& r) { return r.max_negativity > report.epsilon; });
    const auto peak = std::max_element(report.rows.begin() + 1, report.rows.end(),
                                       [](const FieldRow& a, const FieldRow& b) { return a.max_negativity < b.max_negativity; });
    report.argmax_B = peak->B;
    report.peak = peak->max_negativity;
    report.decays_at_large_field = report.rows.back().max_negativity < report.peak;
    return report;
}

}  // namespace hyperent
