// experiments.hpp: negativity traces, disentanglement times, sweeps and fits

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperent/box_hamiltonian.hpp"
#include "hyperent/dynamics.hpp"
#include "hyperent/negativity_trace.hpp"
#include "hyperent/spin_basis.hpp"

namespace hyperent {

/// Zero threshold for disentanglement detection.
inline constexpr double kZeroThreshold = 1e-9;

struct TimeGrid {
    double t_begin{0.0};
    double t_end{0.0};
    int points{2000};

    std::vector<double> times() const;
};

/// [0, 12 hbar / A] with 2000 points.
TimeGrid default_grid(const PhysicalParams& params);

/// Negativity at arbitrary times, always propagated from the t = 0 state.
class NegativityEvaluator {
public:
    NegativityEvaluator(const BathSpec& spec, const PhysicalParams& params, const QubitState& qubit,
                        const BathLimits& limits = {});

    double operator()(double t) const;
    const JointState& initial() const { return initial_; }
    const PhysicalParams& params() const { return params_; }
    TraceProvenance provenance() const;

private:
    PhysicalParams params_;
    QubitState qubit_;
    JointState initial_;
    JointPropagator propagator_;
};

NegativityTrace trace_negativity(const NegativityEvaluator& eval, const std::vector<double>& times);
NegativityTrace trace_negativity(const BathSpec& spec, const PhysicalParams& params, const QubitState& qubit,
                                 const TimeGrid& grid, const BathLimits& limits = {});

enum class TauMethod { FirstReturnToZero, ThresholdCrossing };
std::string to_string(TauMethod method);

struct DisentanglementTime {
    double tau{0.0};  // ns
    TauMethod method{TauMethod::FirstReturnToZero};
    double epsilon{kZeroThreshold};
    double value_at_tau{0.0};
};

struct TauOptions {
    TauMethod method{TauMethod::FirstReturnToZero};
    double epsilon{kZeroThreshold};
    double relative_precision{1e-4};
};

class NeverEntangled : public std::runtime_error {
public:
    NeverEntangled() : std::runtime_error("never entangled") {}
};

class NoReturnInWindow : public std::runtime_error {
public:
    NoReturnInWindow() : std::runtime_error("no return to zero in window") {}
};

/// First time after the trace exceeds epsilon at which negativity returns to
/// <= epsilon. Grid minima are refined by golden-section search, downward
/// crossings by bisection, both on freshly evaluated negativities.
DisentanglementTime find_tau(const NegativityTrace& trace, const NegativityEvaluator& eval,
                             const TauOptions& options = {});

/// Maximum over [trace start, t_max], refined around the best grid point.
double max_negativity(const NegativityTrace& trace, const NegativityEvaluator& eval, double t_max);

struct AnalysisOptions {
    double window_ns{0.0};  // 0: default 12 hbar / A
    int points{2000};
    int max_doublings{6};
    TauOptions tau{};
};

struct PointAnalysis {
    NegativityTrace trace;
    std::optional<DisentanglementTime> tau;
    double max_negativity{0.0};  // over the first period when tau exists, else over the window
    std::string error;
};

/// Trace + tau + first-period maximum; the window doubles (same step) until a
/// return to zero is found or max_doublings is exhausted.
PointAnalysis analyze(const BathSpec& spec, const PhysicalParams& params, const QubitState& qubit,
                      const AnalysisOptions& options = {}, const BathLimits& limits = {});

// ---------------------------------------------------------------------------

enum class FitModel { Linear, Log, Exponential };
std::string to_string(FitModel model);

struct FitReport {
    FitModel model{FitModel::Linear};
    double intercept{0.0};
    double slope{0.0};
    double r_squared{0.0};
    bool degenerate{false};  // no variance to explain; r_squared reported as 0
    std::size_t points{0};
};

/// Ordinary least squares. Linear: y = a + b x. Log: y = a + b ln x.
/// Exponential: ln y = a + b x (R^2 on the log scale).
FitReport fit(FitModel model, const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------

enum class SweepAxis { F, n, B, alpha };
std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

struct SweepRequest {
    SweepAxis axis{SweepAxis::F};
    std::vector<double> values;
    BathSpec bath{};
    PhysicalParams params{};
    double alpha{1.0};
    double phase{0.0};
    AnalysisOptions analysis{};
    BathLimits limits{};
    int jobs{1};
};

struct SweepPoint {
    double value{0.0};
    double max_negativity{0.0};
    std::optional<double> tau_ns;
    std::string error;
};

/// Points run independently on `jobs` workers; output order follows `values`.
std::vector<SweepPoint> sweep(const SweepRequest& request);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads (jobs <= 0: hardware concurrency).
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------

struct ParityRow {
    int n{0};
    bool even{false};
    std::optional<double> tau_ns;
    std::string error;
};

struct ParityReport {
    std::vector<ParityRow> rows;
    int comparisons{0};
    bool even_exceeds_odd{false};  // every even n beats each adjacent odd n present
};

ParityReport parity_report(HalfInt F, const std::vector<int>& n_values, const PhysicalParams& params,
                           const AnalysisOptions& options = {}, int jobs = 1);

struct FieldRow {
    double B{0.0};
    double max_negativity{0.0};
};

struct FieldBirthReport {
    std::vector<FieldRow> rows;  // ascending B
    double epsilon{kZeroThreshold};
    double window_ns{0.0};
    bool zero_field_separable{false};
    bool birth_at_positive_field{false};
    double argmax_B{0.0};
    double peak{0.0};
    bool decays_at_large_field{false};  // largest-B value below the peak
};

/// Max negativity over a fixed window (default one zero-field revival, 4 pi hbar / A) per field.
FieldBirthReport field_birth_report(const BathSpec& spec, double alpha, std::vector<double> B_values,
                                    const PhysicalParams& base, double window_ns = 0.0, int points = 2000,
                                    int jobs = 1);

}  // namespace hyperent
