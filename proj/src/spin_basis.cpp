#include "hyperent/spin_basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperent {

HalfInt HalfInt::from_double(double value) {
    const double twice = 2.0 * value;
    const double rounded = std::round(twice);
    if (!std::isfinite(value) || std::abs(twice - rounded) > 1e-9) {
        throw std::invalid_argument("not a half-integer: " + std::to_string(value));
    }
    return from_twice(static_cast<int>(rounded));
}

std::string HalfInt::str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

std::string to_string(BigCount value) {
    if (value == 0) return "0";
    std::string out;
    while (value > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

BigCount BathSpec::bath_dim() const {
    BigCount dim = 1;
    const auto local = static_cast<BigCount>(F.twice() + 1);
    for (int k = 0; k < n; ++k) {
        dim *= local;
        if (dim > (BigCount{1} << 100)) return dim;  // saturate: caller only compares against caps
    }
    return dim;
}

void BathSpec::validate(const BathLimits& limits) const {
    if (n < 1) throw std::invalid_argument("bath needs at least one nucleus (n >= 1)");
    if (F.twice() < 1) throw std::invalid_argument("nuclear spin F must be a positive half-integer");
    if (static_cast<long long>(n) * F.twice() > limits.max_twice_total_spin) {
        throw std::invalid_argument("total bath spin nF = " + max_total_spin().str() +
                                    " exceeds cap 2nF <= " +
                                    std::to_string(limits.max_twice_total_spin));
    }
    if (bath_dim() > limits.max_bath_dim) {
        throw std::invalid_argument("bath dimension (2F+1)^n exceeds cap " +
                                    std::to_string(limits.max_bath_dim));
    }
}

double SectorTable::probability(HalfInt K, HalfInt m) const {
    if (m > K || m < -K || (K - m).twice() % 2 != 0) return 0.0;
    const Sector* s = find(K);
    return s ? s->probability_per_state : 0.0;
}

const Sector* SectorTable::find(HalfInt K) const {
    for (const auto& s : entries) {
        if (s.K == K) return &s;
    }
    return nullptr;
}

SectorTable enumerate_sectors(const BathSpec& spec, const BathLimits& limits) {
    spec.validate(limits);
    const int f2 = spec.F.twice();
    // degeneracy[i] counts product states with 2M = 2i - n*2F
    std::vector<BigCount> degeneracy{1};
    for (int k = 0; k < spec.n; ++k) {
        std::vector<BigCount> next(degeneracy.size() + f2, 0);
        for (std::size_t i = 0; i < degeneracy.size(); ++i) {
            for (int j = 0; j <= f2; ++j) next[i + j] += degeneracy[i];
        }
        degeneracy = std::move(next);
    }
    const int offset = spec.n * f2;
    const BigCount total = spec.bath_dim();
    const double total_d = static_cast<double>(total);

    SectorTable table{spec, {}};
    for (int twice_k = offset % 2; twice_k <= offset; twice_k += 2) {
        // g_K = #(M = K) - #(M = K + 1)
        const std::size_t idx = static_cast<std::size_t>((twice_k + offset) / 2);
        const BigCount at_k = degeneracy[idx];
        const BigCount above = idx + 1 < degeneracy.size() ? degeneracy[idx + 1] : 0;
        const BigCount g = at_k - above;
        if (g == 0) continue;
        table.entries.push_back(
            {HalfInt::from_twice(twice_k), g, static_cast<double>(g) / total_d});
    }
    return table;
}

namespace {

BigCount binomial(long long top, long long bottom) {
    if (bottom < 0 || top < 0 || bottom > top) return 0;
    bottom = std::min(bottom, top - bottom);
    BigCount result = 1;
    for (long long i = 1; i <= bottom; ++i) {
        result = result * static_cast<BigCount>(top - bottom + i) / static_cast<BigCount>(i);
    }
    return result;
}

}  // namespace

BigCount multiplicity_closed_form(const BathSpec& spec, HalfInt K) {
    spec.validate(BathLimits{~std::uint64_t{0}, 1 << 20});
    const int nf2 = spec.n * spec.F.twice();
    if (K.twice() < 0 || K.twice() > nf2 || (nf2 - K.twice()) % 2 != 0) {
        throw std::invalid_argument("K = " + K.str() + " is not an admissible sector");
    }
    if (spec.n == 1) return K == spec.F ? 1 : 0;
    // g_K = sum_k (-1)^k C(n,k) C(nF - K - k(2F+1) + n - 2, n - 2)
    const long long base = (nf2 - K.twice()) / 2 + spec.n - 2;
    const long long step = spec.F.twice() + 1;
    // Accumulate positive and negative parts separately; the result is nonnegative.
    BigCount plus = 0;
    BigCount minus = 0;
    for (int k = 0; k <= spec.n; ++k) {
        const BigCount term = binomial(spec.n, k) * binomial(base - k * step, spec.n - 2);
        (k % 2 == 0 ? plus : minus) += term;
    }
    return plus - minus;
}

}  // namespace hyperent
