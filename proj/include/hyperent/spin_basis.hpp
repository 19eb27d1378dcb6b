// spin_basis.hpp: total-spin sectors of a bath of n identical spin-F nuclei

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace hyperent {

/// Half-integer quantum number stored as twice its value (spins, projections).
class HalfInt {
public:
    constexpr HalfInt() = default;
    static constexpr HalfInt from_twice(int twice) { HalfInt h; h.twice_ = twice; return h; }
    static constexpr HalfInt from_int(int value) { return from_twice(2 * value); }
    /// Rounds to the nearest half-integer; throws if `value` is not one.
    static HalfInt from_double(double value);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const;

private:
    int twice_{0};
};

inline constexpr HalfInt kHalf = HalfInt::from_twice(1);

using BigCount = unsigned __int128;

struct BathLimits {
    // (2F+1)^n ceiling; 2^53 keeps g_K / (2F+1)^n exact in double.
    std::uint64_t max_bath_dim{std::uint64_t{1} << 53};
    // Ceiling on 2K_max = 2nF (sector dimension is 2(2K+1)).
    int max_twice_total_spin{400};
};

struct BathSpec {
    int n{1};
    HalfInt F{kHalf};

    /// Throws std::invalid_argument on n < 1, F <= 0 or a violated cap.
    void validate(const BathLimits& limits = {}) const;
    HalfInt max_total_spin() const { return HalfInt::from_twice(n * F.twice()); }
    HalfInt min_total_spin() const { return n == 1 ? F : HalfInt::from_twice((n * F.twice()) % 2); }
    /// (2F+1)^n, exact.
    BigCount bath_dim() const;
};

struct Sector {
    HalfInt K;
    BigCount multiplicity{0};
    /// P_{K,m} = g_K / (2F+1)^n, identical for every m in the sector.
    double probability_per_state{0.0};

    int dim() const { return K.twice() + 1; }
    /// Total probability mass g_K (2K+1) / (2F+1)^n.
    double weight() const { return probability_per_state * dim(); }
};

struct SectorTable {
    BathSpec spec;
    std::vector<Sector> entries;  // ascending K, zero multiplicities dropped

    /// P_{K,m}; zero for K outside the table or |m| > K.
    double probability(HalfInt K, HalfInt m) const;
    const Sector* find(HalfInt K) const;
};

/// Sectors via exact integer convolution of m-degeneracy vectors.
SectorTable enumerate_sectors(const BathSpec& spec, const BathLimits& limits = {});

/// Alternating binomial sum for g_K; cross-check for enumerate_sectors.
BigCount multiplicity_closed_form(const BathSpec& spec, HalfInt K);

std::string to_string(BigCount value);

}  // namespace hyperent
