#pragma once

// Counter-based random number generation (Philox4x64-10).
//
// Monte Carlo work in this library is partitioned by replicate index: every
// replicate derives its draws from a counter block keyed by
// (seed, stream, replicate), so results are identical no matter how the
// replicates are scheduled across workers.

#include <array>
#include <cmath>
#include <cstdint>

namespace lofit::rng {

/// Raw Philox4x64-10 block function. Pure: maps a 256-bit counter and a
/// 128-bit key to four 64-bit words.
struct Philox4x64 {
    static constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

    static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> ctr,
                                              std::array<std::uint64_t, 2> key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const unsigned __int128 p0 = static_cast<unsigned __int128>(kMult0) * ctr[0];
            const unsigned __int128 p1 = static_cast<unsigned __int128>(kMult1) * ctr[2];
            const auto lo0 = static_cast<std::uint64_t>(p0);
            const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
            const auto lo1 = static_cast<std::uint64_t>(p1);
            const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
};

/// A deterministic stream of variates addressed by (seed, stream, replicate).
///
/// Layout: key = (seed, stream); counter = (block_index, replicate, 0, 0).
/// Each replicate owns 2^64 blocks of four 64-bit words; block_index never
/// carries into the replicate word.
class Stream {
  public:
    explicit Stream(std::uint64_t seed, std::uint64_t stream = 0,
                    std::uint64_t replicate = 0) noexcept
        : key_{seed, stream}, replicate_(replicate) {}

    /// Next raw 64-bit word.
    std::uint64_t next_u64() noexcept {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    /// Uniform draw on the open interval (0,1): 53-bit mantissa, offset by
    /// half an ulp so 0 and 1 are unreachable.
    double uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; draws two uniforms per pair and caches
    /// the second variate.
    double normal() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Chi-square with one degree of freedom (squared standard normal).
    double chisq1() noexcept {
        const double z = normal();
        return z * z;
    }

    /// Exponential(1) draw.
    double exponential() noexcept { return -std::log(uniform()); }

  private:
    void refill() noexcept {
        buf_ = Philox4x64::block({block_, replicate_, 0, 0}, key_);
        ++block_;
        pos_ = 0;
    }

    std::array<std::uint64_t, 2> key_;
    std::uint64_t replicate_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 4> buf_{};
    int pos_ = 4;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Fixed stream identifiers, one per consumer, so independent components
/// never share a variate sequence under a common seed.
namespace streams {
inline constexpr std::uint64_t kLawSim = 1;
inline constexpr std::uint64_t kStable = 2;
inline constexpr std::uint64_t kHarnessData = 3;
inline constexpr std::uint64_t kBootstrap = 4;
inline constexpr std::uint64_t kStarNull = 5;
inline constexpr std::uint64_t kNeyman = 6;
}  // namespace streams

}  // namespace lofit::rng
