#pragma once

#include <array>
#include <cstdint>

namespace starharm {

/// Philox4x32-10 counter-based generator.
///
/// Every walk owns the stream keyed by the master seed with the walk index in
/// the upper counter words, so draws do not depend on thread scheduling.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Block bijection(Block ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

    Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream)
    {
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept
    {
        if (used_ >= 2)
            refill();
        const std::uint64_t hi = block_[2 * used_] >> 5;      // 27 bits
        const std::uint64_t lo = block_[2 * used_ + 1] >> 6;  // 26 bits
        ++used_;
        return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

    void refill() noexcept
    {
        block_ = bijection({static_cast<std::uint32_t>(counter_),
                            static_cast<std::uint32_t>(counter_ >> 32),
                            static_cast<std::uint32_t>(stream_),
                            static_cast<std::uint32_t>(stream_ >> 32)},
                           key_);
        ++counter_;
        used_ = 0;
    }

    Key key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    Block block_{};
    int used_ = 2;
};

}  // namespace starharm
