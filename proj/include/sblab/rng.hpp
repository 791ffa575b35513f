#pragma once

#include <cstdint>
#include <random>

namespace sblab {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based derivation of a substream key from (seed, stream index).
///
/// The key is a pure function of its inputs, so replica r always receives the
/// same stream no matter which worker runs it or in which order. Two rounds of
/// mixing separate the seed and counter contributions; distinct (seed, stream)
/// pairs map to distinct keys for fixed seed because each round is bijective.
constexpr std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t stream) noexcept
{
    constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
    return mix64(mix64(seed + golden) ^ (stream * golden + 0x632be59bd9b4e019ULL));
}

/// A private random stream owned by one worker.
class RngStream
{
  public:
    using engine_type = std::mt19937_64;

    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(derive_stream_key(seed, stream))
    {
    }

    /// Uniform on [0, 1) with 53 random bits (bit-identical across platforms,
    /// unlike std::uniform_real_distribution).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t bits() { return engine_(); }

    /// Uniform integer on [0, n). Lemire's rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t n)
    {
        auto m = static_cast<unsigned __int128>(engine_()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            std::uint64_t const threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    engine_type& engine() { return engine_; }

  private:
    engine_type engine_;
};

} // namespace sblab
