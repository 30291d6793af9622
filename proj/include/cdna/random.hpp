#pragma once

#include <cstdint>
#include <vector>

#include "cdna/core.hpp"

namespace cdna {

/// SplitMix64: output i is a fixed mix of seed + i * gamma, so a stream is
/// fully determined by its seed and independent substreams come from split().
///
/// Bounded draws use rejection on raw 64-bit outputs rather than
/// <random> distributions, whose results differ between standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += kGamma;
        return mix(state_);
    }

    SplitMix64 split(std::uint64_t stream) const noexcept { return SplitMix64(mix(state_ ^ mix(stream + kGamma))); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    BigInt below(const BigInt& bound) {
        if (bound <= 0) throw DomainError("random bound must be positive");
        if (bound <= BigInt(UINT64_MAX)) return BigInt(below(static_cast<std::uint64_t>(bound)));
        const std::size_t bits = boost::multiprecision::msb(bound) + 1;
        while (true) {
            BigInt r = 0;
            for (std::size_t got = 0; got < bits; got += 64) r = (r << 64) | BigInt(next());
            r >>= (bits + 63) / 64 * 64 - bits;
            if (r < bound) return r;
        }
    }

    /// Uniform k-subset of [0, n), returned sorted (Floyd's algorithm).
    std::vector<std::uint64_t> subset(std::uint64_t n, std::uint64_t k) {
        if (k > n) throw DomainError("subset larger than its ground set");
        std::vector<std::uint64_t> chosen;
        chosen.reserve(k);
        for (std::uint64_t j = n - k; j < n; ++j) {
            const std::uint64_t r = below(j + 1);
            if (std::find(chosen.begin(), chosen.end(), r) == chosen.end())
                chosen.push_back(r);
            else
                chosen.push_back(j);
        }
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

/// Uniform draw from X(x): each column independently picks a uniform
/// x_j-subset of the M rows.
inline StrandMatrix sample_representation(const CompositeVector& x, SplitMix64& rng) {
    std::vector<Row> rows(x.strands(), Row(x.length()));
    for (std::size_t j = 0; j < x.length(); ++j)
        for (std::uint64_t i : rng.subset(x.strands(), x[j])) rows[i].set(j, true);
    return StrandMatrix(std::move(rows));
}

}  // namespace cdna
