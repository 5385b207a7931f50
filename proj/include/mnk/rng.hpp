// Seeded random streams with parallelism-independent derivation.
//
// All randomness flows through Rng, a thin wrapper over std::mt19937_64 (whose
// output sequence the C++ standard pins down) with hand-rolled uniform
// helpers, because the standard library's distributions are
// implementation-defined and would break cross-toolchain reproducibility.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mnk {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

class Fnv1a64 {
public:
    Fnv1a64& bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ull;
        }
        return *this;
    }
    Fnv1a64& string(std::string_view s) {
        bytes(s.data(), s.size());
        return bytes("\x1f", 1);  // separator so ("ab","c") != ("a","bc")
    }
    Fnv1a64& u64(std::uint64_t v) {
        unsigned char buf[8];
        for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
        return bytes(buf, 8);
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

// Stable seed for one simulation stream: hash of (master seed, game id,
// stream index, role tag), avalanched. Identical inputs give identical
// streams regardless of execution order, which is what makes concurrent
// simulation schedules reproducible.
inline std::uint64_t derive_stream(std::uint64_t master_seed,
                                   std::string_view game_id,
                                   std::uint64_t index, std::string_view role) {
    Fnv1a64 h;
    h.u64(master_seed).string(game_id).u64(index).string(role);
    return splitmix64(h.value());
}

// Sub-stream of an already-derived stream, for per-rollout independence.
inline std::uint64_t derive_substream(std::uint64_t base, std::uint64_t a,
                                      std::uint64_t b) {
    Fnv1a64 h;
    h.u64(base).u64(a).u64(b);
    return splitmix64(h.value());
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53 mantissa bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in {0, ..., n-1}, unbiased via rejection.
    std::size_t next_below(std::size_t n) {
        if (n == 0) throw std::invalid_argument("next_below(0)");
        std::uint64_t bound = n;
        std::uint64_t limit = ~0ull - (~0ull % bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace mnk
