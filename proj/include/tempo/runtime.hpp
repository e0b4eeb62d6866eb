#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "tempo/common.hpp"

namespace tempo {

// Worker count for data-parallel loops.  Defaults to the hardware count,
// capped by the TOOL_THREADS environment variable when set.
int max_threads();

// Chops [0, n) into contiguous chunks, one per worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

// Deterministic parallel sum: the range is split into fixed-size blocks
// (independent of the worker count), each block is summed sequentially, and
// block results are combined in block order.  Results are bit-identical for
// any thread count.
Complex parallel_reduce(std::size_t n, const std::function<Complex(std::size_t)>& term);

inline constexpr std::size_t REDUCE_BLOCK = 8192;

// Seeded generator with an explicit uniform mapping so streams do not depend
// on the standard library's distribution implementations (only the engine,
// whose output sequence is pinned by the standard).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Standard normal via Box-Muller on the explicit uniform stream.
    double normal();

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace tempo
