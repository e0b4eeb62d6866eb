#include "tempo/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace tempo {

int max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("TOOL_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = std::min<long>(hw, v);
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    std::size_t workers = static_cast<std::size_t>(max_threads());
    workers = std::min(workers, n);
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

Complex parallel_reduce(std::size_t n, const std::function<Complex(std::size_t)>& term) {
    if (n == 0) return {0.0, 0.0};
    std::size_t blocks = (n + REDUCE_BLOCK - 1) / REDUCE_BLOCK;
    std::vector<Complex> partial(blocks, Complex{0.0, 0.0});
    parallel_for(blocks, [&](std::size_t b0, std::size_t b1) {
        for (std::size_t b = b0; b < b1; ++b) {
            std::size_t lo = b * REDUCE_BLOCK;
            std::size_t hi = std::min(n, lo + REDUCE_BLOCK);
            Complex acc{0.0, 0.0};
            for (std::size_t i = lo; i < hi; ++i) acc += term(i);
            partial[b] = acc;
        }
    });
    Complex total{0.0, 0.0};
    for (const Complex& p : partial) total += p;
    return total;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double mag = std::sqrt(-2.0 * std::log(u1));
    double ang = 2.0 * M_PI * u2;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
}

}  // namespace tempo
