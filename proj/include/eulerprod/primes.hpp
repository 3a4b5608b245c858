#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include "eulerprod/errors.hpp"

namespace eulerprod {

inline std::vector<uint32_t> sieve_primes(uint64_t limit) {
    if (limit < 2) return {};
    std::vector<bool> composite(limit + 1, false);
    std::vector<uint32_t> primes;
    for (uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<uint32_t>(i));
        for (uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

// first 168 primes, enough for the fixed small-prime loops
inline const std::vector<uint32_t>& primes_to_1000() {
    static const std::vector<uint32_t> p = sieve_primes(1000);
    return p;
}

inline int thread_count_from_env() {
    const char* env = std::getenv("EULERPROD_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

// Product of factor(p) over the given primes with a deterministic reduction:
// fixed-size blocks are multiplied serially and combined in block order, so
// the result is bit-identical for every thread count.
inline std::complex<double> deterministic_prime_product(
    const std::vector<uint32_t>& primes, int threads,
    const std::function<std::complex<double>(uint32_t)>& factor) {
    constexpr std::size_t kBlock = 1 << 15;
    const std::size_t nblocks = (primes.size() + kBlock - 1) / kBlock;
    std::vector<std::complex<double>> partial(nblocks, {1.0, 0.0});
    auto run_block = [&](std::size_t b) {
        std::complex<double> acc(1.0, 0.0);
        std::size_t lo = b * kBlock, hi = std::min(primes.size(), lo + kBlock);
        for (std::size_t i = lo; i < hi; ++i) acc *= factor(primes[i]);
        partial[b] = acc;
    };
    if (threads <= 1 || nblocks <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        int n = std::min<std::size_t>(threads, nblocks);
        pool.reserve(n);
        for (int t = 0; t < n; ++t)
            pool.emplace_back([&] {
                for (std::size_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1))
                    run_block(b);
            });
        for (auto& th : pool) th.join();
    }
    std::complex<double> out(1.0, 0.0);
    for (const auto& v : partial) out *= v;
    return out;
}

}  // namespace eulerprod
