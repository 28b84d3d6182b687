#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace starharm {

/// Split [0, n) into `workers` contiguous blocks and run fn(begin, end, worker)
/// on each; the calling thread takes block 0.
template <typename Fn>
void parallel_blocks(std::size_t n, int workers, Fn&& fn)
{
    const std::size_t w = std::max<std::size_t>(
        1, std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n));
    if (w == 1) {
        fn(std::size_t{0}, n, 0);
        return;
    }
    std::vector<std::jthread> threads;
    threads.reserve(w - 1);
    auto bounds = [&](std::size_t k) { return n * k / w; };
    for (std::size_t k = 1; k < w; ++k)
        threads.emplace_back([&, k] { fn(bounds(k), bounds(k + 1), static_cast<int>(k)); });
    fn(bounds(0), bounds(1), 0);
}

}  // namespace starharm
