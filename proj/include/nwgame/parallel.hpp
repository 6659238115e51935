#ifndef NWGAME_PARALLEL_HPP
#define NWGAME_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace nwg {

/// Splits [0, count) into at most `jobs` contiguous shards and runs
/// fn(begin, end) on each, one thread per shard. Results come back in shard
/// order, so any order-respecting merge is independent of `jobs`.
template <typename Fn>
auto map_shards(std::uint64_t count, unsigned jobs, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::uint64_t, std::uint64_t>> {
    using Result = std::invoke_result_t<Fn&, std::uint64_t, std::uint64_t>;
    const std::uint64_t shards = std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs == 0 ? 1 : jobs, count));
    std::vector<Result> results(static_cast<std::size_t>(shards));
    if (shards == 1) {
        results[0] = fn(std::uint64_t{0}, count);
        return results;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(shards));
    {
        std::vector<std::jthread> workers;
        workers.reserve(static_cast<std::size_t>(shards));
        for (std::uint64_t s = 0; s < shards; ++s) {
            const std::uint64_t begin = count * s / shards;
            const std::uint64_t end = count * (s + 1) / shards;
            workers.emplace_back([&, s, begin, end] {
                try {
                    results[static_cast<std::size_t>(s)] = fn(begin, end);
                } catch (...) {
                    errors[static_cast<std::size_t>(s)] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace nwg

#endif  // NWGAME_PARALLEL_HPP
