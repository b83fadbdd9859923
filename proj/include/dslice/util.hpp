#pragma once

#include <future>
#include <thread>
#include <vector>

namespace dslice {

// Order-preserving parallel map over independent pure computations. Results
// are merged back in input order, so output is deterministic regardless of
// scheduling.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, Fn fn)
    -> std::vector<decltype(fn(items.front()))> {
    using Out = decltype(fn(items.front()));
    std::vector<Out> out(items.size());
    unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || items.size() <= 1) {
        for (size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
        return out;
    }
    size_t nchunk = std::min<size_t>(hw, items.size());
    size_t per = (items.size() + nchunk - 1) / nchunk;
    std::vector<std::future<void>> futs;
    for (size_t c = 0; c < nchunk; ++c) {
        size_t lo = c * per, hi = std::min(items.size(), lo + per);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [&, lo, hi]() {
            for (size_t i = lo; i < hi; ++i) out[i] = fn(items[i]);
        }));
    }
    for (auto& f : futs) f.get();
    return out;
}

}  // namespace dslice
