#pragma once

#include <exception>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace hgks {

/// Contiguous index ranges assigning cells (or faces) to workers. A pure
/// function of (item count, worker count); empty ranges are allowed when
/// workers outnumber items.
struct Partition {
    int workers;
    std::vector<std::pair<int, int>> ranges;  // [begin, end) per worker

    static Partition make(int n, int w) {
        if (w < 1) throw std::invalid_argument("Partition: worker count must be >= 1");
        Partition p;
        p.workers = w;
        p.ranges.reserve(w);
        const int base = n / w, rem = n % w;
        int begin = 0;
        for (int r = 0; r < w; ++r) {
            const int len = base + (r < rem ? 1 : 0);
            p.ranges.emplace_back(begin, begin + len);
            begin += len;
        }
        return p;
    }
};

struct worker_error : std::runtime_error {
    int item;
    worker_error(int item_, const std::string& what)
        : std::runtime_error("item " + std::to_string(item_) + ": " + what), item(item_) {}
};

/// Run kernel(i) for every index of the partition. The kernel must write only
/// to its own output slot and read only immutable shared state, so the result
/// is bitwise identical to sequential execution for any worker count.
/// Exceptions surface as worker_error with the item index attached.
template <class Kernel>
void parallel_map_cells(const Partition& part, Kernel&& kernel) {
    auto run_range = [&kernel](int begin, int end, std::exception_ptr& err) {
        for (int i = begin; i < end; ++i) {
            try {
                kernel(i);
            } catch (const std::exception& e) {
                err = std::make_exception_ptr(worker_error(i, e.what()));
                return;
            } catch (...) {
                err = std::make_exception_ptr(worker_error(i, "unknown error"));
                return;
            }
        }
    };

    std::vector<std::exception_ptr> errs(part.ranges.size());
    if (part.workers == 1) {
        run_range(part.ranges[0].first, part.ranges[0].second, errs[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(part.ranges.size() - 1);
        for (size_t r = 1; r < part.ranges.size(); ++r)
            threads.emplace_back(run_range, part.ranges[r].first, part.ranges[r].second,
                                 std::ref(errs[r]));
        run_range(part.ranges[0].first, part.ranges[0].second, errs[0]);
        for (auto& t : threads) t.join();
    }
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
}

/// Convenience form collecting kernel(i) into a vector.
template <class T, class Kernel>
std::vector<T> parallel_map_cells(const Partition& part, int n, Kernel&& kernel) {
    std::vector<T> out(n);
    parallel_map_cells(part, [&](int i) { out[i] = kernel(i); });
    return out;
}

/// Fixed-order sequential fold, independent of how the values were produced;
/// repeated runs are bitwise identical for any worker count.
template <class T, class Op>
T deterministic_reduce(std::span<const T> values, T init, Op&& op) {
    T acc = std::move(init);
    for (const T& v : values) acc = op(acc, v);
    return acc;
}

template <class T>
T deterministic_sum(std::span<const T> values) {
    return deterministic_reduce(values, T{}, [](const T& a, const T& b) { return a + b; });
}

/// One row of the worker-scaling report.
struct ScalingRow {
    int size;
    int workers;
    double seconds;
    double speedup;
};

}  // namespace hgks
