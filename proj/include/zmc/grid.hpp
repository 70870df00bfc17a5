#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <regex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace zmc {

struct Axis {
    double lo{0};
    double hi{1};
    int n{2};

    double at(int i) const { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

/// A regular tensor grid; written "X0:X1:NX,Y0:Y1:NY" on the command line.
struct Grid2 {
    Axis x;
    Axis y;
};

inline Grid2 parse_grid(const std::string& text)
{
    static const std::regex re{R"(^\s*([^:,]+):([^:,]+):(\d+)\s*,\s*([^:,]+):([^:,]+):(\d+)\s*$)"};
    std::smatch m;
    if (!std::regex_match(text, m, re)) {
        throw std::invalid_argument("grid must look like X0:X1:NX,Y0:Y1:NY, got '" + text + "'");
    }
    Grid2 g;
    try {
        g.x = {std::stod(m[1]), std::stod(m[2]), std::stoi(m[3])};
        g.y = {std::stod(m[4]), std::stod(m[5]), std::stoi(m[6])};
    } catch (const std::exception&) {
        throw std::invalid_argument("grid bounds must be numbers: '" + text + "'");
    }
    if (g.x.n < 1 || g.y.n < 1 || g.x.lo > g.x.hi || g.y.lo > g.y.hi) {
        throw std::invalid_argument("grid needs ascending bounds and at least one point per axis");
    }
    return g;
}

/// Worker count: hardware concurrency, capped by the ZMC_THREADS variable.
inline unsigned worker_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ZMC_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) {
            n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        }
    }
    return n;
}

/// Runs fn(row) for row in [0, rows), rows interleaved across workers.
/// fn must only write to storage owned by its row.
template <class Fn>
void parallel_rows(int rows, Fn&& fn)
{
    const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max(rows, 1)));
    if (workers <= 1) {
        for (int r = 0; r < rows; ++r) {
            fn(r);
        }
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int r = static_cast<int>(w); r < rows; r += static_cast<int>(workers)) {
                        fn(r);
                    }
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                }
            });
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

} // namespace zmc
