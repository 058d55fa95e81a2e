#include "csb/bench.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "csb/catalog.hpp"

namespace csb {

double fitted_exponent(const std::vector<double>& sizes, const std::vector<double>& times) {
    const std::size_t n = sizes.size();
    if (n < 2 || times.size() != n)
        return 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::log(sizes[i]), y = std::log(times[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    return denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
}

BenchResult run_bench(const std::vector<Index>& sizes, std::size_t repeats) {
    if (repeats == 0)
        throw std::invalid_argument("repeats must be at least 1");
    auto problem = catalog::countable_problem(catalog::named_example("evens_odds"));
    ChainOptions options{std::numeric_limits<std::int64_t>::max(), true};

    BenchResult result;
    std::vector<double> xs, ys;
    for (Index size : sizes) {
        if (size < 1)
            throw std::invalid_argument("bench sizes must be at least 1");
        BenchRow row;
        row.size = size;
        for (std::size_t r = 0; r < repeats; ++r) {
            auto start = std::chrono::steady_clock::now();
            ChainTable table = decompose_window(problem, size, options);
            auto stop = std::chrono::steady_clock::now();
            if (table.entries.back().kind == ChainKind::Undetermined)
                throw std::logic_error("bench decomposition left undetermined entries");
            row.seconds.push_back(std::chrono::duration<double>(stop - start).count());
        }
        for (double s : row.seconds)
            row.mean += s;
        row.mean /= static_cast<double>(repeats);
        for (double s : row.seconds)
            row.stddev += (s - row.mean) * (s - row.mean);
        row.stddev = repeats > 1 ? std::sqrt(row.stddev / static_cast<double>(repeats - 1)) : 0;
        row.elements_per_second = row.mean > 0 ? static_cast<double>(size) / row.mean : 0;
        xs.push_back(static_cast<double>(size));
        ys.push_back(std::max(row.mean, 1e-9));
        result.rows.push_back(std::move(row));
    }
    result.exponent = fitted_exponent(xs, ys);
    return result;
}

}  // namespace csb
