#pragma once

#include <vector>

#include "csb/countable.hpp"

namespace csb {

struct BenchRow {
    Index size = 0;
    std::vector<double> seconds;  ///< one per repeat
    double mean = 0;
    double stddev = 0;
    double elements_per_second = 0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    /// Least-squares slope of log(mean time) against log(size); 0 with fewer
    /// than two sizes.
    double exponent = 0;
};

/// Chain decomposition of [0, size) for the discrete pair f = g = n+1 with an
/// unbounded budget, timed `repeats` times per size. Throws
/// std::invalid_argument for sizes below 1 or zero repeats.
BenchResult run_bench(const std::vector<Index>& sizes, std::size_t repeats);

double fitted_exponent(const std::vector<double>& sizes, const std::vector<double>& times);

}  // namespace csb
