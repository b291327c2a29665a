#pragma once

#include "projfeas/numkernel.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace projfeas {

enum class AlgorithmTag {
    kAlternating,
    kAveraged,
    kAveragedViaProduct,
    kInexactAlternating,
    kPerturbed,
    kCyclic,
};

std::string_view to_string(AlgorithmTag tag);

/// Full record of one run.  Per-iterate vectors (iterates, per_set_distances,
/// f_values, grad_norms) have one entry per iterate; step_norms and ratios
/// have one entry per transition, so they are one shorter.
struct Trace {
    AlgorithmTag algorithm = AlgorithmTag::kAveraged;
    std::vector<Point> iterates;
    std::vector<std::vector<double>> per_set_distances;
    std::vector<double> f_values;
    std::vector<double> grad_norms;
    std::vector<double> step_norms;  // |x_{k+1} - x_k|
    std::vector<double> ratios;      // f_{k+1} / f_k, NaN when f_k == 0
    bool converged = false;
    std::uint64_t seed = 0;

    std::size_t size() const { return iterates.size(); }
    bool empty() const { return iterates.empty(); }
    const Point& last() const { return iterates.back(); }
};

} // namespace projfeas
