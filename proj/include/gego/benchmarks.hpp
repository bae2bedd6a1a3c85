#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gego/types.hpp"

namespace gego {

/// A named objective with its default box and, where listed, the known
/// global optimum. fixed_dims == 0 means the function accepts any
/// dimensionality.
struct BenchmarkFn {
    std::string name;
    int fixed_dims = 0;
    double lower = 0.0;
    double upper = 0.0;
    std::function<double(const Vector&)> fn;
    std::function<Vector(int dims)> minimizer;  // null when no optimum is listed
    std::optional<double> optimum;

    int dims_for(int requested) const { return fixed_dims > 0 ? fixed_dims : requested; }
};

const std::vector<BenchmarkFn>& classical_benchmarks();
const BenchmarkFn* find_benchmark(const std::string& name);

/// Evaluates a registered function, validating dimensionality first.
double eval_classical(const std::string& name, const Vector& x);

SearchSpace benchmark_space(const BenchmarkFn& fn, int dims);

}  // namespace gego
