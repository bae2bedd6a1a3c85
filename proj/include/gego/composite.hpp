#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gego/types.hpp"

namespace gego {

/// One component of a composition: the base function receives the already
/// shifted-rotated point z = M * (x - o) and applies its own domain shrink
/// internally.
struct CompositeComponent {
    std::function<double(const Vector&)> fn;
    double sigma = 0.0;   ///< reach of the component's weight kernel
    double lambda = 0.0;  ///< scale applied to the component value
    double bias = 0.0;    ///< additive bias before weighting
};

struct CompositeSpec {
    std::string name;
    std::vector<CompositeComponent> components;
    double f_star = 0.0;  ///< global offset added to the blended value
    std::vector<Vector> shifts;
    std::vector<Matrix> rotations;
    std::string data_source;  ///< "file:<path>" or "synthetic(seed=N)"
    bool synthetic_data = false;

    void validate() const;
};

/// Distance-kernel blend:
///   w_i = (1/d_i) * exp(-d_i^2 / (2 D sigma_i^2)),  d_i = ||x - o_i||
/// (a large constant when d_i = 0), normalized to convex weights, applied
/// to lambda_i * f_i(M_i (x - o_i)) + bias_i, plus f_star. If every weight
/// underflows to zero the blend falls back to uniform weights.
double eval_composite(const CompositeSpec& spec, const Vector& x);

/// Shifted-rotated base functions used by the CF definitions. Each expects
/// the rotated offset z and handles its own input scaling.
namespace cec {
double high_conditioned_elliptic(const Vector& z);
double rastrigin(const Vector& z);
double rosenbrock(const Vector& z);
double schwefel_modified(const Vector& z);
double happy_cat(const Vector& z);
double discus(const Vector& z);
double expanded_schaffer_f6(const Vector& z);
double ackley(const Vector& z);
double griewank(const Vector& z);
}  // namespace cec

struct CompositeData {
    std::vector<Vector> shifts;
    std::vector<Matrix> rotations;
    bool synthetic = false;
    std::string source;
};

/// Reads per-component shift vectors and row-major rotation matrices from
/// a plain-text file (one record per component: D shift values, then D
/// rows of D). Rotations must be orthogonal to 1e-9. A missing file falls
/// back to seeded shifts in [-80, 80]^D with identity rotations; a
/// malformed file is an error.
CompositeData load_composite_data(const std::string& path, int dims, int components,
                                  std::uint64_t fallback_seed);

int composite_count();
int composite_component_count(int index);

/// Builds CF<index> (1..10) in the given dimension. data_dir, when set,
/// is searched for cf<index>_D<dims>.txt.
CompositeSpec make_composite(int index, int dims, const std::optional<std::string>& data_dir,
                             std::uint64_t fallback_seed);

}  // namespace gego
