#include "gego/composite.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gego/rng.hpp"

namespace gego {

namespace cec {

namespace {
using std::numbers::e;
using std::numbers::pi;
}  // namespace

double high_conditioned_elliptic(const Vector& z) {
    const Eigen::Index n = z.size();
    double total = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double exponent = (n > 1) ? 6.0 * static_cast<double>(j) / static_cast<double>(n - 1) : 0.0;
        total += std::pow(10.0, exponent) * z[j] * z[j];
    }
    return total;
}

double rastrigin(const Vector& z) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        const double y = z[j] * (5.12 / 100.0);
        total += y * y - 10.0 * std::cos(2.0 * pi * y) + 10.0;
    }
    return total;
}

double rosenbrock(const Vector& z) {
    double total = 0.0;
    double prev = z[0] * (2.048 / 100.0) + 1.0;
    for (Eigen::Index j = 1; j < z.size(); ++j) {
        const double cur = z[j] * (2.048 / 100.0) + 1.0;
        const double a = prev * prev - cur;
        const double b = prev - 1.0;
        total += 100.0 * a * a + b * b;
        prev = cur;
    }
    return total;
}

double schwefel_modified(const Vector& z) {
    const double n = static_cast<double>(z.size());
    double total = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        const double y = z[j] * 10.0 + 4.209687462275036e2;
        double g;
        if (std::abs(y) <= 500.0) {
            g = y * std::sin(std::sqrt(std::abs(y)));
        } else if (y > 500.0) {
            const double w = 500.0 - std::fmod(y, 500.0);
            g = w * std::sin(std::sqrt(std::abs(w))) - (y - 500.0) * (y - 500.0) / (10000.0 * n);
        } else {
            const double w = std::fmod(std::abs(y), 500.0) - 500.0;
            g = w * std::sin(std::sqrt(std::abs(w))) - (y + 500.0) * (y + 500.0) / (10000.0 * n);
        }
        total += 4.189828872724338e2 - g;
    }
    return total;
}

double happy_cat(const Vector& z) {
    const double n = static_cast<double>(z.size());
    double r2 = 0.0;
    double sum = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        const double y = z[j] * (5.0 / 100.0) - 1.0;
        r2 += y * y;
        sum += y;
    }
    return std::pow(std::abs(r2 - n), 0.25) + (0.5 * r2 + sum) / n + 0.5;
}

double discus(const Vector& z) {
    double total = 1e6 * z[0] * z[0];
    for (Eigen::Index j = 1; j < z.size(); ++j) total += z[j] * z[j];
    return total;
}

double expanded_schaffer_f6(const Vector& z) {
    const auto g = [](double x, double y) {
        const double r2 = x * x + y * y;
        const double s = std::sin(std::sqrt(r2));
        const double den = 1.0 + 0.001 * r2;
        return 0.5 + (s * s - 0.5) / (den * den);
    };
    double total = 0.0;
    for (Eigen::Index j = 0; j + 1 < z.size(); ++j) total += g(z[j], z[j + 1]);
    total += g(z[z.size() - 1], z[0]);
    return total;
}

double ackley(const Vector& z) {
    const double n = static_cast<double>(z.size());
    double sum_sq = 0.0;
    double sum_cos = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        sum_sq += z[j] * z[j];
        sum_cos += std::cos(2.0 * pi * z[j]);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sum_sq / n)) - std::exp(sum_cos / n) + 20.0 + e;
}

double griewank(const Vector& z) {
    double sum = 0.0;
    double prod = 1.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        const double y = z[j] * (600.0 / 100.0);
        sum += y * y;
        prod *= std::cos(y / std::sqrt(static_cast<double>(j + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
}

}  // namespace cec

void CompositeSpec::validate() const {
    const std::size_t k = components.size();
    if (k == 0) throw std::invalid_argument(name + ": no components");
    if (shifts.size() != k || rotations.size() != k)
        throw std::invalid_argument(name + ": shift/rotation count does not match components");
    const Eigen::Index dims = shifts.front().size();
    for (std::size_t i = 0; i < k; ++i) {
        if (shifts[i].size() != dims || rotations[i].rows() != dims || rotations[i].cols() != dims)
            throw std::invalid_argument(name + ": inconsistent shift/rotation dimensions");
    }
}

double eval_composite(const CompositeSpec& spec, const Vector& x) {
    const std::size_t k = spec.components.size();
    const Eigen::Index dims = spec.shifts.front().size();
    if (x.size() != dims) throw std::invalid_argument(spec.name + ": input dimension mismatch");

    std::vector<double> weight(k);
    std::vector<double> value(k);
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const CompositeComponent& comp = spec.components[i];
        const Vector offset = x - spec.shifts[i];
        const Vector z = spec.rotations[i] * offset;
        value[i] = comp.lambda * comp.fn(z) + comp.bias;

        const double dist_sq = offset.squaredNorm();
        if (dist_sq == 0.0) {
            weight[i] = 1e99;
        } else {
            weight[i] = (1.0 / std::sqrt(dist_sq)) *
                        std::exp(-dist_sq / (2.0 * static_cast<double>(dims) * comp.sigma * comp.sigma));
        }
        weight_sum += weight[i];
    }

    double total = 0.0;
    if (weight_sum == 0.0) {
        for (std::size_t i = 0; i < k; ++i) total += value[i] / static_cast<double>(k);
    } else {
        for (std::size_t i = 0; i < k; ++i) total += weight[i] / weight_sum * value[i];
    }
    return total + spec.f_star;
}

namespace {

struct CfDefinition {
    const char* name;
    double f_star;
    std::vector<CompositeComponent> components;
};

CompositeComponent comp(double (*fn)(const Vector&), double sigma, double lambda, double bias) {
    return CompositeComponent{fn, sigma, lambda, bias};
}

const std::vector<CfDefinition>& cf_definitions() {
    using namespace cec;
    static const std::vector<CfDefinition> defs = {
        {"cf1", 2100.0,
         {comp(rosenbrock, 10, 1, 0), comp(high_conditioned_elliptic, 20, 1e-6, 100),
          comp(rastrigin, 30, 1, 200)}},
        {"cf2", 2200.0,
         {comp(rastrigin, 10, 1, 0), comp(griewank, 20, 10, 100), comp(schwefel_modified, 30, 1, 200)}},
        {"cf3", 2300.0,
         {comp(rosenbrock, 10, 1, 0), comp(ackley, 20, 10, 100), comp(schwefel_modified, 30, 1, 200),
          comp(rastrigin, 40, 1, 300)}},
        {"cf4", 2400.0,
         {comp(ackley, 10, 1, 0), comp(rastrigin, 20, 1, 100),
          comp(high_conditioned_elliptic, 30, 1e-6, 200), comp(griewank, 40, 10, 300)}},
        {"cf5", 2500.0,
         {comp(rastrigin, 10, 10, 0), comp(happy_cat, 20, 1, 100), comp(ackley, 30, 10, 200),
          comp(discus, 40, 1, 300), comp(rosenbrock, 50, 1, 400)}},
        {"cf6", 2600.0,
         {comp(expanded_schaffer_f6, 10, 1, 0), comp(schwefel_modified, 20, 1, 100),
          comp(griewank, 20, 10, 200), comp(rosenbrock, 30, 1, 300), comp(rastrigin, 40, 1, 400)}},
        {"cf7", 2700.0,
         {comp(high_conditioned_elliptic, 10, 1e-6, 0), comp(rastrigin, 10, 10, 100),
          comp(happy_cat, 10, 1, 200), comp(rosenbrock, 20, 1, 300),
          comp(schwefel_modified, 20, 1, 400), comp(ackley, 20, 10, 500)}},
        {"cf8", 2800.0,
         {comp(rastrigin, 10, 1, 0), comp(griewank, 20, 10, 100),
          comp(high_conditioned_elliptic, 30, 1e-6, 200), comp(happy_cat, 40, 1, 300),
          comp(discus, 50, 1, 400), comp(rosenbrock, 60, 1, 500)}},
        {"cf9", 2900.0,
         {comp(high_conditioned_elliptic, 10, 1, 0), comp(rastrigin, 30, 1, 100),
          comp(rosenbrock, 50, 1, 200)}},
        {"cf10", 3000.0,
         {comp(high_conditioned_elliptic, 10, 0.1, 0), comp(rastrigin, 30, 1, 100),
          comp(rosenbrock, 50, 10, 200)}},
    };
    return defs;
}

bool read_values(std::istream& in, double* out, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i)
        if (!(in >> out[i])) return false;
    return true;
}

}  // namespace

CompositeData load_composite_data(const std::string& path, int dims, int components,
                                  std::uint64_t fallback_seed) {
    CompositeData data;
    std::ifstream in(path);
    if (!in) {
        // no data file: seeded shifts, identity rotations
        RngStream rng(fallback_seed);
        for (int i = 0; i < components; ++i) {
            Vector shift(dims);
            for (int j = 0; j < dims; ++j) shift[j] = rng.init().uniform(-80.0, 80.0);
            data.shifts.push_back(std::move(shift));
            data.rotations.emplace_back(Matrix::Identity(dims, dims));
        }
        data.synthetic = true;
        data.source = "synthetic(seed=" + std::to_string(fallback_seed) + ")";
        return data;
    }

    for (int i = 0; i < components; ++i) {
        Vector shift(dims);
        if (!read_values(in, shift.data(), static_cast<std::size_t>(dims)))
            throw std::runtime_error(path + ": truncated shift record for component " +
                                     std::to_string(i + 1));
        Matrix rot(dims, dims);
        for (int r = 0; r < dims; ++r) {
            Vector row(dims);
            if (!read_values(in, row.data(), static_cast<std::size_t>(dims)))
                throw std::runtime_error(path + ": truncated rotation record for component " +
                                         std::to_string(i + 1));
            rot.row(r) = row;
        }
        const double ortho_err = (rot.transpose() * rot - Matrix::Identity(dims, dims))
                                     .cwiseAbs()
                                     .maxCoeff();
        if (ortho_err > 1e-9)
            throw std::runtime_error(path + ": rotation matrix for component " + std::to_string(i + 1) +
                                     " is not orthogonal (max deviation " + std::to_string(ortho_err) +
                                     ")");
        data.shifts.push_back(std::move(shift));
        data.rotations.push_back(std::move(rot));
    }
    data.source = "file:" + path;
    return data;
}

int composite_count() { return static_cast<int>(cf_definitions().size()); }

int composite_component_count(int index) {
    if (index < 1 || index > composite_count())
        throw std::invalid_argument("composite index must be in [1, " + std::to_string(composite_count()) +
                                    "]");
    return static_cast<int>(cf_definitions()[static_cast<std::size_t>(index - 1)].components.size());
}

CompositeSpec make_composite(int index, int dims, const std::optional<std::string>& data_dir,
                             std::uint64_t fallback_seed) {
    if (index < 1 || index > composite_count())
        throw std::invalid_argument("composite index must be in [1, " + std::to_string(composite_count()) +
                                    "]");
    if (dims < 2) throw std::invalid_argument("composite functions need dims >= 2");

    const CfDefinition& def = cf_definitions()[static_cast<std::size_t>(index - 1)];
    CompositeSpec spec;
    spec.name = def.name;
    spec.f_star = def.f_star;
    spec.components = def.components;

    std::string path = std::string(def.name) + "_D" + std::to_string(dims) + ".txt";
    if (data_dir) path = *data_dir + "/" + path;
    CompositeData data = load_composite_data(path, dims, static_cast<int>(spec.components.size()),
                                             fallback_seed);
    spec.shifts = std::move(data.shifts);
    spec.rotations = std::move(data.rotations);
    spec.synthetic_data = data.synthetic;
    spec.data_source = data.source;
    spec.validate();
    return spec;
}

}  // namespace gego
