#include "gego/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gego {

namespace {

using std::numbers::e;
using std::numbers::pi;

double beale(const Vector& x) {
    const double a = 1.5 - x[0] + x[0] * x[1];
    const double b = 2.25 - x[0] + x[0] * x[1] * x[1];
    const double c = 2.625 - x[0] + x[0] * x[1] * x[1] * x[1];
    return a * a + b * b + c * c;
}

double matyas(const Vector& x) {
    return 0.26 * (x[0] * x[0] + x[1] * x[1]) - 0.48 * x[0] * x[1];
}

double camel3(const Vector& x) {
    const double x2 = x[0] * x[0];
    return 2.0 * x2 - 1.05 * x2 * x2 + x2 * x2 * x2 / 6.0 + x[0] * x[1] + x[1] * x[1];
}

double exponential(const Vector& x) { return -std::exp(-0.5 * x.squaredNorm()); }

double drop_wave(const Vector& x) {
    const double r2 = x.squaredNorm();
    return -(1.0 + std::cos(12.0 * std::sqrt(r2))) / (0.5 * r2 + 2.0);
}

double egg_holder(const Vector& x) {
    return -(x[1] + 47.0) * std::sin(std::sqrt(std::abs(x[1] + 0.5 * x[0] + 47.0))) -
           x[0] * std::sin(std::sqrt(std::abs(x[0] - (x[1] + 47.0))));
}

double himmelblau(const Vector& x) {
    const double a = x[0] * x[0] + x[1] - 11.0;
    const double b = x[0] + x[1] * x[1] - 7.0;
    return a * a + b * b;
}

double levy13(const Vector& x) {
    const double s3x = std::sin(3.0 * pi * x[0]);
    const double s3y = std::sin(3.0 * pi * x[1]);
    const double s2y = std::sin(2.0 * pi * x[1]);
    return s3x * s3x + (x[0] - 1.0) * (x[0] - 1.0) * (1.0 + s3y * s3y) +
           (x[1] - 1.0) * (x[1] - 1.0) * (1.0 + s2y * s2y);
}

// Ackley 1 with the 0.02 exponent coefficient, matching the survey
// formulation common benchmark libraries implement
double ackley01(const Vector& x) {
    const double n = static_cast<double>(x.size());
    const double u = x.squaredNorm();
    double v = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) v += std::cos(2.0 * pi * x[j]);
    return -20.0 * std::exp(-0.02 * std::sqrt(u / n)) - std::exp(v / n) + 20.0 + e;
}

double griewank(const Vector& x) {
    double sum = 0.0;
    double prod = 1.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        sum += x[j] * x[j];
        prod *= std::cos(x[j] / std::sqrt(static_cast<double>(j + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
}

double michalewicz(const Vector& x) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double s = std::sin(static_cast<double>(j + 1) * x[j] * x[j] / pi);
        total += std::sin(x[j]) * std::pow(s, 20.0);
    }
    return -total;
}

double qing(const Vector& x) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double d = x[j] * x[j] - static_cast<double>(j + 1);
        total += d * d;
    }
    return total;
}

double salomon(const Vector& x) {
    const double r = x.norm();
    return 1.0 - std::cos(2.0 * pi * r) + 0.1 * r;
}

// max of the objective plane and sign-gated penalty terms; discontinuous
double zimmerman(const Vector& x) {
    const auto zp = [](double t) { return 100.0 * (1.0 + t); };
    const auto sign = [](double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); };
    const double zh1 = 9.0 - x[0] - x[1];
    const double zh2 = (x[0] - 3.0) * (x[0] - 3.0) + (x[1] - 2.0) * (x[1] - 2.0) - 16.0;
    const double zh3 = x[0] * x[1] - 14.0;
    double best = zh1;
    best = std::max(best, zp(zh2) * sign(zh2));
    best = std::max(best, zp(zh3) * sign(zh3));
    best = std::max(best, zp(-x[0]) * sign(x[0]));
    best = std::max(best, zp(-x[1]) * sign(x[1]));
    return best;
}

double rana(const Vector& x) {
    double total = 0.0;
    for (Eigen::Index j = 0; j + 1 < x.size(); ++j) {
        const double t1 = std::sqrt(std::abs(x[j + 1] + x[j] + 1.0));
        const double t2 = std::sqrt(std::abs(x[j + 1] - x[j] + 1.0));
        total += (x[j + 1] + 1.0) * std::cos(t2) * std::sin(t1) +
                 x[j] * std::cos(t1) * std::sin(t2);
    }
    return total;
}

double parsopoulos(const Vector& x) {
    const double c = std::cos(x[0]);
    const double s = std::sin(x[1]);
    return c * c + s * s;
}

Vector origin(int dims) { return Vector::Zero(dims); }

std::vector<BenchmarkFn> build_registry() {
    std::vector<BenchmarkFn> fns;
    auto add = [&](std::string name, int fixed_dims, double lo, double hi,
                   std::function<double(const Vector&)> fn,
                   std::function<Vector(int)> minimizer = nullptr,
                   std::optional<double> optimum = std::nullopt) {
        fns.push_back({std::move(name), fixed_dims, lo, hi, std::move(fn), std::move(minimizer), optimum});
    };

    add("beale", 2, -4.5, 4.5, beale, [](int) { return Vector{{3.0, 0.5}}; }, 0.0);
    add("matyas", 2, -10.0, 10.0, matyas, origin, 0.0);
    add("camel3", 2, -5.0, 5.0, camel3, origin, 0.0);
    add("exponential", 0, -1.0, 1.0, exponential, origin, -1.0);
    add("dropwave", 2, -5.12, 5.12, drop_wave, origin, -1.0);
    add("eggholder", 2, -512.0, 512.0, egg_holder);
    add("himmelblau", 2, -6.0, 6.0, himmelblau, [](int) { return Vector{{3.0, 2.0}}; }, 0.0);
    add("levy13", 2, -10.0, 10.0, levy13, [](int) { return Vector{{1.0, 1.0}}; }, 0.0);
    add("ackley01", 0, -35.0, 35.0, ackley01, origin, 0.0);
    add("griewank", 0, -100.0, 100.0, griewank, origin, 0.0);
    add("michalewicz", 2, 0.0, pi, michalewicz,
        [](int) {
            return Vector{{2.202905513296628, 1.570796322320509}};
        },
        -1.801303);
    add("qing", 0, -500.0, 500.0, qing,
        [](int dims) {
            Vector m(dims);
            for (int j = 0; j < dims; ++j) m[j] = std::sqrt(static_cast<double>(j + 1));
            return m;
        },
        0.0);
    add("salomon", 0, -100.0, 100.0, salomon, origin, 0.0);
    add("zimmerman", 2, 0.0, 100.0, zimmerman);
    add("rana", 0, -500.0, 500.0, rana);
    add("parsopoulos", 2, -5.0, 5.0, parsopoulos, [](int) { return Vector{{0.5 * pi, 0.0}}; }, 0.0);
    return fns;
}

}  // namespace

const std::vector<BenchmarkFn>& classical_benchmarks() {
    static const std::vector<BenchmarkFn> registry = build_registry();
    return registry;
}

const BenchmarkFn* find_benchmark(const std::string& name) {
    for (const BenchmarkFn& fn : classical_benchmarks())
        if (fn.name == name) return &fn;
    return nullptr;
}

double eval_classical(const std::string& name, const Vector& x) {
    const BenchmarkFn* fn = find_benchmark(name);
    if (fn == nullptr) throw std::invalid_argument("unknown benchmark function: " + name);
    if (fn->fixed_dims > 0 && x.size() != fn->fixed_dims)
        throw std::invalid_argument(name + " requires exactly " + std::to_string(fn->fixed_dims) +
                                    " dimensions");
    if (fn->fixed_dims == 0 && x.size() < 1)
        throw std::invalid_argument(name + ": empty input");
    return fn->fn(x);
}

SearchSpace benchmark_space(const BenchmarkFn& fn, int dims) {
    return SearchSpace::box(fn.dims_for(dims), fn.lower, fn.upper);
}

}  // namespace gego
