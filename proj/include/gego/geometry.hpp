#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gego/rng.hpp"
#include "gego/types.hpp"

namespace gego {

/// Components with magnitude at or below this are treated as zero when
/// picking the solved cruise coordinate and when testing ||A|| != 0.
inline constexpr double kZeroNormTol = 1e-12;

/// Projects every coordinate onto [lower, upper]. In-bounds input comes
/// back unchanged.
template <typename Derived>
typename Derived::PlainObject clamp_to_bounds(const Eigen::MatrixBase<Derived>& x, const SearchSpace& space) {
    if (x.size() != space.dims())
        throw std::invalid_argument("clamp_to_bounds: dimension mismatch");
    return x.cwiseMax(space.lower).cwiseMin(space.upper);
}

/// Displacement from the eagle to the selected prey.
template <typename DerivedA, typename DerivedB>
typename DerivedA::PlainObject attack_vector(const Eigen::MatrixBase<DerivedA>& eagle_pos,
                                             const Eigen::MatrixBase<DerivedB>& prey_pos) {
    if (eagle_pos.size() != prey_pos.size())
        throw std::invalid_argument("attack_vector: dimension mismatch");
    return prey_pos - eagle_pos;
}

/// Direction perpendicular to the attack vector: n-1 components drawn
/// uniform in [-1, 1], the remaining one solved from A . C = 0. The solved
/// index k is drawn uniformly among components with |a_k| > kZeroNormTol.
/// Redraws if every free component lands on zero. Requires dims >= 2.
template <typename Derived>
typename Derived::PlainObject cruise_vector(const Eigen::MatrixBase<Derived>& attack, SubStream& rng) {
    using Plain = typename Derived::PlainObject;
    const Eigen::Index n = attack.size();
    if (n < 2) throw std::invalid_argument("cruise_vector: needs at least 2 dimensions");

    std::vector<Eigen::Index> eligible;
    eligible.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j)
        if (std::abs(attack[j]) > kZeroNormTol) eligible.push_back(j);
    if (eligible.empty())
        throw std::invalid_argument("cruise_vector: attack vector is effectively zero");

    const Eigen::Index k = eligible[rng.index(eligible.size())];

    Plain c(n);
    while (true) {
        double dot_rest = 0.0;
        bool all_zero = true;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == k) continue;
            c[j] = rng.uniform(-1.0, 1.0);
            if (c[j] != 0.0) all_zero = false;
            dot_rest += attack[j] * c[j];
        }
        if (all_zero) continue;
        c[k] = -dot_rest / attack[k];
        return c;
    }
}

/// Displacement blend of normalized attack and cruise directions with the
/// supplied draws: dx = r1 * pa * A/||A|| + r2 * pc * C/||C||. A zero
/// cruise vector (1-D search) drops the second term.
template <typename DerivedA, typename DerivedC>
typename DerivedA::PlainObject step_vector(const Eigen::MatrixBase<DerivedA>& attack,
                                           const Eigen::MatrixBase<DerivedC>& cruise, double pa, double pc,
                                           double r1, double r2) {
    using Plain = typename DerivedA::PlainObject;
    const double attack_norm = attack.norm();
    if (attack_norm <= kZeroNormTol)
        throw std::invalid_argument("step_vector: attack vector is effectively zero");

    Plain dx = (r1 * pa / attack_norm) * attack;
    const double cruise_norm = cruise.norm();
    if (cruise_norm > 0.0) dx += (r2 * pc / cruise_norm) * cruise;
    return dx;
}

/// Same, drawing fresh r1 and r2 from the stream (in that order).
template <typename DerivedA, typename DerivedC>
typename DerivedA::PlainObject step_vector(const Eigen::MatrixBase<DerivedA>& attack,
                                           const Eigen::MatrixBase<DerivedC>& cruise, double pa, double pc,
                                           SubStream& rng) {
    const double r1 = rng.uniform01();
    const double r2 = rng.uniform01();
    return step_vector(attack, cruise, pa, pc, r1, r2);
}

}  // namespace gego
