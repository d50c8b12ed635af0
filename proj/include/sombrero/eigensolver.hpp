#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sombrero/potential.hpp"

// Independent groundstate oracle for
//
//   −½ r^(1−N) d/dr (r^(N−1) dψ/dr) + V(r) ψ = E ψ,   ψ′(0) = 0, ψ(∞) = 0.
//
// Deliberately uses nothing from the trial-function headers.

namespace sombrero {

class EigenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cell-centred radial mesh r_j = (j + ½)Δ, Δ = r_max / n_points.
class RadialGrid {
public:
    static constexpr int kMinPoints = 16;

    RadialGrid(double r_max, int n_points) : r_max_(r_max), n_points_(n_points) {
        if (!(r_max > 0.0) || !std::isfinite(r_max))
            throw std::invalid_argument("RadialGrid: r_max must be finite and > 0");
        if (n_points < kMinPoints)
            throw std::invalid_argument("RadialGrid: n_points must be >= 16");
    }

    double r_max() const { return r_max_; }
    int n_points() const { return n_points_; }
    double spacing() const { return r_max_ / n_points_; }
    double point(int j) const { return (j + 0.5) * spacing(); }
    /// Face between cells j and j + 1, i.e. r_{j+½}.
    double face(int j) const { return (j + 1) * spacing(); }

    std::vector<double> points() const {
        std::vector<double> out(n_points_);
        for (int j = 0; j < n_points_; ++j) out[j] = point(j);
        return out;
    }

    RadialGrid refined() const { return RadialGrid(r_max_, 2 * n_points_); }

private:
    double r_max_;
    int n_points_;
};

/// Symmetric tridiagonal matrix: `diag` has n entries, `off` has n − 1.
struct TridiagonalOperator {
    std::vector<double> diag;
    std::vector<double> off;

    int size() const { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues strictly below `x` (Sturm sequence via LDLᵀ pivots).
inline int sturm_count(const TridiagonalOperator& t, double x) {
    const double tiny = std::numeric_limits<double>::min();
    int count = 0;
    double d = 1.0;
    for (int i = 0; i < t.size(); ++i) {
        const double b2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
        d = t.diag[i] - x - b2 / d;
        if (d == 0.0) d = -tiny;
        if (d < 0.0) ++count;
    }
    return count;
}

/// Gershgorin enclosure of the spectrum.
inline std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& t) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < t.size(); ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(t.off[i - 1]);
        if (i + 1 < t.size()) radius += std::abs(t.off[i]);
        lo = std::min(lo, t.diag[i] - radius);
        hi = std::max(hi, t.diag[i] + radius);
    }
    return {lo, hi};
}

struct EigenBracket {
    double lo = 0.0;
    double hi = 0.0;
    double value() const { return 0.5 * (lo + hi); }
};

/// Smallest eigenvalue by bisection on the Sturm count until the bracket is
/// narrower than `width`. On return sturm_count(lo) == 0 and sturm_count(hi) ≥ 1.
inline EigenBracket smallest_eigenvalue(const TridiagonalOperator& t, double width) {
    auto [lo, hi] = gershgorin_bounds(t);
    const double pad = 1e-12 * std::max(1.0, hi - lo);
    lo -= pad;
    hi += pad;
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(t, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

/// Solves (T − σ I) x = rhs by the Thomas algorithm.
inline std::vector<double> solve_shifted(const TridiagonalOperator& t, double shift,
                                         std::span<const double> rhs) {
    const int n = t.size();
    std::vector<double> upper(n, 0.0);
    std::vector<double> x(rhs.begin(), rhs.end());
    const double tiny = std::numeric_limits<double>::min();
    double pivot = t.diag[0] - shift;
    if (pivot == 0.0) pivot = tiny;
    x[0] /= pivot;
    for (int i = 1; i < n; ++i) {
        upper[i - 1] = t.off[i - 1] / pivot;
        pivot = t.diag[i] - shift - t.off[i - 1] * upper[i - 1];
        if (pivot == 0.0) pivot = tiny;
        x[i] = (x[i] - t.off[i - 1] * x[i - 1]) / pivot;
    }
    for (int i = n - 2; i >= 0; --i) x[i] -= upper[i] * x[i + 1];
    return x;
}

/// Inverse iteration from the positive constant vector. Returns the unit-norm
/// eigenvector; throws if the iterate fails to settle within `max_iterations`.
inline std::vector<double> inverse_iteration(const TridiagonalOperator& t, double shift,
                                             int max_iterations = 50, double rel_tol = 1e-12) {
    const int n = t.size();
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < max_iterations; ++it) {
        auto next = solve_shifted(t, shift, v);
        double norm = 0.0;
        for (double x : next) norm += x * x;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw EigenError("inverse iteration: degenerate iterate");
        double sum = 0.0;
        for (double x : next) sum += x;
        const double sign = sum < 0.0 ? -1.0 : 1.0;
        double change = 0.0;
        for (int i = 0; i < n; ++i) {
            next[i] *= sign / norm;
            change += (next[i] - v[i]) * (next[i] - v[i]);
        }
        v = std::move(next);
        if (std::sqrt(change) < rel_tol) return v;
    }
    throw EigenError("inverse iteration stagnated");
}

using RadialFunction = std::function<double(double)>;

/// Flux-form discretization on a staggered grid, symmetrized with
/// diag(r_j^((N−1)/2)). The face at r = 0 carries no flux (ψ′(0) = 0) and the
/// outer face at r_max is a Dirichlet wall (ψ(r_max) = 0).
template <typename Potential>
TridiagonalOperator discretize_radial(Potential&& v, int n_dim, const RadialGrid& grid) {
    if (n_dim < 1) throw std::invalid_argument("discretize: dimension N must be >= 1");
    const int n = grid.n_points();
    const double dr = grid.spacing();
    const double inv_dr2 = 1.0 / (dr * dr);
    const int power = n_dim - 1;

    std::vector<double> weight(n);
    std::vector<double> face_weight(n);
    for (int j = 0; j < n; ++j) {
        weight[j] = std::pow(grid.point(j), power);
        face_weight[j] = std::pow(grid.face(j), power);
    }

    TridiagonalOperator t;
    t.diag.resize(n);
    t.off.resize(n - 1);
    for (int j = 0; j < n; ++j) {
        const double inner = j == 0 ? 0.0 : face_weight[j - 1];
        // Ghost cell ψ_n = −ψ_{n−1} places the zero exactly on the wall.
        const double outer = j == n - 1 ? 2.0 * face_weight[j] : face_weight[j];
        t.diag[j] = 0.5 * (inner + outer) * inv_dr2 / weight[j] + v(grid.point(j));
    }
    for (int j = 0; j + 1 < n; ++j)
        t.off[j] = -0.5 * face_weight[j] * inv_dr2 / std::sqrt(weight[j] * weight[j + 1]);
    return t;
}

/// Operator for V − extra with V from the sombrero family.
inline TridiagonalOperator discretize(const PotentialParams& p, const RadialFunction& extra,
                                      const RadialGrid& grid) {
    return discretize_radial(
        [&](double r) { return eval_potential(p, r) - (extra ? extra(r) : 0.0); }, p.n_dim, grid);
}

struct EigenResult {
    double energy = 0.0;
    /// ψ samples on `grid`, positive, Σ ψ_j² r_j^(N−1) Δ = 1.
    std::vector<double> vector;
    RadialGrid grid{1.0, RadialGrid::kMinPoints};
    /// Raw eigenvalues at Δ and Δ/2.
    std::pair<double, double> richardson_pair{0.0, 0.0};
    /// False if auto-extension hit its limit before the energy settled.
    bool extent_converged = true;
};

struct OracleOptions {
    double r_max = 8.0;
    int n_points = 2000;
    bool auto_extend = true;
    int max_extensions = 3;
};

namespace detail {

struct RawSolve {
    double energy;
    std::vector<double> unit_vector;  // symmetrized, Euclidean unit norm
};

template <typename Potential>
RawSolve solve_lowest(Potential&& v, int n_dim, const RadialGrid& grid, double scale,
                      bool want_vector) {
    const auto op = discretize_radial(v, n_dim, grid);
    const auto bracket = smallest_eigenvalue(op, 1e-12 * scale);
    RawSolve out{bracket.value(), {}};
    if (want_vector) out.unit_vector = inverse_iteration(op, bracket.lo);
    return out;
}

template <typename Potential>
EigenResult richardson_solve(Potential&& v, int n_dim, double r_max, int n_points) {
    const RadialGrid coarse(r_max, n_points);
    const RadialGrid fine = coarse.refined();
    const double scale = std::max({1.0, std::abs(v(0.0)), std::cbrt(std::abs(v(r_max)))});

    const auto e_coarse = solve_lowest(v, n_dim, coarse, scale, false);
    const auto e_fine = solve_lowest(v, n_dim, fine, scale, true);
    if (std::abs(e_coarse.energy - e_fine.energy) > 0.1 * scale)
        throw EigenError("groundstate: grid too coarse (raw eigenvalues disagree by > 10%)");

    EigenResult res;
    res.grid = fine;
    res.richardson_pair = {e_coarse.energy, e_fine.energy};
    res.energy = (4.0 * e_fine.energy - e_coarse.energy) / 3.0;

    const double dr = fine.spacing();
    const int power = n_dim - 1;
    res.vector.resize(fine.n_points());
    for (int j = 0; j < fine.n_points(); ++j)
        res.vector[j] = e_fine.unit_vector[j] / std::sqrt(std::pow(fine.point(j), power) * dr);
    return res;
}

template <typename Potential>
bool extent_contains(Potential&& v, double r_max, double energy) {
    return v(r_max) >= 10.0 * std::abs(energy);
}

inline void require_extent(bool contained) {
    if (!contained)
        throw std::invalid_argument("groundstate: r_max too small, V(r_max) < 10 |E|");
}

}  // namespace detail

/// Groundstate of an arbitrary confining radial potential. Richardson
/// extrapolation over Δ and Δ/2; with auto_extend the extent grows by 1.25×
/// (constant Δ) until the energy changes by less than 1e-9·scale.
template <typename Potential>
EigenResult groundstate_of(Potential&& v, int n_dim, const OracleOptions& opt = {}) {
    if (n_dim < 1) throw std::invalid_argument("groundstate: dimension N must be >= 1");
    // Validates the extent and point count.
    const RadialGrid check(opt.r_max, opt.n_points);
    (void)check;

    double r_max = opt.r_max;
    int n_points = opt.n_points;
    auto res = detail::richardson_solve(v, n_dim, r_max, n_points);
    if (!opt.auto_extend) {
        detail::require_extent(detail::extent_contains(v, r_max, res.energy));
        return res;
    }

    for (int ext = 0; ext < opt.max_extensions; ++ext) {
        const double scale = std::max({1.0, std::abs(v(0.0)), std::cbrt(std::abs(v(r_max)))});
        const double next_r = 1.25 * r_max;
        const int next_n = static_cast<int>(std::lround(1.25 * n_points));
        auto wider = detail::richardson_solve(v, n_dim, next_r, next_n);
        const bool settled = std::abs(wider.energy - res.energy) <= 1e-9 * scale;
        if (settled && detail::extent_contains(v, r_max, res.energy)) return res;
        res = std::move(wider);
        r_max = next_r;
        n_points = next_n;
    }
    detail::require_extent(detail::extent_contains(v, r_max, res.energy));
    res.extent_converged = false;
    return res;
}

/// Groundstate of V − extra for a sombrero potential. Requires g > 0.
inline EigenResult groundstate(const PotentialParams& p, const RadialFunction& extra = {},
                               const OracleOptions& opt = {}) {
    require_valid(p);
    return groundstate_of(
        [&](double r) { return eval_potential(p, r) - (extra ? extra(r) : 0.0); }, p.n_dim, opt);
}

inline EigenResult groundstate(const PotentialParams& p, const RadialFunction& extra, double r_max,
                               int n_points) {
    OracleOptions opt;
    opt.r_max = r_max;
    opt.n_points = n_points;
    return groundstate(p, extra, opt);
}

}  // namespace sombrero
