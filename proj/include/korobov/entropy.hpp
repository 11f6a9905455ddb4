#pragma once

#include <cstddef>
#include <istream>
#include <vector>

#include "korobov/caps.hpp"
#include "korobov/lattice_count.hpp"

namespace korobov {

/// The scaled ball m^{1/p} B(l_p^d), described by the budget sum |h_k|^p <= m.
struct LpBallQuery {
    double p = 1.0;
    double m = 1.0;
    std::size_t d = 1;
};

/// #{h in Z^d : sum |h_k|^p <= m}, exact.
BigCount grid_count(const LpBallQuery& q, const Caps& caps = {});

double log_count(const BigCount& count);

struct GridCountBound {
    double piecewise = 0.0;      // C_p m ln(2d/m) if d >= m, else C_p d ln(2m/d)
    double uniform = 0.0;  // C_p d (ln 2d + ln 2m)
};

/// Upper bounds on ln(grid_count(q)) for a given constant C_p. Needs m >= 1.
GridCountBound grid_count_log_bound(const LpBallQuery& q, double C_p);

/// Bound on ln N_eps(B(l_p^d)) in l_inf: C_p eps^-p ln(2 d eps^p) when
/// d eps^p >= 1, C_p d ln(2 / (d eps^p)) otherwise. Evaluated as written.
double entropy_log_bound(double p, double eps, std::size_t d, double C_p);

using Point = std::vector<double>;

class FinitePointSet {
public:
    FinitePointSet() = default;
    explicit FinitePointSet(std::vector<Point> points);

    /// One point per line, coordinates separated by whitespace. Blank lines
    /// and lines starting with '#' are skipped.
    static FinitePointSet parse(std::istream& in);

    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dimension() const noexcept { return points_.empty() ? 0 : points_.front().size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const noexcept { return points_; }

private:
    std::vector<Point> points_;
};

double linf_distance(const Point& x, const Point& y);

struct PackingResult {
    std::size_t size = 0;
    bool exact = true;  // false: greedy lower bound (set larger than caps.exact_points)
    std::vector<std::size_t> members;
};

/// Largest subset whose pairwise l_inf distances all exceed eps.
PackingResult packing_max(const FinitePointSet& points, double eps, const Caps& caps = {});

struct CoveringResult {
    std::size_t size = 0;
    std::vector<std::size_t> centers;  // indices into the candidate set
};

/// Fewest closed l_inf eps-balls centred at candidates that cover every point.
/// Throws DomainError when the candidates admit no cover.
CoveringResult covering_min(const FinitePointSet& points, double eps, const FinitePointSet& candidates,
                            const Caps& caps = {});

/// M_{2 eps} <= N_eps <= M_eps on a finite set, with the points themselves as
/// covering candidates.
struct ChainCheck {
    PackingResult packing_2eps;
    CoveringResult covering_eps;
    PackingResult packing_eps;

    bool holds() const noexcept;
};

ChainCheck chain_check(const FinitePointSet& points, double eps, const Caps& caps = {});

}  // namespace korobov
