#include "korobov/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "korobov/errors.hpp"
#include "korobov/lattice_count.hpp"
#include "korobov/spectrum.hpp"

namespace korobov {

namespace {

void require_epsilon(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)");
}

struct SeriesSum {
    double partial = 0.0;
    double tail = 0.0;
    std::uint64_t terms = 0;
};

// sum_{j >= 1} exp(-c (j^b - shift)) with shift in {0, 1}. Stops once the
// integral tail bound is below tol * partial.
SeriesSum exp_power_series(double c, double b, double shift, double tol, const Caps& caps) {
    SeriesSum out;
    const double scale = std::exp(c * shift);
    for (std::uint64_t j = 1;; ++j) {
        if (j > caps.terms) {
            throw ResourceError("series did not reach tolerance within " + std::to_string(caps.terms) + " terms");
        }
        const double x = static_cast<double>(j);
        const double term = std::exp(-c * ((b == 1.0 ? x : std::pow(x, b)) - shift));
        out.partial += term;
        out.terms = j;
        if (term <= tol * out.partial) {
            const double tail = scale * series_tail_bound(c, b, j);
            if (tail <= tol * out.partial) {
                out.tail = tail;
                return out;
            }
        }
    }
}

// Tail sums sum_{k > n} lambda_k for non-decreasing n. While the tail is a
// sizeable share of the trace it is trace minus the partial sum. Once it is
// small that difference is pure cancellation, so the tail is summed directly
// over a lookahead buffer of upcoming eigenvalues.
class TailTracker {
public:
    TailTracker(const WeightSpec& spec, std::size_t d, double trace, const Caps& caps)
        : spec_(spec), stream_(spec, d, caps), trace_(trace) {}

    double after(std::uint64_t n) {
        seek(n);
        const std::uint64_t used = n - ranks_before_;  // ranks taken from the cursor block
        const Block& here = blocks_[pos_];
        const double coarse = trace_ - (consumed_.value() + static_cast<double>(used) * here.lambda);
        if (coarse >= kSwitchFraction * trace_) return coarse;
        ensure_lookahead();
        double tail = static_cast<double>(here.mult - used) * here.lambda;
        if (pos_ + 1 < suffix_.size()) tail += suffix_[pos_ + 1];
        if (!decayed_) {
            Neumaier through_end = consumed_;
            through_end.add(suffix_[pos_]);
            const double rest = trace_ - through_end.value();
            if (rest < -1e-14 * trace_) std::cerr << "warning: tail remainder " << rest << " clamped to 0\n";
            tail += std::max(0.0, rest);
        }
        return tail;
    }

    // lambda_r for r >= the rank last passed to after().
    double eigenvalue(std::uint64_t r) {
        std::uint64_t before = ranks_before_;
        for (std::size_t i = pos_;; ++i) {
            if (i == blocks_.size()) fetch();
            if (r <= before + blocks_[i].mult) return blocks_[i].lambda;
            before += blocks_[i].mult;
        }
    }

private:
    static constexpr double kSwitchFraction = 1e-4;
    static constexpr std::size_t kLookahead = 4096;
    static constexpr double kDecayed = 1e-18;

    struct Block {
        double lambda;
        std::uint64_t mult;
    };

    struct Neumaier {
        double sum = 0.0, carry = 0.0;
        void add(double x) {
            const double t = sum + x;
            carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
            sum = t;
        }
        double value() const { return sum + carry; }
    };

    void fetch() {
        const auto& e = stream_.next();
        blocks_.push_back({e.exponent.eigenvalue(spec_), e.exponent.multiplicity});
        suffix_.clear();
    }

    // Moves the cursor to the block holding rank n + 1.
    void seek(std::uint64_t n) {
        while (true) {
            if (pos_ == blocks_.size()) fetch();
            if (n < ranks_before_ + blocks_[pos_].mult) return;
            consumed_.add(static_cast<double>(blocks_[pos_].mult) * blocks_[pos_].lambda);
            ranks_before_ += blocks_[pos_].mult;
            ++pos_;
            if (pos_ >= kLookahead && pos_ * 2 >= blocks_.size()) {
                blocks_.erase(blocks_.begin(), blocks_.begin() + static_cast<std::ptrdiff_t>(pos_));
                pos_ = 0;
                suffix_.clear();
            }
        }
    }

    // Buffers blocks until they decay below kDecayed of the buffered tail or
    // kLookahead blocks lie ahead of the cursor, then rebuilds suffix sums.
    void ensure_lookahead() {
        if (!suffix_.empty() && (decayed_ || blocks_.size() - pos_ >= kLookahead / 2)) return;
        decayed_ = false;
        double ahead = 0.0;
        for (std::size_t i = pos_; i < blocks_.size(); ++i) ahead += static_cast<double>(blocks_[i].mult) * blocks_[i].lambda;
        while (blocks_.size() - pos_ < kLookahead) {
            if (blocks_.back().lambda <= kDecayed * ahead) {
                decayed_ = true;
                break;
            }
            fetch();
            ahead += static_cast<double>(blocks_.back().mult) * blocks_.back().lambda;
        }
        suffix_.assign(blocks_.size() + 1, 0.0);
        for (std::size_t i = blocks_.size(); i-- > 0;) {
            suffix_[i] = suffix_[i + 1] + static_cast<double>(blocks_[i].mult) * blocks_[i].lambda;
        }
        suffix_.pop_back();
    }

    const WeightSpec& spec_;
    EigenStream stream_;
    double trace_;
    std::vector<Block> blocks_;
    std::vector<double> suffix_;  // suffix_[i] = sum of blocks i.. in the buffer
    std::size_t pos_ = 0;
    std::uint64_t ranks_before_ = 0;
    Neumaier consumed_;
    bool decayed_ = false;
};

}  // namespace

Threshold Threshold::from_epsilon(double eps, const WeightSpec& spec) {
    require_epsilon(eps);
    return Threshold{-2.0 * std::log(eps) / spec.log_inv_omega()};
}

std::string_view to_string(Criterion criterion) {
    return criterion == Criterion::Absolute ? "abs" : "nor";
}

Criterion parse_criterion(std::string_view text) {
    if (text == "abs" || text == "ABS") return Criterion::Absolute;
    if (text == "nor" || text == "NOR") return Criterion::Normalized;
    throw DomainError("criterion must be abs or nor, got '" + std::string(text) + "'");
}

double series_tail_bound(double c, double b, std::uint64_t J) {
    const double x = c * std::pow(static_cast<double>(J), b);
    const double s = 1.0 / b;
    const double upper = boost::math::tgamma(s, x);
    return upper / (b * std::pow(c, s));
}

double m_constant(const WeightSpec& spec, double tau0, const Caps& caps) {
    if (!(tau0 > 0.0)) throw DomainError("tau0 must be > 0");
    const double c = tau0 * spec.eval_a(1) * spec.log_inv_omega();
    const auto sum = exp_power_series(c, spec.b_star(), 1.0, 1e-15, caps);
    return 2.0 * (sum.partial + sum.tail);
}

std::uint64_t count_lattice(const WeightSpec& spec, std::size_t d, Threshold L, const Caps& caps) {
    if (d < 1) throw DomainError("dimension must be >= 1");
    if (!(L.budget >= 0.0)) throw DomainError("threshold must be >= 0");
    const auto a = spec.a_prefix(d);
    const auto b = spec.b_prefix(d);
    return count_weighted_lattice<std::uint64_t>(a, b, L.budget, Inequality::Strict, caps);
}

std::uint64_t info_complexity_worst(const WeightSpec& spec, std::size_t d, double eps, const Caps& caps) {
    return count_lattice(spec, d, Threshold::from_epsilon(eps, spec), caps);
}

double worst_error(const WeightSpec& spec, std::size_t d, std::uint64_t n, const Caps& caps) {
    if (n == 0) return 1.0;
    if (n + 1 > caps.ranks) throw ResourceError("rank " + std::to_string(n + 1) + " exceeds rank cap");
    EigenStream stream(spec, d, caps);
    while (true) {
        const auto& entry = stream.next();
        if (entry.last_rank >= n + 1) return std::sqrt(entry.exponent.eigenvalue(spec));
    }
}

TraceBound trace_tau(const WeightSpec& spec, std::size_t d, double tau, double tol, const Caps& caps) {
    if (d < 1) throw DomainError("dimension must be >= 1");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be > 0");
    if (!(tol > 0.0)) throw DomainError("tol must be > 0");

    TraceBound out;
    out.tau = tau;
    out.lower = 1.0;
    out.upper = 1.0;
    const double per_factor_tol = tol / static_cast<double>(d);
    for (std::size_t k = 1; k <= d; ++k) {
        const double c = tau * spec.eval_a(k) * spec.log_inv_omega();
        const auto sum = exp_power_series(c, spec.eval_b(k), 0.0, per_factor_tol, caps);
        const double lo = 1.0 + 2.0 * sum.partial;
        out.lower *= lo;
        out.upper *= lo + 2.0 * sum.tail;
        out.factors.push_back(lo);
        out.terms.push_back(sum.terms);
        out.weight_sum += std::exp(-c);
    }
    out.point = out.lower;
    out.m_half_tau = m_constant(spec, tau / 2.0, caps);
    out.log_lower_bracket = std::log(2.0) * out.weight_sum;
    out.log_upper_bracket = out.m_half_tau * out.weight_sum;
    return out;
}

double initial_avg_error(const WeightSpec& spec, std::size_t d, const Caps& caps) {
    return std::sqrt(trace_tau(spec, d, 1.0, 1e-15, caps).point);
}

double avg_error(const WeightSpec& spec, std::size_t d, std::uint64_t n, const Caps& caps) {
    const double trace = trace_tau(spec, d, 1.0, 1e-15, caps).point;
    if (n == 0) return std::sqrt(trace);
    if (n > caps.ranks) throw ResourceError("rank " + std::to_string(n) + " exceeds rank cap");
    TailTracker tails(spec, d, trace, caps);
    return std::sqrt(tails.after(n));
}

std::uint64_t info_complexity_avg(const WeightSpec& spec, std::size_t d, double eps, Criterion criterion,
                                  const Caps& caps) {
    require_epsilon(eps);
    const double trace = trace_tau(spec, d, 1.0, 1e-15, caps).point;
    const double cri = criterion == Criterion::Absolute ? 1.0 : std::sqrt(trace);
    const double scaled = eps * cri;
    const double target = scaled * scaled;

    if (trace <= target) return 0;
    TailTracker tails(spec, d, trace, caps);
    std::uint64_t n = 0;
    try {
        while (true) {
            ++n;
            if (tails.after(n) <= target) return n;
            if (n >= caps.ranks) {
                throw ResourceError("average-case complexity exceeds rank cap; n >= " + std::to_string(n));
            }
        }
    } catch (const ResourceError& e) {
        throw ResourceError(std::string(e.what()) + " (best lower bound on n: " + std::to_string(n + 1) + ")");
    }
}

ErrorCurve error_curve(const WeightSpec& spec, std::size_t d, std::uint64_t n_max, const Caps& caps) {
    if (n_max + 1 > caps.ranks) throw ResourceError("n_max exceeds rank cap");
    const double trace = trace_tau(spec, d, 1.0, 1e-15, caps).point;
    ErrorCurve curve;
    curve.worst.reserve(n_max + 1);
    curve.average.reserve(n_max + 1);
    TailTracker tails(spec, d, trace, caps);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        curve.average.push_back(std::sqrt(tails.after(n)));
        curve.worst.push_back(std::sqrt(tails.eigenvalue(n + 1)));
    }
    return curve;
}

}  // namespace korobov
