#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "korobov/caps.hpp"
#include "korobov/sequences.hpp"

namespace korobov {

/// Exponent budget L = ln(eps^-2) / ln(omega^-1): omega^E > eps^2 iff E < L.
struct Threshold {
    double budget = 0.0;

    static Threshold from_epsilon(double eps, const WeightSpec& spec);
};

enum class Criterion { Absolute, Normalized };

std::string_view to_string(Criterion criterion);
Criterion parse_criterion(std::string_view text);

/// Two-sided enclosure of sum_j lambda_{d,j}^tau = prod_k (1 + 2 sum_j omega^{tau a_k j^{b_k}}).
struct TraceBound {
    double lower = 0.0;  // product of truncated series
    double upper = 0.0;  // truncated series plus integral tail bound
    double point = 0.0;  // reported estimate
    double tau = 1.0;

    /// 1 + omega^{tau a_k} H(k, tau) for k = 1..d (point estimates).
    std::vector<double> factors;
    /// Terms summed per coordinate before the tail bound met the tolerance.
    std::vector<std::uint64_t> terms;

    /// sum_k omega^{tau a_k}.
    double weight_sum = 0.0;
    /// M_{tau/2} = 2 sum_j omega^{(tau/2) a_1 (j^{b_*} - 1)}, an upper bound.
    double m_half_tau = 0.0;
    /// ln 2 * weight_sum <= ln(trace) <= m_half_tau * weight_sum.
    double log_lower_bracket = 0.0;
    double log_upper_bracket = 0.0;
};

/// Upper bound on sum_{j > J} exp(-c j^b) by the integral from J:
/// Gamma(1/b, c J^b) / (b c^{1/b}).
double series_tail_bound(double c, double b, std::uint64_t J);

/// 2 sum_{j >= 1} omega^{tau0 a_1 (j^{b_*} - 1)}, with its tail bound added.
double m_constant(const WeightSpec& spec, double tau0, const Caps& caps = {});

/// #{h in Z^d : sum a_k |h_k|^{b_k} < L}.
std::uint64_t count_lattice(const WeightSpec& spec, std::size_t d, Threshold L, const Caps& caps = {});

/// n(eps, d) = #{h : omega_h > eps^2}; ABS and NOR coincide in the worst case.
std::uint64_t info_complexity_worst(const WeightSpec& spec, std::size_t d, double eps, const Caps& caps = {});

/// e^wor(n, d) = sqrt(lambda_{d,n+1}).
double worst_error(const WeightSpec& spec, std::size_t d, std::uint64_t n, const Caps& caps = {});

TraceBound trace_tau(const WeightSpec& spec, std::size_t d, double tau, double tol = 1e-15, const Caps& caps = {});

/// e^avg(0, d) = sqrt(trace).
double initial_avg_error(const WeightSpec& spec, std::size_t d, const Caps& caps = {});

/// e^avg(n, d) = sqrt(trace - sum_{k <= n} lambda_{d,k}).
double avg_error(const WeightSpec& spec, std::size_t d, std::uint64_t n, const Caps& caps = {});

/// min { n : e^avg(n, d) <= eps * CRI_d }, CRI_d = 1 (ABS) or e^avg(0, d) (NOR).
std::uint64_t info_complexity_avg(const WeightSpec& spec, std::size_t d, double eps, Criterion criterion,
                                  const Caps& caps = {});

/// Both minimal-error curves for n = 0..n_max from a single stream pass.
struct ErrorCurve {
    std::vector<double> worst;
    std::vector<double> average;
};
ErrorCurve error_curve(const WeightSpec& spec, std::size_t d, std::uint64_t n_max, const Caps& caps = {});

}  // namespace korobov
