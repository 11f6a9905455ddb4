#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "korobov/caps.hpp"
#include "korobov/sequences.hpp"
#include "korobov/spectrum.hpp"

namespace korobov {

using Coefficient = std::complex<double>;

/// f(x) = sum_h c_h exp(2 pi i h.x) with finitely many nonzero c_h.
class SpectralFunction {
public:
    explicit SpectralFunction(std::size_t d) : d_(d) {}

    /// The L2 basis function exp(2 pi i h.x).
    static SpectralFunction fourier_basis(const MultiIndex& h);
    /// The H(K) orthonormal eigenfunction omega_h^{1/2} exp(2 pi i h.x).
    static SpectralFunction eigenfunction(const WeightSpec& spec, const MultiIndex& h);

    std::size_t dimension() const noexcept { return d_; }
    bool empty() const noexcept { return coeffs_.empty(); }
    std::size_t support_size() const noexcept { return coeffs_.size(); }

    /// Sets c_h; a zero coefficient removes h from the support.
    void set(const MultiIndex& h, Coefficient c);
    Coefficient at(const MultiIndex& h) const;
    const std::map<MultiIndex, Coefficient>& coefficients() const noexcept { return coeffs_; }

    SpectralFunction& operator+=(const SpectralFunction& other);
    SpectralFunction& operator-=(const SpectralFunction& other);
    SpectralFunction& operator*=(Coefficient s);

    /// Point value at x in [0,1]^d. Only for demos; no error computation uses it.
    Coefficient evaluate(std::span<const double> x) const;

private:
    void check(const MultiIndex& h) const;

    std::size_t d_;
    std::map<MultiIndex, Coefficient> coeffs_;
};

SpectralFunction operator+(SpectralFunction lhs, const SpectralFunction& rhs);
SpectralFunction operator-(SpectralFunction lhs, const SpectralFunction& rhs);
SpectralFunction operator*(Coefficient s, SpectralFunction f);

/// ||f||_H = (sum |c_h|^2 / omega_h)^{1/2}, accumulated in log domain.
/// Throws DomainError if the result overflows a double.
double h_norm(const WeightSpec& spec, const SpectralFunction& f);

double l2_norm(const SpectralFunction& f);

/// Orthogonal projection onto the n leading eigenfunctions: keeps c_h for
/// the frequencies of ranks 1..n in EigenStream order (ties lexicographic in
/// the canonical index, then by sign variant) and drops the rest.
SpectralFunction truncate(const WeightSpec& spec, const SpectralFunction& f, std::uint64_t n,
                          const Caps& caps = {});

/// ||f - truncate(f, n)||_L2 / ||f||_H. f must be nonzero.
double worst_case_error_of_truncation(const WeightSpec& spec, std::size_t d, std::uint64_t n,
                                      const SpectralFunction& f, const Caps& caps = {});

/// Variant that multiplies each kept coefficient by its eigenvalue lambda_{d,k}
/// instead of keeping it unchanged.
SpectralFunction truncate_lambda_weighted(const WeightSpec& spec, const SpectralFunction& f, std::uint64_t n,
                                          const Caps& caps = {});

/// Worst-case error of the lambda-weighted variant over the unit ball of H:
/// max(sqrt(lambda_{n+1}), max_{k <= n} (1 - lambda_k) sqrt(lambda_k)).
double lambda_weighted_worst_error(const WeightSpec& spec, std::size_t d, std::uint64_t n, const Caps& caps = {});

struct GaussianDrawConfig {
    /// Frequencies are kept until the neglected eigenvalue mass is below
    /// truncation_fraction * trace. Must lie in (0, 0.01].
    double truncation_fraction = 1e-6;
    std::uint64_t seed = 0;
    std::uint64_t samples = 10'000;
};

/// Kept frequencies of a truncated Karhunen-Loeve expansion, in rank order.
struct KarhunenLoeveBasis {
    std::vector<MultiIndex> frequencies;
    std::vector<double> eigenvalues;
    double trace = 0.0;
    double kept_variance = 0.0;
    double neglected_variance = 0.0;
};

KarhunenLoeveBasis karhunen_loeve_basis(const WeightSpec& spec, std::size_t d, double truncation_fraction,
                                        const Caps& caps = {});

struct GaussianDraw {
    SpectralFunction f;
    double kept_variance = 0.0;
    double neglected_variance = 0.0;
};

/// One draw f_h = sqrt(omega_h) g_h with g_h i.i.d. standard normal, from the
/// substream derived from (cfg.seed, draw_index).
GaussianDraw sample_gaussian(const WeightSpec& spec, std::size_t d, const GaussianDrawConfig& cfg,
                             std::uint64_t draw_index = 0, const Caps& caps = {});

struct MonteCarloResult {
    double estimate = 0.0;        // sqrt(mean ||f - truncate(f, n)||^2)
    double standard_error = 0.0;  // delta-method error of `estimate`
    double oracle = 0.0;          // avg_error(n, d)
    double z_score = 0.0;
    double neglected_variance = 0.0;
    /// Bias budget from truncation: oracle - sqrt(oracle^2 - neglected).
    double allowance = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t kept_frequencies = 0;

    bool consistent(double sigmas = 3.0) const;
};

/// Monte-Carlo estimate of the average-case error of truncate(., n).
/// Draw i uses the same substream as sample_gaussian(..., i); results do not
/// depend on `threads`.
MonteCarloResult mc_avg_error(const WeightSpec& spec, std::size_t d, std::uint64_t n, const GaussianDrawConfig& cfg,
                              unsigned threads = 1, const Caps& caps = {});

}  // namespace korobov
