#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "korobov/caps.hpp"
#include "korobov/complexity.hpp"
#include "korobov/sequences.hpp"

namespace korobov {

enum class Notion { SPT, PT, QPT, UWT, WT, STWT };
enum class Setting { Worst, AvgAbs, AvgNor };

std::string_view to_string(Notion notion);
std::string_view to_string(Setting setting);
/// Accepts EC-SPT / SPT, ..., EC-(s,t)-WT / STWT (case-insensitive).
Notion parse_notion(std::string_view text);
/// worst, avg-abs, avg-nor.
Setting parse_setting(std::string_view text);

struct TractabilityQuery {
    Notion notion = Notion::WT;
    Setting setting = Setting::Worst;
    double s = 1.0;  // only for STWT
    double t = 1.0;  // only for STWT

    /// Throws DomainError unless s, t > 0 and finite.
    void check() const;
};

enum class LimitClass { Zero, FinitePositive, Infinite, Undecidable };
std::string_view to_string(LimitClass value);

/// The limit expressions the classifier needs, each evaluated on one sequence.
enum class LimitForm {
    Growth,               // lim a_k
    LogOverLogIndex,      // lim ln a_k / ln k
    LogOverIndex,         // liminf ln a_k / k
    LogIndexLogOverIndex, // liminf (1 + ln k) ln a_k / k
    LogIndexOverTerm,     // lim ln j / a_j
    PowerIndexOverTerm,   // lim j^r / a_j            (r > 0)
    DecayedTerm,          // lim j^{1-t} a_j omega^{a_j}
    ReciprocalSum,        // sum_k 1 / b_k            (FinitePositive = converges)
    ReciprocalSumOverLog, // sup_d sum_{k<=d} b_k^{-1} / (1 + ln d)
};

struct LimitParams {
    double r = 1.0;
    double t = 0.5;
    double omega = 0.5;
};

/// Classifies a limit by per-kind asymptotics. Explicit lists are Undecidable.
LimitClass limit_eval(LimitForm form, const SequenceFamily& family, const LimitParams& params = {});

std::string describe(LimitForm form, const LimitParams& params = {});

enum class Outcome { Holds, Fails, Unknown };
std::string_view to_string(Outcome outcome);

struct LimitValue {
    std::string expression;
    LimitClass value;
};

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    /// Tag of the characterizing condition, e.g. "(1.7)" or "bullet:EC-WT".
    std::string governing_condition;
    /// The condition written out.
    std::string condition_text;
    std::vector<LimitValue> limit_values;
    std::string note;
};

/// Decides the notion for the spec's sequence families. Throws
/// UnsupportedQuery for cells without a known characterization (average-case
/// EC-QPT, and EC-(1,t)-WT with t < 1 under NOR).
Verdict classify(const WeightSpec& spec, const TractabilityQuery& query);

struct ProbeCell {
    std::size_t d = 1;
    double eps = 0.1;
    std::uint64_t n = 0;
    double ratio = 0.0;  // ln max(n, 1) / ((ln 1/eps)^s + d^t)
    std::size_t diagonal = 0;
};

struct ProbeTable {
    std::vector<ProbeCell> cells;             // d ascending, then eps descending
    std::vector<double> diagonal_max;         // per antidiagonal, in sweep order
    std::vector<double> diagonal_min;
    bool strictly_decreasing_max = false;
    bool last_max_below_first = false;
};

/// Evaluates the (s,t)-weak-tractability ratio on a grid. Antidiagonal k
/// groups cells whose d-index plus eps-index equals k (d ascending, eps
/// descending). The trend is qualitative: a finite grid cannot certify a
/// double limit.
ProbeTable probe_ratio(const WeightSpec& spec, double s, double t, Setting setting, std::vector<double> eps_grid,
                       std::vector<std::size_t> d_grid, unsigned threads = 1, const Caps& caps = {});

}  // namespace korobov
