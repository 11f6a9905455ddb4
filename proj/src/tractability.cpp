#include "korobov/tractability.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <thread>

#include "korobov/errors.hpp"

namespace korobov {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Asymptotic class of a positive sequence for the a-role forms.
LimitClass a_limit(LimitForm form, const SequenceFamily& a, const LimitParams& params) {
    const double c = a.coefficient();
    const double p = a.rate();
    switch (a.kind()) {
        case FamilyKind::ExplicitList: return LimitClass::Undecidable;
        case FamilyKind::Constant:
            switch (form) {
                case LimitForm::Growth: return LimitClass::FinitePositive;
                case LimitForm::LogOverLogIndex:
                case LimitForm::LogOverIndex:
                case LimitForm::LogIndexLogOverIndex: return LimitClass::Zero;
                case LimitForm::LogIndexOverTerm:
                case LimitForm::PowerIndexOverTerm: return LimitClass::Infinite;
                case LimitForm::DecayedTerm: {
                    const double e = 1.0 - params.t;
                    if (e > 0.0) return LimitClass::Infinite;
                    if (e == 0.0) return LimitClass::FinitePositive;
                    return LimitClass::Zero;
                }
                default: break;
            }
            break;
        case FamilyKind::Power:
            if (p == 0.0) return a_limit(form, SequenceFamily::constant(c), params);
            switch (form) {
                case LimitForm::Growth: return LimitClass::Infinite;
                case LimitForm::LogOverLogIndex: return LimitClass::FinitePositive;  // -> p
                case LimitForm::LogOverIndex:
                case LimitForm::LogIndexLogOverIndex: return LimitClass::Zero;
                case LimitForm::LogIndexOverTerm: return LimitClass::Zero;
                case LimitForm::PowerIndexOverTerm:
                    if (params.r < p) return LimitClass::Zero;
                    if (params.r == p) return LimitClass::FinitePositive;  // -> 1/c
                    return LimitClass::Infinite;
                case LimitForm::DecayedTerm: return LimitClass::Zero;  // omega^{c j^p} beats any power
                default: break;
            }
            break;
        case FamilyKind::LogPower:
            if (p == 0.0) return a_limit(form, SequenceFamily::constant(c), params);
            switch (form) {
                case LimitForm::Growth: return LimitClass::Infinite;
                case LimitForm::LogOverLogIndex:
                case LimitForm::LogOverIndex:
                case LimitForm::LogIndexLogOverIndex: return LimitClass::Zero;
                case LimitForm::LogIndexOverTerm:
                    if (p > 1.0) return LimitClass::Zero;
                    if (p == 1.0) return LimitClass::FinitePositive;  // -> 1/c
                    return LimitClass::Infinite;
                case LimitForm::PowerIndexOverTerm: return LimitClass::Infinite;
                case LimitForm::DecayedTerm: {
                    // j^e c (ln(j+1))^p omega^{c (ln(j+1))^p}; for p = 1 the decay is j^{-kappa}.
                    const double e = 1.0 - params.t;
                    if (e <= 0.0 || p > 1.0) return LimitClass::Zero;
                    if (p < 1.0) return LimitClass::Infinite;
                    const double kappa = c * -std::log(params.omega);
                    return kappa > e ? LimitClass::Zero : LimitClass::Infinite;
                }
                default: break;
            }
            break;
        case FamilyKind::Exponential:
            switch (form) {
                case LimitForm::Growth:
                case LimitForm::LogOverLogIndex:
                case LimitForm::LogIndexLogOverIndex: return LimitClass::Infinite;
                case LimitForm::LogOverIndex: return LimitClass::FinitePositive;  // -> gamma
                case LimitForm::LogIndexOverTerm:
                case LimitForm::PowerIndexOverTerm:
                case LimitForm::DecayedTerm: return LimitClass::Zero;
                default: break;
            }
            break;
    }
    return LimitClass::Undecidable;
}

LimitClass b_limit(LimitForm form, const SequenceFamily& b) {
    const double p = b.rate();
    switch (b.kind()) {
        case FamilyKind::ExplicitList: return LimitClass::Undecidable;
        case FamilyKind::Constant: return LimitClass::Infinite;
        case FamilyKind::Power:
            if (form == LimitForm::ReciprocalSum) return p > 1.0 ? LimitClass::FinitePositive : LimitClass::Infinite;
            return p >= 1.0 ? LimitClass::FinitePositive : LimitClass::Infinite;
        case FamilyKind::LogPower: return LimitClass::Infinite;
        case FamilyKind::Exponential: return LimitClass::FinitePositive;
    }
    return LimitClass::Undecidable;
}

struct Condition {
    LimitForm form;
    LimitParams params;
    bool on_b;
    // Classes that satisfy the condition.
    bool (*satisfied)(LimitClass);
};

bool is_zero(LimitClass v) { return v == LimitClass::Zero; }
bool is_infinite(LimitClass v) { return v == LimitClass::Infinite; }
bool is_positive(LimitClass v) { return v == LimitClass::FinitePositive || v == LimitClass::Infinite; }
bool is_finite(LimitClass v) { return v == LimitClass::FinitePositive || v == LimitClass::Zero; }

Verdict decide(const WeightSpec& spec, std::string tag, std::string text, std::vector<Condition> parts) {
    Verdict v;
    v.governing_condition = std::move(tag);
    v.condition_text = std::move(text);
    bool all = true;
    bool any_failed = false;
    for (const auto& part : parts) {
        const auto& family = part.on_b ? spec.b() : spec.a();
        const LimitClass value = limit_eval(part.form, family, part.params);
        v.limit_values.push_back({describe(part.form, part.params), value});
        if (value == LimitClass::Undecidable) {
            all = false;
        } else if (!part.satisfied(value)) {
            any_failed = true;
        }
    }
    v.outcome = any_failed ? Outcome::Fails : all ? Outcome::Holds : Outcome::Unknown;
    return v;
}

Verdict unconditional(std::string tag, std::string text) {
    Verdict v;
    v.outcome = Outcome::Holds;
    v.governing_condition = std::move(tag);
    v.condition_text = std::move(text);
    return v;
}

Verdict polynomial_bullet(const WeightSpec& spec, std::string_view prefix) {
    return decide(spec, std::string(prefix) + "EC-SPT/EC-PT",
                  "sum_k 1/b_k < inf and liminf ln a_k / k > 0",
                  {{LimitForm::ReciprocalSum, {}, true, is_finite}, {LimitForm::LogOverIndex, {}, false, is_positive}});
}

Verdict uniform_bullet(const WeightSpec& spec, std::string_view prefix) {
    return decide(spec, std::string(prefix) + "EC-UWT", "lim ln a_k / ln k = inf",
                  {{LimitForm::LogOverLogIndex, {}, false, is_infinite}});
}

Verdict weak_bullet(const WeightSpec& spec, std::string_view tag) {
    return decide(spec, std::string(tag), "lim a_k = inf", {{LimitForm::Growth, {}, false, is_infinite}});
}

Verdict log_condition(const WeightSpec& spec, std::string tag) {
    return decide(spec, std::move(tag), "lim ln j / a_j = 0", {{LimitForm::LogIndexOverTerm, {}, false, is_zero}});
}

Verdict power_condition(const WeightSpec& spec, std::string tag, double s) {
    LimitParams params;
    params.r = (1.0 - s) / s;
    return decide(spec, std::move(tag), "lim j^{(1-s)/s} / a_j = 0 with (1-s)/s = " + fmt(params.r),
                  {{LimitForm::PowerIndexOverTerm, params, false, is_zero}});
}

Verdict worst_case(const WeightSpec& spec, const TractabilityQuery& q) {
    switch (q.notion) {
        case Notion::SPT:
        case Notion::PT: return polynomial_bullet(spec, "bullet:");
        case Notion::QPT:
            return decide(spec, "bullet:EC-QPT",
                          "sup_d sum_{k<=d} 1/b_k / (1 + ln d) < inf and liminf (1 + ln k) ln a_k / k > 0",
                          {{LimitForm::ReciprocalSumOverLog, {}, true, is_finite},
                           {LimitForm::LogIndexLogOverIndex, {}, false, is_positive}});
        case Notion::UWT: return uniform_bullet(spec, "bullet:");
        case Notion::WT: return weak_bullet(spec, "bullet:EC-WT");
        case Notion::STWT: break;
    }
    if (std::max(q.s, q.t) > 1.0) return unconditional("bullet:max(s,t)>1", "always holds for max(s,t) > 1");
    if (q.s == 1.0 && q.t == 1.0) {
        auto v = weak_bullet(spec, "bullet:EC-WT");
        v.note = "EC-(1,1)-WT is EC-WT";
        return v;
    }
    if (q.s == 1.0) return log_condition(spec, "(1.7)");
    return power_condition(spec, "(1.8)", q.s);
}

Verdict average_case(const WeightSpec& spec, const TractabilityQuery& q) {
    const bool abs = q.setting == Setting::AvgAbs;
    switch (q.notion) {
        case Notion::SPT:
        case Notion::PT: return polynomial_bullet(spec, "avg-bullet:");
        case Notion::QPT:
            throw UnsupportedQuery("average-case EC-QPT has no stated characterization", "worst-case bullet:EC-QPT");
        case Notion::UWT: return uniform_bullet(spec, "avg-bullet:");
        case Notion::WT: return weak_bullet(spec, "avg-bullet:EC-WT");
        case Notion::STWT: break;
    }
    if (q.t > 1.0) return unconditional("avg(i)", "always holds for t > 1");
    if (q.t == 1.0 && q.s >= 1.0) return weak_bullet(spec, "avg(ii)");
    if (q.s == 1.0) {
        if (!abs) {
            throw UnsupportedQuery("EC-(1,t)-WT with t < 1 under NOR has no stated characterization",
                                   "(1.10) for avg-abs");
        }
        return log_condition(spec, "(1.10)");
    }
    if (q.s < 1.0) return power_condition(spec, "(1.11)", q.s);
    LimitParams params;
    params.t = q.t;
    params.omega = spec.omega();
    return decide(spec, "(1.12)", "lim j^{1-t} a_j omega^{a_j} = 0 with t = " + fmt(q.t),
                  {{LimitForm::DecayedTerm, params, false, is_zero}});
}

}  // namespace

std::string_view to_string(Notion notion) {
    switch (notion) {
        case Notion::SPT: return "EC-SPT";
        case Notion::PT: return "EC-PT";
        case Notion::QPT: return "EC-QPT";
        case Notion::UWT: return "EC-UWT";
        case Notion::WT: return "EC-WT";
        case Notion::STWT: return "EC-(s,t)-WT";
    }
    return "?";
}

std::string_view to_string(Setting setting) {
    switch (setting) {
        case Setting::Worst: return "worst";
        case Setting::AvgAbs: return "avg-abs";
        case Setting::AvgNor: return "avg-nor";
    }
    return "?";
}

Notion parse_notion(std::string_view text) {
    std::string key = lower(text);
    if (key.rfind("ec-", 0) == 0) key = key.substr(3);
    if (key == "spt") return Notion::SPT;
    if (key == "pt") return Notion::PT;
    if (key == "qpt") return Notion::QPT;
    if (key == "uwt") return Notion::UWT;
    if (key == "wt") return Notion::WT;
    if (key == "stwt" || key == "(s,t)-wt" || key == "st-wt") return Notion::STWT;
    throw DomainError("unknown notion '" + std::string(text) + "'");
}

Setting parse_setting(std::string_view text) {
    const std::string key = lower(text);
    if (key == "worst") return Setting::Worst;
    if (key == "avg-abs") return Setting::AvgAbs;
    if (key == "avg-nor") return Setting::AvgNor;
    throw DomainError("setting must be worst, avg-abs or avg-nor, got '" + std::string(text) + "'");
}

void TractabilityQuery::check() const {
    if (!(s > 0.0) || !(t > 0.0) || !std::isfinite(s) || !std::isfinite(t)) {
        throw DomainError("s and t must be positive reals");
    }
}

std::string_view to_string(LimitClass value) {
    switch (value) {
        case LimitClass::Zero: return "zero";
        case LimitClass::FinitePositive: return "finite-positive";
        case LimitClass::Infinite: return "infinite";
        case LimitClass::Undecidable: return "undecidable";
    }
    return "?";
}

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Holds: return "holds";
        case Outcome::Fails: return "fails";
        case Outcome::Unknown: return "unknown";
    }
    return "?";
}

LimitClass limit_eval(LimitForm form, const SequenceFamily& family, const LimitParams& params) {
    if (form == LimitForm::PowerIndexOverTerm && !(params.r > 0.0)) throw DomainError("limit needs r > 0");
    if (form == LimitForm::ReciprocalSum || form == LimitForm::ReciprocalSumOverLog) return b_limit(form, family);
    return a_limit(form, family, params);
}

std::string describe(LimitForm form, const LimitParams& params) {
    switch (form) {
        case LimitForm::Growth: return "lim a_k";
        case LimitForm::LogOverLogIndex: return "lim ln a_k / ln k";
        case LimitForm::LogOverIndex: return "liminf ln a_k / k";
        case LimitForm::LogIndexLogOverIndex: return "liminf (1 + ln k) ln a_k / k";
        case LimitForm::LogIndexOverTerm: return "lim ln j / a_j";
        case LimitForm::PowerIndexOverTerm: return "lim j^" + fmt(params.r) + " / a_j";
        case LimitForm::DecayedTerm: return "lim j^" + fmt(1.0 - params.t) + " a_j omega^a_j";
        case LimitForm::ReciprocalSum: return "sum_k 1/b_k";
        case LimitForm::ReciprocalSumOverLog: return "sup_d sum_{k<=d} 1/b_k / (1 + ln d)";
    }
    return "?";
}

Verdict classify(const WeightSpec& spec, const TractabilityQuery& query) {
    query.check();
    return query.setting == Setting::Worst ? worst_case(spec, query) : average_case(spec, query);
}

ProbeTable probe_ratio(const WeightSpec& spec, double s, double t, Setting setting, std::vector<double> eps_grid,
                       std::vector<std::size_t> d_grid, unsigned threads, const Caps& caps) {
    if (eps_grid.empty() || d_grid.empty()) throw DomainError("probe grids must be nonempty");
    if (!(s > 0.0) || !(t > 0.0)) throw DomainError("s and t must be positive");
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps grid values must lie in (0,1)");
    }
    std::sort(d_grid.begin(), d_grid.end());
    d_grid.erase(std::unique(d_grid.begin(), d_grid.end()), d_grid.end());
    std::sort(eps_grid.begin(), eps_grid.end(), std::greater<>());
    eps_grid.erase(std::unique(eps_grid.begin(), eps_grid.end()), eps_grid.end());

    ProbeTable table;
    for (std::size_t i = 0; i < d_grid.size(); ++i) {
        for (std::size_t j = 0; j < eps_grid.size(); ++j) {
            table.cells.push_back(ProbeCell{d_grid[i], eps_grid[j], 0, 0.0, i + j});
        }
    }

    auto evaluate = [&](ProbeCell& cell) {
        switch (setting) {
            case Setting::Worst: cell.n = info_complexity_worst(spec, cell.d, cell.eps, caps); break;
            case Setting::AvgAbs: cell.n = info_complexity_avg(spec, cell.d, cell.eps, Criterion::Absolute, caps); break;
            case Setting::AvgNor: cell.n = info_complexity_avg(spec, cell.d, cell.eps, Criterion::Normalized, caps); break;
        }
        const double denom = std::pow(std::log(1.0 / cell.eps), s) + std::pow(static_cast<double>(cell.d), t);
        cell.ratio = std::log(static_cast<double>(std::max<std::uint64_t>(cell.n, 1))) / denom;
    };

    threads = std::max(1U, threads);
    if (threads == 1) {
        for (auto& cell : table.cells) evaluate(cell);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < threads; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t c = w; c < table.cells.size(); c += threads) evaluate(table.cells[c]);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    const std::size_t diagonals = d_grid.size() + eps_grid.size() - 1;
    table.diagonal_max.assign(diagonals, -INFINITY);
    table.diagonal_min.assign(diagonals, INFINITY);
    for (const auto& cell : table.cells) {
        table.diagonal_max[cell.diagonal] = std::max(table.diagonal_max[cell.diagonal], cell.ratio);
        table.diagonal_min[cell.diagonal] = std::min(table.diagonal_min[cell.diagonal], cell.ratio);
    }
    table.strictly_decreasing_max = true;
    for (std::size_t k = 1; k < diagonals; ++k) {
        if (!(table.diagonal_max[k] < table.diagonal_max[k - 1])) table.strictly_decreasing_max = false;
    }
    table.last_max_below_first = table.diagonal_max.back() < table.diagonal_max.front();
    return table;
}

}  // namespace korobov
