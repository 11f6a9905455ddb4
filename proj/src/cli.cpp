#include "korobov/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "korobov/approx.hpp"
#include "korobov/complexity.hpp"
#include "korobov/entropy.hpp"
#include "korobov/errors.hpp"
#include "korobov/spectrum.hpp"
#include "korobov/tractability.hpp"

namespace korobov::cli {

namespace {

using nlohmann::json;

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

std::size_t line_of_key(std::string_view text, std::string_view key) {
    const std::string quoted = "\"" + std::string(key) + "\"";
    const auto pos = text.find(quoted);
    return pos == std::string_view::npos ? 1 : line_of_offset(text, pos);
}

[[noreturn]] void fail_at(const std::string& origin, std::size_t line, const std::string& message) {
    throw DomainError(origin + ":" + std::to_string(line) + ": " + message);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string render(const Cell& cell, Format format) {
    return std::visit(
        [format](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (format == Format::Json && !std::isfinite(v)) return "null";
                return format_real(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return format == Format::Json ? json(v).dump() : csv_escape(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, BigInteger>) {
                return v.digits;
            } else {
                return std::to_string(v);
            }
        },
        cell);
}

unsigned default_threads() {
    if (const char* env = std::getenv("KOROBOV_TRACT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size()) throw DomainError("cannot parse '" + item + "' as a real");
        out.push_back(v);
    }
    return out;
}

// "1,2,5" or "1..8".
std::vector<std::size_t> parse_dimension_list(const std::string& text) {
    std::vector<std::size_t> out;
    if (auto dots = text.find(".."); dots != std::string::npos) {
        const long lo = std::strtol(text.substr(0, dots).c_str(), nullptr, 10);
        const long hi = std::strtol(text.substr(dots + 2).c_str(), nullptr, 10);
        if (lo < 1 || hi < lo) throw DomainError("bad dimension range '" + text + "'");
        for (long d = lo; d <= hi; ++d) out.push_back(static_cast<std::size_t>(d));
        return out;
    }
    for (double v : parse_real_list(text)) {
        if (v < 1 || v != std::floor(v)) throw DomainError("dimensions must be positive integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

struct Common {
    std::string spec_path;
    std::string format = "csv";
    std::size_t d = 1;
    unsigned threads = default_threads();
};

}  // namespace

LoadedSpec parse_spec(std::string_view text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        fail_at(origin, line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), std::string("parse error: ") + e.what());
    }
    if (!doc.is_object()) fail_at(origin, 1, "spec must be a JSON object");

    for (const auto& [key, value] : doc.items()) {
        if (key != "omega" && key != "a" && key != "b" && key != "caps") {
            fail_at(origin, line_of_key(text, key), "unknown key '" + key + "'");
        }
    }
    for (const char* key : {"omega", "a", "b"}) {
        if (!doc.contains(key)) fail_at(origin, 1, std::string("missing key '") + key + "'");
    }
    if (!doc["omega"].is_number()) fail_at(origin, line_of_key(text, "omega"), "omega must be a number");
    const double omega = doc["omega"].get<double>();

    auto family = [&](const char* key) {
        if (!doc[key].is_string()) fail_at(origin, line_of_key(text, key), std::string(key) + " must be a family string");
        try {
            return SequenceFamily::parse(doc[key].get<std::string>());
        } catch (const DomainError& e) {
            fail_at(origin, line_of_key(text, key), e.what());
        }
    };
    auto a = family("a");
    auto b = family("b");

    if (auto report = validate(omega, a, b, 1000); !report) {
        std::string key = "omega";
        if (report.message.rfind("a ", 0) == 0) key = "a";
        if (report.message.rfind("b ", 0) == 0) key = "b";
        fail_at(origin, line_of_key(text, key), report.message);
    }

    Caps caps;
    if (doc.contains("caps")) {
        const auto& c = doc["caps"];
        if (!c.is_object()) fail_at(origin, line_of_key(text, "caps"), "caps must be an object");
        std::string overrides;
        for (const auto& [key, value] : c.items()) {
            if (!value.is_number()) fail_at(origin, line_of_key(text, key), "cap '" + key + "' must be a number");
            overrides += key + "=" + format_real(value.get<double>()) + ",";
        }
        try {
            caps.apply_overrides(overrides);
        } catch (const DomainError& e) {
            fail_at(origin, line_of_key(text, "caps"), e.what());
        }
    }
    if (const char* env = std::getenv("KOROBOV_TRACT_CAPS")) caps.apply_overrides(env);
    return LoadedSpec{WeightSpec(omega, std::move(a), std::move(b)), caps};
}

LoadedSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open spec file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_spec(buffer.str(), path);
}

Format parse_format(std::string_view text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    throw DomainError("format must be csv or json");
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void OutputTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw std::logic_error("row width does not match header");
    rows_.push_back(std::move(row));
}

void OutputTable::write(std::ostream& out, Format format) const {
    if (format == Format::Csv) {
        for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << csv_escape(columns_[c]);
        out << '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << render(row[c], format);
            out << '\n';
        }
        return;
    }
    out << "[";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        out << (r ? ",\n " : "\n ") << "{";
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            out << (c ? ", " : "") << json(columns_[c]).dump() << ": " << render(rows_[r][c], format);
        }
        out << "}";
    }
    out << (rows_.empty() ? "]\n" : "\n]\n");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra, information complexity and EC-tractability for analytic Korobov kernels",
                 "korobov-tract"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    Common common;
    auto add_spec = [&](CLI::App* sub) { sub->add_option("--spec", common.spec_path, "Spec file (JSON)")->required(); };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_d = [&](CLI::App* sub) { sub->add_option("--d", common.d, "Dimension")->required()->check(CLI::Range(1, 64)); };

    std::uint64_t n = 0, n_max = 0, samples = 10'000, seed = 0;
    double eps = 0.0, threshold = 1e-6, s = 1.0, t = 1.0, p = 1.0, m = 1.0;
    std::string setting, criterion = "abs", notion, points_path, eps_list, d_list;
    bool summary = false;

    auto* spectrum = app.add_subcommand("spectrum", "Leading eigenvalues in non-increasing order");
    add_spec(spectrum);
    add_d(spectrum);
    spectrum->add_option("--n", n, "Number of eigenvalues")->required()->check(CLI::PositiveNumber);
    add_format(spectrum);

    auto* complexity = app.add_subcommand("complexity", "Information complexity n(eps, d)");
    add_spec(complexity);
    add_d(complexity);
    complexity->add_option("--eps", eps, "Error threshold in (0,1)")->required();
    complexity->add_option("--setting", setting, "worst or avg")->required()->check(CLI::IsMember({"worst", "avg"}));
    complexity->add_option("--criterion", criterion, "abs or nor")->check(CLI::IsMember({"abs", "nor"}));
    add_format(complexity);

    auto* curve = app.add_subcommand("error-curve", "Minimal worst- and average-case errors for n = 0..n-max");
    add_spec(curve);
    add_d(curve);
    curve->add_option("--n-max", n_max, "Largest n")->required();
    curve->add_option("--setting", setting, "worst or avg (both columns are always emitted)")
        ->check(CLI::IsMember({"worst", "avg"}));
    add_format(curve);

    auto* sample = app.add_subcommand("sample-avg", "Monte-Carlo check of the average-case error");
    add_spec(sample);
    add_d(sample);
    sample->add_option("--n", n, "Number of kept eigenfunctions")->required();
    sample->add_option("--samples", samples, "Number of Gaussian draws")->required();
    sample->add_option("--seed", seed, "Seed")->required();
    sample->add_option("--threshold", threshold, "Neglected variance as a fraction of the trace");
    sample->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
    add_format(sample);

    auto* entropy = app.add_subcommand("entropy", "Grid counts and packing/covering numbers");
    entropy->require_subcommand(1);
    auto* grid = entropy->add_subcommand("grid-count", "#{h in Z^d : sum |h_k|^p <= m}");
    grid->add_option("--p", p, "Exponent p > 0")->required();
    grid->add_option("--m", m, "Budget m >= 0")->required();
    grid->add_option("--d", common.d, "Dimension")->required()->check(CLI::PositiveNumber);
    add_format(grid);
    auto* chain = entropy->add_subcommand("chain-check", "Check M_2eps <= N_eps <= M_eps on a point file");
    chain->add_option("--points", points_path, "One point per line, whitespace separated")->required();
    chain->add_option("--eps", eps, "Radius eps > 0")->required();
    add_format(chain);

    auto* tract = app.add_subcommand("tractability", "EC-tractability classification and ratio probes");
    tract->require_subcommand(1);
    auto* classify_cmd = tract->add_subcommand("classify", "Decide a tractability notion");
    add_spec(classify_cmd);
    classify_cmd->add_option("--notion", notion, "EC-SPT, EC-PT, EC-QPT, EC-UWT, EC-WT or EC-(s,t)-WT")->required();
    auto* s_opt = classify_cmd->add_option("--s", s, "s > 0 for EC-(s,t)-WT");
    auto* t_opt = classify_cmd->add_option("--t", t, "t > 0 for EC-(s,t)-WT");
    classify_cmd->add_option("--setting", setting, "worst, avg-abs or avg-nor")->required();
    add_format(classify_cmd);
    auto* probe = tract->add_subcommand("probe", "Tabulate ln n / ((ln 1/eps)^s + d^t)");
    add_spec(probe);
    probe->add_option("--s", s, "s > 0")->required();
    probe->add_option("--t", t, "t > 0")->required();
    probe->add_option("--setting", setting, "worst, avg-abs or avg-nor")->required();
    probe->add_option("--eps", eps_list, "Comma-separated eps values")->required();
    probe->add_option("--d", d_list, "Comma-separated dimensions or lo..hi")->required();
    probe->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
    probe->add_flag("--summary", summary, "Emit the antidiagonal trend table instead of the raw grid");
    add_format(probe);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        const Format format = parse_format(common.format);
        if (spectrum->parsed()) {
            const auto loaded = load_spec(common.spec_path);
            OutputTable table({"rank", "exponent", "eigenvalue"});
            for (const auto& entry : top_eigenvalues(loaded.spec, common.d, n, loaded.caps)) {
                const double lambda = entry.exponent.eigenvalue(loaded.spec);
                for (auto r = entry.first_rank; r <= entry.last_rank && r <= n; ++r) {
                    table.add_row({r, entry.exponent.value, lambda});
                }
            }
            table.write(out, format);
        } else if (complexity->parsed()) {
            const auto loaded = load_spec(common.spec_path);
            const bool worst = setting == "worst";
            const Criterion crit = parse_criterion(criterion);
            const std::uint64_t value = worst ? info_complexity_worst(loaded.spec, common.d, eps, loaded.caps)
                                              : info_complexity_avg(loaded.spec, common.d, eps, crit, loaded.caps);
            OutputTable table({"d", "eps", "setting", "criterion", "n"});
            table.add_row({static_cast<std::uint64_t>(common.d), eps, setting, std::string(to_string(crit)), value});
            table.write(out, format);
        } else if (curve->parsed()) {
            const auto loaded = load_spec(common.spec_path);
            const auto c = error_curve(loaded.spec, common.d, n_max, loaded.caps);
            OutputTable table({"n", "e_wor", "e_avg"});
            for (std::uint64_t k = 0; k <= n_max; ++k) table.add_row({k, c.worst[k], c.average[k]});
            table.write(out, format);
        } else if (sample->parsed()) {
            const auto loaded = load_spec(common.spec_path);
            GaussianDrawConfig cfg{threshold, seed, samples};
            const auto r = mc_avg_error(loaded.spec, common.d, n, cfg, common.threads, loaded.caps);
            OutputTable table({"n", "samples", "seed", "estimate", "standard_error", "oracle", "z_score",
                               "neglected_variance", "allowance", "consistent"});
            table.add_row({n, samples, seed, r.estimate, r.standard_error, r.oracle, r.z_score, r.neglected_variance,
                           r.allowance, r.consistent()});
            table.write(out, format);
        } else if (grid->parsed()) {
            const Caps caps = Caps::from_environment();
            const LpBallQuery q{p, m, common.d};
            const BigCount count = grid_count(q, caps);
            OutputTable table({"p", "m", "d", "count", "log_count"});
            table.add_row({p, m, static_cast<std::uint64_t>(common.d), BigInteger{count.str()}, log_count(count)});
            table.write(out, format);
        } else if (chain->parsed()) {
            const Caps caps = Caps::from_environment();
            std::ifstream in(points_path);
            if (!in) throw DomainError("cannot open points file '" + points_path + "'");
            const auto points = FinitePointSet::parse(in);
            const auto check = chain_check(points, eps, caps);
            OutputTable table({"eps", "points", "M_2eps", "N_eps", "M_eps", "exact", "holds"});
            table.add_row({eps, static_cast<std::uint64_t>(points.size()),
                           static_cast<std::uint64_t>(check.packing_2eps.size),
                           static_cast<std::uint64_t>(check.covering_eps.size),
                           static_cast<std::uint64_t>(check.packing_eps.size),
                           check.packing_2eps.exact && check.packing_eps.exact, check.holds()});
            table.write(out, format);
        } else if (classify_cmd->parsed()) {
            const auto loaded = load_spec(common.spec_path);
            TractabilityQuery q{parse_notion(notion), parse_setting(setting), s, t};
            const bool has_st = s_opt->count() > 0 || t_opt->count() > 0;
            if (q.notion == Notion::STWT && (s_opt->count() == 0 || t_opt->count() == 0)) {
                throw DomainError("EC-(s,t)-WT needs both --s and --t");
            }
            if (q.notion != Notion::STWT && has_st) throw DomainError("--s/--t apply only to EC-(s,t)-WT");
            Verdict v;
            try {
                v = classify(loaded.spec, q);
            } catch (const UnsupportedQuery& e) {
                throw DomainError(std::string("unsupported: ") + e.what() + "; nearest covered cell: " +
                                  e.nearest_covered_cell());
            }
            std::string limits;
            for (const auto& lv : v.limit_values) {
                if (!limits.empty()) limits += "; ";
                limits += lv.expression + " -> " + std::string(to_string(lv.value));
            }
            OutputTable table({"notion", "setting", "s", "t", "outcome", "condition", "condition_text", "limits", "note"});
            const bool st = q.notion == Notion::STWT;
            table.add_row({std::string(to_string(q.notion)), std::string(to_string(q.setting)),
                           st ? Cell{q.s} : Cell{std::string()}, st ? Cell{q.t} : Cell{std::string()},
                           std::string(to_string(v.outcome)), v.governing_condition, v.condition_text, limits, v.note});
            table.write(out, format);
        } else if (probe->parsed()) {
            const auto loaded = load_spec(common.spec_path);
            const auto result = probe_ratio(loaded.spec, s, t, parse_setting(setting), parse_real_list(eps_list),
                                            parse_dimension_list(d_list), common.threads, loaded.caps);
            if (summary) {
                OutputTable table({"diagonal", "max_ratio", "min_ratio", "strictly_decreasing", "last_below_first"});
                for (std::size_t k = 0; k < result.diagonal_max.size(); ++k) {
                    table.add_row({static_cast<std::uint64_t>(k), result.diagonal_max[k], result.diagonal_min[k],
                                   result.strictly_decreasing_max, result.last_max_below_first});
                }
                table.write(out, format);
            } else {
                OutputTable table({"d", "eps", "n", "ratio", "diagonal"});
                for (const auto& cell : result.cells) {
                    table.add_row({static_cast<std::uint64_t>(cell.d), cell.eps, cell.n, cell.ratio,
                                   static_cast<std::uint64_t>(cell.diagonal)});
                }
                table.write(out, format);
            }
        }
    } catch (const ResourceError& e) {
        err << "resource cap exceeded: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace korobov::cli
