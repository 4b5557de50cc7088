#include "cwc/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "cwc/asymptotics.hpp"
#include "cwc/designer.hpp"
#include "cwc/exact_comb.hpp"
#include "cwc/exponents.hpp"
#include "cwc/parallel.hpp"
#include "cwc/simulator.hpp"

namespace cwc::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kUnits = "natural log (nats)";

std::string format12(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Shortest text that parses back to the same double.
std::string exact_text(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add(std::vector<Cell> row)
    {
        if (row.size() != columns_.size()) throw std::logic_error("table row width mismatch");
        rows_.push_back(std::move(row));
    }

    void write_csv(std::ostream& os) const
    {
        for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
        os << '\n';
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) os << ',';
                std::visit(
                    [&os](const auto& v) {
                        using T = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<T, double>)
                            os << format12(v);
                        else if constexpr (std::is_same_v<T, std::int64_t> || std::is_same_v<T, std::string>)
                            os << v;
                    },
                    row[i]);
            }
            os << '\n';
        }
    }

    json to_json() const
    {
        json rows = json::array();
        for (const auto& row : rows_) {
            json obj = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                obj[columns_[i]] = std::visit(
                    [](const auto& v) -> json {
                        using T = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<T, double>) {
                            if (!std::isfinite(v)) return nullptr;
                            return std::stod(format12(v));  // same 12 digits as the CSV
                        } else if constexpr (std::is_same_v<T, std::monostate>) {
                            return nullptr;
                        } else {
                            return v;
                        }
                    },
                    row[i]);
            }
            rows.push_back(std::move(obj));
        }
        return rows;
    }

    const std::vector<std::string>& columns() const { return columns_; }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

/// Resolved run configuration: every flag with its effective value. The
/// canonical argv rebuilt from it re-runs the command bit-identically.
class RunConfig {
public:
    explicit RunConfig(std::string command) : command_(std::move(command)) { argv_.push_back(command_); }

    void add(const std::string& key, double v)
    {
        values_[key] = v;
        push(key, exact_text(v));
    }
    void add(const std::string& key, std::int64_t v)
    {
        values_[key] = v;
        push(key, std::to_string(v));
    }
    void add(const std::string& key, std::uint64_t v)
    {
        values_[key] = v;
        push(key, std::to_string(v));
    }
    void add(const std::string& key, const std::string& v)
    {
        values_[key] = v;
        push(key, v);
    }
    void add_flag(const std::string& key, bool on)
    {
        values_[key] = on;
        if (on) argv_.push_back("--" + key);
    }
    void add_list(const std::string& key, const std::vector<double>& vs)
    {
        std::string joined;
        json arr = json::array();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            joined += (i ? "," : "") + exact_text(vs[i]);
            arr.push_back(vs[i]);
        }
        values_[key] = arr;
        push(key, joined);
    }

    json to_json() const
    {
        json j = json::object();
        j["command"] = command_;
        j["argv"] = argv_;
        for (const auto& [k, v] : values_.items()) j[k] = v;
        return j;
    }

    const std::string& command() const { return command_; }

private:
    void push(const std::string& key, const std::string& text)
    {
        argv_.push_back("--" + key);
        argv_.push_back(text);
    }

    std::string command_;
    std::vector<std::string> argv_;
    json values_ = json::object();
};

struct Output {
    RunConfig config;
    Table table;
    std::string summary;
    std::vector<std::string> text;  // human-readable rendering for --format text
};

void write_output(const Output& o, const std::string& format, std::ostream& os)
{
    if (format == "text") {
        for (const auto& line : o.text) os << line << '\n';
        return;
    }
    if (format == "json") {
        json doc = json::object();
        doc["command"] = o.config.command();
        doc["config"] = o.config.to_json();
        doc["units"] = kUnits;
        doc["columns"] = o.table.columns();
        doc["rows"] = o.table.to_json();
        os << doc.dump(2) << '\n';
        return;
    }
    os << "# cwcode " << o.config.command() << '\n';
    os << "# config: " << o.config.to_json().dump() << '\n';
    os << "# units: " << kUnits << '\n';
    o.table.write_csv(os);
}

int emit(const Output& o, const std::string& format, const std::string& out_path, std::ostream& out,
         std::ostream& err)
{
    if (out_path.empty()) {
        write_output(o, format, out);
        if (format != "text") err << o.summary << '\n';
        return kOk;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open " << out_path << " for writing\n";
        return kInvalidArguments;
    }
    write_output(o, format, file);
    out << o.summary << '\n';
    return kOk;
}

BigInt parse_words(const std::string& text)
{
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("--words must be a positive integer");
    BigInt v(text);
    if (v < 1) throw std::invalid_argument("--words must be >= 1");
    return v;
}

void check_probability(const char* name, double p)
{
    if (!(p > 0.0 && p <= 0.5)) throw std::domain_error(std::string(name) + " must lie in (0, 0.5]");
}

void check_flip_probability(const char* name, double p)
{
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error(std::string(name) + " must lie in [0, 1]");
}

CodebookMode parse_mode(const std::string& s)
{
    return s == "ensemble" ? CodebookMode::ensemble : CodebookMode::materialized;
}

void add_design_row(Table& table, const DesignSolution& s)
{
    table.add({to_string(s.mode), s.r_star, s.n_continuous, std::int64_t{s.a_int}, std::int64_t{s.n_int}, s.cost,
               s.constraint_value});
}

std::vector<std::string> design_text(const DesignSolution& s)
{
    std::vector<std::string> lines;
    lines.push_back("mode: " + to_string(s.mode));
    lines.push_back("continuous: r*=" + format12(s.r_star) + " N*=" + format12(s.n_continuous) +
                    " cost=" + format12(s.continuous_cost));
    lines.push_back("integer: a=" + std::to_string(s.a_int) + " N=" + std::to_string(s.n_int) +
                    " cost=" + format12(s.cost));
    lines.push_back(std::string("constraint: ") + (s.mode == DesignMode::noiseless ? "H(r*)=" : "G(r*)=") +
                    format12(s.constraint_value));
    lines.push_back(std::string("feasible: ") + (s.feasible ? "yes" : "no"));
    return lines;
}

Table design_table()
{
    return Table({"mode", "r_star", "n_continuous", "a", "n", "cost", "constraint"});
}

std::vector<Cell> report_cells(const SimulationReport& r)
{
    return {std::int64_t{r.n},
            std::int64_t{r.a},
            r.words,
            r.p10,
            r.p01,
            to_string(r.mode),
            static_cast<std::int64_t>(r.trials),
            static_cast<std::int64_t>(r.errors),
            static_cast<std::int64_t>(r.tie_errors),
            r.p_hat,
            r.ci_low,
            r.ci_high,
            r.union_bound,
            r.predicted_log_p,
            std::to_string(r.seed)};
}

std::string report_summary(const SimulationReport& r)
{
    std::ostringstream s;
    s << "simulate: errors=" << r.errors << "/" << r.trials << " p_hat=" << format12(r.p_hat) << " ci=["
      << format12(r.ci_low) << ", " << format12(r.ci_high) << "] union_bound=" << format12(r.union_bound)
      << " predicted_log_p=" << format12(r.predicted_log_p);
    return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"cwcode: cost-minimal constant-weight code design and verification"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string format = "";
    std::string out_path;
    int threads = 0;

    // design / brute
    std::string words_text;
    double cost_a = 1.0;
    double cost_n = 1.0;
    std::optional<double> p10_opt;
    std::optional<double> p01_opt;
    double safety = 1.0;
    int design_grid = 1024;
    int n_max = 64;

    auto* design = app.add_subcommand("design", "cost-minimal (a, N) for a word budget");
    design->add_option("--words", words_text, "number of codewords |W|")->required();
    design->add_option("--cost-a", cost_a, "cost per active unit")->capture_default_str();
    design->add_option("--cost-n", cost_n, "cost per unit")->capture_default_str();
    design->add_option("--p10", p10_opt, "1->0 flip probability (noisy mode)");
    design->add_option("--p01", p01_opt, "0->1 flip probability (noisy mode)");
    design->add_option("--safety", safety, "multiplies ln|W| in noisy mode")->capture_default_str();
    design->add_option("--grid", design_grid, "grid for G(r)")->capture_default_str();

    auto* brute = app.add_subcommand("brute", "exhaustive noiseless design over N <= n-max");
    brute->add_option("--words", words_text, "number of codewords |W|")->required();
    brute->add_option("--cost-a", cost_a)->capture_default_str();
    brute->add_option("--cost-n", cost_n)->capture_default_str();
    brute->add_option("--n-max", n_max)->capture_default_str();

    // exponent
    double p10 = 0.0;
    double p01 = 0.0;
    std::optional<double> r_opt;
    int grid = kDefaultGrid;
    auto* exponent = app.add_subcommand("exponent", "pairwise exponent I and reliability exponent G(r)");
    exponent->add_option("--p10", p10)->required();
    exponent->add_option("--p01", p01)->required();
    exponent->add_option("--r", r_opt, "activity ratio for G(r)");
    exponent->add_option("--grid", grid)->capture_default_str();

    // simulate / sweep
    int n = 0;
    int a = 0;
    std::uint64_t trials = 10000;
    std::uint64_t seed = kDefaultSeed;
    std::string mode_text = "materialized";
    bool distinct = false;
    std::vector<double> ratios;

    auto add_sim_options = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "code length N")->required();
        cmd->add_option("--a", a, "weight a")->required();
        cmd->add_option("--p10", p10)->required();
        cmd->add_option("--p01", p01)->required();
        cmd->add_option("--trials", trials)->capture_default_str();
        cmd->add_option("--seed", seed)->capture_default_str();
        cmd->add_option("--mode", mode_text, "materialized or ensemble")
            ->check(CLI::IsMember({"materialized", "ensemble"}))
            ->capture_default_str();
        cmd->add_flag("--distinct", distinct, "reject duplicate codewords");
        cmd->add_option("--grid", grid)->capture_default_str();
        cmd->add_option("--threads", threads, "OpenMP threads (default: CWCODE_THREADS or OpenMP default)");
    };
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo decoding error rate");
    add_sim_options(simulate);
    simulate->add_option("--words", words_text, "number of codewords |W|")->required();

    auto* sweep = app.add_subcommand("sweep", "error rate across rho / G(r) ratios");
    add_sim_options(sweep);
    sweep->add_option("--rho-ratios", ratios, "comma-separated rho / G ratios in (0, 2]")
        ->delimiter(',')
        ->required();

    // curve
    int samples = 100;
    auto* curve = app.add_subcommand("curve", "feasibility frontier N_required(r)");
    curve->add_option("--words", words_text)->required();
    curve->add_option("--samples", samples)->capture_default_str();
    curve->add_option("--cost-a", cost_a)->capture_default_str();
    curve->add_option("--cost-n", cost_n)->capture_default_str();
    curve->add_option("--p10", p10_opt);
    curve->add_option("--p01", p01_opt);
    curve->add_option("--grid", grid)->capture_default_str();

    // replay
    std::string replay_from;
    auto* replay = app.add_subcommand("replay", "re-run the configuration embedded in an output file");
    replay->add_option("--from", replay_from)->required()->check(CLI::ExistingFile);

    for (auto* cmd : {design, brute, exponent, simulate, sweep, curve}) {
        cmd->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
        cmd->add_option("--out", out_path, "output file (default stdout)");
    }
    replay->add_option("--out", out_path, "output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    }

    try {
        if (replay->parsed()) {
            std::ifstream in(replay_from, std::ios::binary);
            std::stringstream buffer;
            buffer << in.rdbuf();
            const std::string text = buffer.str();
            json config;
            if (!text.empty() && text.front() == '{') {
                config = json::parse(text).at("config");
            } else {
                const std::string tag = "# config: ";
                const auto pos = text.find(tag);
                if (pos == std::string::npos) throw std::invalid_argument("replay: no embedded config found");
                const auto eol = text.find('\n', pos);
                config = json::parse(text.substr(pos + tag.size(), eol - pos - tag.size()));
            }
            auto argv = config.at("argv").get<std::vector<std::string>>();
            if (!out_path.empty()) {
                argv.push_back("--out");
                argv.push_back(out_path);
            }
            return run(argv, out, err);
        }

        set_threads(threads);

        if (design->parsed() || brute->parsed()) {
            const WordBudget budget(parse_words(words_text));
            const CostModel cost = CostModel::linear(cost_a, cost_n);
            RunConfig config(design->parsed() ? "design" : "brute");
            config.add("words", budget.to_string());
            config.add("cost-a", cost_a);
            config.add("cost-n", cost_n);
            DesignSolution s;
            try {
                if (brute->parsed()) {
                    config.add("n-max", std::int64_t{n_max});
                    s = brute_force_design(budget, cost, n_max);
                } else if (p10_opt || p01_opt) {
                    if (!p10_opt || !p01_opt) throw std::invalid_argument("noisy design needs both --p10 and --p01");
                    check_probability("--p10", *p10_opt);
                    check_probability("--p01", *p01_opt);
                    config.add("p10", *p10_opt);
                    config.add("p01", *p01_opt);
                    config.add("safety", safety);
                    config.add("grid", std::int64_t{design_grid});
                    DesignOptions options;
                    options.safety_factor = safety;
                    options.g_grid = design_grid;
                    s = design_noisy(budget, cost, ChannelModel(*p10_opt, *p01_opt), options);
                } else {
                    s = design_noiseless(budget, cost);
                }
            } catch (const InfeasibleError& e) {
                err << "infeasible: " << e.what() << '\n';
                return kInfeasible;
            }
            const std::string fmt = format.empty() ? "text" : format;
            config.add("format", fmt);
            Output o{config, design_table(), "", design_text(s)};
            add_design_row(o.table, s);
            if (s.mode == DesignMode::noisy) {
                const auto v = threshold_check(CodeParams(s.n_int, s.a_int), budget,
                                               ChannelModel(*p10_opt, *p01_opt), design_grid);
                o.text.push_back(std::string("threshold: ") + (v.verdict == Verdict::below ? "below" : "above") +
                                 " rho=" + format12(v.rho) + " G=" + format12(v.g_value) +
                                 " margin=" + format12(v.margin));
            }
            o.summary = config.command() + ": a=" + std::to_string(s.a_int) + " N=" + std::to_string(s.n_int) +
                        " cost=" + format12(s.cost);
            return emit(o, fmt, out_path, out, err);
        }

        if (exponent->parsed()) {
            check_probability("--p10", p10);
            check_probability("--p01", p01);
            if (r_opt && !(*r_opt > 0.0 && *r_opt < 1.0)) throw std::domain_error("--r must lie in (0, 1)");
            RunConfig config("exponent");
            config.add("p10", p10);
            config.add("p01", p01);
            if (r_opt) config.add("r", *r_opt);
            config.add("grid", std::int64_t{grid});
            const std::string fmt = format.empty() ? "text" : format;
            config.add("format", fmt);

            const ExponentReport rep = exponent_report(ChannelModel(p10, p01), r_opt, grid);
            Output o{config, Table({"i_value", "x_star", "y_star", "r", "g_value", "z_star"}), "", {}};
            auto opt_cell = [](const std::optional<double>& v) -> Cell { return v ? Cell{*v} : Cell{}; };
            o.table.add({rep.i_value, rep.x_star, rep.y_star, opt_cell(rep.r), opt_cell(rep.g_value),
                         opt_cell(rep.z_star)});
            o.text.push_back("I(p10, p01)=" + format12(rep.i_value) + " at x*=" + format12(rep.x_star) +
                             " y*=" + format12(rep.y_star));
            if (rep.g_value) {
                o.text.push_back("G(r)=" + format12(*rep.g_value) + " at z*=" + format12(*rep.z_star) +
                                 " (H(r)=" + format12(entropy(*rep.r)) + ")");
            }
            o.summary = "exponent: I=" + format12(rep.i_value);
            return emit(o, fmt, out_path, out, err);
        }

        if (simulate->parsed() || sweep->parsed()) {
            check_flip_probability("--p10", p10);
            check_flip_probability("--p01", p01);
            const CodeParams params(n, a);
            const ChannelModel channel(p10, p01);
            SimulationOptions options;
            options.mode = parse_mode(mode_text);
            options.distinct = distinct;
            options.grid = grid;
            const std::string fmt = format.empty() ? "csv" : format;
            if (fmt == "text") throw std::invalid_argument("simulate/sweep support csv or json output");

            RunConfig config(simulate->parsed() ? "simulate" : "sweep");
            config.add("n", std::int64_t{n});
            config.add("a", std::int64_t{a});
            std::optional<WordBudget> budget;
            if (simulate->parsed()) {
                budget.emplace(parse_words(words_text));
                config.add("words", budget->to_string());
            }
            config.add("p10", p10);
            config.add("p01", p01);
            config.add("trials", trials);
            config.add("seed", seed);
            config.add("mode", mode_text);
            config.add_flag("distinct", distinct);
            config.add("grid", std::int64_t{grid});
            if (sweep->parsed()) config.add_list("rho-ratios", ratios);
            config.add("format", fmt);

            if (simulate->parsed()) {
                SimulationReport rep;
                try {
                    rep = run_monte_carlo(params, *budget, channel, trials, seed, options);
                } catch (const MemoryGuardError& e) {
                    err << "memory guard: " << e.what() << '\n';
                    return kInfeasible;
                }
                Output o{config,
                         Table({"n", "a", "words", "p10", "p01", "mode", "trials", "errors", "tie_errors", "p_hat",
                                "ci_low", "ci_high", "union_bound", "predicted_log_p", "seed"}),
                         report_summary(rep),
                         {}};
                o.table.add(report_cells(rep));
                return emit(o, fmt, out_path, out, err);
            }

            const auto rows = threshold_sweep(params, channel, ratios, trials, seed, options);
            Output o{config,
                     Table({"ratio", "rho", "words", "trials", "errors", "p_hat", "ci_low", "ci_high", "union_bound",
                            "predicted_log_p", "skipped"}),
                     "",
                     {}};
            std::size_t skipped = 0;
            for (const auto& row : rows) {
                if (row.skipped) {
                    ++skipped;
                    o.table.add({row.ratio, row.rho, row.words, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{},
                                 std::int64_t{1}});
                    continue;
                }
                const auto& r = *row.report;
                o.table.add({row.ratio, row.rho, row.words, static_cast<std::int64_t>(r.trials),
                             static_cast<std::int64_t>(r.errors), r.p_hat, r.ci_low, r.ci_high, r.union_bound,
                             r.predicted_log_p, std::int64_t{0}});
            }
            o.summary = "sweep: " + std::to_string(rows.size() - skipped) + " runs, " + std::to_string(skipped) +
                        " skipped (memory guard)";
            const int status = emit(o, fmt, out_path, out, err);
            return status == kOk && skipped == rows.size() && !rows.empty() ? kInfeasible : status;
        }

        if (curve->parsed()) {
            const WordBudget budget(parse_words(words_text));
            RunConfig config("curve");
            config.add("words", budget.to_string());
            config.add("samples", std::int64_t{samples});
            config.add("cost-a", cost_a);
            config.add("cost-n", cost_n);
            std::optional<ChannelModel> channel;
            if (p10_opt || p01_opt) {
                if (!p10_opt || !p01_opt) throw std::invalid_argument("noisy curve needs both --p10 and --p01");
                check_probability("--p10", *p10_opt);
                check_probability("--p01", *p01_opt);
                channel.emplace(*p10_opt, *p01_opt);
                config.add("p10", *p10_opt);
                config.add("p01", *p01_opt);
                config.add("grid", std::int64_t{grid});
            }
            const std::string fmt = format.empty() ? "csv" : format;
            if (fmt == "text") throw std::invalid_argument("curve supports csv or json output");
            config.add("format", fmt);
            const auto rows = constraint_curve(budget, channel ? DesignMode::noisy : DesignMode::noiseless, channel,
                                               samples, CostModel::linear(cost_a, cost_n), grid);
            Output o{config, Table({"r", "n_required", "cost"}), "curve: " + std::to_string(rows.size()) + " rows", {}};
            for (const auto& row : rows) o.table.add({row.r, row.n_required, row.cost});
            return emit(o, fmt, out_path, out, err);
        }
    } catch (const MemoryGuardError& e) {
        err << "memory guard: " << e.what() << '\n';
        return kInfeasible;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    }
    return kInvalidArguments;
}

}  // namespace cwc::cli
