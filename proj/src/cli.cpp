#include "sfcna/cli.hpp"

#include "sfcna/identities.hpp"
#include "sfcna/ingest.hpp"
#include "sfcna/markets.hpp"
#include "sfcna/matrix_dsl.hpp"
#include "sfcna/simulator.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace sfcna {

namespace {

struct Source {
    std::string path;
    bool fixture = false;
};

void add_source(CLI::App* cmd, Source& src, const char* data_flag = "--data")
{
    auto* data = cmd->add_option(data_flag, src.path, "dataset file (CSV, or JSON by extension)");
    auto* fixture = cmd->add_flag("--fixture-2011", src.fixture, "use the embedded Finland 2011 accounts");
    data->excludes(fixture);
}

LoadResult load_source(const Source& src)
{
    if (src.fixture)
        return {{{2011, fixture_2011()}}, {}};
    if (src.path.empty())
        throw CLI::ValidationError("a dataset is required: give --data <path> or --fixture-2011");
    return load(src.path);
}

Mode to_mode(const std::string& s) { return s == "recompute" ? Mode::recompute : Mode::reported; }

std::vector<Item> chain_items(Sector s)
{
    if (s == Sector::RS)
        return {Item::B11, Item::B12, Item::B9, Item::dA};
    return {Item::B1G, Item::B1N, Item::B13N, Item::B5N, Item::B6N, Item::B8N, Item::B9, Item::dA};
}

int validate(const Dataset& data, Mode mode, Money tolerance, std::ostream& out)
{
    int violations = 0;
    for (const auto& [year, economy] : data) {
        out << "year " << year << " mode " << (mode == Mode::reported ? "reported" : "recompute") << " tolerance "
            << tolerance.str() << "\n";
        for (const auto& m : market_systems(economy, mode)) {
            out << "market " << to_string(m.kind) << " paid " << m.total_payments().str() << " received "
                << m.total_receipts().str();
            if (!is_zero_sum(m.kind)) {
                out << " unattributed " << clear(m).str() << " open\n";
                continue;
            }
            const Money residual = m.attributed_payments() - m.attributed_receipts();
            out << " residual " << residual.str() << (residual.is_zero() ? " ok" : " VIOLATION") << "\n";
            if (residual.is_zero())
                continue;
            ++violations;
            for (auto s : kAllSectors) {
                const auto i = index(s);
                if (!m.payments[i].is_zero() || !m.receipts[i].is_zero())
                    out << "  " << to_string(s) << " paid " << m.payments[i].str() << " received "
                        << m.receipts[i].str() << "\n";
            }
        }
        for (const auto& c : chain_residuals(economy)) {
            const bool ok = abs(c.residual()) <= tolerance;
            out << "chain " << to_string(c.sector) << " " << to_string(c.item) << " reported " << c.reported.str()
                << " recomputed " << c.recomputed.str() << " residual " << c.residual().str()
                << (ok ? " ok" : " VIOLATION") << "\n";
            violations += ok ? 0 : 1;
        }
    }
    out << "violations " << violations << "\n";
    return violations == 0 ? kExitOk : kExitViolations;
}

int identities(const Dataset& data, Mode mode, std::ostream& out)
{
    bool equal = true;
    if (data.empty())
        out << "no data\n";
    for (const auto& [year, economy] : data) {
        const auto g = gdp_breakdown(economy, mode);
        const Money e = gdp_expenditure(g);
        const Money i = gdp_income(g);
        const Money v = gdp_value_added(g);
        const auto n = national_income(economy, mode);
        const bool gdp_ok = e == i && i == v;
        const bool ni_ok = n.lhs() == n.rhs();
        out << "year " << year << "\n";
        out << "GDP expenditure " << e.str() << "\n";
        out << "GDP income " << i.str() << "\n";
        out << "GDP value_added " << v.str() << "\n";
        out << "GDP " << (gdp_ok ? "ok" : "MISMATCH") << "\n";
        out << "national_income lhs " << n.lhs().str() << "\n";
        out << "national_income rhs " << n.rhs().str() << "\n";
        out << "national_income " << (ni_ok ? "ok" : "MISMATCH") << "\n";
        equal = equal && gdp_ok && ni_ok;
    }
    return equal ? kExitOk : kExitViolations;
}

nlohmann::ordered_json report_json(const EconomyYear& y, Mode mode)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["year"] = y.year;
    ordered_json ledger = ordered_json::array();
    for (auto s : kAllSectors)
        for (const auto& [key, value] : y[s].values())
            ledger.push_back({{"sector", to_string(s)},
                              {"item", to_string(key.first)},
                              {"direction", to_string(key.second)},
                              {"value", value.str()},
                              {"provenance", y.provenance_of(s, key.first, key.second) == Provenance::derived
                                                 ? "derived"
                                                 : "read"}});
    j["ledger"] = ledger;
    const auto res = results(y, mode);
    ordered_json balancing;
    for (auto s : kAllSectors) {
        ordered_json items;
        for (auto item : chain_items(s))
            items[std::string(to_string(item))] = field(res[index(s)], item).str();
        balancing[std::string(to_string(s))] = items;
    }
    j["balancing"] = balancing;
    ordered_json markets = ordered_json::array();
    for (const auto& m : market_systems(y, mode))
        markets.push_back({{"kind", to_string(m.kind)},
                           {"zero_sum", is_zero_sum(m.kind)},
                           {"payments", m.total_payments().str()},
                           {"receipts", m.total_receipts().str()},
                           {"unattributed_payments", m.unattributed_payments.str()},
                           {"unattributed_receipts", m.unattributed_receipts.str()}});
    j["markets"] = markets;
    const auto g = gdp_breakdown(y, mode);
    const auto n = national_income(y, mode);
    j["identities"] = {{"gdp_expenditure", gdp_expenditure(g).str()},
                       {"gdp_income", gdp_income(g).str()},
                       {"gdp_value_added", gdp_value_added(g).str()},
                       {"national_income_lhs", n.lhs().str()},
                       {"national_income_rhs", n.rhs().str()}};
    return j;
}

void report_text(const EconomyYear& y, Mode mode, std::ostream& out)
{
    out << "year " << y.year << "\n\nledger\n";
    for (auto s : kAllSectors)
        for (const auto& [key, value] : y[s].values()) {
            out << "  " << to_string(s) << " " << to_string(key.first) << " " << to_string(key.second) << " "
                << value.str();
            if (y.provenance_of(s, key.first, key.second) == Provenance::derived)
                out << " (derived)";
            out << "\n";
        }
    const auto res = results(y, mode);
    out << "\nbalancing items\n";
    for (auto s : kAllSectors)
        for (auto item : chain_items(s))
            out << "  " << to_string(s) << " " << to_string(item) << " " << field(res[index(s)], item).str() << "\n";
    out << "\nmarkets\n";
    for (const auto& m : market_systems(y, mode))
        out << "  " << to_string(m.kind) << " paid " << m.total_payments().str() << " received "
            << m.total_receipts().str() << "\n";
    const auto g = gdp_breakdown(y, mode);
    const auto n = national_income(y, mode);
    out << "\nidentities\n";
    out << "  GDP expenditure " << gdp_expenditure(g).str() << "\n";
    out << "  GDP income " << gdp_income(g).str() << "\n";
    out << "  GDP value_added " << gdp_value_added(g).str() << "\n";
    out << "  national_income lhs " << n.lhs().str() << "\n";
    out << "  national_income rhs " << n.rhs().str() << "\n";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool period_conserves(const SimulationState& s)
{
    if (!check_all(s.flows, Mode::recompute).empty())
        return false;
    const auto g = gdp_breakdown(s.flows, Mode::recompute);
    const auto n = national_income(s.flows, Mode::recompute);
    return gdp_expenditure(g) == gdp_income(g) && n.lhs() == n.rhs();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Stock-flow-consistent national accounts engine", "sfcna"};
    app.require_subcommand(1);

    Source src;
    std::string mode = "reported";
    std::optional<std::string> tolerance;
    auto* validate_cmd = app.add_subcommand("validate", "check market zero-sums and chain residuals");
    add_source(validate_cmd, src);
    validate_cmd->add_option("--mode", mode, "reported or recompute")->check(CLI::IsMember({"reported", "recompute"}));
    validate_cmd->add_option("--tolerance", tolerance, "chain residual tolerance in M EUR (0 reported, 15 recompute)");

    auto* identities_cmd = app.add_subcommand("identities", "GDP three ways and the national income identity");
    add_source(identities_cmd, src);
    identities_cmd->add_option("--mode", mode, "reported or recompute")
        ->check(CLI::IsMember({"reported", "recompute"}));

    std::string config_path, out_path, driver;
    std::optional<int> horizon;
    auto* simulate_cmd = app.add_subcommand("simulate", "calibrate on history and run a scenario");
    add_source(simulate_cmd, src, "--calibrate");
    simulate_cmd->add_option("--config", config_path, "scenario file");
    simulate_cmd->add_option("--horizon", horizon, "periods to run (overrides the scenario)");
    simulate_cmd->add_option("--driver", driver, "output growth per period (overrides the scenario)");
    simulate_cmd->add_option("--out", out_path, "CSV output file (default stdout)");

    std::string in_path, emit = "equations";
    auto* compile_cmd = app.add_subcommand("compile-matrix", "compile a transactions matrix");
    compile_cmd->add_option("--in", in_path, "matrix source")->required();
    compile_cmd->add_option("--emit", emit, "equations, taccounts or graph")
        ->check(CLI::IsMember({"equations", "taccounts", "graph"}));

    std::string format = "text";
    auto* report_cmd = app.add_subcommand("report", "full ledger, balancing items, markets and identities");
    add_source(report_cmd, src);
    report_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    report_cmd->add_option("--mode", mode, "reported or recompute")->check(CLI::IsMember({"reported", "recompute"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate_cmd->parsed() || identities_cmd->parsed() || report_cmd->parsed()) {
            auto loaded = load_source(src);
            for (const auto& w : loaded.warnings)
                err << "warning: " << w << "\n";
            if (validate_cmd->parsed()) {
                const Money tol = tolerance ? Money::parse(*tolerance)
                                            : (to_mode(mode) == Mode::recompute ? Money::units(15) : Money{});
                return validate(loaded.data, to_mode(mode), tol, out);
            }
            if (identities_cmd->parsed())
                return identities(loaded.data, to_mode(mode), out);
            if (format == "json") {
                nlohmann::ordered_json doc = nlohmann::ordered_json::array();
                for (const auto& [year, economy] : loaded.data)
                    doc.push_back(report_json(economy, to_mode(mode)));
                out << doc.dump(2) << "\n";
            } else {
                bool first = true;
                for (const auto& [year, economy] : loaded.data) {
                    if (!first)
                        out << "\n";
                    report_text(economy, to_mode(mode), out);
                    first = false;
                }
            }
            return kExitOk;
        }

        if (simulate_cmd->parsed()) {
            auto loaded = load_source(src);
            if (loaded.data.empty())
                throw CalibrationError("calibration needs at least one year of data");
            const Rules rules = calibrate(loaded.data);
            for (const auto& w : loaded.warnings)
                err << "warning: " << w << "\n";
            for (const auto& w : rules.warnings)
                err << "warning: " << w << "\n";
            ScenarioConfig config = config_path.empty() ? ScenarioConfig{} : load_scenario(config_path);
            if (horizon) {
                if (*horizon < 1)
                    throw ConfigurationError("horizon must be at least 1");
                config.horizon = *horizon;
            }
            if (!driver.empty())
                config.growth = parse_driver(driver);
            const auto series = run(initial_state(loaded.data.rbegin()->second), rules, config);
            int broken = 0;
            for (const auto& s : series)
                if (!period_conserves(s)) {
                    err << "period " << s.period << " violates conservation\n";
                    ++broken;
                }
            if (out_path.empty()) {
                write_series(out, series);
            } else {
                std::ofstream file(out_path);
                if (!file)
                    throw std::runtime_error("cannot write " + out_path);
                write_series(file, series);
            }
            return broken == 0 ? kExitOk : kExitViolations;
        }

        if (compile_cmd->parsed()) {
            const auto text = read_file(in_path);
            try {
                const auto m = dsl::parse(text);
                if (emit == "equations")
                    out << dsl::render_equations(dsl::to_equations(m));
                else if (emit == "taccounts")
                    out << dsl::render_taccounts(dsl::to_taccounts(m));
                else
                    out << dsl::render_dot(dsl::to_flow_graph(m));
            } catch (const dsl::DslError& e) {
                err << in_path << ": " << e.what() << "\n";
                return kExitViolations;
            }
            return kExitOk;
        }
    } catch (const SimulationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitViolations;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace sfcna
