#pragma once

// Random generators and invariant checks shared by the unit tests and the
// acceptance runner. Checks return an empty string on success.

#include "sfcna/consolidation.hpp"
#include "sfcna/identities.hpp"
#include "sfcna/matrix_dsl.hpp"
#include "sfcna/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace props {

using namespace sfcna;

// Micro units of one sector with external flows, signed K2 and mirrored
// intra-sector trades.
inline std::vector<MicroUnit> random_population(std::mt19937& rng)
{
    std::uniform_int_distribution<int> n_units(1, 8);
    std::uniform_int_distribution<std::int64_t> value(0, 100000);
    std::uniform_int_distribution<int> n_flows(0, 6);
    const Item external_items[] = {Item::P1, Item::P2, Item::D11, Item::D4, Item::D7, Item::P5};
    const Item trade_items[] = {Item::P2, Item::D4, Item::D7};
    std::vector<MicroUnit> units;
    const int n = n_units(rng);
    for (int i = 0; i < n; ++i) {
        MicroUnit unit{"u" + std::to_string(i), Sector::NFS, {}};
        const int k = n_flows(rng);
        for (int j = 0; j < k; ++j) {
            const Item item = external_items[rng() % 6];
            const auto dir = rng() % 2 ? Direction::received : Direction::paid;
            std::optional<std::string> cp;
            if (rng() % 3 == 0)
                cp = "outside" + std::to_string(rng() % 3);
            unit.flows.push_back({Flow(item, Sector::NFS, dir, Money::from_cents(value(rng))), cp});
        }
        if (rng() % 4 == 0)
            unit.flows.push_back(
                {Flow(Item::K2, Sector::NFS, Direction::net, Money::from_cents(value(rng) - 50000)), std::nullopt});
        units.push_back(std::move(unit));
    }
    if (n >= 2) {
        std::uniform_int_distribution<int> pick(0, n - 1);
        const int trades = static_cast<int>(rng() % 10);
        for (int t = 0; t < trades; ++t) {
            const int a = pick(rng);
            int b = pick(rng);
            if (a == b)
                b = (b + 1) % n;
            const Item item = trade_items[rng() % 3];
            const Money v = Money::from_cents(value(rng));
            units[static_cast<std::size_t>(a)].flows.push_back(
                {Flow(item, Sector::NFS, Direction::paid, v), units[static_cast<std::size_t>(b)].id});
            units[static_cast<std::size_t>(b)].flows.push_back(
                {Flow(item, Sector::NFS, Direction::received, v), units[static_cast<std::size_t>(a)].id});
        }
    }
    for (auto& u : units)
        std::shuffle(u.flows.begin(), u.flows.end(), rng);
    return units;
}

// Merged population keeps no intra-set flow, keeps net saving, and does
// not depend on unit order or on merging in two halves first.
inline std::string consolidation_failure(const std::vector<MicroUnit>& units, std::mt19937& rng)
{
    std::set<std::string> ids;
    Money saving;
    for (const auto& u : units) {
        ids.insert(u.id);
        saving += u.flow_balance();
    }
    const auto merged = merge(units, "all");
    for (const auto& f : merged.flows)
        if (f.counterparty && ids.contains(*f.counterparty))
            return "paired flow survived merge";
    if (merged.flow_balance() != saving)
        return "net saving changed: " + saving.str() + " -> " + merged.flow_balance().str();

    const auto ledger = consolidate(units);
    auto shuffled = units;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    if (consolidate(shuffled) != ledger)
        return "result depends on unit order";

    if (units.size() >= 2) {
        const auto cut = static_cast<long>(1 + rng() % (units.size() - 1));
        std::vector<MicroUnit> a(units.begin(), units.begin() + cut);
        std::vector<MicroUnit> b(units.begin() + cut, units.end());
        std::set<std::string> a_ids, b_ids;
        for (const auto& u : a)
            a_ids.insert(u.id);
        for (const auto& u : b)
            b_ids.insert(u.id);
        auto ma = merge(a, "A");
        auto mb = merge(b, "B");
        relabel_counterparties(ma, b_ids, "B");
        relabel_counterparties(mb, a_ids, "A");
        std::vector<MicroUnit> two{ma, mb};
        if (consolidate(two) != ledger)
            return "merging in two steps differs";
    }
    return {};
}

struct GeneratedMatrix {
    std::string text;
    bool valid;     // independent verdict on row and column balance
    bool bilateral; // every row has one payer and one receiver
};

inline GeneratedMatrix random_matrix(std::mt19937& rng)
{
    const int n_sectors = 2 + static_cast<int>(rng() % 4);
    struct Cell {
        int sector;
        int sign;
        std::string symbol;
    };
    std::vector<std::vector<Cell>> rows;
    const int n_rows = static_cast<int>(rng() % 8);
    bool bilateral = true;
    for (int r = 0; r < n_rows; ++r) {
        const std::string sym = (rng() % 5 == 0 ? "d" : "") + std::string(1, static_cast<char>('A' + rng() % 26)) +
                                std::to_string(r);
        std::vector<int> order(static_cast<std::size_t>(n_sectors));
        for (int i = 0; i < n_sectors; ++i)
            order[static_cast<std::size_t>(i)] = i;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<Cell> row{{order[0], -1, sym}, {order[1], +1, sym}};
        if (n_sectors >= 4 && rng() % 6 == 0) {
            row.push_back({order[2], -1, sym});
            row.push_back({order[3], +1, sym});
            bilateral = false;
        }
        if (rng() % 12 == 0)
            row.pop_back();
        rows.push_back(row);
    }

    bool valid = true;
    for (const auto& row : rows) {
        int net = 0;
        for (const auto& c : row)
            net += c.sign;
        valid = valid && net == 0;
    }
    for (int s = 0; valid && s < n_sectors; ++s) {
        std::map<std::string, int> net;
        for (const auto& row : rows)
            for (const auto& c : row)
                if (c.sector == s)
                    net[c.symbol] += c.sign;
        int pos = 0, neg = 0;
        for (const auto& [sym, v] : net) {
            pos += v > 0;
            neg += v < 0;
        }
        valid = (pos > 0) == (neg > 0);
    }

    std::string text = "# generated\nmatrix \"random\"\nsectors: ";
    for (int i = 0; i < n_sectors; ++i)
        text += (i ? ", S" : "S") + std::to_string(i);
    text += "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        text += (rng() % 2 ? "row \"r" : "  row   \"r") + std::to_string(r) + "\":";
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            const auto& c = rows[r][i];
            text += (i ? ", S" : " S") + std::to_string(c.sector) + "=" + (c.sign < 0 ? "-" : "+") + c.symbol;
        }
        text += rng() % 3 == 0 ? "   # note\n" : "\n";
    }
    if (rng() % 2)
        text += "row \"memo\": S0=[Y]\n";
    return {text, valid, bilateral};
}

// Equations, T-accounts and the flow graph describe the same entries, and
// every symbol leaving one account enters another.
inline std::string emitters_failure(const dsl::TransactionsMatrix& m, bool bilateral)
{
    using Multiset = std::map<std::string, int>;
    const auto eqs = dsl::to_equations(m);
    const auto nodes = dsl::to_taccounts(m);
    if (nodes.size() != m.sectors.size())
        return "one T-account per sector expected";
    std::size_t eq_index = 0;
    Multiset all_in, all_out;
    for (const auto& node : nodes) {
        std::vector<std::string> in, out;
        for (const auto& e : node.inflows) {
            in.push_back(e.symbol);
            ++all_in[e.symbol];
        }
        for (const auto& e : node.outflows) {
            out.push_back(e.symbol);
            ++all_out[e.symbol];
        }
        if (in.empty() && out.empty())
            continue;
        if (eq_index >= eqs.size())
            return "T-account " + node.name + " has no equation";
        const auto& eq = eqs[eq_index++];
        if (eq.sector != node.name || eq.inflows != in || eq.outflows != out)
            return "equation and T-account differ for " + node.name;
    }
    if (eq_index != eqs.size())
        return "equation without T-account";
    if (all_in != all_out)
        return "inflows and outflows differ across accounts";

    if (!bilateral) {
        try {
            dsl::to_flow_graph(m);
        } catch (const dsl::DslError&) {
            return {};
        }
        return "multi-party row drawn as a graph";
    }
    const auto graph = dsl::to_flow_graph(m);
    if (graph.edges.size() != m.rows.size())
        return "edge count differs from row count";
    std::map<std::string, Multiset> edge_out, edge_in;
    for (const auto& e : graph.edges) {
        ++edge_out[e.from][e.symbol];
        ++edge_in[e.to][e.symbol];
    }
    for (const auto& eq : eqs) {
        Multiset in, out;
        for (const auto& s : eq.inflows)
            ++in[s];
        for (const auto& s : eq.outflows)
            ++out[s];
        if (in != edge_in[eq.sector] || out != edge_out[eq.sector])
            return "graph edges differ from equation of " + eq.sector;
    }
    return {};
}

// Calibrated rates scaled by [0.95, 1.05] and shares by [0.9, 1.1], then
// renormalised.
inline Rules perturbed_rules(const Rules& base, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> rate_factor(0.95, 1.05);
    std::uniform_real_distribution<double> share_factor(0.9, 1.1);
    auto ratio = [](double x) { return Ratio::of(static_cast<std::int64_t>(std::llround(x * 1e6)), 1'000'000); };
    Rules rules = base;
    for (auto& r : rules.rates)
        r.value = r.value * ratio(rate_factor(rng));
    for (auto& a : rules.allocations) {
        std::vector<Ratio> w;
        for (auto share : a.shares)
            w.push_back(share * ratio(share_factor(rng)));
        a.shares = normalize(w);
    }
    return rules;
}

// Growth between -2% and +5% per period in steps of 0.1%.
inline Ratio random_growth(std::mt19937_64& rng)
{
    const int d = std::uniform_int_distribution<int>(-20, 50)(rng);
    return Ratio::from_raw(Ratio::kScale + d * (Ratio::kScale / 1000));
}

// Market zero-sums, GDP two ways, both national income sides, zero net
// lending and assets across sectors, NW = A - Psi.
inline std::string conservation_failure(const SimulationState& s)
{
    const auto& y = s.flows;
    const std::string at = "period " + std::to_string(s.period) + ": ";
    if (!check_all(y, Mode::recompute).empty())
        return at + "market does not clear";
    const auto g = gdp_breakdown(y, Mode::recompute);
    if (gdp_expenditure(g) != gdp_income(g))
        return at + "GDP expenditure " + gdp_expenditure(g).str() + " income " + gdp_income(g).str();
    const auto n = national_income(y, Mode::recompute);
    if (n.lhs() != n.rhs())
        return at + "national income " + n.lhs().str() + " vs " + n.rhs().str();
    Money lending, assets;
    for (auto sec : kAllSectors) {
        const auto& st = s.stocks[index(sec)];
        lending += y[sec].net(Item::B9);
        assets += st.assets;
        if (st.net_worth != st.assets - st.liabilities)
            return at + "net worth differs from assets less liabilities";
    }
    if (!lending.is_zero())
        return at + "net lending sums to " + lending.str();
    if (!assets.is_zero())
        return at + "financial assets sum to " + assets.str();
    return {};
}

} // namespace props
