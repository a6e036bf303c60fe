#include "sfcna/simulator.hpp"

#include "sfcna/identities.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace sfcna {

ConfigurationError::ConfigurationError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
{
}

ConfigurationError::ConfigurationError(const std::string& message) : std::runtime_error(message) {}

void AllocationRule::validate() const
{
    if (receivers.size() != shares.size())
        throw ConfigurationError("pool " + pool + ": receivers and shares differ in length");
    std::int64_t total = 0;
    for (auto s : shares) {
        if (s < Ratio::zero())
            throw ConfigurationError("pool " + pool + ": negative share");
        total += s.raw();
    }
    if (total != Ratio::kScale)
        throw ConfigurationError("pool " + pool + ": shares sum to " + Ratio::from_raw(total).str() + ", not 1");
}

std::string_view to_string(RateBase base)
{
    switch (base) {
    case RateBase::output: return "output";
    case RateBase::goods_pool: return "goods_pool";
    case RateBase::disposable_income: return "disposable_income";
    }
    return "?";
}

const AllocationRule* Rules::allocation(std::string_view pool) const
{
    for (const auto& a : allocations)
        if (a.pool == pool)
            return &a;
    return nullptr;
}

AllocationRule* Rules::allocation(std::string_view pool)
{
    return const_cast<AllocationRule*>(std::as_const(*this).allocation(pool));
}

const BehaviouralRate* Rules::rate(Sector sector, Item item) const
{
    for (const auto& r : rates)
        if (r.sector == sector && r.item == item)
            return &r;
    return nullptr;
}

namespace {

bool is_domestic(Sector s) { return s != Sector::RS; }

bool is_goods_payment(Item i)
{
    return i == Item::P31 || i == Item::P32 || i == Item::P5 || i == Item::P2 || i == Item::P6 ||
           i == Item::D31 || i == Item::D21;
}

std::optional<MarketKind> simulated_market(Item item)
{
    for (auto k : kSimulatedMarkets)
        if (item_of(k) == item)
            return k;
    return std::nullopt;
}

std::string pool_name(MarketKind k) { return std::string(to_string(k)); }

struct Payment {
    Sector sector;
    Item item;
    Money value;
};

struct Receipt {
    std::string pool;
    Receiver receiver;
    Money value;
};

Money composite_of(const SectorLedger& l) { return household_inputs(l).production.output.resolve(); }

std::vector<Payment> payments(const EconomyYear& y)
{
    std::vector<Payment> out;
    for (auto s : kAllSectors)
        for (const auto& [key, value] : y[s].values()) {
            const auto [item, dir] = key;
            if (dir == Direction::paid && (is_goods_payment(item) || simulated_market(item) || item == Item::K1))
                out.push_back({s, item, value});
            else if (dir == Direction::net && item == Item::K2 && value > Money{})
                out.push_back({s, item, value});
            else if (dir == Direction::net && item == Item::D8 && value < Money{})
                out.push_back({s, item, -value});
        }
    return out;
}

std::vector<Receipt> receipts(const EconomyYear& y)
{
    std::vector<Receipt> out;
    const std::string goods(kGoodsPool);
    for (auto s : kAllSectors) {
        const auto& l = y[s];
        if (is_domestic(s)) {
            Money c = composite_of(l);
            if (l.has(Item::P1, Direction::received) || !c.is_zero())
                out.push_back({goods, {s, Item::P1}, c});
        }
        for (const auto& [key, value] : l.values()) {
            const auto [item, dir] = key;
            if (dir == Direction::received) {
                if (item == Item::P7 || item == Item::D21 || item == Item::D31)
                    out.push_back({goods, {s, item}, value});
                else if (auto k = simulated_market(item))
                    out.push_back({pool_name(*k), {s, item}, value});
            } else if (dir == Direction::net && item == Item::K2 && value < Money{}) {
                out.push_back({pool_name(MarketKind::K2), {s, item}, -value});
            } else if (dir == Direction::net && item == Item::D8 && value > Money{}) {
                out.push_back({pool_name(MarketKind::D8), {s, item}, value});
            }
        }
    }
    return out;
}

RateBase base_of(Sector s, Item item)
{
    if (s == Sector::HS && item == Item::P31)
        return RateBase::disposable_income;
    if (is_domestic(s) && (item == Item::P2 || item == Item::K1 || item == Item::D11 || item == Item::D12 ||
                           item == Item::D21 || item == Item::D29))
        return RateBase::output;
    return RateBase::goods_pool;
}

bool is_investment(Sector s, Item item) { return is_domestic(s) && item == Item::P5; }

// Mean fraction per receiver over the years with a positive pool.
AllocationRule mean_shares(const std::string& pool, const std::set<Receiver>& receivers,
                           const std::vector<std::map<Receiver, Money>>& years, std::vector<std::string>& warnings)
{
    AllocationRule rule{pool, {receivers.begin(), receivers.end()}, {}};
    std::vector<std::vector<Ratio>> samples(rule.receivers.size());
    for (const auto& year : years) {
        Money total;
        for (const auto& [r, v] : year)
            total += v;
        if (total <= Money{})
            continue;
        for (std::size_t i = 0; i < rule.receivers.size(); ++i) {
            auto it = year.find(rule.receivers[i]);
            samples[i].push_back(Ratio::of(it == year.end() ? Money{} : it->second, total));
        }
    }
    std::vector<Ratio> weights;
    for (const auto& s : samples)
        weights.push_back(s.empty() ? Ratio::zero() : mean(s));
    if (samples.empty() || samples.front().empty())
        warnings.push_back("pool " + pool + " is zero in every year; using uniform shares");
    rule.shares = normalize(weights);
    return rule;
}

} // namespace

Money goods_pool_total(const EconomyYear& year)
{
    Money v;
    for (const auto& r : receipts(year))
        if (r.pool == kGoodsPool)
            v += r.value;
    return v;
}

Rules calibrate(const Dataset& history)
{
    if (history.empty())
        throw CalibrationError("calibration needs at least one year of data");

    std::map<std::pair<Sector, Item>, RateBase> bases;
    std::map<std::string, std::set<Receiver>> pool_receivers;
    std::set<Receiver> investors;
    for (const auto& [year, economy] : history) {
        for (const auto& p : payments(economy)) {
            if (is_investment(p.sector, p.item))
                investors.insert({p.sector, p.item});
            else
                bases.emplace(std::pair{p.sector, p.item}, base_of(p.sector, p.item));
        }
        for (const auto& r : receipts(economy))
            pool_receivers[r.pool].insert(r.receiver);
    }

    std::map<std::pair<Sector, Item>, std::vector<Ratio>> rate_samples;
    std::map<std::string, std::vector<std::map<Receiver, Money>>> pool_years;
    std::vector<std::map<Receiver, Money>> investment_years;
    for (const auto& [year, economy] : history) {
        const Money v = goods_pool_total(economy);
        const Money di_h = results(economy, Mode::recompute)[index(Sector::HS)].disposable_income;
        std::map<std::pair<Sector, Item>, Money> paid;
        std::map<Receiver, Money> invested;
        for (const auto& p : payments(economy)) {
            if (is_investment(p.sector, p.item))
                invested[{p.sector, p.item}] += p.value;
            else
                paid[{p.sector, p.item}] += p.value;
        }
        for (const auto& [key, base_kind] : bases) {
            Money base = base_kind == RateBase::output              ? composite_of(economy[key.first])
                         : base_kind == RateBase::disposable_income ? di_h
                                                                    : v;
            if (base <= Money{})
                continue;
            auto it = paid.find(key);
            rate_samples[key].push_back(Ratio::of(it == paid.end() ? Money{} : it->second, base));
        }
        std::map<std::string, std::map<Receiver, Money>> by_pool;
        for (const auto& r : receipts(economy))
            by_pool[r.pool][r.receiver] += r.value;
        for (const auto& [pool, receivers] : pool_receivers)
            pool_years[pool].push_back(by_pool[pool]);
        investment_years.push_back(invested);
    }

    Rules rules;
    const std::string goods(kGoodsPool);
    if (pool_receivers.contains(goods))
        rules.allocations.push_back(mean_shares(goods, pool_receivers[goods], pool_years[goods], rules.warnings));
    if (!investors.empty())
        rules.allocations.push_back(
            mean_shares(std::string(kInvestmentPool), investors, investment_years, rules.warnings));
    for (auto k : kSimulatedMarkets) {
        const auto name = pool_name(k);
        const bool has_payers = std::any_of(bases.begin(), bases.end(),
                                            [&](const auto& b) { return b.first.second == item_of(k); });
        if (!pool_receivers.contains(name)) {
            if (has_payers)
                throw CalibrationError("market " + name + " has payments but no receiving sector");
            continue;
        }
        rules.allocations.push_back(mean_shares(name, pool_receivers[name], pool_years[name], rules.warnings));
    }
    for (const auto& [key, base_kind] : bases) {
        const auto& samples = rate_samples[key];
        rules.rates.push_back({key.first, key.second, base_kind, samples.empty() ? Ratio::zero() : mean(samples)});
    }
    return rules;
}

SimulationState initial_state(const EconomyYear& flows)
{
    SimulationState s;
    s.flows = flows;
    store_results(s.flows, results(s.flows, Mode::recompute));
    return s;
}

Rules apply_shocks(const Rules& rules, const ScenarioConfig& config, int period)
{
    Rules out = rules;
    for (const auto& shock : config.rate_shocks) {
        if (shock.period != period)
            continue;
        auto it = std::find_if(out.rates.begin(), out.rates.end(),
                               [&](const auto& r) { return r.sector == shock.sector && r.item == shock.item; });
        if (it == out.rates.end())
            throw ConfigurationError("period " + std::to_string(period) + ": no calibrated rate for " +
                                     std::string(to_string(shock.sector)) + "." +
                                     std::string(to_string(shock.item)));
        it->value = it->value * shock.factor;
    }
    for (const auto& shock : config.share_shocks) {
        if (shock.period != period)
            continue;
        AllocationRule* rule = out.allocation(shock.pool);
        if (rule == nullptr)
            throw ConfigurationError("period " + std::to_string(period) + ": no pool " + shock.pool);
        auto it = std::find(rule->receivers.begin(), rule->receivers.end(), shock.receiver);
        if (it == rule->receivers.end())
            throw ConfigurationError("period " + std::to_string(period) + ": pool " + shock.pool +
                                     " has no receiver " + std::string(to_string(shock.receiver.sector)) + "." +
                                     std::string(to_string(shock.receiver.item)));
        auto& share = rule->shares[static_cast<std::size_t>(it - rule->receivers.begin())];
        share = share * shock.factor;
    }
    for (const auto& rule : out.allocations)
        rule.validate();
    return out;
}

SimulationState step(const SimulationState& state, const Rules& base_rules, const ScenarioConfig& config)
{
    const Rules rules = apply_shocks(base_rules, config, state.period + 1);
    SimulationState next;
    next.period = state.period + 1;
    EconomyYear& y = next.flows;
    y.year = state.flows.year + 1;

    const Money v = config.growth.apply(goods_pool_total(state.flows));
    if (const auto* goods = rules.allocation(kGoodsPool)) {
        auto parts = apportion(v, goods->shares);
        for (std::size_t i = 0; i < parts.size(); ++i)
            y[goods->receivers[i].sector].add(goods->receivers[i].item, Direction::received, parts[i]);
    } else if (!v.is_zero()) {
        throw SimulationError("goods market has no receivers");
    }

    std::map<MarketKind, Money> pools;
    std::map<MarketKind, std::array<Money, 5>> signed_paid;
    std::vector<const BehaviouralRate*> deferred;
    for (const auto& r : rules.rates) {
        if (r.base == RateBase::disposable_income) {
            deferred.push_back(&r);
            continue;
        }
        const Money base = r.base == RateBase::output ? y[r.sector].received(Item::P1) : v;
        const Money amount = r.value.apply(base);
        const auto kind = simulated_market(r.item);
        if (kind)
            pools[*kind] += amount;
        if (r.item == Item::K2 || r.item == Item::D8)
            signed_paid[*kind][index(r.sector)] += amount;
        else
            y[r.sector].add(r.item, Direction::paid, amount);
    }

    for (auto k : kSimulatedMarkets) {
        const auto* rule = rules.allocation(pool_name(k));
        const Money pool = pools[k];
        if (rule == nullptr) {
            if (!pool.is_zero())
                throw SimulationError("market " + pool_name(k) + " has payments but no receivers");
            continue;
        }
        auto parts = apportion(pool, rule->shares);
        if (k == MarketKind::K2 || k == MarketKind::D8) {
            std::array<Money, 5> received{};
            std::set<Sector> involved;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                received[index(rule->receivers[i].sector)] += parts[i];
                involved.insert(rule->receivers[i].sector);
            }
            for (auto s : kAllSectors)
                if (!signed_paid[k][index(s)].is_zero())
                    involved.insert(s);
            for (const auto& r : rules.rates)
                if (r.item == item_of(k))
                    involved.insert(r.sector);
            for (auto s : involved) {
                const Money paid = signed_paid[k][index(s)];
                const Money net = k == MarketKind::K2 ? paid - received[index(s)] : received[index(s)] - paid;
                y[s].set(item_of(k), Direction::net, net);
            }
        } else {
            for (std::size_t i = 0; i < parts.size(); ++i)
                y[rule->receivers[i].sector].add(rule->receivers[i].item, Direction::received, parts[i]);
        }
    }

    for (const auto* r : deferred) {
        const Money di = evaluate(y[r->sector]).disposable_income;
        const Money amount = r->value.apply(di);
        if (amount < Money{})
            throw SimulationError("period " + std::to_string(next.period) + ": " +
                                  std::string(to_string(r->sector)) + " disposable income " + di.str() +
                                  " is negative");
        y[r->sector].add(r->item, Direction::paid, amount);
    }

    Money spent;
    for (auto s : kAllSectors)
        for (const auto& [key, value] : y[s].values())
            if (key.second == Direction::paid && is_goods_payment(key.first))
                spent += value;
    const Money investment = v - spent;
    if (investment < Money{})
        throw SimulationError("period " + std::to_string(next.period) + ": spending exceeds the goods market by " +
                              (-investment).str());
    if (const auto* inv = rules.allocation(kInvestmentPool)) {
        auto parts = apportion(investment, inv->shares);
        for (std::size_t i = 0; i < parts.size(); ++i)
            y[inv->receivers[i].sector].add(inv->receivers[i].item, Direction::paid, parts[i]);
    } else if (!investment.is_zero()) {
        throw SimulationError("no sector invests the goods-market residual " + investment.str());
    }

    const auto res = results(y, Mode::recompute);
    store_results(y, res);

    for (auto s : kAllSectors) {
        const auto& prev = state.stocks[index(s)];
        auto& st = next.stocks[index(s)];
        const Money da = res[index(s)].financial_assets;
        const Money dpsi = y[s].net(Item::dPsi);
        st.assets = accumulate(prev.assets, std::span(&da, 1));
        st.liabilities = accumulate(prev.liabilities, std::span(&dpsi, 1));
        st.net_worth = net_worth({"A", st.assets}, {"Psi", st.liabilities}).value;
        const Money dk = y[s].paid(Item::P5) - y[s].paid(Item::K1);
        st.fixed_capital = accumulate(prev.fixed_capital, std::span(&dk, 1));
    }
    return next;
}

std::vector<SimulationState> run(const SimulationState& initial, const Rules& rules, const ScenarioConfig& config)
{
    if (config.horizon < 0)
        throw ConfigurationError("horizon must not be negative");
    for (const auto& s : config.rate_shocks)
        if (s.period <= initial.period || s.period > initial.period + config.horizon)
            throw ConfigurationError("rate shock in period " + std::to_string(s.period) + " is outside the horizon");
    for (const auto& s : config.share_shocks)
        if (s.period <= initial.period || s.period > initial.period + config.horizon)
            throw ConfigurationError("share shock in period " + std::to_string(s.period) + " is outside the horizon");
    for (int p = 1; p <= config.horizon; ++p)
        (void)apply_shocks(rules, config, initial.period + p);

    std::vector<SimulationState> series{initial};
    for (int p = 1; p <= config.horizon; ++p)
        series.push_back(step(series.back(), rules, config));
    return series;
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

int parse_int(std::string_view text, int line, const char* what)
{
    int v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size() || text.empty())
        throw ConfigurationError(line, std::string(what) + " must be an integer, got '" + std::string(text) + "'");
    return v;
}

Ratio parse_factor(std::string_view text, int line)
{
    try {
        return Ratio::parse(text);
    } catch (const std::exception& e) {
        throw ConfigurationError(line, "bad multiplier '" + std::string(text) + "': " + e.what());
    }
}

Ratio parse_growth(std::string_view text, int line)
{
    const bool negative = text.starts_with('-');
    Ratio magnitude = parse_factor(negative ? text.substr(1) : text, line);
    if (!negative)
        return Ratio::from_raw(Ratio::one().raw() + magnitude.raw());
    if (magnitude > Ratio::one())
        throw ConfigurationError(line, "driver below -1");
    return Ratio::from_raw(Ratio::one().raw() - magnitude.raw());
}

template <typename F>
auto code_at(int line, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const std::exception& e) {
        throw ConfigurationError(line, e.what());
    }
}

} // namespace

ScenarioConfig parse_scenario(std::string_view text)
{
    ScenarioConfig config;
    bool have_horizon = false;
    std::set<std::string> seen;
    int line_no = 0;
    for (const auto& raw : split(text, '\n')) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigurationError(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second)
            throw ConfigurationError(line_no, "duplicate key '" + key + "'");

        if (key == "horizon") {
            config.horizon = parse_int(value, line_no, "horizon");
            if (config.horizon < 1)
                throw ConfigurationError(line_no, "horizon must be at least 1");
            have_horizon = true;
            continue;
        }
        if (key == "driver") {
            config.growth = parse_growth(value, line_no);
            continue;
        }
        const auto parts = split(key, '.');
        if (parts.size() < 4 || parts[0] != "shock")
            throw ConfigurationError(line_no, "unknown key '" + key + "'");
        const int period = parse_int(parts[1], line_no, "shock period");
        const Ratio factor = parse_factor(value, line_no);
        if (parts[2] == "rate" && parts.size() == 5) {
            config.rate_shocks.push_back({period, code_at(line_no, [&] { return parse_sector(parts[3]); }),
                                          code_at(line_no, [&] { return parse_item(parts[4]); }), factor});
        } else if (parts[2] == "share" && (parts.size() == 5 || parts.size() == 6)) {
            std::string pool = parts[3];
            const Sector sector = code_at(line_no, [&] { return parse_sector(parts[4]); });
            std::optional<Item> item;
            if (parts.size() == 6)
                item = code_at(line_no, [&] { return parse_item(parts[5]); });
            if (pool == kGoodsPool) {
                if (!item)
                    item = sector == Sector::RS ? Item::P7 : Item::P1;
            } else if (pool == kInvestmentPool) {
                if (!item)
                    item = Item::P5;
            } else {
                const auto kind = code_at(line_no, [&] { return parse_market_kind(pool); });
                pool = pool_name(kind);
                if (!item)
                    item = item_of(kind);
            }
            config.share_shocks.push_back({period, pool, {sector, *item}, factor});
        } else {
            throw ConfigurationError(line_no, "unknown key '" + key + "'");
        }
    }
    if (!have_horizon)
        throw ConfigurationError("missing horizon");
    return config;
}

Ratio parse_driver(std::string_view text)
{
    return parse_growth(trim(text), 0);
}

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::vector<Quantity> quantities(const SimulationState& state)
{
    const auto& y = state.flows;
    std::vector<Quantity> out;
    auto name = [](Sector s, std::string_view what) { return std::string(to_string(s)) + "." + std::string(what); };
    for (auto s : kAllSectors) {
        const auto& l = y[s];
        const std::vector<Item> items = is_domestic(s)
                                            ? std::vector<Item>{Item::B1G, Item::B1N, Item::B13N, Item::B5N,
                                                                Item::B6N, Item::B8N, Item::B9,   Item::dA}
                                            : std::vector<Item>{Item::B11, Item::B12, Item::B9, Item::dA};
        if (is_domestic(s)) {
            out.push_back({name(s, "P1"), l.received(Item::P1)});
            out.push_back({name(s, "P5"), l.paid(Item::P5)});
        }
        for (auto item : items)
            out.push_back({name(s, to_string(item)), l.net(item)});
    }
    out.push_back({"HS.P31", y[Sector::HS].paid(Item::P31)});
    out.push_back({"goods.pool", goods_pool_total(y)});
    for (auto k : kAllMarketKinds)
        out.push_back({"market." + pool_name(k), market_system(y, k, Mode::recompute).total_payments()});
    const auto g = gdp_breakdown(y, Mode::recompute);
    out.push_back({"GDP.expenditure", gdp_expenditure(g)});
    out.push_back({"GDP.income", gdp_income(g)});
    out.push_back({"GDP.value_added", gdp_value_added(g)});
    const auto n = national_income(y, Mode::recompute);
    out.push_back({"national_income.lhs", n.lhs()});
    out.push_back({"national_income.rhs", n.rhs()});
    for (auto s : kAllSectors) {
        const auto& st = state.stocks[index(s)];
        out.push_back({name(s, "A"), st.assets});
        out.push_back({name(s, "Psi"), st.liabilities});
        out.push_back({name(s, "NW"), st.net_worth});
        out.push_back({name(s, "K"), st.fixed_capital});
    }
    return out;
}

void write_series(std::ostream& out, const std::vector<SimulationState>& series)
{
    out << "period,quantity,value\n";
    for (const auto& state : series)
        for (const auto& q : quantities(state))
            out << state.period << ',' << q.name << ',' << q.value.str() << "\n";
}

} // namespace sfcna
