#pragma once

#include "sfcna/ingest.hpp"
#include "sfcna/markets.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sfcna {

class CalibrationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid scenario or rule set, raised before any period is stepped.
class ConfigurationError : public std::runtime_error {
public:
    ConfigurationError(int line, const std::string& message);
    explicit ConfigurationError(const std::string& message);
    int line() const { return line_; }

private:
    int line_ = 0;
};

/// A flow the economy cannot finance, e.g. a negative investment residual.
class SimulationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Receiver {
    Sector sector;
    Item item;
    friend auto operator<=>(const Receiver&, const Receiver&) = default;
};

inline constexpr std::string_view kGoodsPool = "GOODS";
inline constexpr std::string_view kInvestmentPool = "INVESTMENT";

/// How one pool is handed out. Pools are the goods market ("GOODS":
/// composites, imports, product taxes and subsidies), the split of
/// own investment ("INVESTMENT") and the money markets, named by their
/// market kind ("D11", "D61+D62", "K2", ...).
struct AllocationRule {
    std::string pool;
    std::vector<Receiver> receivers;
    std::vector<Ratio> shares;

    /// Throws ConfigurationError unless shares are non-negative and sum
    /// to exactly one.
    void validate() const;
};

enum class RateBase {
    output,            // the paying sector's output composite
    goods_pool,        // total value of the goods market
    disposable_income, // the paying sector's disposable income
};

std::string_view to_string(RateBase base);

/// Payment = value * base. For K2 the payment is a positive net
/// acquisition, for D8 a negative adjustment.
struct BehaviouralRate {
    Sector sector;
    Item item;
    RateBase base;
    Ratio value;
};

struct Rules {
    std::vector<AllocationRule> allocations;
    std::vector<BehaviouralRate> rates;
    std::vector<std::string> warnings;

    const AllocationRule* allocation(std::string_view pool) const;
    AllocationRule* allocation(std::string_view pool);
    const BehaviouralRate* rate(Sector sector, Item item) const;
};

/// Money markets run through the pool-and-allocate step.
inline constexpr std::array<MarketKind, 11> kSimulatedMarkets{
    MarketKind::D11, MarketKind::D12, MarketKind::D29, MarketKind::D39, MarketKind::D4, MarketKind::D5,
    MarketKind::D6,  MarketKind::D7,  MarketKind::D9,  MarketKind::K2,  MarketKind::D8};

/// Shares are mean historical fractions of each pool; rates are mean
/// historical ratios to their base. Household consumption is a rate on
/// household disposable income; own investment of domestic sectors is
/// the goods-market residual, split by the INVESTMENT shares.
Rules calibrate(const Dataset& history);

struct SectorStocks {
    Money assets;       // A
    Money liabilities;  // Psi
    Money net_worth;    // NW = A - Psi
    Money fixed_capital;
};

struct SimulationState {
    int period = 0;
    EconomyYear flows;
    std::array<SectorStocks, 5> stocks{};
};

/// Period 0 state: the flows of a dataset year (balancing items
/// recomputed) and zero stocks.
SimulationState initial_state(const EconomyYear& flows);

struct RateShock {
    int period;
    Sector sector;
    Item item;
    Ratio factor;
};

struct ShareShock {
    int period;
    std::string pool;
    Receiver receiver;
    Ratio factor;
};

struct ScenarioConfig {
    int horizon = 1;
    Ratio growth = Ratio::one(); // 1 + driver
    std::vector<RateShock> rate_shocks;
    std::vector<ShareShock> share_shocks;
};

/// Key-value text, one `key = value` per line, '#' comments:
///
///   horizon = 20
///   driver = 0.02
///   shock.2.rate.HS.D5 = 1.1
///   shock.3.share.D11.HS = 0.9
///   shock.3.share.D11.RS = 4.0
///   shock.4.share.GOODS.NFS.P1 = 1.01
ScenarioConfig parse_scenario(std::string_view text);
/// "0.02" -> 1.02, "-0.01" -> 0.99.
Ratio parse_driver(std::string_view text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Rules in force in `period`. Throws ConfigurationError when a shock
/// names a missing rate or receiver or leaves a pool's shares off one.
Rules apply_shocks(const Rules& rules, const ScenarioConfig& config, int period);

/// Advances one period: grows the goods pool by the driver, allocates
/// every pool in full, evaluates all chains and accumulates stocks.
SimulationState step(const SimulationState& state, const Rules& rules, const ScenarioConfig& config);

/// [initial, period 1, ..., period horizon]. Every shock period is
/// checked before the first step.
std::vector<SimulationState> run(const SimulationState& initial, const Rules& rules, const ScenarioConfig& config);

/// Total value passing through the goods market in a year.
Money goods_pool_total(const EconomyYear& year);

struct Quantity {
    std::string name;
    Money value;
};

/// Balancing items, market totals, GDP three ways, national income sides,
/// output composites and stocks of one state, in a fixed order.
std::vector<Quantity> quantities(const SimulationState& state);

/// CSV with header `period,quantity,value`.
void write_series(std::ostream& out, const std::vector<SimulationState>& series);

} // namespace sfcna
