#pragma once

#include "sfcna/ledger.hpp"
#include "sfcna/sector_accounts.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfcna {

/// Inter-sector payment systems. D21 and D31 are open: one side is
/// reported only in aggregate. D8 is carried as an extra signed
/// zero-sum system.
enum class MarketKind { D11, D12, D5, D4, D6, D39, D31, D29, D21, D7, D9, K2, B9, D8 };

inline constexpr std::array<MarketKind, 14> kAllMarketKinds{
    MarketKind::D11, MarketKind::D12, MarketKind::D5, MarketKind::D4,  MarketKind::D6, MarketKind::D39, MarketKind::D31,
    MarketKind::D29, MarketKind::D21, MarketKind::D7, MarketKind::D9, MarketKind::K2, MarketKind::B9,  MarketKind::D8};

constexpr bool is_zero_sum(MarketKind k) { return k != MarketKind::D21 && k != MarketKind::D31; }
/// Systems whose sector entries are signed net values.
constexpr bool is_signed(MarketKind k) { return k == MarketKind::K2 || k == MarketKind::B9 || k == MarketKind::D8; }

Item item_of(MarketKind k);
std::string_view to_string(MarketKind k);
MarketKind parse_market_kind(std::string_view text);

struct MarketSystem {
    MarketKind kind = MarketKind::D11;
    std::array<Money, 5> payments{};
    std::array<Money, 5> receipts{};
    /// Aggregate flows SNA does not attribute to a sector (D21 payers,
    /// D31 recipients).
    Money unattributed_payments;
    Money unattributed_receipts;

    Money attributed_payments() const;
    Money attributed_receipts() const;
    Money total_payments() const { return attributed_payments() + unattributed_payments; }
    Money total_receipts() const { return attributed_receipts() + unattributed_receipts; }
};

class ConservationViolation : public std::runtime_error {
public:
    ConservationViolation(MarketKind kind, Money residual);
    MarketKind kind() const { return kind_; }
    Money residual() const { return residual_; }

private:
    MarketKind kind_;
    Money residual_;
};

/// Zero-sum kinds: sum of payments minus sum of receipts, which must be
/// zero (ConservationViolation otherwise). Open kinds: the unattributed
/// one-sided total.
Money clear(const MarketSystem& system);

/// Collects one system from the sector ledgers. Signed systems split each
/// sector's net value into a payment (K2 purchases, B9 lending, D8
/// outflows) or a receipt.
MarketSystem market_system(const EconomyYear& year, MarketKind kind, Mode mode = Mode::reported);
std::vector<MarketSystem> market_systems(const EconomyYear& year, Mode mode = Mode::reported);

struct ViolationEntry {
    Sector sector;
    Money paid;
    Money received;
};

struct Violation {
    MarketKind kind;
    Money residual;
    std::vector<ViolationEntry> entries;
};

/// Empty iff every zero-sum system clears.
std::vector<Violation> check_all(const EconomyYear& year, Mode mode = Mode::reported);

} // namespace sfcna
