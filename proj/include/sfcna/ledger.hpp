#pragma once

#include "sfcna/codes.hpp"
#include "sfcna/money.hpp"

#include <array>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sfcna {

/// Atomic ledger entry. Magnitudes are non-negative unless the
/// direction is net, which is reserved for the signed item set.
class Flow {
public:
    Flow(Item item, Sector sector, Direction direction, Money value);

    Item item() const { return item_; }
    Sector sector() const { return sector_; }
    Direction direction() const { return direction_; }
    Money value() const { return value_; }

    friend bool operator==(const Flow&, const Flow&) = default;

private:
    Item item_;
    Sector sector_;
    Direction direction_;
    Money value_;
};

struct Stock {
    std::string label;
    Money value;
};

/// NW = A - Psi.
Stock net_worth(const Stock& assets, const Stock& liabilities);

struct Entry {
    std::string symbol;
    Money value;

    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Kirchhoff node: money in equals money out once the balancing item is
/// counted. The balancing value is always derived, never stored.
struct AccountNode {
    std::string name;
    std::vector<Entry> inflows;
    std::vector<Entry> outflows;
    std::string balancing_symbol;

    Money total_in() const;
    Money total_out() const;
    /// Copy with the balancing item attached on the side that closes it.
    AccountNode closed() const;
    /// Value of the named entry on either side (inflows positive,
    /// outflows negative); zero when absent.
    Money signed_value(std::string_view symbol) const;
};

/// Sum of inflows minus sum of outflows.
Money balance(const AccountNode& node);

/// Discrete stock-flow accumulation: stock0 + sum(flow * dt).
Money accumulate(Money stock0, std::span<const Money> net_flows, int dt_years = 1);

/// All values of one sector for one year, keyed by item and direction.
class SectorLedger {
public:
    using Key = std::pair<Item, Direction>;

    SectorLedger() = default;
    explicit SectorLedger(Sector sector) : sector_(sector) {}

    Sector sector() const { return sector_; }

    /// Validates through Flow; overwrites any existing value.
    void set(Item item, Direction direction, Money value);
    void add(Item item, Direction direction, Money value);
    bool has(Item item, Direction direction) const;
    /// Zero when absent.
    Money get(Item item, Direction direction) const;
    Money received(Item item) const { return get(item, Direction::received); }
    Money paid(Item item) const { return get(item, Direction::paid); }
    /// received - paid for directional items, the stored value for
    /// signed items.
    Money net(Item item) const;

    const std::map<Key, Money>& values() const { return values_; }
    std::vector<Flow> flows() const;

    friend bool operator==(const SectorLedger&, const SectorLedger&) = default;

private:
    Sector sector_ = Sector::NFS;
    std::map<Key, Money> values_;
};

enum class Provenance { read, derived };

struct LedgerKey {
    Sector sector;
    Item item;
    Direction direction;
    friend auto operator<=>(const LedgerKey&, const LedgerKey&) = default;
};

/// Five sector ledgers for one accounting year.
struct EconomyYear {
    int year = 0;
    std::array<SectorLedger, 5> sectors{SectorLedger(Sector::NFS), SectorLedger(Sector::FFS),
                                        SectorLedger(Sector::HS), SectorLedger(Sector::GS),
                                        SectorLedger(Sector::RS)};
    /// Entries not listed here are treated as read from the source.
    std::map<LedgerKey, Provenance> provenance;

    SectorLedger& operator[](Sector s) { return sectors[index(s)]; }
    const SectorLedger& operator[](Sector s) const { return sectors[index(s)]; }

    Provenance provenance_of(Sector s, Item item, Direction d) const;

    friend bool operator==(const EconomyYear& a, const EconomyYear& b)
    {
        return a.year == b.year && a.sectors == b.sectors;
    }
};

} // namespace sfcna
