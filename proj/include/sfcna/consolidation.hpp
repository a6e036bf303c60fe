#pragma once

#include "sfcna/ledger.hpp"

#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfcna {

struct UnitFlow {
    Flow flow;
    /// Id of the trading partner when it belongs to the same population.
    std::optional<std::string> counterparty;
};

/// One micro unit (a firm, a household, an NPISH) before aggregation.
/// NPISH units are tagged with Sector::HS.
struct MicroUnit {
    std::string id;
    Sector sector = Sector::NFS;
    std::vector<UnitFlow> flows;

    /// Received minus paid over directional flows plus signed flows, with
    /// balancing items excluded: the unit's net saving implied by its flows.
    Money flow_balance() const;
};

class PairingError : public std::runtime_error {
public:
    PairingError(std::string unit, std::string counterparty, const std::string& detail);
    const std::string& unit() const { return unit_; }
    const std::string& counterparty() const { return counterparty_; }

private:
    std::string unit_;
    std::string counterparty_;
};

/// Merges units into one, cancelling every flow whose counterparty is
/// inside the set against its mirror flow (same item, same value,
/// opposite direction, pointing back). Flows with outside counterparties
/// are kept with their counterparty ids. Throws PairingError for an
/// intra-set flow without a mirror and std::invalid_argument when the
/// units span several sectors.
MicroUnit merge(std::span<const MicroUnit> units, std::string id);

/// Points every counterparty in `ids` at `replacement`.
void relabel_counterparties(MicroUnit& unit, const std::set<std::string>& ids, const std::string& replacement);

/// Sector ledger of a closed population: all intra-sector flows must
/// pair up and cancel.
SectorLedger consolidate(std::span<const MicroUnit> units);

/// APIA + SDIA + UDIA folded into one account with the O -> BPI -> DI
/// hand-offs removed and zero entries dropped; its balance is net saving.
AccountNode consolidate_asua(std::span<const AccountNode> chain);

} // namespace sfcna
