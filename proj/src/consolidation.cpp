#include "sfcna/consolidation.hpp"

#include <map>
#include <tuple>

namespace sfcna {

Money MicroUnit::flow_balance() const
{
    Money b;
    for (const auto& uf : flows) {
        const auto& f = uf.flow;
        if (is_balancing_item(f.item()))
            continue;
        switch (f.direction()) {
        case Direction::received: b += f.value(); break;
        case Direction::paid: b -= f.value(); break;
        case Direction::net:
            // K2 and dPsi-type flows leave the unit when positive; D8 enters.
            if (f.item() == Item::D8)
                b += f.value();
            else
                b -= f.value();
            break;
        }
    }
    return b;
}

PairingError::PairingError(std::string unit, std::string counterparty, const std::string& detail)
    : std::runtime_error("unpaired intra-sector flow between '" + unit + "' and '" + counterparty + "': " + detail),
      unit_(std::move(unit)), counterparty_(std::move(counterparty))
{
}

namespace {

Direction opposite(Direction d)
{
    switch (d) {
    case Direction::received: return Direction::paid;
    case Direction::paid: return Direction::received;
    case Direction::net: return Direction::net;
    }
    return d;
}

// (owner, counterparty, item, direction, cents)
using MirrorKey = std::tuple<std::string, std::string, Item, Direction, std::int64_t>;

} // namespace

MicroUnit merge(std::span<const MicroUnit> units, std::string id)
{
    MicroUnit out;
    out.id = std::move(id);
    if (units.empty())
        return out;
    out.sector = units.front().sector;

    std::set<std::string> members;
    for (const auto& u : units) {
        if (u.sector != out.sector)
            throw std::invalid_argument("cannot consolidate unit '" + u.id + "' of sector " +
                                        std::string(to_string(u.sector)) + " with sector " +
                                        std::string(to_string(out.sector)));
        if (!members.insert(u.id).second)
            throw std::invalid_argument("duplicate unit id '" + u.id + "'");
    }

    // Count the intra-set flows on each side, then require every flow to
    // find a mirror with the same multiplicity.
    std::map<MirrorKey, int> pending;
    for (const auto& u : units)
        for (const auto& uf : u.flows)
            if (uf.counterparty && members.contains(*uf.counterparty)) {
                if (uf.flow.direction() == Direction::net)
                    throw PairingError(u.id, *uf.counterparty, "net items cannot be paired");
                if (*uf.counterparty == u.id)
                    throw PairingError(u.id, u.id, "flow with itself");
                ++pending[{u.id, *uf.counterparty, uf.flow.item(), uf.flow.direction(), uf.flow.value().cents()}];
            }
    for (const auto& [key, count] : pending) {
        const auto& [owner, partner, item, dir, cents] = key;
        auto it = pending.find({partner, owner, item, opposite(dir), cents});
        const int mirrored = it == pending.end() ? 0 : it->second;
        if (mirrored != count)
            throw PairingError(owner, partner,
                               std::string(to_string(item)) + " " + std::string(to_string(dir)) + " " +
                                   Money::from_cents(cents).str() + " has no matching " +
                                   std::string(to_string(opposite(dir))) + " entry");
    }

    for (const auto& u : units)
        for (const auto& uf : u.flows)
            if (!(uf.counterparty && members.contains(*uf.counterparty)))
                out.flows.push_back(uf);
    return out;
}

void relabel_counterparties(MicroUnit& unit, const std::set<std::string>& ids, const std::string& replacement)
{
    for (auto& uf : unit.flows)
        if (uf.counterparty && ids.contains(*uf.counterparty))
            uf.counterparty = replacement;
}

SectorLedger consolidate(std::span<const MicroUnit> units)
{
    MicroUnit merged = merge(units, "consolidated");
    SectorLedger ledger(merged.sector);
    for (const auto& uf : merged.flows)
        ledger.add(uf.flow.item(), uf.flow.direction(), uf.flow.value());
    return ledger;
}

AccountNode consolidate_asua(std::span<const AccountNode> chain)
{
    AccountNode asua{"ASUA", {}, {}, "B8N"};
    std::set<std::string> handoffs;
    for (const auto& n : chain)
        if (n.name == "APIA" || n.name == "SDIA")
            handoffs.insert(n.balancing_symbol);
    bool found = false;
    for (const auto& n : chain) {
        if (n.name != "APIA" && n.name != "SDIA" && n.name != "UDIA")
            continue;
        found = true;
        for (const auto& e : n.inflows)
            if (!handoffs.contains(e.symbol) && !e.value.is_zero())
                asua.inflows.push_back(e);
        for (const auto& e : n.outflows)
            if (!handoffs.contains(e.symbol) && !e.value.is_zero())
                asua.outflows.push_back(e);
    }
    if (!found)
        throw std::invalid_argument("chain has no APIA, SDIA or UDIA account");
    return asua;
}

} // namespace sfcna
