#include "sfcna/markets.hpp"

namespace sfcna {

namespace {

constexpr std::array<std::string_view, 14> kKindNames{"D11", "D12", "D5", "D4", "D61+D62", "D39", "D31",
                                                      "D29", "D21", "D7", "D9", "K2",      "B9",  "D8"};

} // namespace

Item item_of(MarketKind k)
{
    switch (k) {
    case MarketKind::D11: return Item::D11;
    case MarketKind::D12: return Item::D12;
    case MarketKind::D5: return Item::D5;
    case MarketKind::D4: return Item::D4;
    case MarketKind::D6: return Item::D6;
    case MarketKind::D39: return Item::D39;
    case MarketKind::D31: return Item::D31;
    case MarketKind::D29: return Item::D29;
    case MarketKind::D21: return Item::D21;
    case MarketKind::D7: return Item::D7;
    case MarketKind::D9: return Item::D9;
    case MarketKind::K2: return Item::K2;
    case MarketKind::B9: return Item::B9;
    case MarketKind::D8: return Item::D8;
    }
    throw std::logic_error("unreachable market kind");
}

std::string_view to_string(MarketKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

MarketKind parse_market_kind(std::string_view text)
{
    if (text == "D6")
        return MarketKind::D6;
    for (auto k : kAllMarketKinds)
        if (to_string(k) == text)
            return k;
    throw UnknownCode("unknown market kind '" + std::string(text) + "'");
}

Money MarketSystem::attributed_payments() const { return sum(payments); }
Money MarketSystem::attributed_receipts() const { return sum(receipts); }

ConservationViolation::ConservationViolation(MarketKind kind, Money residual)
    : std::runtime_error("conservation violation in " + std::string(to_string(kind)) + ": residual " +
                         residual.str()),
      kind_(kind), residual_(residual)
{
}

Money clear(const MarketSystem& system)
{
    if (system.kind == MarketKind::D21)
        return system.attributed_receipts() - system.attributed_payments();
    if (system.kind == MarketKind::D31)
        return system.attributed_payments() - system.attributed_receipts();
    Money residual = system.total_payments() - system.total_receipts();
    if (!residual.is_zero())
        throw ConservationViolation(system.kind, residual);
    return residual;
}

MarketSystem market_system(const EconomyYear& year, MarketKind kind, Mode mode)
{
    MarketSystem m;
    m.kind = kind;
    const Item item = item_of(kind);
    std::array<SectorResult, 5> res{};
    if (kind == MarketKind::B9)
        res = results(year, mode);
    for (auto s : kAllSectors) {
        const auto i = index(s);
        if (is_signed(kind)) {
            Money v = kind == MarketKind::B9 ? res[i].net_lending : year[s].net(item);
            // D8 is an inflow to the sector when positive; K2 and B9 are outflows.
            if (kind == MarketKind::D8)
                v = -v;
            if (v > Money{})
                m.payments[i] = v;
            else
                m.receipts[i] = -v;
        } else {
            m.payments[i] = year[s].paid(item);
            m.receipts[i] = year[s].received(item);
        }
    }
    if (kind == MarketKind::D21)
        m.unattributed_payments = m.attributed_receipts() - m.attributed_payments();
    if (kind == MarketKind::D31)
        m.unattributed_receipts = m.attributed_payments() - m.attributed_receipts();
    return m;
}

std::vector<MarketSystem> market_systems(const EconomyYear& year, Mode mode)
{
    std::vector<MarketSystem> out;
    out.reserve(kAllMarketKinds.size());
    for (auto k : kAllMarketKinds)
        out.push_back(market_system(year, k, mode));
    return out;
}

std::vector<Violation> check_all(const EconomyYear& year, Mode mode)
{
    std::vector<Violation> out;
    for (const auto& m : market_systems(year, mode)) {
        if (!is_zero_sum(m.kind))
            continue;
        Money residual = m.total_payments() - m.total_receipts();
        if (residual.is_zero())
            continue;
        Violation v{m.kind, residual, {}};
        for (auto s : kAllSectors)
            if (!m.payments[index(s)].is_zero() || !m.receipts[index(s)].is_zero())
                v.entries.push_back({s, m.payments[index(s)], m.receipts[index(s)]});
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace sfcna
