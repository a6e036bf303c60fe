#include "sfcna/ledger.hpp"

#include <stdexcept>

namespace sfcna {

Flow::Flow(Item item, Sector sector, Direction direction, Money value)
    : item_(item), sector_(sector), direction_(direction), value_(value)
{
    const bool is_net = direction == Direction::net;
    if (is_signed_item(item) && !is_net)
        throw std::invalid_argument("item " + std::string(to_string(item)) + " is signed and must use direction net");
    if (!is_signed_item(item) && is_net)
        throw std::invalid_argument("item " + std::string(to_string(item)) + " does not allow direction net");
    if (!is_net && value < Money{})
        throw std::invalid_argument("negative " + std::string(to_string(direction)) + " value for " +
                                    std::string(to_string(sector)) + " " + std::string(to_string(item)));
}

Stock net_worth(const Stock& assets, const Stock& liabilities)
{
    return Stock{"NW", assets.value - liabilities.value};
}

Money AccountNode::total_in() const
{
    Money t;
    for (const auto& e : inflows)
        t += e.value;
    return t;
}

Money AccountNode::total_out() const
{
    Money t;
    for (const auto& e : outflows)
        t += e.value;
    return t;
}

AccountNode AccountNode::closed() const
{
    AccountNode out = *this;
    Money b = balance(*this);
    if (b > Money{})
        out.outflows.push_back({balancing_symbol, b});
    else if (b < Money{})
        out.inflows.push_back({balancing_symbol, -b});
    return out;
}

Money AccountNode::signed_value(std::string_view symbol) const
{
    Money v;
    for (const auto& e : inflows)
        if (e.symbol == symbol)
            v += e.value;
    for (const auto& e : outflows)
        if (e.symbol == symbol)
            v -= e.value;
    return v;
}

Money balance(const AccountNode& node) { return node.total_in() - node.total_out(); }

Money accumulate(Money stock0, std::span<const Money> net_flows, int dt_years)
{
    if (dt_years <= 0)
        throw std::domain_error("accumulation step must be positive");
    Money s = stock0;
    for (auto f : net_flows)
        s += f * dt_years;
    return s;
}

void SectorLedger::set(Item item, Direction direction, Money value)
{
    Flow checked(item, sector_, direction, value);
    values_[{item, direction}] = checked.value();
}

void SectorLedger::add(Item item, Direction direction, Money value)
{
    set(item, direction, get(item, direction) + value);
}

bool SectorLedger::has(Item item, Direction direction) const { return values_.contains({item, direction}); }

Money SectorLedger::get(Item item, Direction direction) const
{
    auto it = values_.find({item, direction});
    return it == values_.end() ? Money{} : it->second;
}

Money SectorLedger::net(Item item) const
{
    if (is_signed_item(item))
        return get(item, Direction::net);
    return received(item) - paid(item);
}

std::vector<Flow> SectorLedger::flows() const
{
    std::vector<Flow> out;
    out.reserve(values_.size());
    for (const auto& [key, value] : values_)
        out.emplace_back(key.first, sector_, key.second, value);
    return out;
}

Provenance EconomyYear::provenance_of(Sector s, Item item, Direction d) const
{
    auto it = provenance.find({s, item, d});
    return it == provenance.end() ? Provenance::read : it->second;
}

} // namespace sfcna
