#include "sfcna/identities.hpp"

#include "sfcna/markets.hpp"

#include <stdexcept>

namespace sfcna {

Money gdp_expenditure(const GdpBreakdown& b) { return b.consumption + b.investment + b.government + (b.exports - b.imports); }

Money gdp_income(const GdpBreakdown& b)
{
    return b.operating_surplus + b.wages + b.employer_contributions + b.production_taxes + b.fixed_capital -
           b.subsidies;
}

Money gdp_value_added(const GdpBreakdown& b)
{
    return b.output + b.net_product_taxes - b.intermediate_consumption + b.intermediate_sales - b.intermediate_sales;
}

Money intermediate_residual(const GdpBreakdown& b) { return b.intermediate_sales - b.intermediate_consumption; }

GdpBreakdown gdp_breakdown(const EconomyYear& year, Mode mode)
{
    const auto res = results(year, mode);
    GdpBreakdown b;
    bool any_z = false;
    for (auto s : kDomesticSectors) {
        const auto& l = year[s];
        b.consumption += l.paid(Item::P31);
        b.investment += l.paid(Item::P5);
        b.government += l.paid(Item::P32);
        b.operating_surplus += res[index(s)].operating_surplus;
        b.wages += l.paid(Item::D11);
        b.employer_contributions += l.paid(Item::D12);
        b.fixed_capital += l.paid(Item::K1);
        b.output += household_inputs(l).production.output.resolve();
        b.intermediate_consumption += l.paid(Item::P2);
        if (l.has(Item::P2, Direction::received)) {
            any_z = true;
            b.intermediate_sales += l.received(Item::P2);
        }
    }
    if (!any_z)
        b.intermediate_sales = b.intermediate_consumption;
    const auto& rs = year[Sector::RS];
    b.exports = rs.paid(Item::P6);
    b.imports = rs.received(Item::P7);
    for (auto s : {Sector::GS, Sector::RS}) {
        b.production_taxes += year[s].received(Item::D21) + year[s].received(Item::D29);
        b.subsidies += year[s].paid(Item::D31) + year[s].paid(Item::D39);
    }
    b.net_product_taxes = clear(market_system(year, MarketKind::D21)) - clear(market_system(year, MarketKind::D31));
    return b;
}

Money NationalIncome::lhs() const
{
    return operating_surplus + wages_received + employer_contributions_received + production_taxes_received +
           transfers_net + social_net + property_income_net - subsidies_paid + income_taxes_net +
           pension_adjustment_net;
}

Money NationalIncome::rhs() const { return consumption + government + saving; }

NationalIncome national_income(const EconomyYear& year, Mode mode)
{
    const auto res = results(year, mode);
    NationalIncome n;
    for (auto s : kDomesticSectors) {
        const auto& l = year[s];
        n.operating_surplus += res[index(s)].operating_surplus;
        n.transfers_net += l.net(Item::D7);
        n.social_net += l.net(Item::D6);
        n.property_income_net += l.net(Item::D4);
        n.income_taxes_net += l.net(Item::D5);
        n.pension_adjustment_net += l.net(Item::D8);
        n.consumption += l.paid(Item::P31);
        n.government += l.paid(Item::P32);
        n.saving += res[index(s)].saving;
    }
    const auto& hs = year[Sector::HS];
    const auto& gs = year[Sector::GS];
    n.wages_received = hs.received(Item::D11);
    n.employer_contributions_received = hs.received(Item::D12);
    n.production_taxes_received = gs.received(Item::D21) + gs.received(Item::D29);
    n.subsidies_paid = gs.paid(Item::D31) + gs.paid(Item::D39);
    return n;
}

std::pair<Money, Money> national_income_identity(const EconomyYear& year, Mode mode)
{
    auto n = national_income(year, mode);
    return {n.lhs(), n.rhs()};
}

double real_gdp(Money nominal, double average_price)
{
    if (!(average_price > 0.0))
        throw std::domain_error("average price must be positive");
    return static_cast<double>(nominal.cents()) / 100.0 / average_price;
}

} // namespace sfcna
