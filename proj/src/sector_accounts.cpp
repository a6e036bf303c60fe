#include "sfcna/sector_accounts.hpp"

#include <initializer_list>
#include <stdexcept>
#include <string>

namespace sfcna {

namespace {

struct Named {
    const char* name;
    Money value;
};

void require_non_negative(std::initializer_list<Named> fields)
{
    for (const auto& f : fields)
        if (f.value < Money{})
            throw std::invalid_argument(std::string("negative value for ") + f.name + ": " + f.value.str());
}

void validate_production(const ProductionInputs& p)
{
    if (p.output.components) {
        const auto& c = *p.output.components;
        require_non_negative({{"C", c.consumption},
                              {"G", c.collective},
                              {"I", c.investment},
                              {"Z", c.intermediate_sales},
                              {"X", c.exports},
                              {"M", c.imports}});
    }
    require_non_negative({{"H", p.intermediate},
                          {"P", p.fixed_capital},
                          {"W", p.wages_paid},
                          {"T_S", p.employer_contributions_paid},
                          {"T_P1", p.product_taxes_paid},
                          {"T_P2", p.production_taxes_paid},
                          {"B_P1", p.product_subsidies_received},
                          {"B_P2", p.production_subsidies_received}});
    (void)p.output.resolve();
}

void validate_transfers(const TransferInputs& t)
{
    require_non_negative({{"PI_R", t.property_income_received},
                          {"PI_P", t.property_income_paid},
                          {"B_SR", t.social_received},
                          {"B_SP", t.social_paid},
                          {"N_R", t.transfers_received},
                          {"N_P", t.transfers_paid},
                          {"T_I", t.income_taxes_paid}});
}

void validate_capital(const CapitalInputs& c)
{
    require_non_negative({{"B_CR", c.capital_transfers_received},
                          {"B_CP", c.capital_transfers_paid},
                          {"I_O", c.own_investment}});
}

// Operating surplus before sector-specific GIA items.
Money generic_surplus(const ProductionInputs& p)
{
    Money nva = production_account(p.output.resolve(), p.intermediate, p.fixed_capital).second;
    return nva + p.product_subsidies_received + p.production_subsidies_received - p.wages_paid -
           p.employer_contributions_paid - p.product_taxes_paid - p.production_taxes_paid;
}

Money net_transfers(const TransferInputs& t)
{
    return t.social_received - t.social_paid + t.transfers_received - t.transfers_paid - t.income_taxes_paid;
}

void close_capital(SectorResult& r, Money fixed_capital, const CapitalInputs& c)
{
    r.net_lending = r.saving + fixed_capital + c.capital_transfers_received - c.capital_transfers_paid -
                    c.own_investment - c.nonproduced_net;
    r.financial_assets = r.net_lending + c.liabilities_net;
}

void fill_production(SectorResult& r, const ProductionInputs& p)
{
    std::tie(r.gva, r.nva) = production_account(p.output.resolve(), p.intermediate, p.fixed_capital);
    r.operating_surplus = generic_surplus(p);
}

// Node builders. Symbols are ledger item codes; balancing symbols are the
// B-codes that the next account receives.

std::vector<AccountNode> production_nodes(const ProductionInputs& p)
{
    AccountNode pa{"PA", {{"P1", p.output.resolve()}}, {{"P2", p.intermediate}}, "B1G"};
    AccountNode pa_net{"PA-net", {{"B1G", balance(pa)}}, {{"K1", p.fixed_capital}}, "B1N"};
    AccountNode gia{"GIA",
                    {{"B1N", balance(pa_net)},
                     {"D31", p.product_subsidies_received},
                     {"D39", p.production_subsidies_received}},
                    {{"D11", p.wages_paid},
                     {"D12", p.employer_contributions_paid},
                     {"D21", p.product_taxes_paid},
                     {"D29", p.production_taxes_paid}},
                    "B13N"};
    return {pa, pa_net, gia};
}

void append_capital_nodes(std::vector<AccountNode>& nodes, Money saving, Money fixed_capital, const CapitalInputs& c)
{
    AccountNode ca{"CA",
                   {{"B8N", saving}, {"K1", fixed_capital}, {"D9", c.capital_transfers_received}},
                   {{"D9", c.capital_transfers_paid}, {"P5", c.own_investment}, {"K2", c.nonproduced_net}},
                   "B9"};
    AccountNode fa{"FA", {{"B9", balance(ca)}, {"dPsi", c.liabilities_net}}, {}, "dA"};
    nodes.push_back(ca);
    nodes.push_back(fa);
}

} // namespace

Money OutputComponents::composite() const
{
    return consumption + collective + investment + intermediate_sales + exports - imports;
}

Money ProductionValue::resolve() const
{
    if (composite && components && *composite != components->composite())
        throw std::invalid_argument("output composite " + composite->str() + " disagrees with its components " +
                                    components->composite().str());
    if (composite)
        return *composite;
    if (components)
        return components->composite();
    return Money{};
}

void FirmSectorInputs::validate() const
{
    validate_production(production);
    validate_transfers(transfers);
    validate_capital(capital);
}

void HouseholdSectorInputs::validate() const
{
    validate_production(production);
    validate_transfers(transfers);
    validate_capital(capital);
    require_non_negative({{"W_T", wages_received},
                          {"T_SR", employer_contributions_received},
                          {"C_1", final_consumption}});
}

void GovernmentSectorInputs::validate() const
{
    validate_production(production);
    validate_transfers(transfers);
    validate_capital(capital);
    require_non_negative({{"T_PG1R", product_taxes_received},
                          {"T_PG2R", production_taxes_received},
                          {"B_PG1P", product_subsidies_paid},
                          {"B_PG2P", production_subsidies_paid},
                          {"T_IGR", income_taxes_received},
                          {"C_2", individual_consumption},
                          {"G", collective_consumption}});
}

void RestOfWorldInputs::validate() const
{
    require_non_negative({{"M", imports},
                          {"X", exports},
                          {"W_RR", wages_received},
                          {"W_RP", wages_paid},
                          {"T_SRR", employer_contributions_received},
                          {"T_SRP", employer_contributions_paid},
                          {"T_PR1R", product_taxes_received},
                          {"T_PR2R", production_taxes_received},
                          {"B_PR1P", product_subsidies_paid},
                          {"B_PR2P", production_subsidies_paid},
                          {"PI_RR", property_income_received},
                          {"PI_RP", property_income_paid},
                          {"B_SRR", social_received},
                          {"B_SRP", social_paid},
                          {"N_RR", transfers_received},
                          {"N_RP", transfers_paid},
                          {"B_CRR", capital_transfers_received},
                          {"B_CRP", capital_transfers_paid}});
}

std::pair<Money, Money> production_account(Money output_value, Money intermediate, Money fixed_capital)
{
    Money gva = output_value - intermediate;
    return {gva, gva - fixed_capital};
}

SectorResult firm_chain(const FirmSectorInputs& in)
{
    in.validate();
    const auto& t = in.transfers;
    SectorResult r;
    fill_production(r, in.production);
    r.primary_income = r.operating_surplus + t.property_income_received - t.property_income_paid;
    r.disposable_income = r.primary_income + net_transfers(t);
    r.saving = r.disposable_income + t.pension_adjustment;
    close_capital(r, in.production.fixed_capital, in.capital);
    return r;
}

SectorResult household_chain(const HouseholdSectorInputs& in)
{
    in.validate();
    const auto& t = in.transfers;
    SectorResult r;
    fill_production(r, in.production);
    r.primary_income = r.operating_surplus + in.wages_received + in.employer_contributions_received +
                       t.property_income_received - t.property_income_paid;
    r.disposable_income = r.primary_income + net_transfers(t) + t.pension_adjustment;
    r.saving = r.disposable_income - in.final_consumption;
    close_capital(r, in.production.fixed_capital, in.capital);
    return r;
}

SectorResult government_chain(const GovernmentSectorInputs& in)
{
    in.validate();
    const auto& t = in.transfers;
    SectorResult r;
    fill_production(r, in.production);
    r.primary_income = r.operating_surplus + in.product_taxes_received + in.production_taxes_received -
                       in.product_subsidies_paid - in.production_subsidies_paid + t.property_income_received -
                       t.property_income_paid;
    r.disposable_income = r.primary_income + net_transfers(t) + in.income_taxes_received;
    r.saving = r.disposable_income + t.pension_adjustment - in.individual_consumption - in.collective_consumption;
    close_capital(r, in.production.fixed_capital, in.capital);
    return r;
}

SectorResult rest_of_world_chain(const RestOfWorldInputs& in)
{
    in.validate();
    SectorResult r;
    r.external_balance = in.imports - in.exports;
    r.balance_of_payments = r.external_balance + (in.wages_received - in.wages_paid) +
                            (in.employer_contributions_received - in.employer_contributions_paid) +
                            (in.property_income_received - in.property_income_paid) + in.product_taxes_received +
                            in.production_taxes_received + (in.social_received - in.social_paid) +
                            (in.transfers_received - in.transfers_paid) - in.product_subsidies_paid -
                            in.production_subsidies_paid;
    r.disposable_income = r.balance_of_payments;
    r.saving = r.balance_of_payments;
    r.net_lending = r.balance_of_payments + in.capital_transfers_received - in.capital_transfers_paid -
                    in.nonproduced_net;
    r.financial_assets = r.net_lending + in.liabilities_net;
    return r;
}

std::vector<AccountNode> firm_accounts(const FirmSectorInputs& in)
{
    in.validate();
    const auto& t = in.transfers;
    auto nodes = production_nodes(in.production);
    AccountNode apia{"APIA",
                     {{"B13N", balance(nodes.back())}, {"D4", t.property_income_received}},
                     {{"D4", t.property_income_paid}},
                     "B5N"};
    AccountNode sdia{"SDIA",
                     {{"B5N", balance(apia)}, {"D6", t.social_received}, {"D7", t.transfers_received}},
                     {{"D6", t.social_paid}, {"D7", t.transfers_paid}, {"D5", t.income_taxes_paid}},
                     "B6N"};
    AccountNode udia{"UDIA", {{"B6N", balance(sdia)}, {"D8", t.pension_adjustment}}, {}, "B8N"};
    nodes.push_back(apia);
    nodes.push_back(sdia);
    nodes.push_back(udia);
    append_capital_nodes(nodes, balance(udia), in.production.fixed_capital, in.capital);
    return nodes;
}

std::vector<AccountNode> household_accounts(const HouseholdSectorInputs& in)
{
    in.validate();
    const auto& t = in.transfers;
    auto nodes = production_nodes(in.production);
    AccountNode apia{"APIA",
                     {{"B13N", balance(nodes.back())},
                      {"D11", in.wages_received},
                      {"D12", in.employer_contributions_received},
                      {"D4", t.property_income_received}},
                     {{"D4", t.property_income_paid}},
                     "B5N"};
    AccountNode sdia{"SDIA",
                     {{"B5N", balance(apia)},
                      {"D6", t.social_received},
                      {"D7", t.transfers_received},
                      {"D8", t.pension_adjustment}},
                     {{"D6", t.social_paid}, {"D7", t.transfers_paid}, {"D5", t.income_taxes_paid}},
                     "B6N"};
    AccountNode udia{"UDIA", {{"B6N", balance(sdia)}}, {{"P31", in.final_consumption}}, "B8N"};
    nodes.push_back(apia);
    nodes.push_back(sdia);
    nodes.push_back(udia);
    append_capital_nodes(nodes, balance(udia), in.production.fixed_capital, in.capital);
    return nodes;
}

std::vector<AccountNode> government_accounts(const GovernmentSectorInputs& in)
{
    in.validate();
    const auto& t = in.transfers;
    auto nodes = production_nodes(in.production);
    AccountNode apia{"APIA",
                     {{"B13N", balance(nodes.back())},
                      {"D21", in.product_taxes_received},
                      {"D29", in.production_taxes_received},
                      {"D4", t.property_income_received}},
                     {{"D31", in.product_subsidies_paid},
                      {"D39", in.production_subsidies_paid},
                      {"D4", t.property_income_paid}},
                     "B5N"};
    AccountNode sdia{"SDIA",
                     {{"B5N", balance(apia)},
                      {"D5", in.income_taxes_received},
                      {"D6", t.social_received},
                      {"D7", t.transfers_received}},
                     {{"D5", t.income_taxes_paid}, {"D6", t.social_paid}, {"D7", t.transfers_paid}},
                     "B6N"};
    AccountNode udia{"UDIA",
                     {{"B6N", balance(sdia)}, {"D8", t.pension_adjustment}},
                     {{"P31", in.individual_consumption}, {"P32", in.collective_consumption}},
                     "B8N"};
    nodes.push_back(apia);
    nodes.push_back(sdia);
    nodes.push_back(udia);
    append_capital_nodes(nodes, balance(udia), in.production.fixed_capital, in.capital);
    return nodes;
}

std::vector<AccountNode> rest_of_world_accounts(const RestOfWorldInputs& in)
{
    in.validate();
    AccountNode gia{"GIA", {{"P7", in.imports}}, {{"P6", in.exports}}, "B11"};
    AccountNode asua{"ASUA",
                     {{"B11", balance(gia)},
                      {"D11", in.wages_received},
                      {"D12", in.employer_contributions_received},
                      {"D4", in.property_income_received},
                      {"D21", in.product_taxes_received},
                      {"D29", in.production_taxes_received},
                      {"D6", in.social_received},
                      {"D7", in.transfers_received}},
                     {{"D11", in.wages_paid},
                      {"D12", in.employer_contributions_paid},
                      {"D4", in.property_income_paid},
                      {"D31", in.product_subsidies_paid},
                      {"D39", in.production_subsidies_paid},
                      {"D6", in.social_paid},
                      {"D7", in.transfers_paid}},
                     "B12"};
    AccountNode ca{"CA",
                   {{"B12", balance(asua)}, {"D9", in.capital_transfers_received}},
                   {{"D9", in.capital_transfers_paid}, {"K2", in.nonproduced_net}},
                   "B9"};
    AccountNode fa{"FA", {{"B9", balance(ca)}, {"dPsi", in.liabilities_net}}, {}, "dA"};
    return {gia, asua, ca, fa};
}

SectorResult result_from_nodes(const std::vector<AccountNode>& nodes)
{
    SectorResult r;
    for (const auto& n : nodes) {
        Money b = balance(n);
        const auto& sym = n.balancing_symbol;
        if (sym == "B1G")
            r.gva = b;
        else if (sym == "B1N")
            r.nva = b;
        else if (sym == "B13N")
            r.operating_surplus = b;
        else if (sym == "B5N")
            r.primary_income = b;
        else if (sym == "B6N")
            r.disposable_income = b;
        else if (sym == "B8N")
            r.saving = b;
        else if (sym == "B9")
            r.net_lending = b;
        else if (sym == "dA")
            r.financial_assets = b;
        else if (sym == "B11")
            r.external_balance = b;
        else if (sym == "B12") {
            r.balance_of_payments = b;
            r.disposable_income = b;
            r.saving = b;
        }
    }
    return r;
}

namespace {

ProductionValue output_of(const SectorLedger& l)
{
    ProductionValue v;
    if (l.has(Item::P1, Direction::received))
        v.composite = l.received(Item::P1);
    const bool any_component = l.has(Item::P31, Direction::received) || l.has(Item::P32, Direction::received) ||
                               l.has(Item::P5, Direction::received) || l.has(Item::P2, Direction::received) ||
                               l.has(Item::P6, Direction::received) || l.has(Item::P7, Direction::paid);
    if (any_component)
        v.components = OutputComponents{l.received(Item::P31), l.received(Item::P32), l.received(Item::P5),
                                        l.received(Item::P2),  l.received(Item::P6),  l.paid(Item::P7)};
    return v;
}

ProductionInputs production_of(const SectorLedger& l)
{
    return ProductionInputs{output_of(l),        l.paid(Item::P2),      l.paid(Item::K1),
                            l.paid(Item::D11),   l.paid(Item::D12),     l.paid(Item::D21),
                            l.paid(Item::D29),   l.received(Item::D31), l.received(Item::D39)};
}

TransferInputs transfers_of(const SectorLedger& l)
{
    return TransferInputs{l.received(Item::D4), l.paid(Item::D4), l.received(Item::D6), l.paid(Item::D6),
                          l.received(Item::D7), l.paid(Item::D7), l.paid(Item::D5),     l.net(Item::D8)};
}

CapitalInputs capital_of(const SectorLedger& l)
{
    return CapitalInputs{l.received(Item::D9), l.paid(Item::D9), l.paid(Item::P5), l.net(Item::K2),
                         l.net(Item::dPsi)};
}

} // namespace

FirmSectorInputs firm_inputs(const SectorLedger& l)
{
    return FirmSectorInputs{production_of(l), transfers_of(l), capital_of(l)};
}

HouseholdSectorInputs household_inputs(const SectorLedger& l)
{
    HouseholdSectorInputs in;
    in.production = production_of(l);
    in.wages_received = l.received(Item::D11);
    in.employer_contributions_received = l.received(Item::D12);
    in.transfers = transfers_of(l);
    in.final_consumption = l.paid(Item::P31);
    in.capital = capital_of(l);
    return in;
}

GovernmentSectorInputs government_inputs(const SectorLedger& l)
{
    GovernmentSectorInputs in;
    in.production = production_of(l);
    in.product_taxes_received = l.received(Item::D21);
    in.production_taxes_received = l.received(Item::D29);
    in.product_subsidies_paid = l.paid(Item::D31);
    in.production_subsidies_paid = l.paid(Item::D39);
    in.transfers = transfers_of(l);
    in.income_taxes_received = l.received(Item::D5);
    in.individual_consumption = l.paid(Item::P31);
    in.collective_consumption = l.paid(Item::P32);
    in.capital = capital_of(l);
    return in;
}

RestOfWorldInputs rest_of_world_inputs(const SectorLedger& l)
{
    RestOfWorldInputs in;
    in.imports = l.received(Item::P7);
    in.exports = l.paid(Item::P6);
    in.wages_received = l.received(Item::D11);
    in.wages_paid = l.paid(Item::D11);
    in.employer_contributions_received = l.received(Item::D12);
    in.employer_contributions_paid = l.paid(Item::D12);
    in.product_taxes_received = l.received(Item::D21);
    in.production_taxes_received = l.received(Item::D29);
    in.product_subsidies_paid = l.paid(Item::D31);
    in.production_subsidies_paid = l.paid(Item::D39);
    in.property_income_received = l.received(Item::D4);
    in.property_income_paid = l.paid(Item::D4);
    in.social_received = l.received(Item::D6);
    in.social_paid = l.paid(Item::D6);
    in.transfers_received = l.received(Item::D7);
    in.transfers_paid = l.paid(Item::D7);
    in.capital_transfers_received = l.received(Item::D9);
    in.capital_transfers_paid = l.paid(Item::D9);
    in.nonproduced_net = l.net(Item::K2);
    in.liabilities_net = l.net(Item::dPsi);
    return in;
}

SectorResult evaluate(const SectorLedger& ledger)
{
    switch (ledger.sector()) {
    case Sector::NFS:
    case Sector::FFS:
        return firm_chain(firm_inputs(ledger));
    case Sector::HS:
        return household_chain(household_inputs(ledger));
    case Sector::GS:
        return government_chain(government_inputs(ledger));
    case Sector::RS:
        return rest_of_world_chain(rest_of_world_inputs(ledger));
    }
    throw std::logic_error("unreachable sector");
}

std::vector<AccountNode> accounts(const SectorLedger& ledger)
{
    switch (ledger.sector()) {
    case Sector::NFS:
    case Sector::FFS:
        return firm_accounts(firm_inputs(ledger));
    case Sector::HS:
        return household_accounts(household_inputs(ledger));
    case Sector::GS:
        return government_accounts(government_inputs(ledger));
    case Sector::RS:
        return rest_of_world_accounts(rest_of_world_inputs(ledger));
    }
    throw std::logic_error("unreachable sector");
}

namespace {

template <class Result>
auto& field_ref(Result& r, Item item)
{
    switch (item) {
    case Item::B1G: return r.gva;
    case Item::B1N: return r.nva;
    case Item::B13N: return r.operating_surplus;
    case Item::B5N: return r.primary_income;
    case Item::B6N: return r.disposable_income;
    case Item::B8N: return r.saving;
    case Item::B9: return r.net_lending;
    case Item::dA: return r.financial_assets;
    case Item::B11: return r.external_balance;
    case Item::B12: return r.balance_of_payments;
    default:
        throw std::invalid_argument("item " + std::string(to_string(item)) + " is not a chain balancing item");
    }
}

} // namespace

Money field(const SectorResult& r, Item item) { return field_ref(r, item); }
Money& field(SectorResult& r, Item item) { return field_ref(r, item); }

namespace {

// Balancing items each sector's chain defines.
std::vector<Item> chain_items(Sector s)
{
    if (s == Sector::RS)
        return {Item::B11, Item::B12, Item::B9, Item::dA};
    return {Item::B1G, Item::B1N, Item::B13N, Item::B5N, Item::B6N, Item::B8N, Item::B9, Item::dA};
}

} // namespace

std::array<SectorResult, 5> results(const EconomyYear& year, Mode mode)
{
    std::array<SectorResult, 5> out;
    for (auto s : kAllSectors) {
        const auto& ledger = year[s];
        SectorResult r = evaluate(ledger);
        if (mode == Mode::reported) {
            for (auto item : chain_items(s))
                if (ledger.has(item, Direction::net))
                    field(r, item) = ledger.get(item, Direction::net);
            if (s == Sector::RS) {
                r.disposable_income = r.balance_of_payments;
                r.saving = r.balance_of_payments;
            }
        }
        out[index(s)] = r;
    }
    return out;
}

std::vector<ChainResidual> chain_residuals(const EconomyYear& year)
{
    std::vector<ChainResidual> out;
    for (auto s : kAllSectors) {
        const auto& ledger = year[s];
        SectorResult r = evaluate(ledger);
        for (auto item : chain_items(s))
            if (ledger.has(item, Direction::net))
                out.push_back({s, item, ledger.get(item, Direction::net), field(r, item)});
    }
    return out;
}

void store_results(EconomyYear& year, const std::array<SectorResult, 5>& res)
{
    for (auto s : kAllSectors)
        for (auto item : chain_items(s))
            year[s].set(item, Direction::net, field(res[index(s)], item));
}

} // namespace sfcna
