#pragma once

#include "sfcna/ledger.hpp"

#include <array>
#include <optional>
#include <vector>

namespace sfcna {

/// Market value of a sector's output, C+G+I+Z+X-M, given whole or by
/// component. When both are present they must agree exactly.
struct OutputComponents {
    Money consumption;        // C_i
    Money collective;         // G_i
    Money investment;         // I_i
    Money intermediate_sales; // Z_i
    Money exports;            // X_i
    Money imports;            // M_i

    Money composite() const;
};

struct ProductionValue {
    std::optional<Money> composite;
    std::optional<OutputComponents> components;

    Money resolve() const;
};

/// Generation-of-income items shared by every domestic producer.
struct ProductionInputs {
    ProductionValue output;
    Money intermediate;                   // H, P2
    Money fixed_capital;                  // P, K1
    Money wages_paid;                     // W, D11
    Money employer_contributions_paid;    // T_S, D12
    Money product_taxes_paid;             // T_P1, D21
    Money production_taxes_paid;          // T_P2, D29
    Money product_subsidies_received;     // B_P1, D31
    Money production_subsidies_received;  // B_P2, D39
};

struct TransferInputs {
    Money property_income_received;  // D4
    Money property_income_paid;
    Money social_received;           // D61+D62
    Money social_paid;
    Money transfers_received;        // D7
    Money transfers_paid;
    Money income_taxes_paid;         // D5
    Money pension_adjustment;        // D8, signed
};

struct CapitalInputs {
    Money capital_transfers_received;  // D9
    Money capital_transfers_paid;
    Money own_investment;              // I_O, P5
    Money nonproduced_net;             // N_An, K2, signed
    Money liabilities_net;             // dPsi, signed
};

struct FirmSectorInputs {
    ProductionInputs production;
    TransferInputs transfers;
    CapitalInputs capital;

    void validate() const;
};

struct HouseholdSectorInputs {
    ProductionInputs production;          // unincorporated enterprises; wages_paid is W_HP
    Money wages_received;                 // W_T
    Money employer_contributions_received; // T_SR
    TransferInputs transfers;
    Money final_consumption;              // C_1
    CapitalInputs capital;

    void validate() const;
};

struct GovernmentSectorInputs {
    ProductionInputs production;
    Money product_taxes_received;     // T_PG1R, D21
    Money production_taxes_received;  // T_PG2R, D29
    Money product_subsidies_paid;     // B_PG1P, D31
    Money production_subsidies_paid;  // B_PG2P, D39
    TransferInputs transfers;
    Money income_taxes_received;      // T_IGR
    Money individual_consumption;     // C_2
    Money collective_consumption;     // G
    CapitalInputs capital;

    void validate() const;
};

/// Flows seen from the rest of the world.
struct RestOfWorldInputs {
    Money imports;   // M, received by RS
    Money exports;   // X, paid by RS
    Money wages_received;
    Money wages_paid;
    Money employer_contributions_received;
    Money employer_contributions_paid;
    Money product_taxes_received;
    Money production_taxes_received;
    Money product_subsidies_paid;
    Money production_subsidies_paid;
    Money property_income_received;
    Money property_income_paid;
    Money social_received;
    Money social_paid;
    Money transfers_received;
    Money transfers_paid;
    Money capital_transfers_received;
    Money capital_transfers_paid;
    Money nonproduced_net;
    Money liabilities_net;

    void validate() const;
};

/// Balancing items of one sector's account chain. For the rest of the
/// world, gross/net value added, operating surplus and primary income
/// stay zero; disposable income and saving both carry BP.
struct SectorResult {
    Money gva;
    Money nva;
    Money operating_surplus;   // O, B13N
    Money primary_income;      // BPI, B5N
    Money disposable_income;   // DI, B6N
    Money saving;              // S, B8N
    Money net_lending;         // Y, B9
    Money financial_assets;    // dA
    Money external_balance;    // EB, B11 (RS only)
    Money balance_of_payments; // BP, B12 (RS only)

    friend bool operator==(const SectorResult&, const SectorResult&) = default;
};

/// (GVA, NVA).
std::pair<Money, Money> production_account(Money output_value, Money intermediate, Money fixed_capital);

SectorResult firm_chain(const FirmSectorInputs& in);
SectorResult household_chain(const HouseholdSectorInputs& in);
SectorResult government_chain(const GovernmentSectorInputs& in);
SectorResult rest_of_world_chain(const RestOfWorldInputs& in);

/// Node form of each chain: PA, PA-net, GIA, APIA, SDIA, UDIA, CA, FA
/// for domestic sectors; GIA, ASUA, CA, FA for the rest of the world.
std::vector<AccountNode> firm_accounts(const FirmSectorInputs& in);
std::vector<AccountNode> household_accounts(const HouseholdSectorInputs& in);
std::vector<AccountNode> government_accounts(const GovernmentSectorInputs& in);
std::vector<AccountNode> rest_of_world_accounts(const RestOfWorldInputs& in);

/// Reads the chain result back from nodes by their balancing symbols.
SectorResult result_from_nodes(const std::vector<AccountNode>& nodes);

FirmSectorInputs firm_inputs(const SectorLedger& ledger);
HouseholdSectorInputs household_inputs(const SectorLedger& ledger);
GovernmentSectorInputs government_inputs(const SectorLedger& ledger);
RestOfWorldInputs rest_of_world_inputs(const SectorLedger& ledger);

/// Dispatches on the ledger's sector.
SectorResult evaluate(const SectorLedger& ledger);
std::vector<AccountNode> accounts(const SectorLedger& ledger);

/// Balancing-item codes paired with the SectorResult field they fill.
inline constexpr std::array<Item, 10> kResultItems{Item::B1G, Item::B1N, Item::B13N, Item::B5N, Item::B6N,
                                                   Item::B8N, Item::B9,  Item::dA,   Item::B11, Item::B12};
Money field(const SectorResult& r, Item item);
Money& field(SectorResult& r, Item item);

/// Which balancing items feed economy-wide checks: those reported in the
/// dataset (falling back to recomputed when absent) or those rebuilt from
/// component flows.
enum class Mode { reported, recompute };

std::array<SectorResult, 5> results(const EconomyYear& year, Mode mode);

struct ChainResidual {
    Sector sector;
    Item item;
    Money reported;
    Money recomputed;
    Money residual() const { return recomputed - reported; }
};

/// One entry for every reported balancing item in the dataset.
std::vector<ChainResidual> chain_residuals(const EconomyYear& year);

/// Writes recomputed balancing items into the ledgers as net entries.
void store_results(EconomyYear& year, const std::array<SectorResult, 5>& results);

} // namespace sfcna
