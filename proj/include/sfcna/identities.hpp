#pragma once

#include "sfcna/ledger.hpp"
#include "sfcna/sector_accounts.hpp"

namespace sfcna {

/// Economy-wide aggregates behind the three GDP measures.
struct GdpBreakdown {
    // expenditure side
    Money consumption;   // C = C_1 + C_2
    Money investment;    // I
    Money government;    // G
    Money exports;       // X
    Money imports;       // M
    // income side
    Money operating_surplus;       // O
    Money wages;                   // W_DP, paid by domestic sectors
    Money employer_contributions;  // T_SDP
    Money production_taxes;        // T_PDP, received by GS and RS
    Money fixed_capital;           // P
    Money subsidies;               // B_PDR, paid by GS and RS
    // value-added side
    Money output;                  // sum of output composites
    Money intermediate_consumption; // H
    Money intermediate_sales;       // Z
    /// Product taxes less product subsidies not attributed to a producer
    /// (D21 and D31 open-system totals); output composites exclude them.
    Money net_product_taxes;
};

/// C + I + G + (X - M).
Money gdp_expenditure(const GdpBreakdown& b);
/// O + W_DP + T_SDP + T_PDP + P - B_PDR.
Money gdp_income(const GdpBreakdown& b);
/// Output + net product taxes - H + Z - Z, i.e. the consolidated GIA of
/// the home country with intermediate flows cancelled.
Money gdp_value_added(const GdpBreakdown& b);
/// Z - H over all domestic sectors; zero after consolidation.
Money intermediate_residual(const GdpBreakdown& b);

/// Aggregates from a year; operating surplus per `mode`. When no sector
/// reports intermediate sales, Z is taken equal to H.
GdpBreakdown gdp_breakdown(const EconomyYear& year, Mode mode = Mode::reported);

/// Disposable national income identity
///   O + W_HR + T_SHR + T_PGR + N_Dn + B_SDn + PI_Dn - B_PGP (+ T_I_Dn + D8_Dn)
///   = C + G + S_D.
struct NationalIncome {
    Money operating_surplus;
    Money wages_received;                 // W_HR
    Money employer_contributions_received; // T_SHR
    Money production_taxes_received;      // T_PGR
    Money transfers_net;                  // N_Dn
    Money social_net;                     // B_SDn
    Money property_income_net;            // PI_Dn
    Money subsidies_paid;                 // B_PGP
    Money income_taxes_net;               // T_I_Dn, zero when D5 stays domestic
    Money pension_adjustment_net;         // D8_Dn
    Money consumption;                    // C
    Money government;                     // G
    Money saving;                         // S_D

    Money lhs() const;
    Money rhs() const;
    Money residual() const { return rhs() - lhs(); }
};

NationalIncome national_income(const EconomyYear& year, Mode mode = Mode::reported);
/// (lhs, rhs).
std::pair<Money, Money> national_income_identity(const EconomyYear& year, Mode mode = Mode::reported);

/// Nominal GDP divided by the average unit price (EUR/kg); throws
/// std::domain_error when the price is not positive.
double real_gdp(Money nominal, double average_price);

} // namespace sfcna
