#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sfcna {

enum class Sector { NFS, FFS, HS, GS, RS };

inline constexpr std::array<Sector, 5> kAllSectors{Sector::NFS, Sector::FFS, Sector::HS, Sector::GS, Sector::RS};
inline constexpr std::array<Sector, 4> kDomesticSectors{Sector::NFS, Sector::FFS, Sector::HS, Sector::GS};

constexpr std::size_t index(Sector s) { return static_cast<std::size_t>(s); }

enum class Direction { received, paid, net };

/// Closed list of ledger item codes. SNA transaction codes plus the
/// reported balancing items and the two financial-account flows.
enum class Item {
    P1,   // output value composite C+G+I+Z+X-M (received)
    P2,   // intermediate consumption H (paid) / intermediate sales Z (received)
    P31,  // individual consumption: sales C_i (received) / expenditure C_1, C_2 (paid)
    P32,  // collective consumption: sales G_i (received) / expenditure G (paid)
    P5,   // investment goods: sales I_i (received) / own gross investment I_O (paid)
    P6,   // exports X
    P7,   // imports M
    K1,   // consumption of fixed capital
    K2,   // net acquisition of non-produced non-financial assets (signed)
    D11,  // wages and salaries
    D12,  // employers' social contributions
    D21,  // taxes on products
    D29,  // other taxes on production
    D31,  // subsidies on products
    D39,  // other subsidies on production
    D4,   // property income
    D5,   // current taxes on income, wealth etc.
    D6,   // social contributions and benefits other than in kind (D61+D62)
    D7,   // other current transfers
    D8,   // adjustment for change in pension entitlements (signed)
    D9,   // capital transfers
    B1G,  // gross value added
    B1N,  // net value added
    B13N, // operating surplus plus mixed income
    B5N,  // balance of primary income
    B6N,  // disposable income
    B8N,  // net saving
    B9,   // net lending (+) / borrowing (-)
    B11,  // external balance of goods and services (RS)
    B12,  // balance of payments / current external balance (RS)
    dA,   // net acquisition of financial assets
    dPsi, // net incurrence of liabilities
};

inline constexpr std::array<Item, 32> kAllItems{
    Item::P1,  Item::P2,  Item::P31, Item::P32, Item::P5,  Item::P6,  Item::P7,  Item::K1,
    Item::K2,  Item::D11, Item::D12, Item::D21, Item::D29, Item::D31, Item::D39, Item::D4,
    Item::D5,  Item::D6,  Item::D7,  Item::D8,  Item::D9,  Item::B1G, Item::B1N, Item::B13N,
    Item::B5N, Item::B6N, Item::B8N, Item::B9,  Item::B11, Item::B12, Item::dA,  Item::dPsi};

/// Items that carry a signed value and must use Direction::net.
constexpr bool is_signed_item(Item item)
{
    switch (item) {
    case Item::K2:
    case Item::D8:
    case Item::B1G:
    case Item::B1N:
    case Item::B13N:
    case Item::B5N:
    case Item::B6N:
    case Item::B8N:
    case Item::B9:
    case Item::B11:
    case Item::B12:
    case Item::dA:
    case Item::dPsi:
        return true;
    default:
        return false;
    }
}

constexpr bool is_balancing_item(Item item)
{
    switch (item) {
    case Item::B1G:
    case Item::B1N:
    case Item::B13N:
    case Item::B5N:
    case Item::B6N:
    case Item::B8N:
    case Item::B9:
    case Item::B11:
    case Item::B12:
    case Item::dA:
        return true;
    default:
        return false;
    }
}

/// Raised for any code outside the closed lists.
class UnknownCode : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string_view to_string(Sector s);
std::string_view to_string(Direction d);
std::string_view to_string(Item i);

Sector parse_sector(std::string_view text);
Direction parse_direction(std::string_view text);
/// Accepts the canonical code; "D61+D62" is an alias of D6.
Item parse_item(std::string_view text);

} // namespace sfcna
