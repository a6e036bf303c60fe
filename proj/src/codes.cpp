#include "sfcna/codes.hpp"

namespace sfcna {

namespace {

constexpr std::array<std::string_view, 5> kSectorNames{"NFS", "FFS", "HS", "GS", "RS"};
constexpr std::array<std::string_view, 3> kDirectionNames{"received", "paid", "net"};
constexpr std::array<std::string_view, 32> kItemNames{
    "P1",  "P2",  "P31", "P32", "P5",  "P6",      "P7",  "K1",  "K2",  "D11", "D12",
    "D21", "D29", "D31", "D39", "D4",  "D5",      "D6",  "D7",  "D8",  "D9",  "B1G",
    "B1N", "B13N", "B5N", "B6N", "B8N", "B9", "B11", "B12", "dA",  "dPsi"};

static_assert(kItemNames.size() == kAllItems.size());

} // namespace

std::string_view to_string(Sector s) { return kSectorNames[index(s)]; }
std::string_view to_string(Direction d) { return kDirectionNames[static_cast<std::size_t>(d)]; }
std::string_view to_string(Item i) { return kItemNames[static_cast<std::size_t>(i)]; }

Sector parse_sector(std::string_view text)
{
    for (auto s : kAllSectors)
        if (to_string(s) == text)
            return s;
    throw UnknownCode("unknown sector '" + std::string(text) + "'");
}

Direction parse_direction(std::string_view text)
{
    for (std::size_t i = 0; i < kDirectionNames.size(); ++i)
        if (kDirectionNames[i] == text)
            return static_cast<Direction>(i);
    throw UnknownCode("unknown direction '" + std::string(text) + "'");
}

Item parse_item(std::string_view text)
{
    if (text == "D61+D62")
        return Item::D6;
    for (auto item : kAllItems)
        if (to_string(item) == text)
            return item;
    throw UnknownCode("unknown item code '" + std::string(text) + "'");
}

} // namespace sfcna
