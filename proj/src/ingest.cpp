#include "sfcna/ingest.hpp"

#include "json.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace sfcna {

IngestError::IngestError(int row, std::string field, const std::string& message)
    : std::runtime_error("row " + std::to_string(row) + (field.empty() ? "" : ", field " + field) + ": " + message),
      row_(row), field_(std::move(field))
{
}

namespace {

struct RawRow {
    std::string year, sector, item, direction, value;
};

int parse_year(const std::string& text, int row)
{
    int year = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), year);
    if (ec != std::errc() || p != text.data() + text.size() || text.empty())
        throw IngestError(row, "year", "not an integer: '" + text + "'");
    return year;
}

void add_row(Dataset& data, const RawRow& raw, int row)
{
    const int year = parse_year(raw.year, row);
    Sector sector;
    Item item;
    Direction direction;
    Money value;
    try {
        sector = parse_sector(raw.sector);
    } catch (const UnknownCode&) {
        throw IngestError(row, "sector", "unknown sector '" + raw.sector + "'");
    }
    try {
        item = parse_item(raw.item);
    } catch (const UnknownCode&) {
        throw IngestError(row, "item", "unknown item code '" + raw.item + "'");
    }
    try {
        direction = parse_direction(raw.direction);
    } catch (const UnknownCode&) {
        throw IngestError(row, "direction", "unknown direction '" + raw.direction + "'");
    }
    try {
        value = Money::parse(raw.value);
    } catch (const std::exception& e) {
        throw IngestError(row, "value", e.what());
    }
    if (is_signed_item(item) != (direction == Direction::net))
        throw IngestError(row, "direction",
                          std::string(to_string(item)) +
                              (is_signed_item(item) ? " is a signed item and needs direction net"
                                                    : " must be received or paid"));
    if (direction != Direction::net && value < Money{})
        throw IngestError(row, "value", "negative magnitude " + value.str());

    auto [it, inserted] = data.try_emplace(year);
    if (inserted)
        it->second.year = year;
    auto& ledger = it->second[sector];
    if (ledger.has(item, direction))
        throw IngestError(row, "",
                          "duplicate key (" + std::to_string(year) + ", " + std::string(to_string(sector)) + ", " +
                              std::string(to_string(item)) + ", " + std::string(to_string(direction)) + ")");
    ledger.set(item, direction, value);
}

std::vector<std::string> missing_sector_warnings(const Dataset& data)
{
    std::vector<std::string> out;
    for (const auto& [year, economy] : data)
        for (auto s : kAllSectors)
            if (economy[s].values().empty())
                out.push_back(std::to_string(year) + ": no entries for sector " + std::string(to_string(s)) +
                              "; all its items default to 0");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return in;
}

} // namespace

LoadResult read_csv(std::istream& in)
{
    LoadResult result;
    std::string line;
    int row = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!header) {
            if (line.starts_with("\xEF\xBB\xBF"))
                line.erase(0, 3);
            if (line != kCsvHeader)
                throw IngestError(row, "", std::string("expected header '") + kCsvHeader + "'");
            header = true;
            continue;
        }
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ','))
            fields.push_back(f);
        if (line.back() == ',')
            fields.emplace_back();
        if (fields.size() != 5)
            throw IngestError(row, "", "expected 5 fields, found " + std::to_string(fields.size()));
        add_row(result.data, RawRow{fields[0], fields[1], fields[2], fields[3], fields[4]}, row);
    }
    if (!header)
        throw IngestError(1, "", "missing header");
    result.warnings = missing_sector_warnings(result.data);
    return result;
}

LoadResult load_csv(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_csv(in);
}

void write_csv(std::ostream& out, const Dataset& data)
{
    out << kCsvHeader << "\n";
    for (const auto& [year, economy] : data)
        for (auto s : kAllSectors)
            for (const auto& [key, value] : economy[s].values())
                out << year << ',' << to_string(s) << ',' << to_string(key.first) << ',' << to_string(key.second)
                    << ',' << value.str() << "\n";
}

void save_csv(const std::filesystem::path& path, const Dataset& data)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    write_csv(out, data);
}

LoadResult read_json(std::istream& in)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw IngestError(0, "", e.what());
    }
    if (!doc.is_array())
        throw IngestError(0, "", "expected a JSON array of rows");
    LoadResult result;
    int row = 0;
    for (const auto& obj : doc) {
        ++row;
        if (!obj.is_object())
            throw IngestError(row, "", "expected an object");
        auto text = [&](const char* name) -> std::string {
            auto it = obj.find(name);
            if (it == obj.end())
                throw IngestError(row, name, "missing");
            if (it->is_string())
                return it->get<std::string>();
            if (it->is_number())
                return it->dump();
            throw IngestError(row, name, "expected a string or number");
        };
        add_row(result.data, RawRow{text("year"), text("sector"), text("item"), text("direction"), text("value")},
                row);
    }
    result.warnings = missing_sector_warnings(result.data);
    return result;
}

LoadResult load_json(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_json(in);
}

void write_json(std::ostream& out, const Dataset& data)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& [year, economy] : data)
        for (auto s : kAllSectors)
            for (const auto& [key, value] : economy[s].values())
                doc.push_back({{"year", year},
                               {"sector", to_string(s)},
                               {"item", to_string(key.first)},
                               {"direction", to_string(key.second)},
                               {"value", value.str()}});
    out << doc.dump(2) << "\n";
}

LoadResult load(const std::filesystem::path& path)
{
    if (path.extension() == ".json")
        return load_json(path);
    return load_csv(path);
}

namespace {

struct FixtureEntry {
    Sector sector;
    Item item;
    Direction direction;
    std::int64_t value;
    Provenance provenance = Provenance::read;
};

constexpr auto R = Direction::received;
constexpr auto P = Direction::paid;
constexpr auto N = Direction::net;
constexpr auto derived = Provenance::derived;

// clang-format off
const FixtureEntry kFixture2011[] = {
    // Non-financial corporations
    {Sector::NFS, Item::P1, R, 271298}, {Sector::NFS, Item::P2, P, 166990},
    {Sector::NFS, Item::K1, P, 21651},  {Sector::NFS, Item::D11, P, 50565},
    {Sector::NFS, Item::D12, P, 10875}, {Sector::NFS, Item::D29, P, 240},
    {Sector::NFS, Item::D39, R, 1222},
    {Sector::NFS, Item::D4, R, 11430},  {Sector::NFS, Item::D4, P, 22912},
    {Sector::NFS, Item::D6, R, 0},      {Sector::NFS, Item::D6, P, 0},
    {Sector::NFS, Item::D7, R, 1666},   {Sector::NFS, Item::D7, P, 1018},
    {Sector::NFS, Item::D5, P, 4969},
    {Sector::NFS, Item::D9, R, 255},    {Sector::NFS, Item::D9, P, 30},
    {Sector::NFS, Item::P5, P, 25016},  {Sector::NFS, Item::K2, N, -111, derived},
    {Sector::NFS, Item::B13N, N, 22199}, {Sector::NFS, Item::B5N, N, 10717},
    {Sector::NFS, Item::B6N, N, 6396},  {Sector::NFS, Item::B8N, N, 6396},
    {Sector::NFS, Item::B9, N, 3367},

    // Financial corporations
    {Sector::FFS, Item::P1, R, 9250},   {Sector::FFS, Item::P2, P, 4617},
    {Sector::FFS, Item::K1, P, 450},    {Sector::FFS, Item::D11, P, 2295},
    {Sector::FFS, Item::D12, P, 473},   {Sector::FFS, Item::D29, P, 1},
    {Sector::FFS, Item::D39, R, 1},
    {Sector::FFS, Item::D4, R, 11618},  {Sector::FFS, Item::D4, P, 11977},
    {Sector::FFS, Item::D6, R, 1252},   {Sector::FFS, Item::D6, P, 1461},
    {Sector::FFS, Item::D7, R, 2245},   {Sector::FFS, Item::D7, P, 2430},
    {Sector::FFS, Item::D5, P, 638},    {Sector::FFS, Item::D8, N, 68, derived},
    {Sector::FFS, Item::D9, R, 49},     {Sector::FFS, Item::D9, P, 3},
    {Sector::FFS, Item::P5, P, 356},    {Sector::FFS, Item::K2, N, -2, derived},
    {Sector::FFS, Item::B13N, N, 1415}, {Sector::FFS, Item::B5N, N, 1056},
    {Sector::FFS, Item::B6N, N, 24},    {Sector::FFS, Item::B8N, N, 92},
    {Sector::FFS, Item::B9, N, 234},

    // Households and NPISH
    {Sector::HS, Item::P1, R, 44006},   {Sector::HS, Item::P2, P, 16891},
    {Sector::HS, Item::K1, P, 7948},    {Sector::HS, Item::D12, P, 995},
    {Sector::HS, Item::D29, P, 3},      {Sector::HS, Item::D39, R, 1565},
    {Sector::HS, Item::D11, P, 4176},   {Sector::HS, Item::D11, R, 78677},
    {Sector::HS, Item::D12, R, 18224},
    {Sector::HS, Item::D4, R, 10162},   {Sector::HS, Item::D4, P, 2267},
    {Sector::HS, Item::D6, R, 35336},   {Sector::HS, Item::D6, P, 25277, derived},
    {Sector::HS, Item::D7, R, 6307},    {Sector::HS, Item::D7, P, 3968},
    {Sector::HS, Item::D5, P, 25493},   {Sector::HS, Item::D8, N, -68, derived},
    {Sector::HS, Item::P31, P, 105771},
    {Sector::HS, Item::D9, R, 465},     {Sector::HS, Item::D9, P, 524},
    {Sector::HS, Item::P5, P, 13424},   {Sector::HS, Item::K2, N, 104},
    {Sector::HS, Item::B13N, N, 15558}, {Sector::HS, Item::B5N, N, 120354},
    {Sector::HS, Item::B6N, N, 107191}, {Sector::HS, Item::B8N, N, 1420},
    {Sector::HS, Item::B9, N, -4219},

    // General government
    {Sector::GS, Item::P1, R, 55816},   {Sector::GS, Item::P2, P, 21418},
    {Sector::GS, Item::K1, P, 6532},    {Sector::GS, Item::D11, P, 21544},
    {Sector::GS, Item::D12, P, 5905},   {Sector::GS, Item::D29, P, 4},
    {Sector::GS, Item::D39, R, 0},
    {Sector::GS, Item::D21, R, 26932},  {Sector::GS, Item::D29, R, 248},
    {Sector::GS, Item::D31, P, 657},    {Sector::GS, Item::D39, P, 2067},
    {Sector::GS, Item::D4, R, 7080},    {Sector::GS, Item::D4, P, 2896},
    {Sector::GS, Item::D6, R, 24037},   {Sector::GS, Item::D6, P, 33876},
    {Sector::GS, Item::D7, R, 27261},   {Sector::GS, Item::D7, P, 32173},
    {Sector::GS, Item::D5, R, 31209},   {Sector::GS, Item::D5, P, 109},
    {Sector::GS, Item::P31, P, 31229},  {Sector::GS, Item::P32, P, 15262},
    {Sector::GS, Item::D9, R, 835},     {Sector::GS, Item::D9, P, 851},
    {Sector::GS, Item::P5, P, 7486},    {Sector::GS, Item::K2, N, -3, derived},
    {Sector::GS, Item::B13N, N, 413},   {Sector::GS, Item::B5N, N, 29053},
    {Sector::GS, Item::B6N, N, 45402},  {Sector::GS, Item::B8N, N, -1089},
    {Sector::GS, Item::B9, N, -2056},

    // Rest of the world
    {Sector::RS, Item::P7, R, 78768},   {Sector::RS, Item::P6, P, 77093},
    {Sector::RS, Item::D11, R, 472},    {Sector::RS, Item::D11, P, 569},
    {Sector::RS, Item::D12, R, 116},    {Sector::RS, Item::D12, P, 92},
    {Sector::RS, Item::D21, R, 191},    {Sector::RS, Item::D29, R, 0},
    {Sector::RS, Item::D31, P, 51},     {Sector::RS, Item::D39, P, 721},
    {Sector::RS, Item::D4, R, 13613},   {Sector::RS, Item::D4, P, 13851},
    {Sector::RS, Item::D6, R, 351},     {Sector::RS, Item::D6, P, 362},
    {Sector::RS, Item::D7, R, 3163},    {Sector::RS, Item::D7, P, 1053},
    {Sector::RS, Item::D9, R, 10},      {Sector::RS, Item::D9, P, 206},
    {Sector::RS, Item::K2, N, 12},
    {Sector::RS, Item::B11, N, 1675},   {Sector::RS, Item::B12, N, 2882},
    {Sector::RS, Item::B9, N, 2674},
};
// clang-format on

} // namespace

EconomyYear fixture_2011()
{
    EconomyYear y;
    y.year = 2011;
    for (const auto& e : kFixture2011) {
        y[e.sector].set(e.item, e.direction, Money::units(e.value));
        if (e.provenance == Provenance::derived)
            y.provenance[{e.sector, e.item, e.direction}] = Provenance::derived;
    }
    return y;
}

} // namespace sfcna
