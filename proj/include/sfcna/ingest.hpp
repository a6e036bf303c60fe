#pragma once

#include "sfcna/ledger.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfcna {

/// Years in ascending order.
using Dataset = std::map<int, EconomyYear>;

struct LoadResult {
    Dataset data;
    std::vector<std::string> warnings;
};

/// Schema or content error at a 1-based row (the header is row 1).
class IngestError : public std::runtime_error {
public:
    IngestError(int row, std::string field, const std::string& message);
    int row() const { return row_; }
    const std::string& field() const { return field_; }

private:
    int row_;
    std::string field_;
};

inline constexpr const char* kCsvHeader = "year,sector,item,direction,value";

LoadResult read_csv(std::istream& in);
LoadResult load_csv(const std::filesystem::path& path);
void write_csv(std::ostream& out, const Dataset& data);
void save_csv(const std::filesystem::path& path, const Dataset& data);

/// JSON mirror: an array of objects with the CSV field names. Values are
/// written as decimal strings; numbers are accepted on input.
LoadResult read_json(std::istream& in);
LoadResult load_json(const std::filesystem::path& path);
void write_json(std::ostream& out, const Dataset& data);

/// Dispatches on the extension (.json, otherwise CSV).
LoadResult load(const std::filesystem::path& path);

/// Finnish national accounts 2011 in million euro. Entries reconstructed
/// rather than read (signed K2 for NFS, FFS and GS, the D8 pair and the
/// household social-benefit payments) carry Provenance::derived.
EconomyYear fixture_2011();

} // namespace sfcna
