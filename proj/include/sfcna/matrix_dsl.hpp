#pragma once

#include "sfcna/ledger.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sfcna::dsl {

// Grammar, one statement per line ('#' starts a comment):
//
//   matrix "Name"
//   sectors: HS, FS, GS
//   row "Consumption": HS=-C, FS=+C
//   row "Output": FS=[Y]                # memo row, excluded from balance
//
// Symbols are opaque identifiers; a change is spelled with a leading d
// (dH) and rendered as a delta by the text emitters.

struct Cell {
    std::string sector;
    int sign = +1; // +1 inflow to the sector, -1 outflow
    std::string symbol;

    friend bool operator==(const Cell&, const Cell&) = default;
};

struct Row {
    std::string label;
    std::vector<Cell> cells;
    int line = 0;
};

struct TransactionsMatrix {
    std::string name;
    std::vector<std::string> sectors;
    std::vector<Row> rows;      // transaction rows
    std::vector<Row> memo_rows; // bracketed entries, outside the balance
};

class DslError : public std::runtime_error {
public:
    enum class Kind { syntax, row_balance, column_balance, unsupported_shape };

    DslError(Kind kind, int line, int column, const std::string& message);
    Kind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    Kind kind_;
    int line_;
    int column_;
};

/// Parses and validates: every row cancels symbol by symbol; every
/// non-empty column can sum to zero (it keeps entries of both signs after
/// identical symbols cancel).
TransactionsMatrix parse(std::string_view text);

struct Equation {
    std::string sector;
    std::vector<std::string> inflows;  // left-hand side
    std::vector<std::string> outflows; // right-hand side

    friend bool operator==(const Equation&, const Equation&) = default;
};

/// One "inflows = outflows" equation per sector with at least one entry.
std::vector<Equation> to_equations(const TransactionsMatrix& m);

using SymbolValues = std::map<std::string, Money>;

/// One T-account per sector; entries take their values from `values`
/// (zero when unbound).
std::vector<AccountNode> to_taccounts(const TransactionsMatrix& m, const SymbolValues& values = {});

struct Edge {
    std::string from;
    std::string to;
    std::string symbol;
    std::string row;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct FlowGraph {
    std::string name;
    std::vector<std::string> nodes;
    std::vector<Edge> edges;
};

/// One edge per transaction row, payer -> receiver. Rows with more than
/// one payer or receiver raise DslError(unsupported_shape).
FlowGraph to_flow_graph(const TransactionsMatrix& m);

/// "dH" -> "ΔH"; other symbols unchanged.
std::string display_symbol(std::string_view symbol);

std::string render_equations(const std::vector<Equation>& equations);
std::string render_taccounts(const std::vector<AccountNode>& accounts);
/// Graphviz dot digraph.
std::string render_dot(const FlowGraph& graph);

} // namespace sfcna::dsl
