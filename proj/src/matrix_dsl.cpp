#include "sfcna/matrix_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace sfcna::dsl {

DslError::DslError(Kind kind, int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      kind_(kind), line_(line), column_(column)
{
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Cursor over a single line; columns are 1-based.
class LineScanner {
public:
    LineScanner(std::string_view text, int line) : text_(text), line_(line) {}

    void skip_space()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r'))
            ++pos_;
    }
    bool at_end()
    {
        skip_space();
        return pos_ >= text_.size() || text_[pos_] == '#';
    }
    int column() const { return static_cast<int>(pos_) + 1; }
    char peek()
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    std::string identifier(const char* what)
    {
        skip_space();
        if (pos_ >= text_.size() || !is_ident_start(text_[pos_]))
            fail(std::string("expected ") + what);
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_]))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }
    std::string quoted()
    {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != '"')
            fail("expected quoted string");
        std::size_t close = text_.find('"', pos_ + 1);
        if (close == std::string_view::npos)
            fail("unterminated string");
        std::string s(text_.substr(pos_ + 1, close - pos_ - 1));
        pos_ = close + 1;
        return s;
    }
    void expect_end()
    {
        if (!at_end())
            fail("unexpected trailing text");
    }
    [[noreturn]] void fail(const std::string& message) const
    {
        throw DslError(DslError::Kind::syntax, line_, column(), message);
    }
    int line() const { return line_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
};

struct ParsedCell {
    Cell cell;
    bool memo = false;
};

ParsedCell parse_cell(LineScanner& sc, const std::set<std::string>& declared)
{
    ParsedCell out;
    sc.skip_space();
    const int col = sc.column();
    out.cell.sector = sc.identifier("sector name");
    if (!declared.contains(out.cell.sector))
        throw DslError(DslError::Kind::syntax, sc.line(), col, "undeclared sector '" + out.cell.sector + "'");
    sc.expect('=');
    out.memo = sc.accept('[');
    if (sc.accept('-'))
        out.cell.sign = -1;
    else
        sc.accept('+');
    out.cell.symbol = sc.identifier("symbol");
    if (out.memo)
        sc.expect(']');
    return out;
}

void check_row_balance(const Row& row)
{
    std::map<std::string, int> net;
    for (const auto& c : row.cells)
        net[c.symbol] += c.sign;
    for (const auto& [symbol, count] : net)
        if (count != 0)
            throw DslError(DslError::Kind::row_balance, row.line, 1,
                           "row \"" + row.label + "\" does not balance: symbol " + symbol +
                               (count > 0 ? " is received without a payer" : " is paid without a receiver"));
}

void check_column_balance(const TransactionsMatrix& m, int sectors_line)
{
    for (const auto& sector : m.sectors) {
        std::map<std::string, int> net;
        for (const auto& row : m.rows)
            for (const auto& c : row.cells)
                if (c.sector == sector)
                    net[c.symbol] += c.sign;
        bool has_in = false;
        bool has_out = false;
        for (const auto& [symbol, count] : net) {
            has_in = has_in || count > 0;
            has_out = has_out || count < 0;
        }
        if (has_in != has_out)
            throw DslError(DslError::Kind::column_balance, sectors_line, 1,
                           "column " + sector + " cannot sum to zero: it only has " +
                               (has_in ? "inflows" : "outflows"));
    }
}

} // namespace

TransactionsMatrix parse(std::string_view text)
{
    TransactionsMatrix m;
    std::set<std::string> declared;
    bool have_name = false;
    bool have_sectors = false;
    int sectors_line = 0;

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        LineScanner sc(line, line_no);
        if (sc.at_end())
            continue;
        const int keyword_col = sc.column();
        std::string keyword = sc.identifier("keyword");
        if (keyword == "matrix") {
            if (have_name)
                throw DslError(DslError::Kind::syntax, line_no, keyword_col, "duplicate matrix statement");
            m.name = sc.quoted();
            sc.expect_end();
            have_name = true;
        } else if (keyword == "sectors") {
            if (!have_name)
                throw DslError(DslError::Kind::syntax, line_no, keyword_col, "sectors before matrix statement");
            if (have_sectors)
                throw DslError(DslError::Kind::syntax, line_no, keyword_col, "duplicate sectors statement");
            sc.expect(':');
            do {
                const int col = sc.column();
                auto s = sc.identifier("sector name");
                if (!declared.insert(s).second)
                    throw DslError(DslError::Kind::syntax, line_no, col, "duplicate sector '" + s + "'");
                m.sectors.push_back(s);
            } while (sc.accept(','));
            sc.expect_end();
            have_sectors = true;
            sectors_line = line_no;
        } else if (keyword == "row") {
            if (!have_sectors)
                throw DslError(DslError::Kind::syntax, line_no, keyword_col, "row before sectors statement");
            Row row;
            row.line = line_no;
            row.label = sc.quoted();
            sc.expect(':');
            std::set<std::string> seen;
            int memo_cells = 0;
            do {
                const int col = sc.column();
                auto parsed = parse_cell(sc, declared);
                if (!seen.insert(parsed.cell.sector).second)
                    throw DslError(DslError::Kind::syntax, line_no, col,
                                   "sector " + parsed.cell.sector + " appears twice in row \"" + row.label + "\"");
                memo_cells += parsed.memo ? 1 : 0;
                row.cells.push_back(parsed.cell);
            } while (sc.accept(','));
            sc.expect_end();
            if (memo_cells != 0 && memo_cells != static_cast<int>(row.cells.size()))
                throw DslError(DslError::Kind::syntax, line_no, keyword_col,
                               "row \"" + row.label + "\" mixes memo and transaction entries");
            if (memo_cells != 0) {
                m.memo_rows.push_back(std::move(row));
            } else {
                check_row_balance(row);
                m.rows.push_back(std::move(row));
            }
        } else {
            throw DslError(DslError::Kind::syntax, line_no, keyword_col, "unknown statement '" + keyword + "'");
        }
    }
    if (!have_name)
        throw DslError(DslError::Kind::syntax, line_no, 1, "missing matrix statement");
    if (!have_sectors)
        throw DslError(DslError::Kind::syntax, line_no, 1, "missing sectors statement");
    check_column_balance(m, sectors_line);
    return m;
}

std::vector<Equation> to_equations(const TransactionsMatrix& m)
{
    std::vector<Equation> out;
    for (const auto& sector : m.sectors) {
        Equation eq{sector, {}, {}};
        for (const auto& row : m.rows)
            for (const auto& c : row.cells)
                if (c.sector == sector)
                    (c.sign > 0 ? eq.inflows : eq.outflows).push_back(c.symbol);
        if (!eq.inflows.empty() || !eq.outflows.empty())
            out.push_back(std::move(eq));
    }
    return out;
}

std::vector<AccountNode> to_taccounts(const TransactionsMatrix& m, const SymbolValues& values)
{
    auto value_of = [&](const std::string& symbol) {
        auto it = values.find(symbol);
        return it == values.end() ? Money{} : it->second;
    };
    std::vector<AccountNode> out;
    for (const auto& sector : m.sectors) {
        AccountNode node{sector, {}, {}, "balance"};
        for (const auto& row : m.rows)
            for (const auto& c : row.cells)
                if (c.sector == sector)
                    (c.sign > 0 ? node.inflows : node.outflows).push_back({c.symbol, value_of(c.symbol)});
        out.push_back(std::move(node));
    }
    return out;
}

FlowGraph to_flow_graph(const TransactionsMatrix& m)
{
    FlowGraph g{m.name, m.sectors, {}};
    for (const auto& row : m.rows) {
        const Cell* payer = nullptr;
        const Cell* receiver = nullptr;
        for (const auto& c : row.cells) {
            const Cell*& slot = c.sign < 0 ? payer : receiver;
            if (slot != nullptr)
                throw DslError(DslError::Kind::unsupported_shape, row.line, 1,
                               "row \"" + row.label + "\" has more than one " + (c.sign < 0 ? "payer" : "receiver"));
            slot = &c;
        }
        // Balanced rows always have exactly one of each here.
        g.edges.push_back({payer->sector, receiver->sector, receiver->symbol, row.label});
    }
    return g;
}

std::string display_symbol(std::string_view symbol)
{
    if (symbol.size() >= 2 && symbol[0] == 'd' && std::isupper(static_cast<unsigned char>(symbol[1])))
        return "Δ" + std::string(symbol.substr(1));
    return std::string(symbol);
}

namespace {

std::string join_side(const std::vector<std::string>& symbols)
{
    if (symbols.empty())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i != 0)
            s += " + ";
        s += display_symbol(symbols[i]);
    }
    return s;
}

// Display width in code points; labels are ASCII apart from the delta.
std::size_t width(const std::string& s)
{
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string pad(const std::string& s, std::size_t w) { return s + std::string(w > width(s) ? w - width(s) : 0, ' '); }

std::string entry_text(const Entry& e)
{
    std::string s = display_symbol(e.symbol);
    if (!e.value.is_zero())
        s += " " + e.value.str();
    return s;
}

std::string dot_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string render_equations(const std::vector<Equation>& equations)
{
    std::ostringstream os;
    for (const auto& eq : equations)
        os << eq.sector << ": " << join_side(eq.inflows) << " = " << join_side(eq.outflows) << "\n";
    return os.str();
}

std::string render_taccounts(const std::vector<AccountNode>& accounts)
{
    std::ostringstream os;
    for (std::size_t a = 0; a < accounts.size(); ++a) {
        const auto& acc = accounts[a];
        std::size_t left = width("in");
        for (const auto& e : acc.inflows)
            left = std::max(left, width(entry_text(e)));
        if (a != 0)
            os << "\n";
        os << acc.name << "\n";
        os << "  " << pad("in", left) << " | out\n";
        os << "  " << std::string(left, '-') << "-+-" << std::string(3, '-') << "\n";
        const std::size_t n = std::max(acc.inflows.size(), acc.outflows.size());
        for (std::size_t i = 0; i < n; ++i) {
            std::string l = i < acc.inflows.size() ? entry_text(acc.inflows[i]) : "";
            std::string r = i < acc.outflows.size() ? entry_text(acc.outflows[i]) : "";
            std::string line = "  " + pad(l, left) + " | " + r;
            while (!line.empty() && line.back() == ' ')
                line.pop_back();
            os << line << "\n";
        }
    }
    return os.str();
}

std::string render_dot(const FlowGraph& graph)
{
    std::ostringstream os;
    os << "digraph " << dot_quote(graph.name) << " {\n";
    for (const auto& n : graph.nodes)
        os << "  " << dot_quote(n) << ";\n";
    for (const auto& e : graph.edges)
        os << "  " << dot_quote(e.from) << " -> " << dot_quote(e.to) << " [label=" << dot_quote(display_symbol(e.symbol))
           << "];\n";
    os << "}\n";
    return os.str();
}

} // namespace sfcna::dsl
