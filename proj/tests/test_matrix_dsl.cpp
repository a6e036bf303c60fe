#include "properties.hpp"
#include "sfcna/matrix_dsl.hpp"

#include <gtest/gtest.h>


using namespace sfcna;
using namespace sfcna::dsl;

namespace {

const char* kThreeSectors = R"(# closed economy with households, firms and government
matrix "Three sectors"
sectors: HS, FS, GS

row "Consumption": HS=-C, FS=+C
row "Government expenditures": GS=-G, FS=+G
row "Factor income": HS=+W, FS=-W
row "Taxes": HS=-T, GS=+T
row "Money-stock change": HS=-dH, GS=+dH
row "Output": FS=[Y]
)";

DslError::Kind error_kind(const std::string& text)
{
    try {
        parse(text);
    } catch (const DslError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return DslError::Kind::syntax;
}

} // namespace

TEST(Parse, ThreeSectors)
{
    auto m = parse(kThreeSectors);
    EXPECT_EQ(m.name, "Three sectors");
    EXPECT_EQ(m.sectors, (std::vector<std::string>{"HS", "FS", "GS"}));
    EXPECT_EQ(m.rows.size(), 5u);
    ASSERT_EQ(m.memo_rows.size(), 1u);
    EXPECT_EQ(m.memo_rows[0].cells[0].symbol, "Y");
    EXPECT_EQ(m.rows[0].line, 5);
}

TEST(Parse, EmptyMatrixIsValid)
{
    auto m = parse("matrix \"Empty\"\nsectors: A, B\n");
    EXPECT_TRUE(m.rows.empty());
    EXPECT_TRUE(to_equations(m).empty());
    auto nodes = to_taccounts(m);
    ASSERT_EQ(nodes.size(), 2u);
    EXPECT_TRUE(nodes[0].inflows.empty() && nodes[0].outflows.empty());
    auto g = to_flow_graph(m);
    EXPECT_TRUE(g.edges.empty());
}

TEST(Parse, LoneTaxEntryIsRowBalanceError)
{
    try {
        parse("matrix \"M\"\nsectors: HS, GS\nrow \"Taxes\": HS=-T\n");
        FAIL();
    } catch (const DslError& e) {
        EXPECT_EQ(e.kind(), DslError::Kind::row_balance);
        EXPECT_EQ(e.line(), 3);
        EXPECT_NE(std::string(e.what()).find("Taxes"), std::string::npos);
    }
}

TEST(Parse, OneSidedColumnIsColumnBalanceError)
{
    try {
        parse("matrix \"M\"\nsectors: A, B, C\nrow \"x\": A=-X, B=+X\nrow \"y\": C=-Y, B=+Y\n");
        FAIL();
    } catch (const DslError& e) {
        EXPECT_EQ(e.kind(), DslError::Kind::column_balance);
        EXPECT_NE(std::string(e.what()).find("column A"), std::string::npos);
    }
}

TEST(Parse, SyntaxErrorsCarryLineAndColumn)
{
    try {
        parse("matrix \"M\"\nsectors: HS, GS\nrow \"Taxes\" HS=-T, GS=+T\n");
        FAIL();
    } catch (const DslError& e) {
        EXPECT_EQ(e.kind(), DslError::Kind::syntax);
        EXPECT_EQ(e.line(), 3);
        EXPECT_EQ(e.column(), 13);
    }
    try {
        parse("matrix \"M\"\nsectors: HS, GS\nrow \"T\": HS=-T, XX=+T\n");
        FAIL();
    } catch (const DslError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_EQ(e.column(), 17);
        EXPECT_NE(std::string(e.what()).find("XX"), std::string::npos);
    }
    EXPECT_EQ(error_kind("sectors: A\n"), DslError::Kind::syntax);
    EXPECT_EQ(error_kind("matrix \"M\"\nrow \"r\": A=-X, B=+X\n"), DslError::Kind::syntax);
    EXPECT_EQ(error_kind("matrix \"M\"\nsectors: A, A\n"), DslError::Kind::syntax);
    EXPECT_EQ(error_kind("matrix \"M\"\nsectors: A, B\nrow \"r\": A=-X, B=[X]\n"), DslError::Kind::syntax);
    EXPECT_EQ(error_kind("matrix \"M\"\nsectors: A, B\nrow \"r\": A=-X, A=+X\n"), DslError::Kind::syntax);
    EXPECT_EQ(error_kind("matrix \"M\"\nsectors: A, B\ncolumn \"r\": A=-X\n"), DslError::Kind::syntax);
    EXPECT_EQ(error_kind("matrix \"M\nsectors: A\n"), DslError::Kind::syntax);
    EXPECT_EQ(error_kind("matrix \"M\"\nsectors: A, B\nrow \"r\": A=-X, B=+X trailing\n"), DslError::Kind::syntax);
}

TEST(Equations, ThreeSectors)
{
    auto eqs = to_equations(parse(kThreeSectors));
    ASSERT_EQ(eqs.size(), 3u);
    EXPECT_EQ(eqs[0], (Equation{"HS", {"W"}, {"C", "T", "dH"}}));
    EXPECT_EQ(eqs[1], (Equation{"FS", {"C", "G"}, {"W"}}));
    EXPECT_EQ(eqs[2], (Equation{"GS", {"T", "dH"}, {"G"}}));
    EXPECT_EQ(render_equations(eqs), "HS: W = C + T + ΔH\nFS: C + G = W\nGS: T + ΔH = G\n");
}

TEST(Equations, SingleTransaction)
{
    // Each column holds one sign only, so the column check must be
    // satisfied by a second row before the matrix is valid.
    auto m = parse("matrix \"M\"\nsectors: A, B\nrow \"c\": A=-C, B=+C\nrow \"r\": A=+R, B=-R\n");
    auto eqs = to_equations(m);
    EXPECT_EQ(eqs[0], (Equation{"A", {"R"}, {"C"}}));
    EXPECT_EQ(eqs[1], (Equation{"B", {"C"}, {"R"}}));
    EXPECT_EQ(render_equations({Equation{"A", {}, {"C"}}}), "A: 0 = C\n");
}

TEST(TAccounts, ThreeSectors)
{
    auto nodes = to_taccounts(parse(kThreeSectors), {{"W", Money::units(100)}, {"C", Money::units(80)}});
    ASSERT_EQ(nodes.size(), 3u);
    EXPECT_EQ(nodes[0].name, "HS");
    EXPECT_EQ(nodes[0].inflows, (std::vector<Entry>{{"W", Money::units(100)}}));
    EXPECT_EQ(nodes[0].outflows, (std::vector<Entry>{{"C", Money::units(80)}, {"T", Money{}}, {"dH", Money{}}}));
    EXPECT_EQ(nodes[2].inflows.size(), 2u);
    EXPECT_EQ(nodes[2].inflows[0].symbol, "T");
    EXPECT_EQ(nodes[2].inflows[1].symbol, "dH");
    EXPECT_EQ(nodes[2].outflows.size(), 1u);
    EXPECT_EQ(nodes[2].outflows[0].symbol, "G");
    const auto text = render_taccounts(nodes);
    EXPECT_NE(text.find("W 100.00 | C 80.00"), std::string::npos);
    EXPECT_NE(text.find("ΔH"), std::string::npos);
}

TEST(FlowGraph, ThreeSectors)
{
    auto g = to_flow_graph(parse(kThreeSectors));
    ASSERT_EQ(g.edges.size(), 5u);
    EXPECT_EQ(g.edges[0], (Edge{"HS", "FS", "C", "Consumption"}));
    EXPECT_EQ(g.edges[1], (Edge{"GS", "FS", "G", "Government expenditures"}));
    EXPECT_EQ(g.edges[2], (Edge{"FS", "HS", "W", "Factor income"}));
    EXPECT_EQ(g.edges[3], (Edge{"HS", "GS", "T", "Taxes"}));
    EXPECT_EQ(g.edges[4], (Edge{"HS", "GS", "dH", "Money-stock change"}));
    const auto dot = render_dot(g);
    EXPECT_NE(dot.find("digraph \"Three sectors\""), std::string::npos);
    EXPECT_NE(dot.find("\"HS\" -> \"GS\" [label=\"ΔH\"];"), std::string::npos);
}

TEST(FlowGraph, SingleEdgeAndUnsupportedShape)
{
    auto g = to_flow_graph(parse("matrix \"M\"\nsectors: A, B\nrow \"x\": A=-X, B=+X\nrow \"y\": A=+Y, B=-Y\n"));
    EXPECT_EQ(g.edges[0], (Edge{"A", "B", "X", "x"}));
    auto m = parse("matrix \"M\"\nsectors: A, B, C, D\n"
                   "row \"x\": A=-X, B=-X, C=+X, D=+X\n"
                   "row \"y\": A=+Y, C=-Y\n"
                   "row \"z\": B=+Z, D=-Z\n");
    try {
        to_flow_graph(m);
        FAIL();
    } catch (const DslError& e) {
        EXPECT_EQ(e.kind(), DslError::Kind::unsupported_shape);
        EXPECT_EQ(e.line(), 3);
    }
}

TEST(DisplaySymbol, DeltaForChanges)
{
    EXPECT_EQ(display_symbol("dH"), "ΔH");
    EXPECT_EQ(display_symbol("d"), "d");
    EXPECT_EQ(display_symbol("dividends"), "dividends");
    EXPECT_EQ(display_symbol("W"), "W");
}

TEST(DslProperty, EmittersAgreeOnRandomMatrices)
{
    std::mt19937 rng(1234);
    int valid_seen = 0;
    int invalid_seen = 0;
    for (int trial = 0; trial < 20000 && valid_seen < 1000; ++trial) {
        const auto g = props::random_matrix(rng);
        TransactionsMatrix m;
        try {
            m = parse(g.text);
        } catch (const DslError& e) {
            ASSERT_FALSE(g.valid) << g.text << e.what();
            ASSERT_NE(e.kind(), DslError::Kind::syntax) << g.text << e.what();
            ++invalid_seen;
            continue;
        }
        ASSERT_TRUE(g.valid) << g.text;
        ++valid_seen;
        ASSERT_EQ(props::emitters_failure(m, g.bilateral), "") << g.text;
    }
    EXPECT_GE(valid_seen, 1000);
    EXPECT_GT(invalid_seen, 0);
}
