#include "sfcna/cli.hpp"
#include "sfcna/ingest.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sfcna;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data_file(const char* name) { return (std::filesystem::path(SFCNA_DATA_DIR) / name).string(); }

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = std::filesystem::temp_directory_path() /
               ("sfcna_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string write(const char* name, const std::string& text)
    {
        const auto p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string write_dataset(const char* name, const EconomyYear& y)
    {
        const auto p = dir_ / name;
        save_csv(p, {{y.year, y}});
        return p.string();
    }

    std::filesystem::path dir_;
};

} // namespace

TEST(Cli, ValidateFixtureInBothModes)
{
    auto r = cli({"validate", "--fixture-2011"});
    EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
    EXPECT_NE(r.out.find("year 2011 mode reported tolerance 0.00"), std::string::npos);
    EXPECT_NE(r.out.find("market D11 paid 79149.00 received 79149.00 residual 0.00 ok"), std::string::npos);
    EXPECT_NE(r.out.find("violations 0"), std::string::npos);

    r = cli({"validate", "--fixture-2011", "--mode", "recompute"});
    EXPECT_EQ(r.code, kExitOk) << r.out;
    EXPECT_NE(r.out.find("tolerance 15.00"), std::string::npos);
    EXPECT_NE(r.out.find("chain HS B8N reported 1420.00 recomputed 1420.00 residual 0.00 ok"), std::string::npos);
}

TEST_F(CliFiles, ValidateReportsPerturbedMarket)
{
    auto y = fixture_2011();
    y[Sector::HS].set(Item::D11, Direction::received, Money::units(78678));
    const auto path = write_dataset("bad.csv", y);
    auto r = cli({"validate", "--data", path});
    EXPECT_EQ(r.code, kExitViolations);
    EXPECT_NE(r.out.find("market D11 paid 79149.00 received 79150.00 residual -1.00 VIOLATION"), std::string::npos)
        << r.out;
    EXPECT_NE(r.out.find("  HS paid 4176.00 received 78678.00"), std::string::npos);
    EXPECT_NE(r.out.find("chain HS B8N reported 1420.00 recomputed 1421.00 residual 1.00 VIOLATION"),
              std::string::npos);
    EXPECT_NE(r.out.find("violations 5"), std::string::npos) << r.out;
}

TEST_F(CliFiles, ValidateChainResidualAgainstTolerance)
{
    auto y = fixture_2011();
    y[Sector::HS].set(Item::D6, Direction::paid, Money::units(25265));
    const auto path = write_dataset("printed.csv", y);
    auto r = cli({"validate", "--data", path});
    EXPECT_EQ(r.code, kExitViolations);
    EXPECT_NE(r.out.find("chain HS B6N reported 107191.00 recomputed 107203.00 residual 12.00 VIOLATION"),
              std::string::npos)
        << r.out;
    // The same edit unbalances the social-benefit market.
    EXPECT_NE(r.out.find("market D61+D62 paid 60964.00 received 60976.00 residual -12.00 VIOLATION"),
              std::string::npos);
    EXPECT_NE(r.out.find("violations 4"), std::string::npos);
    r = cli({"validate", "--data", path, "--tolerance", "15"});
    EXPECT_EQ(r.code, kExitViolations);
    EXPECT_NE(r.out.find("residual 12.00 ok"), std::string::npos);
    EXPECT_NE(r.out.find("violations 1"), std::string::npos);
}

TEST(Cli, IdentitiesOnFixture)
{
    auto r = cli({"identities", "--fixture-2011"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, "year 2011\n"
                     "GDP expenditure 196869.00\n"
                     "GDP income 196869.00\n"
                     "GDP value_added 196869.00\n"
                     "GDP ok\n"
                     "national_income lhs 159081.00\n"
                     "national_income rhs 159081.00\n"
                     "national_income ok\n");
}

TEST_F(CliFiles, IdentitiesOnZeroAndPerturbedData)
{
    const auto empty = write("empty.csv", std::string(kCsvHeader) + "\n");
    auto r = cli({"identities", "--data", empty});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, "no data\n");

    EconomyYear zero;
    zero.year = 2000;
    zero[Sector::HS].set(Item::P31, Direction::paid, Money{});
    r = cli({"identities", "--data", write_dataset("zero.csv", zero)});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("GDP expenditure 0.00"), std::string::npos);
    EXPECT_NE(r.out.find("national_income ok"), std::string::npos);
    EXPECT_NE(r.err.find("no entries for sector NFS"), std::string::npos);

    auto y = fixture_2011();
    y[Sector::HS].set(Item::P31, Direction::paid, Money::units(105772));
    r = cli({"identities", "--data", write_dataset("c.csv", y)});
    EXPECT_EQ(r.code, kExitViolations);
    EXPECT_NE(r.out.find("GDP MISMATCH"), std::string::npos);
}

TEST(Cli, CompileMatrix)
{
    auto r = cli({"compile-matrix", "--in", data_file("three_sector.sfc")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, "HS: W = C + T + ΔH\nFS: C + G = W\nGS: T + ΔH = G\n");
    r = cli({"compile-matrix", "--in", data_file("three_sector.sfc"), "--emit", "graph"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("\"GS\" -> \"FS\" [label=\"G\"];"), std::string::npos);
    r = cli({"compile-matrix", "--in", data_file("three_sector.sfc"), "--emit", "taccounts"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("GS"), std::string::npos);
}

TEST_F(CliFiles, CompileMatrixErrors)
{
    const auto bad = write("bad.sfc", "matrix \"M\"\nsectors: HS, GS\nrow \"Taxes\": HS=-T\n");
    auto r = cli({"compile-matrix", "--in", bad});
    EXPECT_EQ(r.code, kExitViolations);
    EXPECT_NE(r.err.find("bad.sfc: line 3"), std::string::npos) << r.err;
    r = cli({"compile-matrix", "--in", (dir_ / "missing.sfc").string()});
    EXPECT_EQ(r.code, kExitUsage);
}

TEST(Cli, SimulateStationary)
{
    auto r = cli({"simulate", "--fixture-2011", "--config", data_file("stationary.conf")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.out.starts_with("period,quantity,value\n"));
    EXPECT_NE(r.out.find("0,GDP.expenditure,196869.00\n"), std::string::npos);
    EXPECT_NE(r.out.find("3,GDP.expenditure,196869.00\n"), std::string::npos);
    EXPECT_EQ(r.out.find("\n4,"), std::string::npos);
}

TEST_F(CliFiles, SimulateOverridesAndOutputFile)
{
    const auto out = (dir_ / "series.csv").string();
    auto r = cli({"simulate", "--fixture-2011", "--horizon", "2", "--driver", "0.02", "--out", out});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_NE(ss.str().find("2,goods.pool,"), std::string::npos);

    r = cli({"simulate", "--fixture-2011", "--horizon", "0"});
    EXPECT_EQ(r.code, kExitUsage);
    r = cli({"simulate", "--fixture-2011", "--config", write("s.conf", "horizon = 2\nshock.2.share.D11.HS = 0.5\n")});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("shares sum"), std::string::npos) << r.err;
    r = cli({"simulate", "--calibrate", write("e.csv", std::string(kCsvHeader) + "\n")});
    EXPECT_EQ(r.code, kExitUsage);
}

TEST(Cli, ReportJsonParses)
{
    auto r = cli({"report", "--fixture-2011", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_TRUE(doc.is_array());
    ASSERT_EQ(doc.size(), 1u);
    EXPECT_EQ(doc[0]["year"], 2011);
    r = cli({"report", "--fixture-2011"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("HS D6 paid 25277.00 (derived)"), std::string::npos);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(cli({"validate"}).code, kExitUsage);
    EXPECT_EQ(cli({"validate", "--fixture-2011", "--mode", "sideways"}).code, kExitUsage);
    EXPECT_EQ(cli({"validate", "--fixture-2011", "--data", "x.csv"}).code, kExitUsage);
    EXPECT_EQ(cli({"validate", "--data", "/nonexistent/x.csv"}).code, kExitUsage);
    EXPECT_EQ(cli({"compile-matrix"}).code, kExitUsage);
    EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST_F(CliFiles, SchemaErrorExitsTwo)
{
    auto r = cli({"validate", "--data", write("x.csv", std::string(kCsvHeader) + "\n2011,XX,P1,received,1\n")});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("row 2, field sector"), std::string::npos) << r.err;
}

TEST(Cli, DeterministicOutput)
{
    for (std::vector<std::string> args :
         {std::vector<std::string>{"report", "--fixture-2011", "--format", "json"},
          std::vector<std::string>{"simulate", "--fixture-2011", "--config", data_file("tax_shock.conf")}}) {
        const auto a = cli(args);
        const auto b = cli(args);
        EXPECT_EQ(a.code, kExitOk);
        EXPECT_EQ(a.out, b.out);
    }
}
