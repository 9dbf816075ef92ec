#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "photonent/figures.hpp"

using namespace photonent;
using namespace photonent::figures;

namespace {

RunConfig small(Command c) {
  RunConfig cfg;
  cfg.command = c;
  cfg.grid_n = 16;
  cfg.tau_n = 7;
  return cfg;
}

int column(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == name) return static_cast<int>(i);
  ADD_FAILURE() << "no column " << name;
  return 0;
}

}  // namespace

TEST(Csv, NumberFormat) {
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-2.5e-20), "-2.5e-20");
  EXPECT_EQ(format_number(123456789.123456), "123456789.123");
}

TEST(Csv, Layout) {
  const CsvTable t{{"a", "b"}, {{1.0, -0.0}, {0.5, 2.0}}};
  EXPECT_EQ(to_csv(t), "# photon-ent v1\na,b\n1,0\n0.5,2\n");
}

TEST(Sweep, ParseAndCount) {
  const Sweep s = Sweep::parse("0:1:0.05");
  EXPECT_EQ(s.count(), 21);
  EXPECT_DOUBLE_EQ(s.value(20), 1.0);
  EXPECT_EQ(Sweep::parse("0.1:3:0.1").count(), 30);
  EXPECT_EQ(Sweep::parse("0:1:0.3").count(), 4);
  EXPECT_THROW(Sweep::parse("1:0:0.1"), UsageError);
  EXPECT_THROW(Sweep::parse("0:1:0"), UsageError);
  EXPECT_THROW(Sweep::parse("0:1"), UsageError);
  EXPECT_THROW(Sweep::parse("0:1:0.1x"), UsageError);
  EXPECT_THROW(Sweep::parse("a:b:c"), UsageError);
}

TEST(Config, Validation) {
  RunConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.grid_n = 4;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg = RunConfig{};
  cfg.tau_n = 40;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg = RunConfig{};
  cfg.p = 1.5;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg = RunConfig{};
  cfg.sigma = 0.0;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg = RunConfig{};
  cfg.sigma_tau = -1.0;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg = RunConfig{};
  cfg.cutoff = 0.0;
  EXPECT_THROW(cfg.validate(), UsageError);
}

TEST(Config, DefaultSweeps) {
  RunConfig cfg;
  cfg.command = Command::two;
  EXPECT_EQ(cfg.effective_sweep().count(), 30);
  cfg.mixed = true;
  EXPECT_EQ(cfg.effective_sweep().count(), 31);
  cfg.command = Command::vacuum;
  EXPECT_EQ(cfg.effective_sweep().count(), 21);
  cfg.command = Command::single;
  EXPECT_EQ(cfg.effective_sweep().lo, 0.0);
  cfg.sweep = Sweep{0.0, 1.0, 0.5};
  EXPECT_EQ(cfg.effective_sweep().count(), 3);
}

TEST(Single, ZeroJitterRowIsAllOnes) {
  RunConfig cfg = small(Command::single);
  cfg.sweep = Sweep{0.0, 1.0, 0.5};
  const CsvTable t = cmd_single(cfg);
  ASSERT_EQ(t.rows.size(), 3u);
  ASSERT_EQ(t.header.size(), 7u);
  EXPECT_EQ(t.rows[0][0], 0.0);
  for (std::size_t c = 1; c < t.header.size(); ++c) EXPECT_NEAR(t.rows[0][c], 1.0, 1e-10) << t.header[c];
  for (const auto& row : t.rows) EXPECT_NEAR(row[column(t, "ln_numeric")], row[column(t, "ln_purity_relation")], 1e-10);
}

TEST(Single, NumericPurityTracksModelNotQuotedForm) {
  RunConfig cfg;
  cfg.command = Command::single;
  cfg.sweep = Sweep{1.0, 1.0 + 1e-9, 1.0};
  const CsvTable t = cmd_single(cfg);
  ASSERT_EQ(t.rows.size(), 1u);
  const auto& r = t.rows[0];
  EXPECT_NEAR(r[column(t, "purity_numeric")], r[column(t, "purity_model")], 1e-2);
  EXPECT_GT(r[column(t, "purity_numeric")] - r[column(t, "purity_analytic")], 0.3);
}

TEST(Two, PureResidualsVanish) {
  RunConfig cfg = small(Command::two);
  cfg.grid_n = 24;
  cfg.sweep = Sweep{0.5, 1.5, 0.5};
  const CsvTable t = cmd_two(cfg);
  ASSERT_EQ(t.rows.size(), 3u);
  for (const auto& row : t.rows) {
    EXPECT_LE(std::abs(row[column(t, "E_relation_residual")]), 1e-8);
    EXPECT_LE(std::abs(row[column(t, "LN_relation_residual")]), 1e-8);
    EXPECT_GT(row[column(t, "LN_in")], row[column(t, "E_in")]);
  }
}

TEST(Two, PureSweepMustStayPositive) {
  RunConfig cfg = small(Command::two);
  cfg.sweep = Sweep{0.0, 1.0, 0.5};
  EXPECT_THROW(cmd_two(cfg), UsageError);
}

TEST(Two, MixedZeroJitterMatchesPureRelation) {
  RunConfig cfg = small(Command::two);
  cfg.mixed = true;
  cfg.sweep = Sweep{0.0, 2.0, 1.0};
  const CsvTable t = cmd_two(cfg);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_NEAR(t.rows[0][column(t, "purity")], 1.0, 1e-10);
  EXPECT_NEAR(t.rows[0][column(t, "LN_out_numeric")], t.rows[0][column(t, "LN_out_pure_relation")], 1e-8);
  for (const auto& row : t.rows) {
    EXPECT_LE(row[column(t, "LN_out_numeric")], row[column(t, "LN_out_pure_relation")] + 1e-8);
    EXPECT_LE(row[column(t, "LN_filtered")], row[column(t, "LN_out_numeric")] + 1e-10);
  }
  EXPECT_LT(t.rows[2][column(t, "purity")], t.rows[1][column(t, "purity")]);
}

TEST(Vacuum, RowsBehave) {
  RunConfig cfg = small(Command::vacuum);
  cfg.sweep = Sweep{0.0, 1.0, 0.25};
  const CsvTable t = cmd_vacuum(cfg);
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_NEAR(t.rows[0][column(t, "LN_out")], 0.0, 1e-12);
  EXPECT_NEAR(t.rows[0][column(t, "LN_filtered")], 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(t.rows[4][0], 1.0);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_LE(t.rows[i][column(t, "LN_filtered")], t.rows[i][column(t, "LN_out")] + 1e-10);
    if (i > 0) EXPECT_GE(t.rows[i][column(t, "LN_out")], t.rows[i - 1][column(t, "LN_out")] - 1e-10);
  }
}

TEST(Vacuum, SweepOutsideUnitIntervalRejected) {
  RunConfig cfg = small(Command::vacuum);
  cfg.sweep = Sweep{0.5, 1.5, 0.5};
  EXPECT_THROW(cmd_vacuum(cfg), UsageError);
}

TEST(PurityScan, ShapeAndZeroJitterRow) {
  RunConfig cfg = small(Command::purity_scan);
  cfg.sweep = Sweep{0.0, 1.0, 0.5};
  const CsvTable t = cmd_purity_scan(cfg);
  ASSERT_EQ(t.header.size(), 5u);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_NEAR(t.rows[0][column(t, "purity_single")], 1.0, 1e-10);
  EXPECT_NEAR(t.rows[0][column(t, "purity_two")], 1.0, 1e-10);
  EXPECT_NEAR(t.rows[0][column(t, "LN_single")], 1.0, 1e-10);
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    EXPECT_LT(t.rows[i][column(t, "purity_single")], t.rows[i - 1][column(t, "purity_single")]);
    EXPECT_LT(t.rows[i][column(t, "purity_two")], t.rows[i - 1][column(t, "purity_two")]);
  }
}

TEST(Output, Deterministic) {
  RunConfig cfg = small(Command::two);
  cfg.mixed = true;
  cfg.sweep = Sweep{0.0, 1.0, 0.5};
  EXPECT_EQ(to_csv(cmd_two(cfg)), to_csv(cmd_two(cfg)));
}

TEST(Fixtures, ColorStates) {
  EXPECT_NEAR(log_negativity(color_mixed_singlet()), 1.0, 1e-12);
  EXPECT_NEAR(purity(color_mixed_singlet()), 0.5, 1e-12);
  EXPECT_NEAR(log_negativity(two_color_delocalized_photon()), std::log2(1.0 + std::sqrt(0.5)), 1e-12);
}

TEST(Checks, PassWithWarnings) {
  std::ostringstream os;
  EXPECT_TRUE(run_checks(os));
  const std::string s = os.str();
  EXPECT_NE(s.find("all checks passed"), std::string::npos);
  EXPECT_NE(s.find("WARNING"), std::string::npos);
  EXPECT_EQ(s.find("FAIL "), std::string::npos);
}
