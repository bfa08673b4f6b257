#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcss/bundle.hpp"
#include "qcss/cli.hpp"

using namespace qcss;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return std::string(QCSS_TEST_TMPDIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST(Cli, BuildWritesImportableBundle) {
  const auto path = tmp("cli_c32.json");
  auto r = run({"build", "--construction", "C", "-p", "3", "-n", "2", "--f-poly", "0,1", "--out", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const CSSet s = import_bundle(slurp(path));
  EXPECT_EQ(s.matrices.size(), 81u);
  EXPECT_EQ(s.K(), 8u);
  EXPECT_EQ(s.N(), 8u);
  EXPECT_TRUE(s == generate(Construction::C, std::make_shared<const FieldCtx>(FieldCtx::build(3, 2))));
}

TEST(Cli, BuildCsvMatchesLibraryExport) {
  const auto path = tmp("cli_e32.csv");
  auto r = run({"build", "-c", "E", "-p", "3", "-n", "2", "--out", path, "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const CSSet s = generate(Construction::E, std::make_shared<const FieldCtx>(FieldCtx::build(3, 2)));
  EXPECT_EQ(slurp(path), export_csv(s));
}

TEST(Cli, InvalidParameters) {
  auto e = run({"build", "--construction", "E", "-p", "2", "-n", "1", "--out", tmp("never.json")});
  EXPECT_EQ(e.code, kExitInvalidParams);
  EXPECT_NE(e.err.find("q = p^n > 2"), std::string::npos) << e.err;
  EXPECT_TRUE(e.out.empty());
  EXPECT_EQ(run({"verify", "-c", "C", "-p", "5", "-n", "1"}).code, kExitInvalidParams);
  EXPECT_EQ(run({"verify", "-c", "A", "-p", "6", "-n", "1"}).code, kExitInvalidParams);
  EXPECT_EQ(run({"verify", "-c", "X", "-p", "3", "-n", "1"}).code, kExitInvalidParams);
  EXPECT_EQ(run({"verify", "-c", "C", "-p", "3", "-n", "2", "--f-poly", "0,0,1"}).code, kExitInvalidParams);
  EXPECT_EQ(run({"verify", "-c", "A", "-p", "2", "-n", "5"}).code, kExitInvalidParams);
  EXPECT_EQ(run({"build", "-c", "A", "-p", "2", "-n", "2", "--out", tmp("x"), "--format", "xml"}).code,
            kExitInvalidParams);
  EXPECT_EQ(run({"nonsense"}).code, kExitInvalidParams);
}

TEST(Cli, IoFailure) {
  auto r = run({"build", "-c", "A", "-p", "2", "-n", "2", "--out", "/nonexistent-dir/q.json"});
  EXPECT_EQ(r.code, kExitIo);
}

TEST(Cli, VerifyReports) {
  auto a = run({"verify", "-c", "A", "-p", "2", "-n", "3"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_NE(a.out.find("theta_max = 8.000000"), std::string::npos) << a.out;
  EXPECT_NE(a.out.find("PASS"), std::string::npos);

  auto f = run({"verify", "-c", "F", "-p", "2", "-n", "3", "--parallel", "2"});
  EXPECT_EQ(f.code, kExitOk);
  EXPECT_NE(f.out.find("auto-correlation is zero at every nonzero shift"), std::string::npos);

  auto d = run({"verify", "-c", "D", "-p", "3", "-n", "2"});
  EXPECT_EQ(d.code, kExitOk);
  EXPECT_NE(d.out.find("rho = "), std::string::npos);

  auto d2 = run({"verify", "-c", "D", "-p", "2", "-n", "2"});
  EXPECT_EQ(d2.code, kExitOk);
  EXPECT_NE(d2.out.find("warning: alphabet"), std::string::npos);
}

TEST(Cli, ProfileCsv) {
  const auto path = tmp("cli_profile_f.csv");
  auto r = run({"profile", "-c", "F", "-p", "2", "-n", "3", "--pairs", "0x0,0x1,5x5", "--out", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "m1,m2,tau,magnitude,kind,max_corr");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.find(",auto,") != std::string::npos) EXPECT_NE(line.find(",0.000000000,auto,"), std::string::npos);
    EXPECT_NE(line.find(",8.000000000"), std::string::npos);
  }
  EXPECT_EQ(rows, 5u + 6u + 5u);

  EXPECT_EQ(run({"profile", "-c", "F", "-p", "2", "-n", "3", "--pairs", "", "--out", path}).code,
            kExitInvalidParams);
  EXPECT_EQ(run({"profile", "-c", "F", "-p", "2", "-n", "3", "--pairs", "0x99", "--out", path}).code,
            kExitInvalidParams);
  EXPECT_EQ(run({"profile", "-c", "F", "-p", "2", "-n", "3", "--pairs", "0-1", "--out", path}).code,
            kExitInvalidParams);
}

TEST(Cli, ProfileAllPairs) {
  const auto path = tmp("cli_profile_e.csv");
  ASSERT_EQ(run({"profile", "-c", "E", "-p", "2", "-n", "2", "--pairs", "all", "--out", path}).code, kExitOk);
  std::istringstream in(slurp(path));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  // 9 matrices of length 3: 9 * 2 auto rows and 72 * 3 cross rows, plus the header.
  EXPECT_EQ(rows, 1u + 9u * 2u + 72u * 3u);
}

TEST(Cli, Bounds) {
  auto r = run({"bounds", "--M", "81", "--K", "8", "--N", "8", "--mode", "aperiodic"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("5.548"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("6.385"), std::string::npos) << r.out;
  auto small = run({"bounds", "--M", "20", "--K", "8", "--N", "8"});
  EXPECT_NE(small.out.find("M >= 3K"), std::string::npos);
  EXPECT_EQ(run({"bounds", "--M", "0", "--K", "8", "--N", "8"}).code, kExitInvalidParams);
  EXPECT_EQ(run({"bounds", "--M", "8", "--K", "9", "--N", "8"}).code, kExitOk);
}

TEST(Cli, Table) {
  auto r = run({"table"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("p^{2n}"), std::string::npos);
  EXPECT_NE(r.out.find("(p^n-1)^2"), std::string::npos);
  EXPECT_NE(r.out.find("p^{2n}-p^n"), std::string::npos);
  EXPECT_EQ(r.out.find("known"), std::string::npos);
  auto k = run({"table", "--known"});
  EXPECT_NE(k.out.find("known"), std::string::npos);
}

TEST(Cli, Trend) {
  auto r = run({"trend", "-c", "B", "-p", "3", "--n-list", "1,2,3,4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("81"), std::string::npos);
  EXPECT_EQ(run({"trend", "-c", "B", "-p", "4", "--n-list", "1"}).code, kExitInvalidParams);
}

TEST(Cli, IdenticalInvocationsAreByteIdentical) {
  const auto a = tmp("cli_det_a.json"), b = tmp("cli_det_b.json");
  ASSERT_EQ(run({"build", "-c", "B", "-p", "3", "-n", "2", "--out", a}).code, kExitOk);
  ASSERT_EQ(run({"build", "-c", "B", "-p", "3", "-n", "2", "--out", b}).code, kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(run({"verify", "-c", "E", "-p", "5", "-n", "1"}).out, run({"verify", "-c", "E", "-p", "5", "-n", "1"}).out);
}
