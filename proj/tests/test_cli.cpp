#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "vlink/vlink.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(VLINK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(VLINK_DATA_DIR) + "/" + name; }

TEST(Cli, EvalUnknot) {
  auto r = run("eval --diagram " + data("unknot.txt") + " --tensor " + data("rid_n3.txt"));
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["value"].get<double>(), 3.0);
  EXPECT_EQ(j["exact"], "3");
}

TEST(Cli, EvalBruteMatches) {
  auto a = nlohmann::json::parse(run("eval --diagram " + data("beta.txt") + " --tensor " + data("rid_n2.txt")).out);
  auto b = nlohmann::json::parse(run("eval --brute --diagram " + data("beta.txt") + " --tensor " + data("rid_n2.txt")).out);
  EXPECT_EQ(a["exact"], "4");
  EXPECT_EQ(b["exact"], "4");
}

TEST(Cli, CheckRMatrix) {
  auto r = run("check-rmatrix --diagram-level --tensor " + data("rid_n2.txt"));
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["exact_residuals"], nlohmann::json({"0", "0", "0"}));
  EXPECT_EQ(j["is_rmatrix"], true);

  auto z = run("check-rmatrix --tensor " + data("zero_n2.txt"));
  EXPECT_EQ(z.code, 1);
  EXPECT_EQ(nlohmann::json::parse(z.out)["exact_residuals"], nlohmann::json({"2", "4", "0"}));
}

TEST(Cli, JoinCurlWithBeta) {
  auto r = run("join --left " + data("curl.txt") + " --right " + data("beta.txt") + " --k 1");
  ASSERT_EQ(r.code, 0);
  auto x = vlink::parse_quantum(r.out);
  ASSERT_EQ(x.size(), 1u);
  std::ifstream curl(data("curl.txt"));
  EXPECT_EQ(x.coefficient(vlink::parse_diagram(curl)), 2);
}

TEST(Cli, JoinRejectsLargeK) {
  EXPECT_EQ(run("join --left " + data("curl.txt") + " --right " + data("beta.txt") + " --k 2").code, 2);
}

TEST(Cli, GramFromDirectory) {
  auto r = run("gram --family " + data("family") + " --k 0 --circle-power=-2");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["family"].size(), 4u);
  EXPECT_EQ(j["psd"], true);
}

TEST(Cli, GramEnumerated) {
  auto r = run("gram --enumerate 1 --k 1 --tensor " + data("rid_n2.txt"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out)["family"].size(), 5u);
}

TEST(Cli, BrauerSpectrumAndEigencheck) {
  auto s = run("brauer --ground 4 --x 1/2 --spectrum");
  ASSERT_EQ(s.code, 0) << s.out;
  EXPECT_EQ(nlohmann::json::parse(s.out)["all_matched"], true);

  auto e = run("brauer --ground 8 --x=-3 --eigencheck 6,2 --tableau '1,3,4;2'");
  ASSERT_EQ(e.code, 0) << e.out;
  auto j = nlohmann::json::parse(e.out)["eigencheck"];
  EXPECT_EQ(j["A_v_equals_mu_v"], true);
  EXPECT_EQ(j["AQ_u_equals_Q_mu_u"], true);
  EXPECT_GT(j["u_F"].get<long long>(), 0);
}

TEST(Cli, BrauerPsdScan) {
  auto r = run("brauer --ground 8 --psd-scan=-3,-2");
  ASSERT_EQ(r.code, 0);
  auto t = nlohmann::json::parse(r.out)["psd_scan"];
  EXPECT_EQ(t[0]["psd"], false);
  EXPECT_EQ(t[1]["psd"], true);
}

TEST(Cli, SolveWritesLoadableTensor) {
  const auto path = std::filesystem::temp_directory_path() / "vlink_cli_solve_n1.txt";
  auto r = run("solve --n 1 --seed 4 --out " + path.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out)["converged"], true);
  auto c = run("check-rmatrix --tol 1e-5 --tensor " + path.string());
  EXPECT_EQ(c.code, 0) << c.out;
  std::filesystem::remove(path);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("eval --diagram /nonexistent --tensor " + data("rid_n2.txt")).code, 2);
  EXPECT_EQ(run("eval --diagram " + data("rid_n2.txt") + " --tensor " + data("rid_n2.txt")).code, 2);
  EXPECT_EQ(run("gram --family " + data("family") + " --k 0").code, 2);
  EXPECT_EQ(run("brauer --ground 7").code, 2);
}

}  // namespace
