#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(POLYDEP_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, ClassifyGolden) {
  Result r = run("classify --poly \"[-1,-1,1]\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "{\"verdict\":\"dependent\",\"relation\":[2,2],\"certificate\":\"closed_form\","
            "\"reason\":\"constant_term_unit\"}\n");
}

TEST(Cli, Nu) {
  Result r = run("nu --n 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "16/3");
  EXPECT_NE(r.out.find("5.333333333333"), std::string::npos);
}

TEST(Cli, CensusRowIsExactAndStable) {
  std::string args = "census --degree 2 --height 10 --family monic --classes M,I,R --no-timing";
  Result a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out,
            "degree,height,family,class,count_certain,count_unknown,elapsed_ms,version\n"
            "2,10,monic,M,110,0,0,1.0.0\n"
            "2,10,monic,I,65,0,0,1.0.0\n"
            "2,10,monic,R,45,0,0,1.0.0\n");
}

TEST(Cli, CensusShardsSum) {
  Result full = run("census --degree 3 --height 3 --classes M --no-timing");
  ASSERT_EQ(full.code, 0);
  auto count = [](const std::string& out) {
    std::string row = out.substr(out.find('\n') + 1);
    for (int i = 0; i < 4; ++i) row = row.substr(row.find(',') + 1);
    return std::stoul(row.substr(0, row.find(',')));
  };
  unsigned long sum = 0;
  for (int i = 0; i < 2; ++i) {
    Result s = run("census --degree 3 --height 3 --classes M --no-timing --shard " + std::to_string(i) + "/2");
    ASSERT_EQ(s.code, 0);
    sum += count(s.out);
  }
  EXPECT_EQ(sum, count(full.out));
}

TEST(Cli, ErrorExits) {
  Result bad = run("classify --poly \"[1,x,2]\"");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("'x'"), std::string::npos);
  EXPECT_EQ(std::count(bad.out.begin(), bad.out.end(), '\n'), 1);
  EXPECT_EQ(run("census --degree 2").code, 2);
  EXPECT_EQ(run("census --degree 2 --height 3 --classes Z").code, 2);
  EXPECT_EQ(run("nu --n 1").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("classify --poly \"[0]\"").code, 2);
}

TEST(Cli, VerifySmallSuite) {
  Result r = run("verify --suite paper --degree 5 --family monic");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}
