// Runs the command-line tool as a subprocess.
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string output;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(APF_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Result r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "apf_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path res123() {
  const auto p = scratch() / "res123.csv";
  std::ofstream(p) << "lambda,re_c,im_c\n1,1,0\n2,1,0\n3,1,0\n";
  return p;
}

// Column `name` of the last row of a headed CSV.
double csv_value(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line, header, last;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header.empty()) header = line;
    last = line;
  }
  std::istringstream h(header), v(last);
  std::string key, value;
  while (std::getline(h, key, ',') && std::getline(v, value, ','))
    if (key == name) return std::stod(value);
  FAIL("column not found: " << name);
  return 0;
}

}  // namespace

TEST_CASE("moments example") {
  const auto r = run("moments --spec " + res123().string() + " --order 3 --Y 10000");
  REQUIRE(r.code == 0);
  CHECK(r.output.find("\"theoretical\": 18.0") != std::string::npos);
  CHECK(r.output.find("\"header\"") != std::string::npos);
}

TEST_CASE("hyp-count example") {
  const auto r = run("hyp-count --group pslz --s 0 --z i --w i");
  REQUIRE(r.code == 0);
  CHECK(r.output.rfind("#", 0) == 0);
  CHECK(r.output.find("\n0,2,") != std::string::npos);
}

TEST_CASE("shc example") {
  const auto r = run("shc --R 1 --t i/2");
  REQUIRE(r.code == 0);
  CHECK(std::abs(csv_value(r.output, "re") - 2 * M_PI * (std::cosh(1.0) - 1)) < 1e-8);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("shc --no-such-flag").code == 2);
  CHECK(run("moments").code == 2);  // --spec is required
  CHECK(run("moments --spec /nonexistent.csv").code == 2);
}

TEST_CASE("computation errors exit with 1") {
  const auto bad = scratch() / "zero.csv";
  std::ofstream(bad) << "0,1,0\n";
  const auto r = run("spectrum --spec " + bad.string());
  CHECK(r.code == 1);
  CHECK(r.output.find("non-positive frequency") != std::string::npos);

  const auto budget = run("gauss --y0 1 --y1 2000 --step 1");
  CHECK(budget.code == 1);
  CHECK(budget.output.find("budget exceeded") != std::string::npos);
  CHECK(run("--count-limit 5000000 gauss --y0 1990 --y1 2000 --step 1").code == 0);
}

TEST_CASE("outputs carry a header and are byte-identical across runs") {
  const auto dir = scratch();
  const std::string spec = res123().string();
  const std::string cases[] = {
      "eval --spec " + spec + " --y0 0 --y1 50 --step 0.01 --schedule constant --x0 10",
      "dist --spec " + spec + " --Y 1000 --bins 100",
      "moments --spec " + spec + " --order 4 --Y 500 1000",
      "hyp-variance --T 3 4",
      "spectrum --source gauss --n-max 50",
  };
  int k = 0;
  for (const auto& args : cases) {
    const auto path = dir / ("run" + std::to_string(k) + ".out");
    REQUIRE(run(args + " --out " + path.string()).code == 0);
    const auto text = slurp(path);
    REQUIRE(run("--threads 3 " + args + " --out " + path.string()).code == 0);
    CHECK(!text.empty());
    CHECK((text[0] == '#' || text.rfind("{\n  \"header\"", 0) == 0));
    CHECK(text.find("apf ") != std::string::npos);
    CHECK(text.find("command: ") != std::string::npos);
    CHECK(text == slurp(path));
    ++k;
  }
}

TEST_CASE("input hashes appear in the header") {
  const auto r = run("spectrum --spec " + res123().string());
  REQUIRE(r.code == 0);
  CHECK(r.output.find("fnv1a64") != std::string::npos);
}
