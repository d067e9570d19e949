#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "univoque/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace univoque;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> args;
  for (std::string a; in >> a;) args.push_back(a);
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("documented command lines") {
  CHECK(invoke("alpha --M 1 --base golden --n 6").out == "101010 period=(10)\n");
  CHECK(invoke("classify --M 1 --base tribonacci").out == "InClosureUNotInU\n");
  CHECK(invoke("gap --M 1 --base decimal:1.3 --n 10").out == "0\n");
  CHECK(invoke("gap --M 1 --base golden --n 10").out == "1/4\n");
  CHECK(invoke("beta --base tribonacci --n 4").out == "1110 period=111(0)\n");
  CHECK(invoke("remark4 --seq 1(10) --m 4").out == "(110100110010) below\n");
  CHECK(invoke("member --base golden --seq (10) --kind V").out == "In\n");
  CHECK(invoke("member --base golden --seq (10) --kind U").out.rfind("Out(", 0) == 0);
  CHECK(invoke("unique --base golden --x 1").out == "Out(1)\n");
  CHECK(invoke("dh-sym --base golden --kind U --kind2 V --n 6").out == "1/4\n");
}

TEST_CASE("exit codes") {
  CHECK(invoke("alpha --M 1 --base golden --n 6").code == 0);
  CHECK(invoke("alpha --base nonsense").code == 2);
  CHECK(invoke("alpha --base golden --bogus 3").code == 2);
  CHECK(invoke("frobnicate").code == 2);
  CHECK(invoke("alpha --base 1").code == 2);
  CHECK(invoke("alpha --base 5/2").code == 2);
  CHECK(invoke("enumerate --base golden --kind W").code == 2);
  CHECK(invoke("remark4 --seq 1(10) --m 3").code == 2);
  CHECK(invoke("kl --M 2").code == 0);
  CHECK(invoke("classify --M 2 --base kl").code == 2);
  CHECK(invoke("unique --base golden --x 0.618033988749894848204586834365638 --precision-bits 8").code == 3);
  CHECK(invoke("alpha --base 13/10 --n 8 --require-certified").code == 4);
  CHECK(invoke("alpha --base 13/10 --n 8").code == 0);
  CHECK(invoke("enumerate --base golden --n 4 --require-certified").code == 0);
  CHECK(invoke("--help").code == 0);
}

TEST_CASE("printed base specs parse back to the same base") {
  const Alphabet a(1);
  for (const char* spec : {"golden", "tribonacci", "kl", "kl:30", "13/10", "decimal:1.9", "rational:7/4",
                           "poly:-1,-1,-1,1@3/2,2"}) {
    BaseValue q = parse_base(spec, a);
    CHECK(parse_base(q.spec(), a) == q);
  }
  Result r = invoke("enumerate --base golden --n 3");
  std::string header = r.out.substr(0, r.out.find('\n'));
  std::string spec = header.substr(header.find("q=") + 2);
  spec = spec.substr(0, spec.find(' '));
  CHECK(parse_base(spec, a) == parse_base("golden", a));
}

TEST_CASE("output is deterministic") {
  for (const char* line : {"enumerate --base tribonacci --n 6 --format json", "continuity --base golden --side right --n 6 --steps 4 --threads 3",
                           "dh-real --base golden --kind U --kind2 V --n 8"}) {
    Result a = invoke(line), b = invoke(line);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("golden files") {
  const char* dir = std::getenv("UNIVOQUE_FIXTURES");
  REQUIRE(dir != nullptr);
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".cmd") continue;
    std::string line = slurp(entry.path());
    while (!line.empty() && line.back() == '\n') line.pop_back();
    std::filesystem::path expected = entry.path();
    expected.replace_extension(".out");
    Result r = invoke(line);
    CHECK_MESSAGE(r.code == 0, line);
    CHECK_MESSAGE(r.out == slurp(expected), line);
    ++seen;
  }
  CHECK(seen >= 5);
}
