#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "srt/cli.hpp"
#include "srt/io.hpp"
#include "test_support.hpp"

using srt::test::TempDir;
namespace cli = srt::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "srt_cli");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::vector<std::string> kSmall{"--K", "16", "--L", "12", "--M", "48"};

std::vector<std::string> with(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_CASE("usage and argument errors") {
  const Result help = run({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("reconstruct") != std::string::npos);
  CHECK(run({}).code == cli::kExitValidation);
  const Result unknown = run({"reconstruct", "--bogus", "1"});
  CHECK(unknown.code == cli::kExitValidation);
  CHECK(unknown.err.find("error") != std::string::npos);
  CHECK(run({"frobnicate"}).code == cli::kExitValidation);
  CHECK(run({"forward", "--out", "x"}).code == cli::kExitValidation);  // missing --phantom
  CHECK(run({"reconstruct", "--help"}).out.find("--method") != std::string::npos);
}

TEST_CASE("end-to-end workflow") {
  TempDir dir;
  const auto p = [&](const char* n) { return (dir / n).string(); };
  REQUIRE(run({"phantom", "--out", p("ball.txt")}).code == 0);
  REQUIRE(run({"phantom", "--demo", "--out", p("demo.txt")}).code == 0);
  REQUIRE(run(with({"forward", "--phantom", p("ball.txt"), "--out", p("g.srtdat")}, kSmall)).code == 0);
  const srt::DataGrid d = srt::io::read_data(p("g.srtdat"));
  CHECK(d.geometry().K == 16);
  CHECK(d.geometry().a2 == 0.8);

  REQUIRE(run({"noise", "--in", p("g.srtdat"), "--seed", "3", "--out", p("n1.srtdat")}).code == 0);
  REQUIRE(run({"noise", "--in", p("g.srtdat"), "--seed", "3", "--out", p("n2.srtdat")}).code == 0);
  CHECK(slurp(p("n1.srtdat")) == slurp(p("n2.srtdat")));
  CHECK(slurp(p("n1.srtdat")) != slurp(p("g.srtdat")));
  CHECK(run({"noise", "--in", p("g.srtdat"), "--level", "-1", "--out", p("bad.srtdat")}).code == cli::kExitValidation);

  REQUIRE(run({"reconstruct", "--in", p("g.srtdat"), "--method", "inv3d", "--Nx", "10", "--out", p("inv.srtvol")}).code == 0);
  REQUIRE(run({"reconstruct", "--in", p("g.srtdat"), "--method", "ubp3d", "--Nx", "10", "--Lz", "8", "--out", p("ubp.srtvol")}).code == 0);
  CHECK(srt::io::read_volume(p("ubp.srtvol")).shape().lz == 8);
  REQUIRE(run({"reconstruct", "--in", p("g.srtdat"), "--Nx", "10", "--threads", "3", "--out", p("inv3.srtvol")}).code == 0);
  CHECK(slurp(p("inv.srtvol")) == slurp(p("inv3.srtvol")));

  REQUIRE(run({"rasterize", "--phantom", p("ball.txt"), "--Nx", "10", "--Lz", "12", "--out", p("truth.srtvol")}).code == 0);
  const Result self = run({"compare", "--a", p("inv.srtvol"), "--b", p("inv.srtvol")});
  CHECK(self.code == 0);
  CHECK(self.out == "0\n");
  const Result cmp = run({"compare", "--a", p("inv.srtvol"), "--b", p("truth.srtvol"), "--mask", "shrunk", "--a1", "1", "--a2", "0.8"});
  CHECK(cmp.code == 0);
  CHECK(std::stod(cmp.out) > 0.0);
  CHECK(std::stod(cmp.out) < 1.0);
  CHECK(run({"compare", "--a", p("inv.srtvol"), "--b", p("ubp.srtvol")}).code == cli::kExitValidation);
  CHECK(run({"compare", "--a", p("inv.srtvol"), "--b", p("truth.srtvol"), "--mask", "cube"}).code == cli::kExitValidation);

  REQUIRE(run({"slice", "--in", p("inv.srtvol"), "--axis", "vertical", "--index", "0", "--out", p("v.pgm")}).code == 0);
  CHECK(slurp(p("v.pgm")).rfind("P5\n21 13\n255\n", 0) == 0);
  CHECK(run({"slice", "--in", p("inv.srtvol"), "--index", "99", "--out", p("x.pgm")}).code == cli::kExitValidation);
}

TEST_CASE("error classes map to exit codes") {
  TempDir dir;
  const auto p = [&](const char* n) { return (dir / n).string(); };
  REQUIRE(run({"phantom", "--out", p("ball.txt")}).code == 0);
  REQUIRE(run(with({"forward", "--phantom", p("ball.txt"), "--out", p("g.srtdat")}, kSmall)).code == 0);
  const Result circ = run({"reconstruct", "--in", p("g.srtdat"), "--method", "circular", "--Nx", "8", "--out", p("c.srtvol")});
  CHECK(circ.code == cli::kExitValidation);
  CHECK(circ.err.find("geometry") != std::string::npos);
  CHECK(run({"reconstruct", "--in", p("g.srtdat"), "--method", "fbp", "--out", p("c.srtvol")}).code == cli::kExitValidation);
  CHECK(run({"reconstruct", "--in", p("missing.srtdat"), "--out", p("c.srtvol")}).code == cli::kExitIo);
  CHECK(run({"reconstruct", "--in", p("g.srtdat"), "--Nx", "8", "--out", p("nodir/c.srtvol")}).code == cli::kExitIo);
  CHECK(run({"reconstruct", "--in", p("ball.txt"), "--out", p("c.srtvol")}).code == cli::kExitIo);
  CHECK(run(with({"forward", "--phantom", p("ball.txt"), "--a1", "0", "--out", p("z.srtdat")}, kSmall)).code == cli::kExitValidation);
  CHECK(run({"forward", "--phantom", p("missing.txt"), "--out", p("z.srtdat")}).code == cli::kExitIo);
  CHECK(run({"bench", "--sizes", "8,6,10", "--out", p("b.csv")}).code == cli::kExitValidation);
}

TEST_CASE("bench writes CSV") {
  TempDir dir;
  const Result r = run({"bench", "--sizes", "4,5,6", "--out", (dir / "b.csv").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("Nx,N,datapoints,seconds\n4,", 0) == 0);
  CHECK(r.out.find("slope,") != std::string::npos);
  CHECK(slurp(dir / "b.csv") == r.out);
}
