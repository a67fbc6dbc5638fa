#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "ordtww/divisions.hpp"

namespace fs = std::filesystem;
using namespace ordtww;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("ordtww_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::exit_usage);
    CHECK(run({"nosuch"}).code == cli::exit_usage);
    CHECK(run({"gridrank"}).code == cli::exit_usage);
  }

  TEST_CASE("gridrank of the 16x16 checkerboard") {
    TempDir dir;
    auto m = dir.write("cb.txt", serialize_matrix(checkerboard(16)));
    Run r = run({"gridrank", m, "--max-k", "3"});
    CHECK(r.code == cli::exit_ok);
    CHECK(has_line(r.out, "gridrank=2"));
  }

  TEST_CASE("growth and class slices") {
    Run r = run({"growth", "M=00", "--n", "4"});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out == "count=9\n");
    Run c = run({"gen-class", "M=00", "--n", "2"});
    CHECK(has_line(c.out, "count=2"));
    CHECK(run({"growth", "P", "--n", "9"}).code == cli::exit_resource_limit);
    CHECK(run({"growth", "Q", "--n", "2"}).code == cli::exit_invalid_input);
  }

  TEST_CASE("pattern generation and decoding") {
    Run g = run({"gen-pattern", "--s", "eq", "--sigma", "2 1"});
    REQUIRE(g.code == cli::exit_ok);
    CHECK(parse_matrix(g.out) == Matrix::from_bits({{0, 1}, {1, 0}}));
    TempDir dir;
    auto m = dir.write("p.txt", g.out);
    Run d = run({"decode-pattern", m, "--eta", "0000"});
    CHECK(has_line(d.out, "decoded=1"));
    CHECK(has_line(d.out, "sigma=2 1"));
    Run cyc = run({"gen-pattern", "--s", "eq", "--sigma", "(12)", "--n", "3"});
    CHECK(parse_matrix(cyc.out) == Matrix::from_bits({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
    CHECK(run({"gen-pattern", "--sigma", "1 2"}).code == cli::exit_invalid_input);
    for (const char* sym : {"leR", "geR", "leC", "geC"}) {
      Run p = run({"gen-pattern", "--s", sym, "--sigma", "3 1 2"});
      REQUIRE(p.code == cli::exit_ok);
      auto file = dir.write(std::string(sym) + ".txt", p.out);
      CHECK(has_line(run({"decode-pattern", file, "--s", sym}).out, "sigma=3 1 2"));
    }
    CHECK(parse_matrix(run({"gen-pattern", "--s", "leC", "--sigma", "2 1"}).out) ==
          Matrix::from_bits({{1, 1}, {1, 0}}));
  }

  TEST_CASE("exact twin-width writes a sequence that verifies") {
    TempDir dir;
    auto m = dir.write("anti.txt", serialize_matrix(Matrix::from_bits({{0, 1}, {1, 0}})));
    auto seq = dir.path("seq.txt");
    Run r = run({"tww-exact", m, "--out", seq});
    CHECK(r.code == cli::exit_ok);
    CHECK(has_line(r.out, "tww=2"));
    Run v = run({"verify-seq", m, seq});
    CHECK(v.code == cli::exit_ok);
    CHECK(has_line(v.out, "valid=1"));
    auto bad = dir.write("bad.txt", "R 1 2\nR 1 2\n");
    Run b = run({"verify-seq", m, bad});
    CHECK(b.code == cli::exit_invalid_input);
    CHECK(has_line(b.out, "valid=0"));
    Run kk = run({"tww-exact", m, "--kk"});
    CHECK(has_line(kk.out, "kk=2"));
  }

  TEST_CASE("resource limits and malformed files") {
    TempDir dir;
    auto id = dir.write("id.txt", serialize_matrix(identity_matrix(8)));
    CHECK(run({"tww-exact", id, "--guard", "6"}).code == cli::exit_resource_limit);
    auto junk = dir.write("junk.txt", "garbage\n");
    Run r = run({"gridrank", junk});
    CHECK(r.code == cli::exit_invalid_input);
    CHECK(r.err.find("line 1") != std::string::npos);
    CHECK(run({"gridrank", dir.path("missing.txt")}).code == cli::exit_invalid_input);
  }

  TEST_CASE("approximation outcome") {
    TempDir dir;
    auto m = dir.write("c.txt", serialize_matrix(Matrix::constant(6, 6, Alphabet::binary(), 1)));
    auto cert = dir.path("cert.txt");
    Run r = run({"tww-approx", m, "--k", "1", "--out", cert});
    CHECK(r.code == cli::exit_ok);
    CHECK(has_line(r.out, "outcome=SEQ"));
    CHECK(has_line(r.out, "actual_error=0"));
    CHECK(run({"verify-seq", m, cert}).code == cli::exit_ok);
  }

  TEST_CASE("rich and Latin verification") {
    TempDir dir;
    auto m = dir.write("id.txt", serialize_matrix(identity_matrix(4)));
    auto d = dir.write("d.txt", "R 1 2 3\nC 1 2 3\n");
    Run ok = run({"verify-rich", m, d, "--k", "0"});
    CHECK(ok.code == cli::exit_ok);
    CHECK(has_line(ok.out, "rich=1"));
    Run no = run({"verify-rich", m, d, "--k", "2"});
    CHECK(no.code == cli::exit_invalid_input);
    CHECK(has_line(no.out, "rich=0"));

    auto inst = oracle::latin_instance();
    auto lm = dir.write("latin.txt", serialize_matrix(inst.matrix));
    auto lw = dir.write("latin_w.txt", serialize_latin_witness(inst.witness));
    Run lat = run({"verify-latin", lm, lw, "--k", "2"});
    CHECK(lat.code == cli::exit_ok);
    CHECK(has_line(lat.out, "valid=1"));
    Run wrong_k = run({"verify-latin", lm, lw, "--k", "3"});
    CHECK(wrong_k.code == cli::exit_invalid_input);
  }

  TEST_CASE("Marcus-Tardos search") {
    TempDir dir;
    auto m = dir.write("ones.txt", serialize_matrix(Matrix::constant(4, 4, Alphabet::binary(), 1)));
    Run r = run({"mt-find", m, "--k", "2"});
    CHECK(r.code == cli::exit_ok);
    CHECK(has_line(r.out, "mt_bound=6144"));
    CHECK(has_line(r.out, "found=1"));
  }

  TEST_CASE("matchings") {
    TempDir dir;
    auto g = dir.write("p3.txt", serialize_graph(Graph(3, {{0, 1}, {1, 2}})));
    Run enc = run({"encode-matching", g});
    REQUIRE(enc.code == cli::exit_ok);
    CHECK(has_line(enc.out, "half=11"));
    std::string sigma = enc.out.substr(enc.out.find("sigma=") + 6);
    sigma.pop_back();
    for (bool fo : {false, true}) {
      std::vector<std::string> args{"decode-matching", "--sigma", sigma};
      if (fo) args.push_back("--fo");
      Run dec = run(args);
      CHECK(has_line(dec.out, "decoded=1"));
      CHECK(has_line(dec.out, "n=3"));
      CHECK(has_line(dec.out, "edge=1 2"));
      CHECK(has_line(dec.out, "edge=2 3"));
    }
    CHECK(has_line(run({"decode-matching", "--sigma", "1 2 3"}).out, "decoded=0"));
  }

  TEST_CASE("first-order evaluation and interpretation") {
    TempDir dir;
    auto s = dir.write("s.txt", "3\nbinary E\n1 2\n2 3\nend\n");
    Run e = run({"fo-eval", s, "E x. E y. E(x,y)"});
    CHECK(e.code == cli::exit_ok);
    CHECK(has_line(e.out, "value=1"));
    CHECK(has_line(run({"fo-eval", s, "E(x,y)", "--let", "x=2", "--let", "y=1"}).out, "value=0"));
    CHECK(run({"fo-eval", s, "E(x,y)"}).code == cli::exit_invalid_input);
    CHECK(run({"fo-eval", s, "E(x,"}).code == cli::exit_invalid_input);
    CHECK(run({"fo-eval", s, "A x. A y. A z. x=x | y=z", "--guard", "5"}).code == cli::exit_resource_limit);
    auto interp = dir.write("i.txt", "domain x: T\nbinary E x y: E(y,x)\n");
    Run i = run({"fo-interp", s, interp});
    CHECK(i.code == cli::exit_ok);
    CHECK(i.out == "3\nbinary E\n2 1\n3 2\nend\n");
  }
}
