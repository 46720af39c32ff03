#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "laxcyc/cli.hpp"
#include "laxcyc/io.hpp"
#include "laxcyc/random.hpp"

using namespace laxcyc;
using io::json;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "laxcyc_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "laxcyc");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("matrix JSON round trip") {
  Rng rng(1);
  const PolyMat<Cyclotomic> L = random_polymat(rng, 3, 2);
  CHECK(io::polymat_from_json(io::to_json(L)) == L);

  PolyMat<Cyclotomic> Z(3, 1);
  Z.set(0, 1, 1, Cyclotomic::zeta_pow(3, 1));
  Z.set(2, 2, 0, Cyclotomic(Rational(-5, 7)));
  const json j = io::to_json(Z);
  CHECK(j["zeta_order"] == 3);
  CHECK(j["entries"][0][1][1] == json::array({"0", "1"}));
  CHECK(j["entries"][2][2][0] == json::array({"-5/7", "0"}));
  CHECK(io::polymat_from_json(j) == Z);

  // short coefficient lists and integer shorthand
  const json shorthand{{"p", 2}, {"q", 2}, {"entries", {{{0}, {0, 1}}, {{0, 1}, {0, 0, 1}}}}};
  const PolyMat<Cyclotomic> S = io::polymat_from_json(shorthand);
  CHECK(S.at(1, 1, 2) == Cyclotomic(1));
  CHECK(S.at(0, 0, 2).is_zero());
}

TEST_CASE("malformed documents are input errors") {
  CHECK_THROWS_AS(io::polymat_from_json(json{{"p", 2}}), io::InputError);
  CHECK_THROWS_AS(io::polymat_from_json(json{{"p", 2}, {"q", 0}, {"entries", {{{1}}}}}), io::InputError);
  CHECK_THROWS_AS(io::polymat_from_json(json{{"p", 1}, {"q", 0}, {"entries", {{{1, 2}}}}}), io::InputError);
  CHECK_THROWS_AS(io::polymat_from_json(json{{"p", 1}, {"q", 0}, {"zeta_order", 4}, {"entries", {{{1}}}}}),
                  io::InputError);
  CHECK_THROWS_AS(io::cyclotomic_from_json("1/0", 0), io::InputError);
  CHECK_THROWS_AS(io::cyclotomic_from_json(json::array({"1", "2", "3"}), 3), io::InputError);
  CHECK_THROWS_AS(io::evector_from_json(json::array({0, "a"})), io::InputError);
}

TEST_CASE("curve JSON round trip") {
  const json j{{"zeta_order", 0}, {"coeffs", {{-1, 0, 1}, {-1}, {-1}}}};
  const Curve P = io::curve_from_json(j);
  CHECK(P.deg_y() == 2);
  CHECK(P.coeff(2, 0) == Cyclotomic(-1));
  CHECK(io::curve_from_json(io::to_json(P)) == P);
}

TEST_CASE("enumerate-e and fixed-basis") {
  const Run r = invoke({"enumerate-e", "--p", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("4 classes") != std::string::npos);

  const fs::path out = scratch("basis.json");
  const Run b = invoke({"fixed-basis", "--p", "2", "--d", "2", "--e", "omega", "--out", out.string()});
  CHECK(b.code == 0);
  // 1-indexed names for people, 0-indexed triples in JSON
  CHECK(b.out.find("l^1_12") != std::string::npos);
  const json j = io::read_file(out.string());
  CHECK(j["data"]["dimension"] == 6);
  CHECK(j["data"]["basis"][2] == json::array({0, 1, 1}));
}

TEST_CASE("verify reports are deterministic and seeded") {
  const fs::path a = scratch("a.json"), b = scratch("b.json");
  CHECK(invoke({"verify", "poisson", "--p", "2", "--q", "2", "--seed", "7", "--out", a.string()}).code == 0);
  CHECK(invoke({"verify", "poisson", "--p", "2", "--q", "2", "--seed", "7", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  const json j = io::read_file(a.string());
  CHECK(j["provenance"]["seed"] == 7);
  CHECK(j["summary"]["verdict"] == "PASS");
  CHECK_FALSE(j.contains("timings"));
  for (const auto& c : j["checks"]) CHECK(c.contains("tolerance"));

  ::setenv("LAXCYC_SEED", "99", 1);
  CHECK(invoke({"verify", "symmetry", "--p", "2", "--seed", "7", "--samples", "2", "--out", a.string()}).code == 0);
  ::unsetenv("LAXCYC_SEED");
  CHECK(io::read_file(a.string())["provenance"]["seed"] == 99);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"verify", "nonsense"}).code == 2);
  CHECK(invoke({"verify", "poisson", "--p", "4"}).code == 2);
  CHECK(invoke({"verify", "flows", "--p", "5"}).code == 2);
  CHECK(invoke({"enumerate-e", "--p", "x"}).code == 2);
  CHECK(invoke({"flow", "--matrix", scratch("missing.json").string(), "--i", "1", "--j", "1"}).code == 2);

  const fs::path m = scratch("not_torsion.json");
  io::write_file(m.string(), json{{"zeta_order", 0}, {"rows", {{2, 0}, {0, 1}}}});
  CHECK(invoke({"classify", "--matrix", m.string(), "--p", "2"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("flow subcommand") {
  const fs::path m = scratch("standard.json"), csv = scratch("traj.csv"), out = scratch("flow.json");
  io::write_file(m.string(), json{{"p", 2}, {"q", 2}, {"entries", {{{0}, {0, 1}}, {{0, 1}, {0, 0, 1}}}}});
  const Run r = invoke({"flow", "--matrix", m.string(), "--i", "1", "--j", "2", "--t-end", "1", "--step", "1e-3", "--e",
                     "omega", "--csv", csv.string(), "--out", out.string(), "--sample-every", "100"});
  CHECK(r.code == 0);
  const json j = io::read_file(out.string());
  CHECK(j["data"]["invariant_report"]["steps"] == 1000);
  CHECK(j["data"]["invariant_report"]["max_charpoly_drift"].get<double>() <= 1e-8);
  CHECK(j["checks"].size() == 2);
  // header plus samples at t = 0, 0.1, ..., 1
  std::ifstream in(csv);
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 12);
}

TEST_CASE("spectral subcommand") {
  const fs::path c = scratch("curve.json"), br = scratch("branch.csv"), out = scratch("spectral.json");
  io::write_file(c.string(), json{{"zeta_order", 0}, {"coeffs", {{-1, 0, 1}, {-1}, {-1}}}});
  const Run r = invoke({"spectral", "--curve", c.string(), "--branch-csv", br.string(), "--out", out.string()});
  CHECK(r.code == 0);
  const json j = io::read_file(out.string());
  CHECK(j["data"]["certificate"]["exact_verdict"] == "IrreducibleExact");
  CHECK(j["data"]["certificate"]["monodromy_verdict"] == "IrreducibleMonodromy");
  CHECK(j["data"]["branch"]["finite_count"] == 2);

  io::write_file(c.string(), json{{"zeta_order", 0}, {"coeffs", {{0, 0, 1}, {0}, {-1}}}});
  const Run red = invoke({"spectral", "--curve", c.string(), "--out", out.string()});
  CHECK(red.code == 1);
  CHECK(io::read_file(out.string())["data"]["certificate"]["verdict"] == "Reducible");
}

TEST_CASE("bracket-table CSV") {
  const Run r = invoke({"bracket-table", "--p", "2", "--q", "1", "--mu", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("i,j,k,m,n,l,mu,result\n", 0) == 0);
  // {l^0_11, l^0_12}_1 = -l^0_12
  CHECK(r.out.find("1,1,0,1,2,0,1,\"-l^0_12\"") != std::string::npos);
  std::size_t rows = 0;
  for (char ch : r.out) rows += ch == '\n';
  CHECK(rows == 1 + 8 * 8);
}
