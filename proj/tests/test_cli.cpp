#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "seqlab/certificate_io.hpp"
#include "seqlab/cli.hpp"
#include "seqlab/verify.hpp"

using namespace seqlab;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SEQLAB_FIXTURE_DIR;

struct Workdir {
  fs::path dir;
  Workdir() {
    dir = fs::temp_directory_path() / ("seqlab_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }
  std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

const Workdir& work() {
  static Workdir w;
  return w;
}

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run cli(const std::string& args) {
  const auto out = work()("stdout.txt"), err = work()("stderr.txt");
  const std::string cmd = std::string(SEQLAB_CLI_PATH) + " " + args + " > " + out + " 2> " + err;
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string fixture(const char* name) { return (kFixtures / name).string(); }

// Overwrites coordinate j of a sparse sequence, inserting it when absent.
void set_coord(nlohmann::json& seq, std::size_t j, const nlohmann::json& value) {
  auto& nz = seq.at("nz");
  for (auto& e : nz) {
    if (e.at(0).get<std::size_t>() == j) {
      e[1] = value;
      return;
    }
  }
  auto pos = nz.begin();
  while (pos != nz.end() && (*pos).at(0).get<std::size_t>() < j) ++pos;
  nz.insert(pos, nlohmann::json::array({j, value}));
}

nlohmann::json load(const std::string& path) { return read_json_file(path); }

// Writes a tampered copy and returns the verify run.
Run verify_tampered(const std::string& path, const std::function<void(nlohmann::json&)>& edit,
                    const std::string& name) {
  auto j = load(path);
  edit(j);
  const auto out = work()(name);
  write_json_atomic(out, j);
  return cli("verify " + out);
}

// Certificates shared by several cases, produced once.
struct Certs {
  std::string lin, lpA, lpB, linf, c0, wB, wL, dlp, dc0;
  Certs() {
    lin = work()("lin.json");
    lpA = work()("lpA.json");
    lpB = work()("lpB.json");
    linf = work()("linf.json");
    c0 = work()("c0.json");
    wB = work()("wB.json");
    wL = work()("wL.json");
    dlp = work()("dlp.json");
    dc0 = work()("dc0.json");
    REQUIRE(cli("--out " + lin + " lineability --ratios 1/4,1/2 --coeffs -2,1").code == 0);
    REQUIRE(cli("--out " + lpA + " construct-lp --fixture " + fixture("l2_mixed40.json") + " --eps 0.1 --depth 6").code == 0);
    REQUIRE(cli("--out " + lpB + " construct-lp --fixture " + fixture("l2_mixed40.json") + " --eps 1/600 --depth 6").code == 0);
    REQUIRE(cli("--out " + linf + " construct-linf --fixture " + fixture("linf_mixed40.json") + " --depth 5").code == 0);
    REQUIRE(cli("--out " + c0 + " construct-linf --fixture " + fixture("c0_mixed40.json") + " --depth 5").code == 0);
    REQUIRE(cli("--out " + wB + " witness --cert " + lpB + " --samples 500 --seed 2").code == 0);
    REQUIRE(cli("--out " + wL + " witness --cert " + linf + " --samples 500 --seed 2").code == 0);
    REQUIRE(cli("--out " + dlp + " density --cert " + lpB + " --eps 0.01 --seed 3").code == 0);
    REQUIRE(cli("--out " + dc0 + " density --cert " + c0 + " --eps 0.01 --seed 3").code == 0);
  }
};

const Certs& certs() {
  static Certs c;
  return c;
}

}  // namespace

TEST_CASE("lineability scenario") {
  auto r = cli("lineability --ratios 1/2,1/3");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("kind") == "lineability");
  CHECK(j.at("rank") == 2);
  CHECK(j.at("certified_bound").get<std::size_t>() == 0);
  CHECK(j.at("zero_set").empty());
}

TEST_CASE("configuration errors name the violated bound") {
  auto r = cli("construct-lp --fixture " + fixture("l2_coord40.json") + " --eps 1/8");
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("4/33") != std::string::npos);
  CHECK(r.out.empty());

  CHECK(cli("construct-lp --fixture " + fixture("linf_coord30.json")).code == kExitConfig);
  CHECK(cli("construct-linf --fixture " + fixture("l2_coord40.json")).code == kExitConfig);
  CHECK(cli("construct-lp --fixture " + fixture("l2_coord40.json") + " --p 3").code == kExitConfig);
  CHECK(cli("construct-lp --fixture /nonexistent.json").code == kExitConfig);
  CHECK(cli("lineability --ratios 1/2,2").code != 0);
  CHECK(cli("bogus-subcommand").code == kExitConfig);
}

TEST_CASE("model limits exit with 2") {
  auto r = cli("construct-lp --fixture " + fixture("l2_dim2.json") + " --eps 0.1 --depth 5");
  CHECK(r.code == kExitModelLimit);
  CHECK(r.err.find("DimensionExhausted") != std::string::npos);
}

TEST_CASE("determinism: byte-identical certificates") {
  const std::string lp = "construct-lp --fixture " + fixture("l2_mixed40.json") + " --eps 1/600 --depth 6 --seed 9";
  auto a = cli(lp), b = cli("--jobs 4 " + lp);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  const std::string lf = "construct-linf --fixture " + fixture("linf_mixed40.json") + " --depth 5 --seed 4";
  auto c = cli("--jobs 1 " + lf), d = cli("--jobs 3 " + lf);
  REQUIRE(c.code == 0);
  CHECK(c.out == d.out);

  const auto& k = certs();
  auto w1 = cli("witness --cert " + k.lpB + " --samples 300 --seed 5");
  auto w2 = cli("--jobs 2 witness --cert " + k.lpB + " --samples 300 --seed 5");
  CHECK(w1.out == w2.out);
  auto d1 = cli("density --cert " + k.c0 + " --seed 8");
  auto d2 = cli("density --cert " + k.c0 + " --seed 8");
  CHECK(d1.out == d2.out);
}

TEST_CASE("--out writes the same bytes as stdout, atomically") {
  const auto& k = certs();
  auto r = cli("lineability --ratios 1/4,1/2 --coeffs -2,1");
  CHECK(slurp(k.lin) == r.out);
  for (const auto& e : fs::directory_iterator(work().dir)) {
    CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
  }
}

TEST_CASE("verify round trip on every certificate class") {
  const auto& k = certs();
  for (const auto* p : {&k.lin, &k.lpA, &k.lpB, &k.linf, &k.c0, &k.wB, &k.wL, &k.dlp, &k.dc0}) {
    auto r = cli("verify " + *p);
    CHECK_MESSAGE(r.code == 0, r.out);
    CHECK(r.out.rfind("PASS", 0) == 0);
  }
  auto all = cli("--jobs 4 verify " + k.lin + " " + k.lpB + " " + k.linf + " " + k.dc0);
  CHECK(all.code == 0);
}

TEST_CASE("verify names the zero-pattern entry for a tampered l_{s_2}(s_1)") {
  const auto& k = certs();
  auto r = verify_tampered(k.lpB, [](nlohmann::json& j) {
    const auto s1 = j.at("lemmaA").at("s").at(0).get<std::size_t>();
    set_coord(j.at("lemmaB").at("l").at(1), s1, 0.1);
  }, "lpB_t.json");
  CHECK(r.code == kExitFail);
  CHECK(r.out.find("zero_pattern") != std::string::npos);
}

TEST_CASE("verify detects a coordinate tamper in every class") {
  const auto& k = certs();
  auto expect_fail = [](const Run& r, const char* what) {
    CHECK_MESSAGE(r.code == kExitFail, what << ": " << r.out);
    CHECK(r.out.rfind("FAIL", 0) == 0);
  };
  expect_fail(verify_tampered(k.lin, [](nlohmann::json& j) { j["coeffs"][0] = "-3/1"; }, "t_lin.json"), "lineability");
  expect_fail(verify_tampered(k.lin, [](nlohmann::json& j) { j["zero_set"] = nlohmann::json::array(); }, "t_lin2.json"),
              "lineability zero set");
  expect_fail(verify_tampered(k.lpA, [](nlohmann::json& j) {
    set_coord(j.at("lemmaA").at("f").at(2), j.at("lemmaA").at("s").at(0).get<std::size_t>(), 0.1);
  }, "t_lpA.json"), "lemmaA");
  expect_fail(verify_tampered(k.linf, [](nlohmann::json& j) {
    set_coord(j.at("l").at("l").at(0), j.at("l").at("s").at(1).get<std::size_t>(), "1/10");
  }, "t_linf.json"), "linf");
  expect_fail(verify_tampered(k.c0, [](nlohmann::json& j) {
    set_coord(j.at("mazur").at("f").at(3), j.at("mazur").at("n").at(1).get<std::size_t>(), "1/10");
  }, "t_c0.json"), "linf mazur");
  expect_fail(verify_tampered(k.wB, [](nlohmann::json& j) {
    set_coord(j.at("even_family").at(0), j.at("forbidden_indices").at(0).get<std::size_t>(), 0.1);
  }, "t_wB.json"), "witness lp");
  expect_fail(verify_tampered(k.wL, [](nlohmann::json& j) {
    set_coord(j.at("even_family").at(1), j.at("forbidden_indices").at(1).get<std::size_t>(), 0.1);
  }, "t_wL.json"), "witness linf");
  expect_fail(verify_tampered(k.dlp, [](nlohmann::json& j) { set_coord(j.at("g"), 5, 0.5); }, "t_dlp.json"),
              "density lp");
  expect_fail(verify_tampered(k.dc0, [](nlohmann::json& j) {
    set_coord(j.at("g"), j.at("zero_set").at(0).get<std::size_t>(), "1/10");
  }, "t_dc0.json"), "density c0");
}

TEST_CASE("malformed certificates exit with 65") {
  const auto& k = certs();
  auto text = slurp(k.lpB);
  const auto cut = work()("trunc.json");
  std::ofstream(cut) << text.substr(0, text.size() / 2);
  auto r = cli("verify " + cut);
  CHECK(r.code == kExitMalformed);
  CHECK(r.out.find("MalformedCertificate") != std::string::npos);

  const auto wrong = work()("wrong.json");
  std::ofstream(wrong) << R"({"schema_version":1,"kind":"nonsense"})";
  CHECK(cli("verify " + wrong).code == kExitMalformed);
  const auto future = work()("future.json");
  std::ofstream(future) << R"({"schema_version":2,"kind":"lineability"})";
  CHECK(cli("verify " + future).code == kExitMalformed);
  // The worst file decides the exit code.
  CHECK(cli("verify " + k.lin + " " + cut).code == kExitMalformed);
}

TEST_CASE("scenario reconstruction reproduces certificates") {
  const auto& k = certs();
  for (const auto* p : {&k.lin, &k.lpB, &k.wL, &k.dc0}) {
    auto cert = load(*p);
    CHECK(run_scenario(scenario_from_certificate(cert)) == cert);
  }
  auto rep = verify_certificate(load(k.lpB));
  CHECK(rep.pass());
  CHECK(rep.ledger.entries().back().check == "reproduces");
}

TEST_CASE("validate names fields") {
  Scenario sc;
  sc.pipeline = Pipeline::Lp;
  sc.fixture = load_fixture(fixture("l2_coord40.json"));
  sc.eps = 0.2;
  try {
    validate(sc);
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigError);
    CHECK(std::string(e.what()).find("eps must satisfy 0 < eps < 4/33") != std::string::npos);
  }
  sc.eps = 0.1;
  CHECK_NOTHROW(validate(sc));
  CHECK(exit_code_for(Errc::DimensionExhausted) == kExitModelLimit);
  CHECK(exit_code_for(Errc::SearchExhausted) == kExitModelLimit);
  CHECK(exit_code_for(Errc::InsufficientStabilization) == kExitModelLimit);
  CHECK(exit_code_for(Errc::CaseBoundViolated) == kExitFail);
  CHECK(exit_code_for(Errc::WitnessViolation) == kExitFail);
  CHECK(exit_code_for(Errc::EpsOutOfRange) == kExitConfig);
  CHECK(exit_code_for(Errc::MalformedCertificate) == kExitMalformed);
}
