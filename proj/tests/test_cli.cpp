#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

const std::string& binary() {
  static const std::string bin = [] {
    const char* b = std::getenv("CARRYLAB_BIN");
    REQUIRE_MESSAGE(b != nullptr, "CARRYLAB_BIN must point at the carrylab executable");
    return std::string(b);
  }();
  return bin;
}

RunResult run(const std::string& args) {
  RunResult res;
  std::string cmd = binary() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path test_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "carrylab_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("ctx output and determinism") {
  RunResult a = run("ctx --p 3 --alpha 2");
  CHECK(a.exit_code == 0);
  CHECK(a.out ==
        "{\"p\":3,\"alpha\":2,\"gamma\":2,\"delta\":[1,2],\"theta\":1,\"tau\":1,"
        "\"mu\":0.6309297535714574,\"wieferich\":false}\n");
  RunResult b = run("ctx --p 3 --alpha 2");
  CHECK(a.out == b.out);
  CHECK(run("ctx --p 1093 --alpha 2").out.find("\"wieferich\":true") != std::string::npos);
  CHECK(run("ctx --p 3 --alpha 2 --table").out.find("gamma     2") != std::string::npos);
}

TEST_CASE("usage and domain errors exit 2") {
  CHECK(run("ctx --p 4 --alpha 3").exit_code == 2);
  CHECK(run("ctx --p 3").exit_code == 2);            // missing required flag
  CHECK(run("nonsense").exit_code == 2);             // unknown subcommand
  CHECK(run("champ --m 6 --limit 10").exit_code == 2);
  CHECK(run("verify ck --p 3 --alpha 2 --k-max 15").exit_code == 2);  // over the cap
  CHECK(run("scan --p 257 --alpha 2 --limit 10 --out /tmp/x").exit_code == 2);
}

TEST_CASE("verification subcommands pass on known-good inputs") {
  RunResult ck = run("verify ck --p 3 --alpha 2 --k-max 3");
  CHECK(ck.exit_code == 0);
  CHECK(ck.out.find("\"pass\":true") != std::string::npos);
  CHECK(run("verify lemmas --p 5 --alpha 2 --k-max 4").exit_code == 0);
  CHECK(run("verify bounds --p 3 --alpha 2 --a-max 1000").exit_code == 0);
}

TEST_CASE("champ pins the classic values") {
  RunResult r = run("champ --m 9 --limit 9");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"count\":5") != std::string::npos);
  CHECK(r.out.find("\"members\":[0,1,2,6,8]") != std::string::npos);
  RunResult t = run("champ --m 9 --limit 9 --table");
  CHECK(t.out.find("count   5") != std::string::npos);
}

TEST_CASE("count emits the exact value and bound lines") {
  RunResult r = run("count --p 3 --alpha 2 --n 1 --limit 9 --members");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"exact\":3") != std::string::npos);
  CHECK(r.out.find("\"members\":[0,2,8]") != std::string::npos);
  CHECK(r.out.find("\"bound_name\":\"S31\"") != std::string::npos);
  CHECK(r.out.find("\"bound_name\":\"SP1\"") != std::string::npos);
}

TEST_CASE("scan and recheck round-trip with expectations") {
  fs::path out = test_dir() / "cli_scan.txt";
  RunResult s = run("scan --p 3 --alpha 2 --carries 2 --window 35 --limit 10000 --out " +
                    out.string());
  CHECK(s.exit_code == 0);
  CHECK(s.out.find("\"checked\":10000") != std::string::npos);
  RunResult ok = run("recheck --in " + out.string() + " --expect 0,1,2,6,8");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("\"status\":\"exception\"") != std::string::npos);
  RunResult bad = run("recheck --in " + out.string() + " --expect 0,1,2");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("scan with zero range and io failures") {
  fs::path out = test_dir() / "cli_zero.txt";
  RunResult z = run("scan --p 3 --alpha 2 --limit 0 --out " + out.string());
  CHECK(z.exit_code == 0);
  CHECK(slurp(out).empty());
  CHECK(run("recheck --in " + (test_dir() / "missing.txt").string()).exit_code == 3);
  CHECK(run("scan --p 3 --alpha 2 --limit 10 --out /nonexistent-dir/x.txt").exit_code == 3);
}

TEST_CASE("checkpointed scan resumes to identical output") {
  fs::path full = test_dir() / "cli_full.txt";
  run("scan --p 3 --alpha 2 --limit 30000 --out " + full.string());
  fs::path part = test_dir() / "cli_part.txt";
  fs::path ck = test_dir() / "cli.ckpt";
  run("scan --p 3 --alpha 2 --limit 11111 --out " + part.string() + " --ckpt " + ck.string());
  RunResult r = run("scan --p 3 --alpha 2 --limit 30000 --out " + part.string() + " --resume " +
                    ck.string());
  CHECK(r.exit_code == 0);
  CHECK(slurp(part) == slurp(full));
}

TEST_CASE("CARRYLAB_THREADS drives the worker count without changing output") {
  fs::path a = test_dir() / "env_a.txt";
  fs::path b = test_dir() / "env_b.txt";
  run("scan --p 3 --alpha 2 --limit 20000 --out " + a.string());
  RunResult r = run("scan --p 3 --alpha 2 --limit 20000 --out " + b.string());
  // same command again but through the env knob
  std::string cmd = "CARRYLAB_THREADS=3 " + binary() + " scan --p 3 --alpha 2 --limit 20000 --out " +
                    b.string() + " 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(a) == slurp(b));
  (void)r;
}

TEST_CASE("stats summary and csv modes") {
  RunResult j = run("stats --p 3 --from 1000 --to 1200");
  CHECK(j.exit_code == 0);
  CHECK(j.out.find("\"predicted_slope\":0.315464877") != std::string::npos);
  RunResult c = run("stats --p 3 --from 1 --to 5 --csv -");
  CHECK(c.exit_code == 0);
  CHECK(c.out.rfind("k,eps,predicted\n", 0) == 0);
  RunResult two = run("stats --p 3 --from 1000 --to 1200");
  CHECK(two.out == j.out);
}
