#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(GHDLAB_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ghdlab_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes promise pairs deterministically") {
  const auto a = scratch("gen_a.jsonl");
  const auto b = scratch("gen_b.jsonl");
  const std::string args = "gen --domain cube --n 64 --g 8 --count 100 --seed 7 --out ";
  REQUIRE(run(args + a.string()).code == 0);
  REQUIRE(run(args + b.string()).code == 0);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  const auto ls = lines(text);
  REQUIRE(ls.size() == 101);
  CHECK(nlohmann::json::parse(ls[0])["config"]["seed"] == 7);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto j = nlohmann::json::parse(ls[i]);
    const int d = j["distance"];
    CHECK((d <= 24 || d >= 40));
    CHECK(j["label"] == (d <= 24 ? 0 : 1));
  }
}

TEST_CASE("gen rejects an impossible gap") {
  CHECK(run("gen --n 10 --g 6").code == 2);
}

TEST_CASE("seed falls back to the environment") {
  const auto a = run("gen --n 32 --g 2 --count 3 --seed 11");
  const auto b = run("gen --n 32 --g 2 --count 3");
  const auto c = Result{};
  (void)c;
  setenv("GHDLAB_SEED", "11", 1);
  const auto d = run("gen --n 32 --g 2 --count 3");
  unsetenv("GHDLAB_SEED");
  auto body = [](const std::string& s) { return s.substr(s.find('\n')); };
  CHECK(body(a.out) == body(d.out));
  CHECK(body(a.out) != body(b.out));
}

TEST_CASE("protocol: trivial and constant builtins") {
  const auto t = run("protocol --builtin trivial --n 6");
  REQUIRE(t.code == 0);
  const auto tj = nlohmann::json::parse(t.out);
  CHECK(tj["payload"][0]["error_probability"] == 0.0);
  CHECK(tj["payload"][0]["max_cost"] == 6);
  const auto c = run("protocol --builtin constant0 --n 8");
  REQUIRE(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["payload"][0]["exact"]["num"] == 93);
}

TEST_CASE("protocol: sampling sweep is csv with a header line") {
  const auto r = run("protocol --builtin sampling --n 1000 --gamma 0.1 --m 1,25,101 --method monte-carlo "
                     "--distribution boundary --trials 4000 --format csv");
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0].rfind("# ", 0) == 0);
  CHECK(ls[1].rfind("protocol,error_probability", 0) == 0);
}

TEST_CASE("protocol: malformed file is a runtime error") {
  const auto f = scratch("bad_protocol.json");
  std::ofstream(f) << "{\"rounds\": 3";
  CHECK(run("protocol --file " + f.string()).code == 3);
}

TEST_CASE("roundelim: trajectory is deterministic with recurrence columns") {
  const auto a = run("roundelim --protocol random --n 8 --k 2 --c1 2 --seed 4 --format csv");
  const auto b = run("roundelim --protocol random --n 8 --k 2 --c1 2 --seed 4 --format csv");
  REQUIRE(a.code == 0);
  const auto la = lines(a.out);
  const auto lb = lines(b.out);
  REQUIRE(la.size() == 5);
  CHECK(la[1] == "kappa,eps,bad1,bad2,bad3,bound_rhs,recurrence");
  for (std::size_t i = 1; i < la.size(); ++i) CHECK(la[i] == lb[i]);
  CHECK(run("roundelim --protocol first-bit --n 13").code == 3);
}

TEST_CASE("concentration: named checks and usage errors") {
  const auto r = run("concentration --check hypergeometric --n 200 --weight-x 40 --weight-y 90 --a 3");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["payload"][0]["name"] == "hypergeometric-tail");
  CHECK(j["payload"][0]["verdict"] == true);
  CHECK(j["config"]["n"] == 200);
  CHECK(run("concentration --check nonsense").code == 2);
}

TEST_CASE("streaming: pass sweep with exact F0") {
  const auto r = run("streaming --mode passes --algo exact --n 512 --g 32 --p 4 --count 5 --format csv");
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2 + 20);
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const int p = std::stoi(ls[i].substr(0, ls[i].find(',')));
    std::stringstream row(ls[i]);
    std::vector<std::string> cols;
    for (std::string c; std::getline(row, c, ',');) cols.push_back(c);
    CHECK(std::stoi(cols[2]) == 2 * p - 1);
    CHECK(cols.back() == "1");
  }
}

TEST_CASE("streaming: parse errors name the line") {
  const auto f = scratch("stream.csv");
  std::ofstream(f) << "1,0\n2,1\n3,7\n";
  const std::string cmd = std::string(GHDLAB_CLI) + " streaming --mode f0 --stream-file " + f.string() + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512] = {};
  const std::size_t got = fread(buf, 1, sizeof buf - 1, pipe);
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 3);
  CHECK(std::string(buf, got).find("line 3") != std::string::npos);

  std::ofstream(f) << "1,0\n2,1\n2,0\n";
  const auto ok = run("streaming --mode f0 --stream-file " + f.string());
  REQUIRE(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["payload"]["f0"] == 3);
}

TEST_CASE("reduction: embedding identity") {
  CHECK(run("reduction --mode embed --n 128 --trials 1000").code == 0);
}

TEST_CASE("output records embed the config") {
  const auto out = scratch("rec.json");
  REQUIRE(run("reduction --mode embed --n 16 --trials 10 --seed 3 --out " + out.string()).code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["config"]["subcommand"] == "reduction");
  CHECK(j["config"]["seed"] == 3);
  CHECK(j["config"]["mode"] == "embed");
}

}  // TEST_SUITE
