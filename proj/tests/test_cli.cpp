#include <doctest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string &args) {
  std::string cmd = std::string(QIDENT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
    r.out.append(buf, n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<nlohmann::json> lines(const std::string &out) {
  std::vector<nlohmann::json> v;
  std::size_t pos = 0;
  while (pos < out.size()) {
    auto end = out.find('\n', pos);
    v.push_back(nlohmann::json::parse(out.substr(pos, end - pos)));
    pos = end + 1;
  }
  return v;
}

} // namespace

TEST_CASE("polynomial identity exits 0") {
  auto r = run("verify-ident --m 0..3 --no-timing");
  CHECK(r.status == 0);
  auto js = lines(r.out);
  REQUIRE(js.size() == 4);
  for (const auto &j : js) {
    CHECK(j["verdict"] == "zero");
    CHECK(j["identity"] == "symmetrized-polynomial");
    CHECK_FALSE(j.contains("elapsed_ms"));
  }
  CHECK(run("verify-ident --m 3 --mode modular --trials 5").status == 0);
  CHECK(run("verify-ident --m 2 --mode coefficients").status == 0);
  CHECK(lines(run("verify-ident --m 1").out)[0].contains("elapsed_ms"));
}

TEST_CASE("distribution identity exit codes") {
  // The left side equals q times the printed right side: a failure.
  auto r1 = run("verify-dist --m 1 --no-timing");
  CHECK(r1.status == 1);
  auto j1 = lines(r1.out)[0];
  CHECK(j1["verdict"] == "nonzero");
  CHECK(j1["fitted_exponent"] == 1);

  CHECK(run("verify-dist --m 0").status == 1);
  auto r0 = run("verify-dist --m 0 --diagnostic");
  CHECK(r0.status == 0);
  CHECK(lines(r0.out)[0]["fitted_scalar"] == "1 q^1");

  auto rp = run("verify-dist --m 1 --mode replay --no-timing");
  CHECK(rp.status == 1);
  CHECK(lines(rp.out)[0]["stages_clean"] == true);

  CHECK(run("verify-prop --m 1..3").status == 0);
}

TEST_CASE("q-binomial rows") {
  auto r = run("qbinom --n 2");
  CHECK(r.status == 0);
  CHECK(r.out == "[2 over 0] = 1\n[2 over 1] = 1 q^-1 + 1 q^1\n"
                 "[2 over 2] = 1\n");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").status == 2);
  CHECK(run("verify-ident --bogus").status == 2);
  CHECK(run("verify-ident --mode nope").status == 2);
  CHECK(run("verify-ident --m x").status == 2);
  CHECK(run("verify-ident --m 3..1").status == 2);
  CHECK(run("verify-ident --mode modular --prime 7 --m 3").status == 2);
  CHECK(run("verify-dist --m 1 --window 1").status == 2);
  CHECK(run("verify-dist --m 0 --mode replay").status == 2);
  CHECK(run("verify-prop --m 4").status == 2);
  CHECK(run("qbinom").status == 2);
}

TEST_CASE("output does not depend on the thread count") {
  const char *cmds[] = {"verify-ident --m 0..4 --no-timing",
                        "verify-ident --m 4 --mode modular --no-timing",
                        "verify-dist --m 0..2 --no-timing --diagnostic",
                        "verify-dist --m 2 --mode replay --no-timing",
                        "verify-prop --m 1..3 --no-timing"};
  for (const char *c : cmds) {
    CAPTURE(c);
    auto ref = run(std::string(c) + " --threads 1");
    for (int t : {2, 8}) {
      auto other = run(std::string(c) + " --threads " + std::to_string(t));
      CHECK(other.out == ref.out);
      CHECK(other.status == ref.status);
    }
  }
}
