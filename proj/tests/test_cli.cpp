#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef PERICO_CLI
#error "PERICO_CLI must point at the CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(PERICO_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/perico_cli_test_") + name;
}

}  // namespace

TEST_CASE("cli colour on the square example") {
  RunResult r = run("colour examples:square");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("palette 2") != std::string::npos);
  CHECK(r.out.find("index 4") != std::string::npos);
}

TEST_CASE("cli genus and budget") {
  RunResult g = run("genus --signature 0,2,3,7 --index 168");
  CHECK(g.exit_code == 0);
  CHECK(g.out == "3\n");

  CHECK(run("genus --signature 0,2,3,7 --index 84").out == "2\n");
  CHECK(run("genus --signature 0,2,3,7 --index 100").exit_code == 2);
  CHECK(run("genus --signature nonsense --index 4").exit_code == 2);

  RunResult b = run("budget --genus 1");
  CHECK(b.exit_code == 0);
  CHECK(b.out.find("ringel-youngs 7") != std::string::npos);
  CHECK(b.out.find("1048576") != std::string::npos);
  CHECK(run("budget --genus 0").exit_code == 2);
}

TEST_CASE("cli validate and ends") {
  CHECK(run("validate examples:square").exit_code == 0);
  CHECK(run("validate examples:tess-3-7").exit_code == 0);
  CHECK(run("validate /nonexistent.json").exit_code == 2);
  CHECK(run("ends examples:square").out == "ends 1\n");
  CHECK(run("ends examples:path").out == "ends 2\n");
  CHECK(run("colour examples:path").exit_code == 2);
}

TEST_CASE("cli reduce") {
  RunResult r = run("reduce examples:leafed-subdivided-square");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("steps 2") != std::string::npos);
  CHECK(run("reduce examples:square").out.find("steps 0") != std::string::npos);
}

TEST_CASE("cli colour, verify, orient round trip") {
  std::string col = temp_path("square_colouring.json");
  RunResult c = run("colour examples:square --output " + col);
  REQUIRE(c.exit_code == 0);

  RunResult v = run("verify examples:square --colouring " + col);
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("\"pass\": true") != std::string::npos);

  RunResult o = run("orient examples:square --colouring " + col);
  CHECK(o.exit_code == 0);
  CHECK(o.out.find("forward") != std::string::npos);

  // Corrupt the colouring: constant colour 0 everywhere is not proper.
  std::ifstream in(col);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  size_t pos;
  while ((pos = text.find("1,")) != std::string::npos) text.replace(pos, 2, "0,");
  std::string bad = temp_path("square_corrupt.json");
  std::ofstream(bad) << text;
  RunResult vb = run("verify examples:square --colouring " + bad);
  CHECK(vb.exit_code == 1);
  CHECK(run("orient examples:square --colouring " + bad).exit_code == 2);
  std::remove(col.c_str());
  std::remove(bad.c_str());
}

TEST_CASE("cli edge colouring") {
  RunResult hex = run("edge-colour examples:hexagonal");
  CHECK(hex.exit_code == 0);
  CHECK(hex.out.find("palette 3") != std::string::npos);
  CHECK(run("edge-colour examples:square").exit_code == 2);
}

TEST_CASE("cli render and determinism") {
  RunResult svg = run("render examples:square --radius 3");
  CHECK(svg.exit_code == 0);
  CHECK(svg.out.rfind("<svg", 0) == 0);

  RunResult a = run("examples tess-3-7");
  RunResult b = run("examples tess-3-7");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  RunResult list = run("examples");
  CHECK(list.out.find("square\n") != std::string::npos);
  CHECK(list.out.find("tess-4-5\n") != std::string::npos);
}

TEST_CASE("cli argument and budget errors") {
  CHECK(run("budget").exit_code == 2);
  CHECK(run("no-such-command").exit_code == 2);
  CHECK(run("colour examples:tess-3-7 --budget 10").exit_code == 3);
}
