#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const char* tool_path() { return SKEWLAB_TOOL_PATH; }

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the tool with the given arguments, capturing exit code and streams.
RunResult run_tool(const fs::path& dir, const std::string& args) {
  const fs::path out_file = dir / "stdout.txt";
  const fs::path err_file = dir / "stderr.txt";
  const std::string command = std::string(tool_path()) + " " + args + " >" +
                              out_file.string() + " 2>" + err_file.string();
  const int status = std::system(command.c_str());
  RunResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

fs::path make_scratch() {
  const fs::path dir = fs::temp_directory_path() / "skewlab_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

const std::string kLineConfig =
    "kind = line\nl = 0\nell = 1\neps = 0.25\nalpha = 0.3\nlambda = 2.0\n"
    "x = 0.25, 0.5\n";

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("eval prints a csv report to stdout") {
  const fs::path dir = make_scratch();
  write_file(dir / "m.cfg", kLineConfig);
  const RunResult r = run_tool(dir, "eval --config " + (dir / "m.cfg").string());
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.out) ==
        "kind,eps,alpha,lambda,x,phi,v_closed,v_fd,v_mc,mc_se,v_limit,abs_err,regime,C,"
        "cond_alpha_eps_over_lambda");
  int lines = 0;
  for (char ch : r.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 3);  // header + one row per point
}

TEST_CASE("eval honors --x and the fd oracle flag") {
  const fs::path dir = make_scratch();
  write_file(dir / "m.cfg", kLineConfig);
  const RunResult r =
      run_tool(dir, "eval --config " + (dir / "m.cfg").string() + " --x 0.75 --oracle fd");
  CHECK(r.exit_code == 0);
  int lines = 0;
  for (char ch : r.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 2);
  // The fd column (8th) must be populated.
  std::istringstream row(r.out.substr(r.out.find('\n') + 1));
  std::string celltext;
  int index = 0;
  bool fd_set = false;
  while (std::getline(row, celltext, ',')) {
    if (index++ == 7) fd_set = !celltext.empty();
  }
  CHECK(fd_set);
}

TEST_CASE("a missing config file exits with the config error code") {
  const fs::path dir = make_scratch();
  const RunResult r = run_tool(dir, "eval --config " + (dir / "absent.cfg").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("a config missing required keys exits with the config error code") {
  const fs::path dir = make_scratch();
  write_file(dir / "m.cfg", "kind = line\nl = 0\nell = 1\n");
  const RunResult r = run_tool(dir, "eval --config " + (dir / "m.cfg").string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("an invalid spec exits with the domain error code") {
  const fs::path dir = make_scratch();
  write_file(dir / "m.cfg",
             "kind = line\nl = 0\nell = 1\neps = 0.25\nalpha = 1.5\nlambda = 2\nx = 0.5\n");
  const RunResult r = run_tool(dir, "eval --config " + (dir / "m.cfg").string());
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("alpha") != std::string::npos);
}

TEST_CASE("an out-of-domain point exits with the domain error code and names bounds") {
  const fs::path dir = make_scratch();
  write_file(dir / "m.cfg", kLineConfig);
  const RunResult r =
      run_tool(dir, "eval --config " + (dir / "m.cfg").string() + " --x 1.7");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("1.25") != std::string::npos);  // the violated upper bound
}

TEST_CASE("an inadmissible schedule exits with the schedule error code") {
  const fs::path dir = make_scratch();
  write_file(dir / "s.cfg",
             "kind = line\nschedule.a = 1\nschedule.p = 1\nschedule.b = 1\n"
             "schedule.q = 2\nx = 0.5\n");
  const RunResult r = run_tool(dir, "sweep --config " + (dir / "s.cfg").string());
  CHECK(r.exit_code == 4);
  CHECK(r.err.find("vanish") != std::string::npos);
}

TEST_CASE("sweep reports the admissibility ratio in every row") {
  const fs::path dir = make_scratch();
  write_file(dir / "s.cfg",
             "kind = line\nschedule.a = 1\nschedule.p = 2\nschedule.b = 1\n"
             "schedule.q = 1\nx = 0.5\nsweep.k = 3\n");
  const RunResult r = run_tool(dir, "sweep --config " + (dir / "s.cfg").string());
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK_FALSE(line.empty());
    CHECK(line.rfind(',') != line.size() - 1);  // last column non-empty
  }
  CHECK(rows == 3);
}

TEST_CASE("selftest with a fixed seed is byte-identical across runs") {
  const fs::path dir = make_scratch();
  const RunResult a = run_tool(
      dir, "selftest --seed 5 --out " + (dir / "a").string() + " --format csv");
  const RunResult b = run_tool(
      dir, "selftest --seed 5 --out " + (dir / "b").string() + " --format csv");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  std::ifstream fa(dir / "a" / "selftest.csv"), fb(dir / "b" / "selftest.csv");
  std::ostringstream ba, bb;
  ba << fa.rdbuf();
  bb << fb.rdbuf();
  CHECK(ba.str() == bb.str());
  CHECK_FALSE(ba.str().empty());
}

TEST_CASE("json output is well-formed and carries the tool name") {
  const fs::path dir = make_scratch();
  write_file(dir / "m.cfg", kLineConfig);
  const RunResult r = run_tool(
      dir, "eval --config " + (dir / "m.cfg").string() + " --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"metadata\"") != std::string::npos);
  CHECK(r.out.find("skewlab eval") != std::string::npos);
  CHECK(r.out.find("\"timestamp\"") != std::string::npos);
}

TEST_CASE("the two-sided check runs end to end on a small budget") {
  const fs::path dir = make_scratch();
  write_file(dir / "t.cfg",
             "kind = line\nl = 0\nell = 1\neps = 0.05\n"
             "schedule.a = 1\nschedule.p = 1\nschedule.b = 1\nschedule.q = 0.5\n"
             "x = 0.5\n");
  const RunResult r = run_tool(dir, "verify-theorem1 --config " + (dir / "t.cfg").string() +
                                        " --paths 500 --step 0.02 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("max|z|") != std::string::npos);
  int lines = 0;
  for (char ch : r.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 3);  // header + model row + limit row
}
