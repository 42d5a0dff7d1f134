// Exit-code taxonomy: 0 success, 1 negative verdict, 2 usage, 3 unknown.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "ctlab/graph_io.hpp"

using namespace ctlab;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const char* cli = std::getenv("CTLAB_CLI");
  REQUIRE(cli != nullptr);
  std::string cmd = std::string(cli) + " " + args + " > cli_out.txt 2>/dev/null";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("exit codes per subcommand") {
  fs::create_directories("cli_tmp");
  // C_4 and C_6 fixtures
  write_file("cli_tmp/c4.json", R"({"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]})");
  write_file("cli_tmp/c6.json",
             R"({"n":6,"edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[0,5]]})");

  CHECK(run("m2 --input cli_tmp/c4.json --out-dir cli_tmp") == 0);
  CHECK(read_file("cli_out.txt") == "3/2\n");

  // triangle-free: complete search says none
  CHECK(run("factor solve --t 3 --input cli_tmp/c6.json --out-dir cli_tmp") == 1);
  CHECK(read_file("cli_out.txt") == "none\n");

  // C_6 is its own 6-cycle
  CHECK(run("factor solve --t 6 --input cli_tmp/c6.json --out-dir cli_tmp") == 0);

  // tiny budget: unknown
  CHECK(run("factor solve --t 6 --input cli_tmp/c6.json --budget-ms 0 --out-dir cli_tmp") == 3);

  // usage errors
  CHECK(run("m2 --no-such-flag") == 2);
  CHECK(run("gadget build --kind nonsense --out-dir cli_tmp") == 2);

  fs::remove_all("cli_tmp");
  fs::remove("cli_out.txt");
}
