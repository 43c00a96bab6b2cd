#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "flatcollapse/cli.hpp"
#include "support.hpp"

using namespace fc_test;

namespace {

Json run(const std::vector<std::string>& args) { return report_json(run_command(args)); }

std::string sub(const std::string& name) { return std::string(FLATCOLLAPSE_FIXTURE_DIR) + "/subspaces/" + name + ".json"; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("command examples") {
  auto smooth = run({"smoothness", fixture_path("KB"), "--subspace", sub("e1")});
  CHECK(smooth["smooth"] == false);
  CHECK(smooth["witness"].is_object());
  CHECK(smooth["exit_code"] == 0);

  auto thc = run({"theorem-c", fixture_path("KB")});
  CHECK(thc["applicable"] == false);
  CHECK(thc["exit_code"] == 0);

  auto iseq = run({"isequence", fixture_path("HW")});
  CHECK(iseq["entries"] == Json::array({1, 1, 1}));
  CHECK(iseq["status"] == "certified");
  CHECK(iseq["exit_code"] == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({"validate", "/nonexistent.json"})["exit_code"] == 1);
  CHECK(run({"bogus"})["exit_code"] == 1);
  CHECK(run({"smoothness", fixture_path("HEX3"), "--subspace", sub("e1")})["exit_code"] == 1);
  CHECK(run({"smoothness", fixture_path("T2"), "--subspace", fixture_path("LINE_IRR")})["error"]["code"] ==
        "IrrationalInput");
  auto tight = run({"gh-verify", fixture_path("T2"), "--subspace", sub("e1"), "--radius", "0.01", "--pairs", "4"});
  CHECK(tight["exit_code"] == 2);
  CHECK(tight["error"]["code"] == "RadiusTooSmall");
  CHECK(exit_code_for(ErrorCode::kBudgetLimited) == 2);
}

TEST_CASE("collapse output revalidates and closure output re-parses") {
  const auto out = (std::filesystem::temp_directory_path() / "flatcollapse_cli_test_cg.json").string();
  auto c = run({"collapse", fixture_path("HW"), "--subspace", sub("hw_e1"), "--out", out});
  CHECK(c["exit_code"] == 0);
  auto v = run({"validate", out});
  CHECK(v["valid"] == true);
  CHECK(v["point_group_order"] == 4);
  std::remove(out.c_str());

  auto cl = run({"closure", fixture_path("T2"), "--subspace", fixture_path("LINE_IRR")});
  const auto reparsed = load_subspace(cl["closure"], 2);
  REQUIRE(reparsed.rational);
  CHECK(*reparsed.rational == RatSubspace::whole(2));
}

TEST_CASE("identical invocations give identical output") {
  const std::vector<std::string> args{"gh-verify", fixture_path("KB"), "--subspace", sub("e2"), "--s", "1,0.5", "--pairs",
                                      "16", "--seed", "3"};
  CHECK(run(args).dump() == run(args).dump());
  auto leaf = run({"leaf", fixture_path("KB"), "--subspace", sub("e1"), "--point", "0,1/2"});
  CHECK(leaf["principal"] == false);
  CHECK(leaf["covering_index"] == "2");
  auto locus = run({"singular-locus", fixture_path("KB"), "--subspace", sub("e1")});
  CHECK(locus["exceptional_leaves"].size() == 2);
  CHECK(run({"torsion", fixture_path("HEX3")})["torsion_free"] == false);
}

}  // TEST_SUITE
