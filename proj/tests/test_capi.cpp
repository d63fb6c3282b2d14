#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "cubetop/cubetop.h"

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  ct_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::strlen(ct_version()) > 0);
  CHECK(ct_last_error() != nullptr);
}

TEST_CASE("witness round trip") {
  char* report = nullptr;
  ct_status st = ct_witness(R"({"n":2,"k":2,"labels":[1,1,1,1]})", 0, &report);
  REQUIRE(st == CT_OK);
  std::string text = take(report);
  CHECK(text.find("\"axis\": 1") != std::string::npos);
  CHECK(text.find("\"link_dims\"") != std::string::npos);
  CHECK(text.find("\"cells\"") != std::string::npos);

  st = ct_witness(R"({"n":2,"k":2,"labels":[0,1,1,1]})", 0, &report);
  CHECK(st == CT_ERROR_USAGE);
  CHECK(std::strlen(ct_last_error()) > 0);

  st = ct_witness("{", 0, &report);
  CHECK(st == CT_ERROR_PARSE);
}

TEST_CASE("cell set predicates") {
  ct_cellset* s = nullptr;
  REQUIRE(ct_cellset_parse(R"({"n":2,"k":3,"cells":[[1,2],[2,2],[3,2]]})", &s) == CT_OK);
  int present = 0;
  char* witness = nullptr;
  REQUIRE(ct_cellset_connects(s, 1, 0, &present, &witness) == CT_OK);
  CHECK(present == 1);
  CHECK(take(witness).find("cells") != std::string::npos);
  REQUIRE(ct_cellset_separates(s, 2, &present, &witness) == CT_OK);
  CHECK(present == 1);
  take(witness);
  REQUIRE(ct_cellset_separates(s, 1, &present, nullptr) == CT_OK);
  CHECK(present == 0);
  CHECK(ct_cellset_connects(s, 9, 0, &present, nullptr) == CT_ERROR_USAGE);
  ct_cellset_free(s);
}

TEST_CASE("verify command") {
  char* report = nullptr;
  REQUIRE(ct_verify(2, 2, "plain", 0, 0, 0, 1, &report) == CT_OK);
  std::string text = take(report);
  CHECK(text.find("\"total\": 16") != std::string::npos);
  CHECK(text.find("\"failures\": 0") != std::string::npos);

  CHECK(ct_verify(3, 3, "plain", 0, 0, 0, 1, &report) == CT_ERROR_GUARD);
  CHECK(ct_verify(2, 2, "sideways", 0, 0, 0, 1, &report) == CT_ERROR_USAGE);

  REQUIRE(ct_verify(3, 3, "plain", 0, 42, 100, 1, &report) == CT_OK);
  std::string r1 = take(report);
  REQUIRE(ct_verify(3, 3, "plain", 0, 42, 100, 1, &report) == CT_OK);
  CHECK(r1 == take(report));
}

TEST_CASE("level command") {
  char* report = nullptr;
  REQUIRE(ct_level(R"({"n":2,"k":3,"values":[0,1,2,0,1,2,0,1,2]})", 1, &report) == CT_OK);
  std::string text = take(report);
  CHECK(text.find("\"branch\": \"separating\"") != std::string::npos);
  CHECK(ct_level(R"({"n":2,"k":2,"values":[0,2,0,0]})", 1, &report) == CT_ERROR_USAGE);
}

TEST_CASE("field analysis through handles") {
  ct_field* f = nullptr;
  REQUIRE(ct_field_parse(
              R"({"type":"expr","n":2,"expr":{"op":"coord","axis":1}})", &f) == CT_OK);
  double v = 0;
  double x[2] = {0.25, 0.75};
  REQUIRE(ct_field_eval(f, x, 2, &v) == CT_OK);
  CHECK(v == 0.25);
  char* report = nullptr;
  REQUIRE(ct_analyze(f, R"({"k_schedule":[2],"dp":0.25,"jobs":1})", &report) == CT_OK);
  CHECK(take(report).find("sep_in") != std::string::npos);
  ct_field_free(f);
}

TEST_CASE("synthesis and its violation path") {
  char* field_json = nullptr;
  char* report = nullptr;
  REQUIRE(ct_synthesize(R"({"n":2,"A":[null,[0.2,0.7]],"B":[[0.2,0.7],null]})", &field_json,
                        &report) == CT_OK);
  std::string field_text = take(field_json);
  CHECK(field_text.find("provenance") != std::string::npos);
  CHECK(take(report).find("\"status\": \"ok\"") != std::string::npos);

  ct_field* f = nullptr;
  REQUIRE(ct_field_parse(field_text.c_str(), &f) == CT_OK);
  ct_field_free(f);

  CHECK(ct_synthesize(R"({"n":2,"A":[0.5,[0.2,0.8]],"B":[0.4,null]})", &field_json, &report) ==
        CT_ERROR_USAGE);
  CHECK(field_json == nullptr);
  CHECK(take(report).find("\"condition\": 2") != std::string::npos);
}

TEST_CASE("oracle check") {
  char* report = nullptr;
  REQUIRE(ct_oracle_check(2, 2, 1, 0, 0, &report) == CT_OK);
  std::string text = take(report);
  CHECK(text.find("\"instances\": 16") != std::string::npos);
  CHECK(text.find("\"mismatches\": 0") != std::string::npos);
}
