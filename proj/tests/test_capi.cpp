#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "ncbmo.h"

TEST_CASE("version string") {
  CHECK(std::string(ncbmo_version()) == "0.1.0");
}

TEST_CASE("run a suite through the c api") {
  ncbmo_result* res = nullptr;
  int rc = ncbmo_run_suite(
      "{\"suite\": \"lemma11-properties\", \"samples\": 20, \"seed\": 3}",
      &res);
  REQUIRE(res != nullptr);
  CHECK(rc == 0);
  CHECK(ncbmo_result_status(res) == 0);
  std::string json = ncbmo_result_json(res);
  CHECK(json.find("ncbmo-report/1") != std::string::npos);
  CHECK(json.find("lemma11-properties") != std::string::npos);
  ncbmo_result_free(res);
}

TEST_CASE("malformed input reports rc 2 and an error message") {
  ncbmo_result* res = nullptr;
  int rc = ncbmo_run_suite("this is not json", &res);
  CHECK(rc == 2);
  CHECK(res == nullptr);
  CHECK(std::strlen(ncbmo_last_error()) > 0);
  rc = ncbmo_run_suite("{\"suite\": \"no-such-suite\"}", &res);
  CHECK(rc == 2);
  rc = ncbmo_run_suite(nullptr, &res);
  CHECK(rc == 2);
}

TEST_CASE("bmo entry point") {
  const char* matrix =
      "{\"n\": 2, \"re\": [[0, 1], [0, 0]], \"im\": [[0, 0], [0, 0]]}";
  const char* semigroup =
      "{\"kind\": \"schur_length\", \"n\": 2, "
      "\"psi\": {\"form\": \"power\", \"exponent\": 1.0}}";
  ncbmo_result* res = nullptr;
  int rc = ncbmo_bmo(matrix, semigroup, "column", &res);
  REQUIRE(res != nullptr);
  CHECK(rc == 0);
  std::string json = ncbmo_result_json(res);
  CHECK(json.find("value") != std::string::npos);
  ncbmo_result_free(res);
  rc = ncbmo_bmo(matrix, semigroup, "sideways", &res);
  CHECK(rc == 2);
}

TEST_CASE("qtorus entry point") {
  const char* series =
      "{\"n\": 2, \"theta_upper\": [0.37], "
      "\"coeffs\": [{\"xi\": [1, 0], \"re\": 1.0, \"im\": 0.0}]}";
  ncbmo_result* res = nullptr;
  int rc = ncbmo_qtorus("gnsnorm", series, 8, &res);
  REQUIRE(res != nullptr);
  CHECK(rc == 0);
  std::string json = ncbmo_result_json(res);
  CHECK(json.find("1") != std::string::npos);
  ncbmo_result_free(res);
  rc = ncbmo_qtorus("heat", series, -1.0, &res);
  CHECK(rc == 2);
  rc = ncbmo_qtorus("no-such-op", series, 0, &res);
  CHECK(rc == 2);
}

TEST_CASE("transfer entry point") {
  ncbmo_result* res = nullptr;
  int rc = ncbmo_transfer("z6", nullptr, &res);
  REQUIRE(res != nullptr);
  CHECK(rc == 0);
  ncbmo_result_free(res);
  rc = ncbmo_transfer("z6", "[[1, 0], [0.5, 0], [0, 0], [0, 0], [0, 0], [0.5, 0]]",
                      &res);
  REQUIRE(res != nullptr);
  CHECK(rc == 0);
  std::string json = ncbmo_result_json(res);
  CHECK(json.find("ratio") != std::string::npos);
  ncbmo_result_free(res);
  rc = ncbmo_transfer("no-such-group", nullptr, &res);
  CHECK(rc == 2);
}
