#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "bbrecomb/catalog.hpp"
#include "bbrecomb/search.hpp"
#include "bbrecomb/simulator.hpp"
#include "doctest.h"

namespace bbrecomb {
namespace {

std::vector<CatalogEntry> pool_rows(std::initializer_list<const char*> ids) {
  std::vector<CatalogEntry> pool;
  for (const char* id : ids) {
    for (const CatalogEntry& entry : builtin_catalog()) {
      if (entry.id == id) pool.push_back(entry);
    }
  }
  REQUIRE(pool.size() == ids.size());
  return pool;
}

std::string jsonl_of(const std::vector<SearchRecord>& records,
                     bool with_duplicates = false) {
  std::ostringstream out;
  write_records_jsonl(out, records, with_duplicates);
  return out.str();
}

TEST_SUITE("search") {

TEST_CASE("halted machines are classed by their ones count") {
  const RunOutcome halted{RunStatus::kHalted, 297, 20, 50};
  CHECK(classify_mpp(halted) == 20);
  CHECK(mpp_label(classify_mpp(halted)) == "M_PP(20)");

  const RunOutcome empty{RunStatus::kHalted, 0, 0, 1};
  CHECK(classify_mpp(empty) == 0);

  const RunOutcome capped{RunStatus::kStepLimit, 1000, std::nullopt, 10};
  CHECK_THROWS_AS(classify_mpp(capped), std::invalid_argument);
}

TEST_CASE("search rejects unusable configurations") {
  SearchConfig config;
  CHECK_THROWS_AS(run_search(config), std::invalid_argument);  // empty pool
  config.pool = pool_rows({"13"});
  config.arity = 0;
  CHECK_THROWS_AS(run_search(config), std::invalid_argument);
  config.arity = 2;
  config.jobs = 0;
  CHECK_THROWS_AS(run_search(config), std::invalid_argument);
}

TEST_CASE("a one-machine pool dedups to a single record") {
  SearchConfig config;
  config.pool = pool_rows({"13"});
  config.step_limit = 1000;
  config.count_duplicates = true;

  SearchSummary summary;
  const auto records = run_search(config, &summary);
  REQUIRE(records.size() == 1);
  CHECK(records[0].name == config.pool[0].name);
  CHECK(records[0].index == 0);
  CHECK(records[0].lineage == "[recomb cuts=(0) [row:13] [row:13]]");
  CHECK(records[0].status == RunStatus::kHalted);
  CHECK(records[0].steps == 192);
  CHECK(records[0].ones == 19);
  CHECK(records[0].mpp_class == 19);
  CHECK(records[0].duplicates == 9);  // ten specs, one name

  CHECK(summary.enumerated == 10);
  CHECK(summary.unique_names == 1);
  CHECK(summary.halted == 1);
  CHECK(summary.step_limited == 0);
  CHECK(summary.kept == 1);
  CHECK(summary.class_counts.at(19) == 1);
  REQUIRE(summary.max_steps.has_value());
  CHECK(summary.max_steps->steps == 192);
  CHECK(summary.max_steps->name == config.pool[0].name);
}

TEST_CASE("without dedup every spec is kept, ordered by name then index") {
  SearchConfig config;
  config.pool = pool_rows({"13"});
  config.step_limit = 1000;
  config.dedup = false;
  config.count_duplicates = true;

  const auto records = run_search(config);
  REQUIRE(records.size() == 10);
  for (size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].index == i);  // one name, so index order
    CHECK(records[i].name == records[0].name);
    CHECK(records[i].duplicates == 9);
  }
}

TEST_CASE("arity one re-simulates the pool itself") {
  SearchConfig config;
  config.pool = pool_rows({"9", "13"});
  config.arity = 1;
  config.step_limit = 30'000;

  const auto records = run_search(config);
  REQUIRE(records.size() == 2);
  // Name order: row 13's tuple starts "(9, 0, 9, 1, 11..." and row 9's
  // "(9, 0, 9, 1, 12..." so row 13 sorts first.
  CHECK(records[0].lineage == "[row:13]");
  CHECK(records[0].steps == 192);
  CHECK(records[1].lineage == "[row:9]");
  CHECK(records[1].steps == 20'927);
}

TEST_CASE("kept records re-simulate from their name alone") {
  SearchConfig config;
  config.pool = pool_rows({"9", "13"});
  config.step_limit = 100'000;

  const auto records = run_search(config);
  CHECK(records.size() >= 2);
  for (const SearchRecord& record : records) {
    const RunOutcome again = run(decode_name(record.name), config.step_limit);
    CHECK(again.status == record.status);
    CHECK(again.steps == record.steps);
    CHECK(again.ones == record.ones);
  }
}

TEST_CASE("ones filter keeps only records at or above the floor") {
  SearchConfig config;
  config.pool = pool_rows({"2", "3"});
  config.min_ones = 4095;

  const auto records = run_search(config);
  CHECK_FALSE(records.empty());
  for (const SearchRecord& record : records) {
    REQUIRE(record.ones.has_value());
    CHECK(*record.ones >= 4095);
  }

  // Rows 2 and 3 differ in a single table slot, so every pairwise
  // recombination collapses back onto one of them.
  CHECK(records.size() == 2);

  config.min_ones = 4096;
  CHECK(run_search(config).empty());
}

TEST_CASE("steps filter and capped records") {
  // A machine that only ever walks left: one rule, never halts.
  CatalogEntry loop;
  loop.id = "loop";
  loop.name = "(1, 0, 0)";

  SearchConfig config;
  config.pool = {loop};
  config.arity = 1;
  config.step_limit = 1000;

  auto records = run_search(config);
  REQUIRE(records.size() == 1);
  CHECK(records[0].status == RunStatus::kStepLimit);
  CHECK(records[0].steps == 1000);
  CHECK_FALSE(records[0].ones.has_value());
  CHECK_FALSE(records[0].mpp_class.has_value());
  CHECK(records[0].lineage == "[row:loop]");

  // A capped record has no ones, so any ones floor drops it.
  config.min_ones = 1;
  CHECK(run_search(config).empty());

  config.min_ones.reset();
  config.min_steps = 1001;
  CHECK(run_search(config).empty());
  config.min_steps = 1000;
  CHECK(run_search(config).size() == 1);
}

TEST_CASE("output is identical no matter how many jobs ran") {
  SearchConfig config;
  config.pool = pool_rows({"9", "10", "11", "12", "13"});
  config.step_limit = 100'000;
  config.count_duplicates = true;

  SearchSummary summary1;
  config.jobs = 1;
  const std::string one = jsonl_of(run_search(config, &summary1), true);
  for (int jobs : {2, 3, 8}) {
    SearchSummary summaryN;
    config.jobs = jobs;
    const std::string many = jsonl_of(run_search(config, &summaryN), true);
    CHECK(one == many);
    CHECK(summary1.enumerated == summaryN.enumerated);
    CHECK(summary1.unique_names == summaryN.unique_names);
    CHECK(summary1.kept == summaryN.kept);
  }
}

TEST_CASE("repeated runs give byte-identical output") {
  SearchConfig config;
  config.pool = pool_rows({"9", "13"});
  config.step_limit = 100'000;
  config.jobs = 2;

  std::ostringstream first_jsonl, second_jsonl, first_csv, second_csv;
  write_records_jsonl(first_jsonl, run_search(config), false);
  write_records_jsonl(second_jsonl, run_search(config), false);
  write_records_csv(first_csv, run_search(config), false);
  write_records_csv(second_csv, run_search(config), false);
  CHECK(first_jsonl.str() == second_jsonl.str());
  CHECK_FALSE(first_jsonl.str().empty());
  CHECK(first_csv.str() == second_csv.str());
}

TEST_CASE("record writers emit one self-contained line per record") {
  SearchRecord halted;
  halted.name = "(1, 0, 11)";
  halted.lineage = "[recomb cuts=(0,3) [row:x] [row:y] [row:y]]";
  halted.index = 3;
  halted.status = RunStatus::kHalted;
  halted.steps = 5;
  halted.ones = 2;
  halted.mpp_class = 2;
  halted.duplicates = 4;

  SearchRecord capped;
  capped.name = "(0)";
  capped.lineage = "[row:x]";
  capped.index = 0;
  capped.status = RunStatus::kStepLimit;
  capped.steps = 100;

  const std::vector<SearchRecord> records = {halted, capped};

  std::ostringstream jsonl;
  write_records_jsonl(jsonl, records, true);
  CHECK(jsonl.str() ==
        "{\"name\":\"(1, 0, 11)\",\"lineage\":\"[recomb cuts=(0,3) [row:x] "
        "[row:y] [row:y]]\",\"index\":3,\"status\":\"halted\",\"steps\":5,"
        "\"ones\":2,\"class\":2,\"duplicates\":4}\n"
        "{\"name\":\"(0)\",\"lineage\":\"[row:x]\",\"index\":0,"
        "\"status\":\"step-limit\",\"steps\":100,\"duplicates\":0}\n");

  std::ostringstream jsonl_plain;
  write_records_jsonl(jsonl_plain, records, false);
  CHECK(jsonl_plain.str().find("duplicates") == std::string::npos);

  std::ostringstream csv;
  write_records_csv(csv, records, true);
  CHECK(csv.str() ==
        "name,lineage,index,status,steps,ones,class,duplicates\n"
        "\"(1, 0, 11)\",\"[recomb cuts=(0,3) [row:x] [row:y] [row:y]]\","
        "3,halted,5,2,2,4\n"
        "(0),[row:x],0,step-limit,100,,,0\n");
}

TEST_CASE("verification passes matching entries and explains the rest") {
  std::vector<CatalogEntry> entries;
  for (const CatalogEntry& entry : golden_recombinations()) {
    if (entry.id.rfind("fig10", 0) == 0) entries.push_back(entry);
  }
  REQUIRE(entries.size() == 3);

  CatalogEntry measured;
  measured.id = "m";
  measured.name = pool_rows({"13"})[0].name;
  entries.push_back(measured);

  CatalogEntry wrong;
  wrong.id = "wrong";
  wrong.name = "(1, 0, 11)";
  wrong.expected_ones = 5;
  entries.push_back(wrong);

  CatalogEntry broken;
  broken.id = "broken";
  broken.name = "(1, 0";
  entries.push_back(broken);

  const VerifyReport report = verify_catalog(entries, 1000);
  REQUIRE(report.lines.size() == 6);
  CHECK(report.passed == 3);
  CHECK(report.failed == 2);
  CHECK(report.measured == 1);

  CHECK(report.lines[0].status == VerifyStatus::kPass);
  CHECK(report.lines[0].detail == "steps 279, ones 20");
  CHECK(report.lines[3].status == VerifyStatus::kMeasured);
  CHECK(report.lines[3].detail.find("measured") != std::string::npos);
  CHECK(report.lines[4].status == VerifyStatus::kFail);
  CHECK(report.lines[4].detail.find("expected ones 5, got 1") !=
        std::string::npos);
  CHECK(report.lines[5].status == VerifyStatus::kFail);
  CHECK(report.lines[5].detail.find("decode") != std::string::npos);
}

TEST_CASE("verification fails loudly when the cap cuts a run short") {
  std::vector<CatalogEntry> entries = pool_rows({"8"});
  const VerifyReport capped = verify_catalog(entries, 1000);
  REQUIRE(capped.lines.size() == 1);
  CHECK(capped.failed == 1);
  CHECK(capped.lines[0].status == VerifyStatus::kFail);
  CHECK(capped.lines[0].detail.find("no halt within 1000 steps") !=
        std::string::npos);

  const VerifyReport full = verify_catalog(entries, kDefaultStepLimit);
  CHECK(full.passed == 1);
  CHECK(full.lines[0].detail == "steps 134466, ones 501");
}

TEST_CASE("ones-only expectations pass with measured steps") {
  const VerifyReport report =
      verify_catalog(pool_rows({"9", "13"}), 100'000);
  REQUIRE(report.lines.size() == 2);
  CHECK(report.passed == 2);
  CHECK(report.lines[0].detail == "steps 20927, ones 160 (steps measured)");
  CHECK(report.lines[1].detail == "steps 192, ones 19 (steps measured)");
}

}  // TEST_SUITE

}  // namespace
}  // namespace bbrecomb
