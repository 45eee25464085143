#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bbrecomb/catalog.hpp"
#include "bbrecomb/machine.hpp"
#include "bbrecomb/simulator.hpp"

namespace bbrecomb {

// Halted machines are classed by the ones they leave behind: M_PP(ones).
uint64_t classify_mpp(const RunOutcome& outcome);
std::string mpp_label(uint64_t mpp_class);

struct SearchConfig {
  std::vector<CatalogEntry> pool;
  int num_states = kDefaultStates;
  int arity = 2;
  uint64_t step_limit = kDefaultStepLimit;
  int jobs = 1;
  bool dedup = true;
  bool count_duplicates = false;
  std::optional<uint64_t> min_ones;
  std::optional<uint64_t> min_steps;
};

struct SearchRecord {
  std::string name;     // canonical machine name
  std::string lineage;  // lineage text, leaves are pool ids
  uint64_t index = 0;   // position in enumeration order
  RunStatus status = RunStatus::kHalted;
  uint64_t steps = 0;
  std::optional<uint64_t> ones;
  std::optional<uint64_t> mpp_class;
  uint64_t duplicates = 0;  // other specs mapping to the same name
};

struct SearchSummary {
  uint64_t enumerated = 0;
  uint64_t unique_names = 0;
  uint64_t halted = 0;        // over unique names
  uint64_t step_limited = 0;  // over unique names
  uint64_t kept = 0;
  std::map<uint64_t, uint64_t> class_counts;  // class -> kept records
  std::optional<SearchRecord> max_steps;      // kept halted record
};

// Enumerates every arity-way recombination over the pool, simulates each
// distinct table once, filters, optionally deduplicates by canonical name
// (keeping the first spec in enumeration order), and returns the records
// sorted by (name, enumeration index). The result is a pure function of the
// config; the jobs count only partitions the work.
std::vector<SearchRecord> run_search(const SearchConfig& config,
                                     SearchSummary* summary = nullptr);

void write_records_jsonl(std::ostream& out,
                         std::span<const SearchRecord> records,
                         bool with_duplicates);
void write_records_csv(std::ostream& out, std::span<const SearchRecord> records,
                       bool with_duplicates);

enum class VerifyStatus { kPass, kFail, kMeasured };

struct VerifyResult {
  std::string id;
  VerifyStatus status = VerifyStatus::kMeasured;
  std::string detail;
  RunOutcome outcome;
};

struct VerifyReport {
  std::vector<VerifyResult> lines;
  uint64_t passed = 0;
  uint64_t failed = 0;
  uint64_t measured = 0;  // entries with nothing to compare
};

// Re-simulates every entry and compares against whatever expectations it
// carries; entries without expectations are reported as measured.
VerifyReport verify_catalog(std::span<const CatalogEntry> entries,
                            uint64_t step_limit = kDefaultStepLimit,
                            int num_states = kDefaultStates);

}  // namespace bbrecomb
