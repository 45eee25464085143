#include "bbrecomb/search.hpp"

#include <algorithm>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>

#include "bbrecomb/recombine.hpp"
#include "json.hpp"

namespace bbrecomb {

uint64_t classify_mpp(const RunOutcome& outcome) {
  if (!outcome.halted()) {
    throw std::invalid_argument("only halted machines have an M_PP class");
  }
  return *outcome.ones;
}

std::string mpp_label(uint64_t mpp_class) {
  return "M_PP(" + std::to_string(mpp_class) + ")";
}

namespace {

// Shared name -> outcome cache. Distinct recombinations frequently collapse
// to the same table, and a run is a pure function of the name, so each name
// is simulated at most once (benign rediscovery races aside).
class OutcomeCache {
 public:
  explicit OutcomeCache(uint64_t step_limit) : step_limit_(step_limit) {}

  RunOutcome get(const std::string& name, const Machine& machine) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (auto it = cache_.find(name); it != cache_.end()) return it->second;
    }
    RunOutcome outcome = run(machine, step_limit_);
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(name, outcome).first->second;
  }

  uint64_t size() const { return cache_.size(); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [name, outcome] : cache_) fn(name, outcome);
  }

 private:
  uint64_t step_limit_;
  std::mutex mutex_;
  std::unordered_map<std::string, RunOutcome> cache_;
};

std::string lineage_text(std::span<const std::string> pool_ids,
                         const RecombinationEnumeration::Item& item) {
  std::vector<Lineage> leaves;
  leaves.reserve(item.sources.size());
  for (int source : item.sources) {
    leaves.push_back(
        Lineage::leaf("row:" + pool_ids[static_cast<size_t>(source)]));
  }
  if (leaves.size() == 1) return leaves.front().to_string();
  return Lineage::recomb(std::move(leaves), item.cuts).to_string();
}

bool passes_filter(const SearchConfig& config, const RunOutcome& outcome) {
  if (config.min_ones &&
      (!outcome.ones || *outcome.ones < *config.min_ones)) {
    return false;
  }
  if (config.min_steps && outcome.steps < *config.min_steps) return false;
  return true;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

const char* status_text(RunStatus status) {
  return status == RunStatus::kHalted ? "halted" : "step-limit";
}

}  // namespace

std::vector<SearchRecord> run_search(const SearchConfig& config,
                                     SearchSummary* summary) {
  if (config.pool.empty()) {
    throw std::invalid_argument("search pool is empty");
  }
  if (config.arity < 1) throw std::invalid_argument("arity must be >= 1");
  if (config.jobs < 1) throw std::invalid_argument("jobs must be >= 1");

  std::vector<Machine> machines;
  std::vector<std::string> pool_ids;
  machines.reserve(config.pool.size());
  pool_ids.reserve(config.pool.size());
  for (const CatalogEntry& entry : config.pool) {
    machines.push_back(decode_name(entry.name, config.num_states));
    pool_ids.push_back(entry.id);
  }

  const RecombinationEnumeration enumeration(
      static_cast<int>(machines.size()), config.arity, config.num_states);
  const uint64_t total = enumeration.size();

  OutcomeCache cache(config.step_limit);

  // Each worker owns a contiguous index range and emits records in index
  // order, so concatenating the per-worker outputs reproduces the sequential
  // enumeration no matter how many workers ran.
  auto process_range = [&](uint64_t begin, uint64_t end,
                           std::vector<SearchRecord>& out) {
    std::vector<Machine> sources(static_cast<size_t>(config.arity),
                                 Machine(config.num_states));
    for (uint64_t index = begin; index < end; ++index) {
      const RecombinationEnumeration::Item item = enumeration.at(index);
      for (size_t i = 0; i < item.sources.size(); ++i) {
        sources[i] = machines[static_cast<size_t>(item.sources[i])];
      }
      const Machine machine = recombine(sources, item.cuts);

      SearchRecord record;
      record.name = encode_name(machine);
      record.lineage = lineage_text(pool_ids, item);
      record.index = index;

      const RunOutcome outcome = cache.get(record.name, machine);
      record.status = outcome.status;
      record.steps = outcome.steps;
      record.ones = outcome.ones;
      if (outcome.halted()) record.mpp_class = classify_mpp(outcome);
      out.push_back(std::move(record));
    }
  };

  std::vector<SearchRecord> records;
  const int jobs = static_cast<int>(
      std::min<uint64_t>(static_cast<uint64_t>(config.jobs),
                         std::max<uint64_t>(total, 1)));
  if (jobs <= 1) {
    records.reserve(static_cast<size_t>(total));
    process_range(0, total, records);
  } else {
    std::vector<std::vector<SearchRecord>> parts(static_cast<size_t>(jobs));
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(jobs));
    const uint64_t chunk = total / jobs;
    const uint64_t remainder = total % jobs;
    uint64_t begin = 0;
    for (int j = 0; j < jobs; ++j) {
      const uint64_t size = chunk + (static_cast<uint64_t>(j) < remainder);
      const uint64_t end = begin + size;
      workers.emplace_back(process_range, begin, end,
                           std::ref(parts[static_cast<size_t>(j)]));
      begin = end;
    }
    for (std::thread& worker : workers) worker.join();
    records.reserve(static_cast<size_t>(total));
    for (std::vector<SearchRecord>& part : parts) {
      std::move(part.begin(), part.end(), std::back_inserter(records));
    }
  }

  // Provenance duplicate counts are over the whole enumeration, before any
  // filtering, so a kept record reports every spec that mapped to its name.
  if (config.count_duplicates) {
    std::unordered_map<std::string, uint64_t> occurrences;
    for (const SearchRecord& record : records) ++occurrences[record.name];
    for (SearchRecord& record : records) {
      record.duplicates = occurrences[record.name] - 1;
    }
  }

  std::erase_if(records, [&](const SearchRecord& record) {
    RunOutcome outcome;
    outcome.status = record.status;
    outcome.steps = record.steps;
    outcome.ones = record.ones;
    return !passes_filter(config, outcome);
  });

  // Merge order: canonical name, then enumeration index. Indexes are unique,
  // so the order is total and independent of the partitioning.
  std::sort(records.begin(), records.end(),
            [](const SearchRecord& a, const SearchRecord& b) {
              if (a.name != b.name) return a.name < b.name;
              return a.index < b.index;
            });

  if (config.dedup) {
    std::vector<SearchRecord> unique;
    unique.reserve(records.size());
    for (SearchRecord& record : records) {
      if (unique.empty() || unique.back().name != record.name) {
        unique.push_back(std::move(record));
      }
    }
    records = std::move(unique);
  }

  if (summary) {
    *summary = SearchSummary{};
    summary->enumerated = total;
    summary->unique_names = cache.size();
    cache.for_each([&](const std::string&, const RunOutcome& outcome) {
      if (outcome.halted()) ++summary->halted;
      else ++summary->step_limited;
    });
    summary->kept = records.size();
    for (const SearchRecord& record : records) {
      if (record.mpp_class) ++summary->class_counts[*record.mpp_class];
      if (record.status == RunStatus::kHalted &&
          (!summary->max_steps || record.steps > summary->max_steps->steps)) {
        summary->max_steps = record;
      }
    }
  }
  return records;
}

void write_records_jsonl(std::ostream& out,
                         std::span<const SearchRecord> records,
                         bool with_duplicates) {
  for (const SearchRecord& record : records) {
    nlohmann::ordered_json line;
    line["name"] = record.name;
    line["lineage"] = record.lineage;
    line["index"] = record.index;
    line["status"] = status_text(record.status);
    line["steps"] = record.steps;
    if (record.ones) line["ones"] = *record.ones;
    if (record.mpp_class) line["class"] = *record.mpp_class;
    if (with_duplicates) line["duplicates"] = record.duplicates;
    out << line.dump() << "\n";
  }
}

void write_records_csv(std::ostream& out,
                       std::span<const SearchRecord> records,
                       bool with_duplicates) {
  out << "name,lineage,index,status,steps,ones,class";
  if (with_duplicates) out << ",duplicates";
  out << "\n";
  for (const SearchRecord& record : records) {
    out << csv_field(record.name) << ',' << csv_field(record.lineage) << ','
        << record.index << ',' << status_text(record.status) << ','
        << record.steps << ',';
    if (record.ones) out << *record.ones;
    out << ',';
    if (record.mpp_class) out << *record.mpp_class;
    if (with_duplicates) out << ',' << record.duplicates;
    out << "\n";
  }
}

VerifyReport verify_catalog(std::span<const CatalogEntry> entries,
                            uint64_t step_limit, int num_states) {
  VerifyReport report;
  for (const CatalogEntry& entry : entries) {
    VerifyResult result;
    result.id = entry.id;

    Machine machine(num_states);
    try {
      machine = decode_name(entry.name, num_states);
    } catch (const ParseError& error) {
      result.status = VerifyStatus::kFail;
      result.detail = std::string("name does not decode: ") + error.what();
      report.lines.push_back(std::move(result));
      ++report.failed;
      continue;
    }

    result.outcome = run(machine, step_limit);
    const RunOutcome& outcome = result.outcome;
    const bool has_expectations = entry.expected_ones || entry.expected_steps;

    if (!has_expectations) {
      result.status = VerifyStatus::kMeasured;
      if (outcome.halted()) {
        result.detail = "steps " + std::to_string(outcome.steps) + ", ones " +
                        std::to_string(*outcome.ones) + " (measured)";
      } else {
        result.detail =
            "no halt within " + std::to_string(step_limit) + " steps";
      }
      ++report.measured;
    } else if (!outcome.halted()) {
      result.status = VerifyStatus::kFail;
      result.detail =
          "no halt within " + std::to_string(step_limit) + " steps";
      ++report.failed;
    } else {
      std::string mismatches;
      if (entry.expected_ones && *entry.expected_ones != *outcome.ones) {
        mismatches += "expected ones " + std::to_string(*entry.expected_ones) +
                      ", got " + std::to_string(*outcome.ones);
      }
      if (entry.expected_steps && *entry.expected_steps != outcome.steps) {
        if (!mismatches.empty()) mismatches += "; ";
        mismatches += "expected steps " +
                      std::to_string(*entry.expected_steps) + ", got " +
                      std::to_string(outcome.steps);
      }
      if (mismatches.empty()) {
        result.status = VerifyStatus::kPass;
        result.detail = "steps " + std::to_string(outcome.steps) + ", ones " +
                        std::to_string(*outcome.ones);
        if (!entry.expected_steps) result.detail += " (steps measured)";
        ++report.passed;
      } else {
        result.status = VerifyStatus::kFail;
        result.detail = std::move(mismatches);
        ++report.failed;
      }
    }
    report.lines.push_back(std::move(result));
  }
  return report;
}

}  // namespace bbrecomb
