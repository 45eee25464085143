#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bbrecomb/catalog.hpp"
#include "bbrecomb/machine.hpp"
#include "bbrecomb/recombine.hpp"
#include "bbrecomb/search.hpp"
#include "bbrecomb/simulator.hpp"

namespace {

using namespace bbrecomb;

// Pool selection shared by recombine/search/verify: the builtin rows by
// default, a pool file otherwise, optionally narrowed to specific ids.
std::vector<CatalogEntry> select_pool(const std::string& pool_arg,
                                      const std::string& ids_arg,
                                      int num_states) {
  std::vector<CatalogEntry> pool;
  if (pool_arg.empty() || pool_arg == "builtin") {
    pool = builtin_catalog();
  } else {
    pool = load_pool(pool_arg, num_states);
  }
  if (ids_arg.empty()) return pool;

  std::vector<CatalogEntry> picked;
  std::stringstream ids(ids_arg);
  std::string id;
  while (std::getline(ids, id, ',')) {
    bool found = false;
    for (const CatalogEntry& entry : pool) {
      if (entry.id == id) {
        picked.push_back(entry);
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::runtime_error("id '" + id + "' is not in the pool");
    }
  }
  return picked;
}

void print_outcome(std::ostream& out, const std::string& name,
                   const RunOutcome& outcome, bool rado) {
  out << "name: " << name << "\n";
  out << "status: "
      << (outcome.halted() ? "halted" : "step-limit") << "\n";
  out << "steps: " << outcome.steps << "\n";
  if (outcome.ones) out << "ones: " << *outcome.ones << "\n";
  out << "extent: " << outcome.extent << "\n";
  if (outcome.halted()) {
    out << "class: " << mpp_label(classify_mpp(outcome)) << "\n";
  }
  if (rado) {
    const RadoReport report = rado_report(outcome);
    out << "rado_steps: " << report.steps << "\n";
    out << "rado_ones: " << report.ones << "\n";
  }
}

void print_summary(std::ostream& out, const SearchSummary& summary) {
  out << "enumerated: " << summary.enumerated << "\n";
  out << "unique_names: " << summary.unique_names << "\n";
  out << "halted: " << summary.halted << "\n";
  out << "step_limited: " << summary.step_limited << "\n";
  out << "kept: " << summary.kept << "\n";
  for (const auto& [mpp_class, count] : summary.class_counts) {
    out << "class " << mpp_label(mpp_class) << ": " << count << "\n";
  }
  if (summary.max_steps) {
    out << "max_steps: " << summary.max_steps->steps << "\n";
    out << "max_steps_name: " << summary.max_steps->name << "\n";
    out << "max_steps_lineage: " << summary.max_steps->lineage << "\n";
  }
}

int run_command(const std::string& name, uint64_t step_limit, bool rado,
                int num_states) {
  const Machine machine = decode_name(name, num_states);
  const RunOutcome outcome = run(machine, step_limit);
  if (rado && !outcome.halted()) {
    throw std::runtime_error(
        "no halting-state report: the machine did not halt within " +
        std::to_string(step_limit) + " steps");
  }
  print_outcome(std::cout, encode_name(machine), outcome, rado);
  return 0;
}

int decode_command(const std::string& name, int num_states) {
  const Machine machine = decode_name(name, num_states);
  std::cout << "name: " << encode_name(machine) << "\n";
  std::cout << format_rules(machine);
  return 0;
}

int encode_command(const std::string& path, int num_states) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rules file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const Machine machine = parse_rules(buffer.str(), num_states);
  std::cout << encode_name(machine) << "\n";
  return 0;
}

int recombine_command(const std::string& pool_arg, const std::string& sources,
                      const std::string& cuts_arg, int num_states) {
  const std::vector<CatalogEntry> picked =
      select_pool(pool_arg, sources, num_states);

  std::vector<int> cuts;
  if (!cuts_arg.empty()) {
    std::stringstream in(cuts_arg);
    std::string field;
    while (std::getline(in, field, ',')) {
      try {
        size_t used = 0;
        cuts.push_back(std::stoi(field, &used));
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw std::runtime_error("bad cut point '" + field + "'");
      }
    }
  }

  std::vector<Machine> machines;
  std::vector<Lineage> leaves;
  machines.reserve(picked.size());
  for (const CatalogEntry& entry : picked) {
    machines.push_back(decode_name(entry.name, num_states));
    leaves.push_back(Lineage::leaf("row:" + entry.id));
  }
  const Machine result = recombine(machines, cuts);
  const Lineage lineage = picked.size() == 1 && cuts.empty()
                              ? leaves.front()
                              : Lineage::recomb(std::move(leaves), cuts);

  std::cout << "name: " << encode_name(result) << "\n";
  std::cout << "lineage: " << lineage.to_string() << "\n";
  std::cout << format_rules(result);
  return 0;
}

int search_command(const SearchConfig& config, const std::string& out_path,
                   const std::string& csv_path, bool with_duplicates) {
  SearchSummary summary;
  const std::vector<SearchRecord> records = run_search(config, &summary);

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_records_jsonl(out, records, with_duplicates);
    if (!out.good()) throw std::runtime_error("write failed: " + out_path);
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    write_records_csv(out, records, with_duplicates);
    if (!out.good()) throw std::runtime_error("write failed: " + csv_path);
  }
  if (out_path.empty() && csv_path.empty()) {
    write_records_jsonl(std::cout, records, with_duplicates);
    print_summary(std::cerr, summary);
  } else {
    print_summary(std::cout, summary);
  }
  return 0;
}

int catalog_command(bool golden, const std::string& export_path) {
  const std::vector<CatalogEntry>& entries =
      golden ? golden_recombinations() : builtin_catalog();
  if (export_path.empty()) {
    write_pool(std::cout, entries);
    return 0;
  }
  std::ofstream out(export_path);
  if (!out) throw std::runtime_error("cannot write " + export_path);
  write_pool(out, entries);
  if (!out.good()) throw std::runtime_error("write failed: " + export_path);
  std::cout << "wrote " << entries.size() << " entries to " << export_path
            << "\n";
  return 0;
}

int verify_command(const std::string& pool_arg, bool golden_only,
                   bool builtin_only, uint64_t cap, int num_states) {
  std::vector<CatalogEntry> entries;
  if (!pool_arg.empty()) {
    entries = load_pool(pool_arg, num_states);
  } else {
    if (!golden_only) {
      const std::vector<CatalogEntry>& builtin = builtin_catalog();
      entries.insert(entries.end(), builtin.begin(), builtin.end());
    }
    if (!builtin_only) {
      const std::vector<CatalogEntry>& golden = golden_recombinations();
      entries.insert(entries.end(), golden.begin(), golden.end());
    }
  }

  const VerifyReport report = verify_catalog(entries, cap, num_states);
  for (const VerifyResult& line : report.lines) {
    const char* tag = line.status == VerifyStatus::kPass       ? "PASS"
                      : line.status == VerifyStatus::kFail     ? "FAIL"
                                                               : "MEASURED";
    std::cout << tag << " " << line.id << ": " << line.detail << "\n";
  }
  std::cout << "passed: " << report.passed << ", failed: " << report.failed
            << ", measured: " << report.measured << "\n";
  return report.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Busy-beaver machine workbench: simulate, recombine, search"};
  app.require_subcommand(1);

  int num_states = kDefaultStates;
  app.add_option("--states", num_states, "Number of machine states")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // run
  auto* run_cmd = app.add_subcommand("run", "Simulate a machine by name");
  std::string run_name;
  uint64_t run_limit = kDefaultStepLimit;
  bool run_rado = false;
  run_cmd->add_option("name", run_name, "Machine name tuple")->required();
  run_cmd->add_option("--step-limit", run_limit, "Step cap")
      ->capture_default_str();
  run_cmd->add_flag("--rado", run_rado,
                    "Also report halting-state-model counts");

  // decode
  auto* decode_cmd =
      app.add_subcommand("decode", "Print a machine's transition rules");
  std::string decode_name_arg;
  decode_cmd->add_option("name", decode_name_arg, "Machine name tuple")
      ->required();

  // encode
  auto* encode_cmd =
      app.add_subcommand("encode", "Name a machine given as a rules file");
  std::string encode_path;
  encode_cmd->add_option("rules-file", encode_path, "Rules file")->required();

  // recombine
  auto* recomb_cmd = app.add_subcommand(
      "recombine", "Stitch machines together at the given cut points");
  std::string recomb_pool = "builtin";
  std::string recomb_sources;
  std::string recomb_cuts;
  recomb_cmd->add_option("--pool", recomb_pool, "Pool file or 'builtin'")
      ->capture_default_str();
  recomb_cmd
      ->add_option("--sources", recomb_sources,
                   "Comma-separated pool ids, leftmost first")
      ->required();
  recomb_cmd->add_option("--cuts", recomb_cuts,
                         "Comma-separated nondecreasing cut points");

  // search
  auto* search_cmd = app.add_subcommand(
      "search", "Enumerate, simulate and rank recombinations over a pool");
  SearchConfig config;
  std::string search_pool = "builtin";
  std::string search_ids;
  std::string search_out;
  std::string search_csv;
  bool no_dedup = false;
  std::optional<uint64_t> filter_ones;
  std::optional<uint64_t> filter_steps;
  search_cmd->add_option("--pool", search_pool, "Pool file or 'builtin'")
      ->capture_default_str();
  search_cmd->add_option("--ids", search_ids,
                         "Comma-separated pool ids to restrict the pool to");
  search_cmd->add_option("--k", config.arity, "Sources per recombination")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search_cmd->add_option("--step-limit", config.step_limit, "Step cap")
      ->capture_default_str();
  search_cmd->add_option("--jobs", config.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search_cmd->add_option("--out", search_out, "Write records here (JSONL)");
  search_cmd->add_option("--csv", search_csv, "Also export records as CSV");
  search_cmd->add_option("--filter-ones", filter_ones,
                         "Keep only records with at least this many ones");
  search_cmd->add_option("--filter-steps", filter_steps,
                         "Keep only records with at least this many steps");
  search_cmd->add_flag("--no-dedup", no_dedup,
                       "Keep every enumerated spec, not one per name");
  search_cmd->add_flag("--count-duplicates", config.count_duplicates,
                       "Count how many specs map to each kept name");

  // catalog
  auto* catalog_cmd =
      app.add_subcommand("catalog", "List the built-in machine pool");
  bool catalog_golden = false;
  std::string catalog_export;
  catalog_cmd->add_flag("--golden", catalog_golden,
                        "List the published recombinations instead");
  catalog_cmd->add_option("--export", catalog_export,
                          "Write the listing to a pool file");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "Re-simulate catalog entries against their records");
  std::string verify_pool;
  bool verify_golden = false;
  bool verify_builtin = false;
  uint64_t verify_cap = kDefaultStepLimit;
  verify_cmd->add_option("--pool", verify_pool,
                         "Verify a pool file instead of the catalogs");
  auto* verify_golden_flag = verify_cmd->add_flag(
      "--golden", verify_golden, "Only the published recombinations");
  verify_cmd->add_flag("--builtin", verify_builtin, "Only the seed rows")
      ->excludes(verify_golden_flag);
  verify_cmd->add_option("--cap", verify_cap, "Step cap")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      return run_command(run_name, run_limit, run_rado, num_states);
    }
    if (decode_cmd->parsed()) {
      return decode_command(decode_name_arg, num_states);
    }
    if (encode_cmd->parsed()) {
      return encode_command(encode_path, num_states);
    }
    if (recomb_cmd->parsed()) {
      return recombine_command(recomb_pool, recomb_sources, recomb_cuts,
                               num_states);
    }
    if (search_cmd->parsed()) {
      config.pool = select_pool(search_pool, search_ids, num_states);
      config.num_states = num_states;
      config.dedup = !no_dedup;
      config.min_ones = filter_ones;
      config.min_steps = filter_steps;
      return search_command(config, search_out, search_csv,
                            config.count_duplicates);
    }
    if (catalog_cmd->parsed()) {
      return catalog_command(catalog_golden, catalog_export);
    }
    if (verify_cmd->parsed()) {
      return verify_command(verify_pool, verify_golden, verify_builtin,
                            verify_cap, num_states);
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
