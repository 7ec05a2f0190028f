#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qprim/ring.hpp"

namespace qprim {

enum class CheckStatus { Pass, Fail, SkippedCap };

std::string status_name(CheckStatus s);

/// One (ring, check) cell of a suite run. Failures always carry a
/// replayable counterexample payload.
struct Verdict {
  std::string check_id;
  std::string anchor;
  std::string ring_label;
  RingSpec ring_spec = RingSpec::zmod(1);
  CheckStatus status = CheckStatus::Pass;
  nlohmann::json counterexample;  // null unless status == Fail
  nlohmann::json info;            // null unless the check has extra data
  double ms = 0.0;
  bool sampled = false;
  bool hard_cap = false;  // a cap prevented computation entirely
};

struct CorpusEntry {
  std::string label;
  RingSpec spec;
};

struct Corpus {
  std::vector<CorpusEntry> entries;
  static Corpus default_corpus();
};

/// Parses [{"label": "...", "spec": {...}}, ...]. Throws InputError.
Corpus corpus_from_json(const nlohmann::json& j);

struct SuiteOptions {
  std::vector<std::string> check_filter;  // empty = run everything
  std::uint64_t seed = 0x5eed5eedULL;
  int order_cap = 512;
  int ideal_cap = 4096;
  int cover_cap_log2 = 12;
  int exhaustive_lattice_limit = 64;  // sample tuples beyond this many ideals
  int sample_count = 2000;
  bool timings = false;  // measured times in the report instead of 0
};

struct CheckInfo {
  std::string id;
  std::string anchor;
};

const std::vector<CheckInfo>& check_registry();

/// Runs every registered check (restricted by the filter) over every corpus
/// entry, in order. Deterministic for a fixed corpus, seed and options.
std::vector<Verdict> run_suite(const Corpus& corpus, const SuiteOptions& opts = {});

nlohmann::json report_json(const std::vector<Verdict>& verdicts, const SuiteOptions& opts);
std::string report_string(const std::vector<Verdict>& verdicts, const SuiteOptions& opts);

}  // namespace qprim
