#pragma once

#include <string>
#include <vector>

#include "mfrag/corpus.hpp"

namespace mfrag {

struct LemmaFailure {
  std::string matroid;   // corpus entry name
  std::string instance;  // the hypothesis data that was checked
  std::string detail;    // which conclusion failed
};

struct LemmaReport {
  std::string lemma;
  int matroids = 0;           // corpus entries examined
  long long instances = 0;    // hypothesis instances checked
  std::vector<LemmaFailure> failures;

  bool pass() const { return failures.empty(); }
};

// Registered lemma identifiers, in registry order.
std::vector<std::string> lemma_ids();

// Runs the named verifier over every corpus entry. Entries whose matroid
// does not satisfy the lemma's standing hypotheses contribute no instances.
// jobs > 1 splits entries across threads; the aggregated report is byte
// identical regardless of jobs. UnknownLemma for unregistered ids.
LemmaReport verify_lemma(const std::string& id, const std::vector<CorpusEntry>& corpus,
                         int jobs = 1);

}  // namespace mfrag
