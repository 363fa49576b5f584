#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfrag/matroid.hpp"

namespace mfrag {

struct CorpusEntry {
  std::string name;
  Matroid m;
};

// Every catalog matroid under its catalog name.
std::vector<CorpusEntry> corpus_catalog();

// All pairwise-nonisomorphic 3-connected GF(q)-representable matroids with
// at most n ground elements, q in {2, 3}, n <= 9 (CorpusCapExceeded above
// that). Entries are named "gf<q>-<size>-<rank>-<idx>" and ordered by size,
// then rank, then discovery order. When cache_dir (or, in its absence, the
// MFRAG_CACHE_DIR environment variable) names a directory, generated corpora
// are stored there keyed by a digest of the generation parameters and reused
// on later calls.
std::vector<CorpusEntry> corpus_all_gf_upto(int q, int n,
                                            const std::optional<std::string>& cache_dir);

// One entry per .mtd file, named by its path.
std::vector<CorpusEntry> corpus_files(const std::vector<std::string>& paths);

// Accepts "catalog", "all-gf2-upto(n)", "all-gf3-upto(n)", or
// "files:a.mtd,b.mtd,...". A bare path to an existing file is treated as a
// one-file list. UnknownCorpusSpec otherwise.
std::vector<CorpusEntry> resolve_corpus(const std::string& spec,
                                        const std::optional<std::string>& cache_dir);

}  // namespace mfrag
