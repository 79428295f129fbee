#ifndef PAGESENSE_SYNTHETIC_CORPUS_H_
#define PAGESENSE_SYNTHETIC_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "pagesense/knowledge_base.h"

namespace pagesense {

struct SyntheticOptions {
  std::size_t n_pages = 100;
  double dual_fraction = 0.09;
  std::uint64_t seed = 1;
  // Share of dual pages generated with the headword but no evidence name.
  // Their gold label still names the intended sense, so they surface as
  // unresolved pages during evaluation.
  double no_evidence_fraction = 0.0;
};

struct SyntheticCorpus {
  std::filesystem::path pages_dir;  // <out>/pages
  std::filesystem::path gold_path;  // <out>/gold.tsv
  std::size_t dual_pages = 0;
  std::size_t no_evidence_pages = 0;
};

// Writes a seeded, labeled corpus under `out_dir`. Dual pages place the
// headword and 1-3 names of one sense in the same sentence among filler
// sentences; plain pages contain no headword or name of the base.
// Throws std::invalid_argument for fractions outside [0, 1] or an empty
// base with dual_fraction > 0, IoError on write failure.
SyntheticCorpus generate_synthetic_corpus(const KnowledgeBase& kb,
                                          const SyntheticOptions& options,
                                          const std::filesystem::path& out_dir);

}  // namespace pagesense

#endif  // PAGESENSE_SYNTHETIC_CORPUS_H_
