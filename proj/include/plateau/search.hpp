#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plateau/code.hpp"

namespace plateau {

// Candidate order for quadratic sweeps: index i enumerates the coefficient
// vectors (a_0, ..., a_{floor(m/2)}) as base-q digits of i with a_0 least
// significant. The order is fixed so that corpus files and pinned witness
// indices are reproducible byte for byte; there is no randomness anywhere.
long long candidate_space(const FieldCtx& F);
std::vector<ffelem> candidate_coeffs(const FieldCtx& F, long long index);
long long candidate_index(const FieldCtx& F, const std::vector<ffelem>& coeffs);

// FNV-1a over the enumerator string, a stable fingerprint for regression
// comparisons that avoids persisting whole distributions.
std::uint64_t enumerator_hash(const std::map<long long, long long>& distribution);
std::string enumerator_hash_hex(std::uint64_t hash);

// Parameters of one code built from a witness, plus the distribution
// fingerprint.
struct CodeSummary {
  SetKind kind = SetKind::D0;
  long long n = 0;
  int k = 0;
  long long d = 0;
  std::uint64_t enumerator_hash = 0;
};

// One classified quadratic. Plain data: re-running the classification on
// the stored coefficients must reproduce s, epsilon, balanced and t
// exactly, which is how corpus files are validated on load.
struct WitnessRecord {
  int p = 0;
  int m = 0;
  long long index = 0;
  std::vector<ffelem> coeffs;
  int s = 0;
  int epsilon = 0;
  bool balanced = false;
  int t = 0;  // homogeneity exponent from the certificate; 2 for quadratics
  std::vector<CodeSummary> codes;
};

struct SweepFilter {
  std::optional<int> target_s;
  bool balanced_only = false;
};

// Counters follow the sequential pipeline semantics: candidates past an
// early stop are never counted, whatever the worker count.
struct SweepStats {
  long long scanned = 0;         // candidate indices examined
  long long kernel_matches = 0;  // survived the kernel-dimension pre-filter
  long long classified = 0;      // full spectral classifications performed
  long long yielded = 0;         // records delivered to the sink
};

// Sweeps candidate indices [0, min(limit, space)) in ascending order.
// Pipeline per candidate: kernel dimension from the coefficients (cheap),
// then the value census when balanced_only is set, then the full spectral
// classification. Every classified candidate must come back weakly regular
// plateaued with s equal to the kernel dimension; a violation propagates as
// ClassifyError instead of being skipped, because the quadratic
// propositions promise it can never happen. Records reach the sink in
// index order; returning false stops the sweep. Blocks of candidates are
// classified in parallel, results are delivered sequentially.
SweepStats enumerate_quadratics(const FieldCtx& F, const SweepFilter& filter, long long limit,
                                const std::function<bool(const WitnessRecord&)>& sink);

// Kernel-dimension census of the first `count` candidates, no spectral
// work; slot d counts candidates whose kernel has dimension d.
std::vector<long long> kernel_dimension_census(const FieldCtx& F, long long count);

// Builds the ten base-kind codes from the witness by brute force and
// records their summaries. Kinds whose defining set is empty are skipped.
// Bent witnesses (s = 0) get no summaries: the code constructions
// presuppose s >= 1.
void attach_code_summaries(const FieldCtx& F, WitnessRecord& rec);

struct CorpusTarget {
  int p = 0;
  int m = 0;
  int s = 0;
  bool balanced = false;  // demand a balanced witness
};

struct CorpusEntry {
  CorpusTarget target;
  std::vector<WitnessRecord> witnesses;  // at most one per sign, index order
  long long scanned = 0;
  std::string note;  // no-witness diagnostic; empty otherwise
};

struct Corpus {
  long long cap = 0;
  std::vector<CorpusEntry> entries;
};

// The (p, m, s) triples the worked examples draw their witnesses from.
std::vector<CorpusTarget> default_corpus_targets();

// First-found witness per target in sweep order, plus sign diversity: the
// earliest witness of each sign is kept when both signs occur within the
// cap. Duplicate targets collapse into one entry. A target with no witness
// within the cap produces an entry with a diagnostic note; NoWitnessFound
// is recorded, not thrown. Output is deterministic for fixed targets and
// cap.
Corpus build_corpus(const std::vector<CorpusTarget>& targets, long long cap = 1000000,
                    bool with_code_summaries = true);

// Line-oriented text: one witness per line as
//   p m s epsilon t coeffs=<c0,c1,...>
// with '#' comment lines carrying the format header, per-target provenance
// and no-witness diagnostics.
void write_corpus_text(const Corpus& corpus, std::ostream& out);
std::string corpus_text(const Corpus& corpus);

// JSON mirror of the same content, including indices, balanced flags and
// code summaries (enumerator hashes as fixed-width hex strings).
std::string corpus_json(const Corpus& corpus);

// Parses the text format back. Comment and blank lines are skipped. Each
// witness is re-classified from its coefficients over the canonical field
// of its (p, m); a mismatch against the stored s, epsilon or t fails with
// BadEntry. Code summaries are not recomputed here.
std::vector<WitnessRecord> read_corpus_text(std::istream& in);
std::vector<WitnessRecord> load_corpus_file(const std::string& path);

}  // namespace plateau
