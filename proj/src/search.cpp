#include "plateau/search.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "plateau/threads.hpp"

namespace plateau {

namespace {

// Candidates classified per parallel batch before sequential delivery.
constexpr long long kSweepBlock = 512;

int coefficient_count(const FieldCtx& F) { return F.m / 2 + 1; }

struct SweepSlot {
  bool kernel_pass = false;
  bool balance_pass = false;
  bool classified = false;
  WitnessRecord rec;
  std::exception_ptr error;
};

std::string target_label(const CorpusTarget& t) {
  std::string label =
      "p=" + std::to_string(t.p) + " m=" + std::to_string(t.m) + " s=" + std::to_string(t.s);
  if (t.balanced) label += " balanced";
  return label;
}

}  // namespace

long long candidate_space(const FieldCtx& F) {
  long long space = 1;
  for (int i = 0; i < coefficient_count(F); ++i) space *= F.q;
  return space;
}

std::vector<ffelem> candidate_coeffs(const FieldCtx& F, long long index) {
  require(0 <= index && index < candidate_space(F), Err::OutOfRange,
          "candidate index " + std::to_string(index) + " is outside [0, " +
              std::to_string(candidate_space(F)) + ")");
  std::vector<ffelem> coeffs(static_cast<std::size_t>(coefficient_count(F)));
  long long rest = index;
  for (auto& c : coeffs) {
    c = static_cast<ffelem>(rest % F.q);
    rest /= F.q;
  }
  return coeffs;
}

long long candidate_index(const FieldCtx& F, const std::vector<ffelem>& coeffs) {
  require(static_cast<int>(coeffs.size()) == coefficient_count(F), Err::BadLength,
          "expected " + std::to_string(coefficient_count(F)) + " coefficients, got " +
              std::to_string(coeffs.size()));
  long long index = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    require(0 <= *it && *it < F.q, Err::BadEntry, "coefficient encoding out of range");
    index = index * F.q + *it;
  }
  return index;
}

std::uint64_t enumerator_hash(const std::map<long long, long long>& distribution) {
  const std::string text = enumerator_string(distribution);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string enumerator_hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf);
}

SweepStats enumerate_quadratics(const FieldCtx& F, const SweepFilter& filter, long long limit,
                                const std::function<bool(const WitnessRecord&)>& sink) {
  require(limit >= 0, Err::OutOfRange, "sweep limit must be nonnegative");
  if (filter.target_s) {
    require(0 <= *filter.target_s && *filter.target_s <= F.m, Err::OutOfRange,
            "target plateau order must lie in [0, m]");
  }
  require(static_cast<bool>(sink), Err::BadEntry, "sweep sink is empty");

  const long long top = std::min(limit, candidate_space(F));
  SweepStats stats;
  bool stopped = false;
  std::vector<SweepSlot> slots;

  for (long long base = 0; base < top && !stopped; base += kSweepBlock) {
    const long long count = std::min(kSweepBlock, top - base);
    slots.assign(static_cast<std::size_t>(count), SweepSlot{});

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
#endif
    for (long long off = 0; off < count; ++off) {
      SweepSlot& slot = slots[static_cast<std::size_t>(off)];
      try {
        const long long index = base + off;
        const std::vector<ffelem> coeffs = candidate_coeffs(F, index);
        const int kernel_dim = linearized_kernel_dim(F, coeffs);
        if (filter.target_s && kernel_dim != *filter.target_s) continue;
        slot.kernel_pass = true;
        const PFunction f = quadratic(F, coeffs);
        if (filter.balanced_only && !is_balanced(f)) continue;
        slot.balance_pass = true;
        const PlateauedProfile profile = classify(f);
        require(profile.s == kernel_dim, Err::NotPlateaued,
                "spectral plateau order " + std::to_string(profile.s) +
                    " disagrees with kernel dimension " + std::to_string(kernel_dim) +
                    " at candidate " + std::to_string(index));
        slot.classified = true;
        slot.rec.p = F.p;
        slot.rec.m = F.m;
        slot.rec.index = index;
        slot.rec.coeffs = coeffs;
        slot.rec.s = profile.s;
        slot.rec.epsilon = profile.epsilon;
        slot.rec.balanced = profile.balanced;
        slot.rec.t = profile.wrpb.homogeneity_exponent_t.value_or(0);
      } catch (...) {
        slot.error = std::current_exception();
      }
    }

    for (long long off = 0; off < count; ++off) {
      SweepSlot& slot = slots[static_cast<std::size_t>(off)];
      ++stats.scanned;
      if (slot.error) std::rethrow_exception(slot.error);
      if (!slot.kernel_pass) continue;
      ++stats.kernel_matches;
      if (filter.balanced_only && !slot.balance_pass) continue;
      ++stats.classified;
      ++stats.yielded;
      if (!sink(slot.rec)) {
        stopped = true;
        break;
      }
    }
  }
  return stats;
}

std::vector<long long> kernel_dimension_census(const FieldCtx& F, long long count) {
  require(count >= 0, Err::OutOfRange, "census count must be nonnegative");
  const long long top = std::min(count, candidate_space(F));
  std::vector<long long> census(static_cast<std::size_t>(F.m) + 1, 0);
  for (long long index = 0; index < top; ++index) {
    ++census[static_cast<std::size_t>(linearized_kernel_dim(F, candidate_coeffs(F, index)))];
  }
  return census;
}

void attach_code_summaries(const FieldCtx& F, WitnessRecord& rec) {
  require(F.p == rec.p && F.m == rec.m, Err::BadEntry,
          "field context does not match the witness parameters");
  rec.codes.clear();
  if (rec.s == 0) return;  // bent witnesses: the code constructions need s >= 1
  const PFunction f = quadratic(F, rec.coeffs);
  for (SetKind kind : base_set_kinds()) {
    DefiningSet ds;
    try {
      ds = build_defining_set(f, kind, false);
    } catch (const PlateauError& e) {
      if (e.code() == Err::EmptySet) continue;
      throw;
    }
    const LinearCode code = brute_force_distribution(ds);
    rec.codes.push_back(
        {kind, code.n, code.k, code.d, enumerator_hash(code.weight_distribution)});
  }
}

std::vector<CorpusTarget> default_corpus_targets() {
  return {{3, 3, 1, false}, {3, 4, 1, false}, {3, 5, 1, false}, {5, 3, 1, false}};
}

Corpus build_corpus(const std::vector<CorpusTarget>& targets, long long cap,
                    bool with_code_summaries) {
  require(cap >= 0, Err::OutOfRange, "sweep cap must be nonnegative");
  Corpus corpus;
  corpus.cap = cap;

  std::vector<CorpusTarget> unique;
  for (const CorpusTarget& t : targets) {
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](const CorpusTarget& u) {
      return u.p == t.p && u.m == t.m && u.s == t.s && u.balanced == t.balanced;
    });
    if (!seen) unique.push_back(t);
  }

  std::map<std::pair<int, int>, FieldCtx> fields;
  for (const CorpusTarget& t : unique) {
    const auto key = std::make_pair(t.p, t.m);
    auto it = fields.find(key);
    if (it == fields.end()) it = fields.emplace(key, build_field(t.p, t.m)).first;
    const FieldCtx& F = it->second;
    require(0 <= t.s && t.s <= t.m, Err::OutOfRange,
            "target plateau order must lie in [0, m] for " + target_label(t));

    CorpusEntry entry;
    entry.target = t;
    std::optional<WitnessRecord> plus;
    std::optional<WitnessRecord> minus;
    const SweepFilter filter{t.s, t.balanced};
    const SweepStats stats =
        enumerate_quadratics(F, filter, cap, [&](const WitnessRecord& rec) {
          if (rec.epsilon > 0) {
            if (!plus) plus = rec;
          } else {
            if (!minus) minus = rec;
          }
          return !(plus && minus);
        });
    entry.scanned = stats.scanned;

    if (plus) entry.witnesses.push_back(*plus);
    if (minus) entry.witnesses.push_back(*minus);
    std::sort(entry.witnesses.begin(), entry.witnesses.end(),
              [](const WitnessRecord& a, const WitnessRecord& b) { return a.index < b.index; });
    if (entry.witnesses.empty()) {
      entry.note = "no witness (swept " + std::to_string(stats.scanned) + " of " +
                   std::to_string(candidate_space(F)) + " candidates)";
    } else if (with_code_summaries) {
      for (WitnessRecord& rec : entry.witnesses) attach_code_summaries(F, rec);
    }
    corpus.entries.push_back(std::move(entry));
  }
  return corpus;
}

void write_corpus_text(const Corpus& corpus, std::ostream& out) {
  out << "# quadratic witness corpus\n";
  out << "# format: p m s epsilon t coeffs=<c0,c1,...>\n";
  out << "# function: f(x) = Tr(sum_i c_i * x^(p^i + 1)), coefficients in the base-p integer "
         "encoding\n";
  out << "# sweep order: candidate index ascending, coefficients are its base-q digits, c0 "
         "least significant\n";
  out << "# cap: " << corpus.cap << "\n";
  for (const CorpusEntry& entry : corpus.entries) {
    out << "# target " << target_label(entry.target) << ": ";
    if (entry.witnesses.empty()) {
      out << entry.note << "\n";
      continue;
    }
    out << entry.witnesses.size() << (entry.witnesses.size() == 1 ? " witness" : " witnesses")
        << " (swept " << entry.scanned << " candidates)\n";
    for (const WitnessRecord& rec : entry.witnesses) {
      out << rec.p << " " << rec.m << " " << rec.s << " " << rec.epsilon << " " << rec.t
          << " coeffs=";
      for (std::size_t i = 0; i < rec.coeffs.size(); ++i) {
        if (i) out << ",";
        out << rec.coeffs[i];
      }
      out << "\n";
    }
  }
}

std::string corpus_text(const Corpus& corpus) {
  std::ostringstream out;
  write_corpus_text(corpus, out);
  return out.str();
}

std::string corpus_json(const Corpus& corpus) {
  nlohmann::json root;
  root["cap"] = corpus.cap;
  root["entries"] = nlohmann::json::array();
  for (const CorpusEntry& entry : corpus.entries) {
    nlohmann::json je;
    je["target"] = {{"p", entry.target.p},
                    {"m", entry.target.m},
                    {"s", entry.target.s},
                    {"balanced", entry.target.balanced}};
    je["scanned"] = entry.scanned;
    if (!entry.note.empty()) je["note"] = entry.note;
    je["witnesses"] = nlohmann::json::array();
    for (const WitnessRecord& rec : entry.witnesses) {
      nlohmann::json jw;
      jw["p"] = rec.p;
      jw["m"] = rec.m;
      jw["index"] = rec.index;
      jw["coeffs"] = rec.coeffs;
      jw["s"] = rec.s;
      jw["epsilon"] = rec.epsilon;
      jw["balanced"] = rec.balanced;
      jw["t"] = rec.t;
      jw["codes"] = nlohmann::json::array();
      for (const CodeSummary& cs : rec.codes) {
        jw["codes"].push_back({{"kind", set_kind_name(cs.kind)},
                               {"n", cs.n},
                               {"k", cs.k},
                               {"d", cs.d},
                               {"enumerator_hash", enumerator_hash_hex(cs.enumerator_hash)}});
      }
      je["witnesses"].push_back(std::move(jw));
    }
    root["entries"].push_back(std::move(je));
  }
  return root.dump(2) + "\n";
}

std::vector<WitnessRecord> read_corpus_text(std::istream& in) {
  std::vector<WitnessRecord> out;
  std::map<std::pair<int, int>, FieldCtx> fields;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string at = " at corpus line " + std::to_string(lineno);

    std::istringstream ss(line);
    int p = 0, m = 0, s = 0, epsilon = 0, t = 0;
    std::string coeffs_tok;
    require(static_cast<bool>(ss >> p >> m >> s >> epsilon >> t >> coeffs_tok), Err::BadEntry,
            "malformed witness line" + at);
    std::string extra;
    require(!(ss >> extra), Err::BadEntry, "trailing tokens" + at);
    require(coeffs_tok.rfind("coeffs=", 0) == 0, Err::BadEntry,
            "expected coeffs=<c0,c1,...>" + at);

    std::vector<ffelem> coeffs;
    std::istringstream cs(coeffs_tok.substr(7));
    std::string item;
    while (std::getline(cs, item, ',')) {
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(item, &used);
      } catch (const std::exception&) {
        fail(Err::BadEntry, "bad coefficient '" + item + "'" + at);
      }
      require(used == item.size(), Err::BadEntry, "bad coefficient '" + item + "'" + at);
      coeffs.push_back(static_cast<ffelem>(value));
    }

    const auto key = std::make_pair(p, m);
    auto it = fields.find(key);
    if (it == fields.end()) it = fields.emplace(key, build_field(p, m)).first;
    const FieldCtx& F = it->second;

    WitnessRecord rec;
    rec.p = p;
    rec.m = m;
    rec.index = candidate_index(F, coeffs);
    rec.coeffs = coeffs;
    const PlateauedProfile profile = classify(quadratic(F, coeffs));
    require(profile.s == s, Err::BadEntry,
            "stored s=" + std::to_string(s) + " but classification gives s=" +
                std::to_string(profile.s) + at);
    require(profile.epsilon == epsilon, Err::BadEntry,
            "stored epsilon=" + std::to_string(epsilon) + " but classification gives " +
                std::to_string(profile.epsilon) + at);
    require(profile.wrpb.homogeneity_exponent_t.value_or(0) == t, Err::BadEntry,
            "stored t=" + std::to_string(t) + " does not reproduce" + at);
    rec.s = profile.s;
    rec.epsilon = profile.epsilon;
    rec.balanced = profile.balanced;
    rec.t = t;
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<WitnessRecord> load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Err::BadEntry, "cannot open corpus file '" + path + "'");
  return read_corpus_text(in);
}

}  // namespace plateau
