#include "plateau/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "json.hpp"
#include "plateau/analysis.hpp"
#include "plateau/search.hpp"

namespace plateau {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitClassify = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitUsage = 4;

std::vector<long long> parse_ll_list(const std::string& text, const std::string& what) {
  std::vector<long long> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      fail(Err::Usage, "bad integer '" + item + "' in " + what);
    }
    require(used == item.size(), Err::Usage, "bad integer '" + item + "' in " + what);
    out.push_back(value);
  }
  require(!out.empty(), Err::Usage, what + " is empty");
  return out;
}

struct LoadedSource {
  std::shared_ptr<const FieldCtx> field;
  PFunction f;
  std::string source;
};

LoadedSource load_source(const RunConfig& cfg) {
  const int sources = (!cfg.inline_quad.empty() ? 1 : 0) + (!cfg.inline_table.empty() ? 1 : 0) +
                      (!cfg.function_file.empty() ? 1 : 0) + (!cfg.corpus_file.empty() ? 1 : 0);
  require(sources == 1, Err::Usage,
          "exactly one function source is required: --quad/--table (with --field), "
          "--function-file, or --corpus with --witness");
  const bool is_inline = !cfg.inline_quad.empty() || !cfg.inline_table.empty();
  require(is_inline == !cfg.field_spec.empty(), Err::Usage,
          is_inline ? "--quad/--table needs --field" : "--field only applies to --quad/--table");
  require(cfg.corpus_file.empty() == cfg.witness_selector.empty(), Err::Usage,
          cfg.corpus_file.empty() ? "--witness only applies with --corpus"
                                  : "--corpus needs --witness p,m,s[,eps]");

  try {
    if (is_inline) {
      auto field = std::make_shared<FieldCtx>(parse_field_spec(cfg.field_spec));
      if (!cfg.inline_quad.empty()) {
        const std::vector<long long> raw = parse_ll_list(cfg.inline_quad, "--quad");
        const std::vector<ffelem> coeffs(raw.begin(), raw.end());
        PFunction f = quadratic(*field, coeffs);
        return {field, std::move(f), "inline:quad"};
      }
      const std::vector<long long> raw = parse_ll_list(cfg.inline_table, "--table");
      const std::vector<int> values(raw.begin(), raw.end());
      PFunction f = from_table(*field, values);
      return {field, std::move(f), "inline:table"};
    }
    if (!cfg.function_file.empty()) {
      LoadedFunction lf = load_function_file(cfg.function_file);
      return {lf.field, std::move(lf.f), "file:" + cfg.function_file};
    }
    const std::vector<long long> sel = parse_ll_list(cfg.witness_selector, "--witness");
    require(sel.size() == 3 || sel.size() == 4, Err::Usage,
            "--witness selector must be p,m,s or p,m,s,eps");
    if (sel.size() == 4) {
      require(sel[3] == 1 || sel[3] == -1, Err::Usage, "witness eps must be 1 or -1");
    }
    const std::vector<WitnessRecord> records = load_corpus_file(cfg.corpus_file);
    const auto hit = std::find_if(records.begin(), records.end(), [&](const WitnessRecord& r) {
      return r.p == sel[0] && r.m == sel[1] && r.s == sel[2] &&
             (sel.size() < 4 || r.epsilon == sel[3]);
    });
    require(hit != records.end(), Err::Usage,
            "no witness matching " + cfg.witness_selector + " in " + cfg.corpus_file);
    auto field = std::make_shared<FieldCtx>(build_field(hit->p, hit->m));
    PFunction f = quadratic(*field, hit->coeffs);
    return {field, std::move(f), "corpus:" + cfg.corpus_file + "#" + cfg.witness_selector};
  } catch (const PlateauError& e) {
    if (e.code() == Err::Usage) throw;
    fail(Err::Usage, e.what());
  }
}

struct KindSelection {
  SetKind kind = SetKind::D0;
  bool punctured = false;
};

std::vector<SetKind> resolve_base_kinds(const std::vector<std::string>& names) {
  std::vector<SetKind> base;
  const std::vector<std::string> use = names.empty() ? std::vector<std::string>{"all"} : names;
  for (const std::string& name : use) {
    if (name == "all") {
      for (SetKind k : base_set_kinds()) {
        if (std::find(base.begin(), base.end(), k) == base.end()) base.push_back(k);
      }
      continue;
    }
    SetKind k = SetKind::D0;
    try {
      k = parse_set_kind(name);
    } catch (const PlateauError& e) {
      fail(Err::Usage, e.what());
    }
    require(!is_punctured_kind(k), Err::Usage,
            "pass the base kind plus --punctured instead of " + name);
    if (std::find(base.begin(), base.end(), k) == base.end()) base.push_back(k);
  }
  return base;
}

bool has_punctured_counterpart(SetKind k) { return k == SetKind::D0 || k == SetKind::D12; }

// Report data for one defining set, shared by the text, json and csv
// writers so every format carries the same numbers.
struct CodeReportData {
  SetKind kind = SetKind::D0;
  bool punctured = false;
  std::string set;
  LinearCode code;
  MinimalityReport minimality;
  BoundsReport bounds;
  std::string check_verdict;  // empty when --check is off
  std::string check_source;
  std::string check_reason;
  std::optional<ClosedFormDistribution> closed;
  std::optional<DualReport> dual;
  std::optional<SssReport> sss;
  std::string sss_error;
  std::optional<SssOracleReport> oracle;
  std::string oracle_error;
};

CodeReportData build_code_report(const PFunction& f, const PlateauedProfile& profile,
                                 const KindSelection& sel, const RunConfig& cfg) {
  CodeReportData r;
  r.kind = sel.kind;
  r.punctured = sel.punctured;
  DefiningSet ds = build_defining_set(f, sel.kind, false);
  if (sel.punctured) ds = puncture(ds, cfg.flavor);
  r.set = set_label(ds);
  r.code = brute_force_distribution(ds);
  r.minimality = certify_minimality(r.code, &profile, cfg.exhaustive_bound);
  r.bounds = bounds_check(r.code.n, r.code.k, r.code.d, f.ctx->p);

  if (cfg.check) {
    const SetKind target =
        !sel.punctured ? sel.kind : (sel.kind == SetKind::D0 ? SetKind::PuncD0 : SetKind::PuncD12);
    try {
      ClosedFormDistribution cf = closed_form_distribution(profile, target, cfg.flavor);
      r.check_source = "closed_form:" + cf.branch;
      const bool match =
          cf.n == r.code.n && cf.k == r.code.k && cf.rows == r.code.weight_distribution;
      r.check_verdict = match ? "MATCH" : "MISMATCH";
      r.closed = std::move(cf);
    } catch (const PlateauError& e) {
      if (e.code() != Err::OutOfRange && e.code() != Err::UncoveredBranch) throw;
      r.check_verdict = "NO-TABLE";
      r.check_reason = e.what();
    }
  }

  if (cfg.dual || cfg.sss) r.dual = macwilliams_dual(r.code);
  if (cfg.sss) {
    try {
      r.sss = sss_report(r.code, *r.dual, r.minimality);
    } catch (const PlateauError& e) {
      if (e.code() != Err::NotMinimal) throw;
      r.sss_error = e.what();
    }
    if (cfg.oracle) {
      try {
        r.oracle = minimal_access_sets_oracle(r.code, cfg.oracle_bound);
      } catch (const PlateauError& e) {
        if (e.code() != Err::TooLarge) throw;
        r.oracle_error = e.what();
      }
    }
  }
  return r;
}

json weight_rows(const std::map<long long, long long>& rows) {
  json a = json::array();
  for (const auto& [w, c] : rows) a.push_back(json::array({w, c}));
  return a;
}

std::string dual_enumerator_string(const std::vector<BigInt>& enumerator) {
  std::ostringstream o;
  o << (enumerator.empty() ? std::string("0") : enumerator[0].str());
  for (std::size_t w = 1; w < enumerator.size(); ++w) {
    if (enumerator[w].is_zero()) continue;
    o << "+" << enumerator[w].str() << "y^" << w;
  }
  return o.str();
}

json field_json(const FieldCtx& F) {
  return json{{"spec", field_spec_string(F)},
              {"p", F.p},
              {"m", F.m},
              {"q", F.q},
              {"modulus", F.modulus}};
}

int profile_t(const PlateauedProfile& pr) { return pr.wrpb.homogeneity_exponent_t.value_or(0); }

std::string wrpb_diagnostic(const WrpbCertificate& cert) {
  std::vector<std::string> parts;
  if (!cert.balanced) parts.push_back("unbalanced");
  if (!cert.f_of_zero_is_zero) parts.push_back("f(0) != 0");
  if (!cert.homogeneity_exponent_t) parts.push_back("no admissible even homogeneity exponent");
  std::string out;
  for (const std::string& part : parts) {
    if (!out.empty()) out += "; ";
    out += part;
  }
  return out;
}

json profile_json(const PlateauedProfile& pr) {
  json j{{"p", pr.p},
         {"m", pr.m},
         {"s", pr.s},
         {"epsilon", pr.epsilon},
         {"parity", pr.parity},
         {"support_size", pr.support.size()},
         {"dual_census", dual_value_census(pr)},
         {"balanced", pr.balanced},
         {"weakly_regular", pr.weakly_regular},
         {"wrpb", pr.wrpb.holds},
         {"t", profile_t(pr)}};
  if (!pr.wrpb.holds) j["diagnostic"] = wrpb_diagnostic(pr.wrpb);
  return j;
}

std::string profile_text(const PlateauedProfile& pr) {
  std::ostringstream o;
  o << "s=" << pr.s << " epsilon=" << (pr.epsilon > 0 ? "+1" : "-1")
    << (pr.balanced ? " balanced" : " unbalanced") << (pr.wrpb.holds ? " wrpb" : " not-wrpb")
    << " t=" << profile_t(pr) << " parity=" << pr.parity
    << " support_size=" << pr.support.size();
  return o.str();
}

json minimality_json(const MinimalityReport& r) {
  json j{{"w_min", r.w_min}, {"w_max", r.w_max}, {"ab_ratio_holds", r.ab_ratio_holds}};
  j["exhaustive_all_minimal"] =
      r.exhaustive_verdict ? json(*r.exhaustive_verdict) : json(nullptr);
  j["n_nonminimal"] = r.n_nonminimal >= 0 ? json(r.n_nonminimal) : json(nullptr);
  if (r.proposition) {
    j["proposition"] = json{{"n", r.proposition->n},
                            {"k", r.proposition->k},
                            {"d", r.proposition->d},
                            {"branch", r.proposition->branch}};
  } else {
    j["proposition"] = nullptr;
  }
  return j;
}

json bounds_json(const BoundsReport& b) {
  return json{{"griesmer_ok", b.griesmer_ok},
              {"singleton_ok", b.singleton_ok},
              {"griesmer_sum", b.griesmer_sum},
              {"griesmer_gap", b.griesmer_gap},
              {"singleton_gap", b.singleton_gap}};
}

json dual_json(const DualReport& d) {
  json rows = json::array();
  for (std::size_t w = 1; w < d.enumerator.size(); ++w) {
    if (!d.enumerator[w].is_zero()) {
      rows.push_back(json::array({w, d.enumerator[w].str()}));
    }
  }
  return json{{"n", d.n},
              {"k_perp", d.k_perp},
              {"d_perp", d.d_perp},
              {"enumerator", rows},
              {"enumerator_string", dual_enumerator_string(d.enumerator)}};
}

json sss_json(const SssReport& s) {
  json j{{"participants", s.num_participants},
         {"minimal_access_sets", s.num_minimal_access_sets},
         {"d_perp", s.d_perp}};
  if (s.d_perp == 2) {
    json in_all = json::array();
    for (std::size_t i = 0; i < s.in_all.size(); ++i) {
      if (s.in_all[i]) in_all.push_back(i + 1);
    }
    j["in_all_participants"] = in_all;
    j["per_other_count"] = s.per_other_count;
  } else {
    json cov = json::array();
    for (const auto& [l, count] : s.coverage) cov.push_back(json::array({l, count}));
    j["coverage"] = cov;
  }
  return j;
}

json oracle_json(const SssOracleReport& o) {
  return json{{"num_sets", o.num_sets}, {"per_participant", o.per_participant}};
}

json code_report_json(const CodeReportData& r) {
  json j{{"kind", set_kind_name(r.kind)},
         {"set", r.set},
         {"punctured", r.punctured},
         {"n", r.code.n},
         {"k", r.code.k},
         {"d", r.code.d},
         {"weight_enumerator", weight_rows(r.code.weight_distribution)},
         {"enumerator", enumerator_string(r.code.weight_distribution)},
         {"source", "brute_force"},
         {"minimality", minimality_json(r.minimality)},
         {"bounds", bounds_json(r.bounds)}};
  if (!r.check_verdict.empty()) {
    json cj{{"verdict", r.check_verdict}};
    if (r.closed) {
      cj["source"] = r.check_source;
      cj["n"] = r.closed->n;
      cj["k"] = r.closed->k;
      cj["rows"] = weight_rows(r.closed->rows);
      cj["enumerator"] = enumerator_string(r.closed->rows);
    } else {
      cj["reason"] = r.check_reason;
    }
    j["check"] = cj;
  }
  if (r.dual) j["dual"] = dual_json(*r.dual);
  if (r.sss) j["sss"] = sss_json(*r.sss);
  if (!r.sss_error.empty()) j["sss_error"] = r.sss_error;
  if (r.oracle) j["oracle"] = oracle_json(*r.oracle);
  if (!r.oracle_error.empty()) j["oracle_error"] = r.oracle_error;
  return j;
}

void write_code_report_text(const CodeReportData& r, std::ostream& out) {
  out << "code " << r.set << ": [" << r.code.n << "," << r.code.k << "," << r.code.d << "]\n";
  out << "  enumerator: " << enumerator_string(r.code.weight_distribution) << "\n";
  const MinimalityReport& m = r.minimality;
  out << "  minimality: w_min=" << m.w_min << " w_max=" << m.w_max
      << " ab=" << (m.ab_ratio_holds ? "pass" : "fail");
  if (m.exhaustive_verdict) {
    out << " exhaustive=" << (*m.exhaustive_verdict ? "all-minimal" : "not-all-minimal")
        << " n_nonminimal=" << m.n_nonminimal;
  } else {
    out << " exhaustive=skipped";
  }
  out << "\n";
  if (m.proposition) {
    out << "  proposition: [" << m.proposition->n << "," << m.proposition->k << ","
        << m.proposition->d << "] branch=" << m.proposition->branch << "\n";
  }
  out << "  bounds: griesmer=" << (r.bounds.griesmer_ok ? "ok" : "violated")
      << " gap=" << r.bounds.griesmer_gap
      << " singleton=" << (r.bounds.singleton_ok ? "ok" : "violated")
      << " gap=" << r.bounds.singleton_gap << "\n";
  if (!r.check_verdict.empty()) {
    out << "  check: " << r.check_verdict;
    if (r.closed) {
      out << " " << r.check_source << " expects [" << r.closed->n << "," << r.closed->k << "] "
          << enumerator_string(r.closed->rows);
    } else {
      out << " (" << r.check_reason << ")";
    }
    out << "\n";
  }
  if (r.dual) {
    out << "  dual: [" << r.dual->n << "," << r.dual->k_perp << "] d_perp=" << r.dual->d_perp
        << " enumerator " << dual_enumerator_string(r.dual->enumerator) << "\n";
  }
  if (r.sss) {
    const SssReport& s = *r.sss;
    out << "  sss: participants=" << s.num_participants
        << " minimal_access_sets=" << s.num_minimal_access_sets << " d_perp=" << s.d_perp;
    if (s.d_perp == 2) {
      long long in_all = 0;
      for (char c : s.in_all) in_all += c ? 1 : 0;
      out << " in_all=" << in_all << " per_other=" << s.per_other_count;
    } else {
      out << " coverage";
      for (const auto& [l, count] : s.coverage) out << " l=" << l << ":" << count;
    }
    out << "\n";
  }
  if (!r.sss_error.empty()) out << "  sss: unavailable (" << r.sss_error << ")\n";
  if (r.oracle) {
    out << "  oracle: sets=" << r.oracle->num_sets << " membership";
    std::map<long long, long long> hist;
    for (long long c : r.oracle->per_participant) ++hist[c];
    for (const auto& [count, times] : hist) out << " " << count << "x" << times;
    out << "\n";
  }
  if (!r.oracle_error.empty()) out << "  oracle: unavailable (" << r.oracle_error << ")\n";
}

void write_source_header_text(const LoadedSource& src, const PlateauedProfile& pr,
                              std::ostream& out) {
  out << "field: " << field_spec_string(*src.field) << "\n";
  out << "function: " << function_spec_string(src.f) << " (" << src.source << ")\n";
  out << "classification: " << profile_text(pr) << "\n";
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const LoadedSource src = load_source(cfg);
  const PlateauedProfile pr = classify(src.f);
  if (cfg.format == OutputFormat::Json) {
    json root{{"command", "classify"},
              {"field", field_json(*src.field)},
              {"function", {{"spec", function_spec_string(src.f)}, {"source", src.source}}},
              {"classification", profile_json(pr)}};
    out << root.dump(2) << "\n";
  } else if (cfg.format == OutputFormat::Csv) {
    out << "p,m,s,epsilon,parity,balanced,wrpb,t,support_size\n";
    out << pr.p << "," << pr.m << "," << pr.s << "," << pr.epsilon << "," << pr.parity << ","
        << (pr.balanced ? "true" : "false") << "," << (pr.wrpb.holds ? "true" : "false") << ","
        << profile_t(pr) << "," << pr.support.size() << "\n";
  } else {
    write_source_header_text(src, pr, out);
    if (!pr.wrpb.holds) out << "diagnostic: " << wrpb_diagnostic(pr.wrpb) << "\n";
  }
  return pr.wrpb.holds ? kExitOk : kExitClassify;
}

int cmd_code(const RunConfig& cfg, std::ostream& out) {
  const LoadedSource src = load_source(cfg);
  std::vector<KindSelection> selections;
  for (SetKind k : resolve_base_kinds(cfg.kind_names)) {
    selections.push_back({k, false});
    if (cfg.punctured && has_punctured_counterpart(k)) selections.push_back({k, true});
  }
  if (cfg.punctured) {
    const bool any = std::any_of(selections.begin(), selections.end(),
                                 [](const KindSelection& s) { return s.punctured; });
    require(any, Err::Usage, "--punctured applies only to the D0 and D12 kinds");
  }

  const PlateauedProfile pr = classify(src.f);
  std::vector<CodeReportData> reports;
  reports.reserve(selections.size());
  for (const KindSelection& sel : selections) {
    reports.push_back(build_code_report(src.f, pr, sel, cfg));
  }
  const bool mismatch =
      std::any_of(reports.begin(), reports.end(),
                  [](const CodeReportData& r) { return r.check_verdict == "MISMATCH"; });

  if (cfg.format == OutputFormat::Json) {
    json codes = json::array();
    for (const CodeReportData& r : reports) codes.push_back(code_report_json(r));
    json root{{"command", "code"},
              {"field", field_json(*src.field)},
              {"function", {{"spec", function_spec_string(src.f)}, {"source", src.source}}},
              {"classification", profile_json(pr)},
              {"codes", codes},
              {"check_failed", mismatch}};
    out << root.dump(2) << "\n";
  } else if (cfg.format == OutputFormat::Csv) {
    out << "kind,set,n,k,d,weight,count\n";
    for (const CodeReportData& r : reports) {
      for (const auto& [w, c] : r.code.weight_distribution) {
        out << set_kind_name(r.kind) << "," << r.set << "," << r.code.n << "," << r.code.k << ","
            << r.code.d << "," << w << "," << c << "\n";
      }
    }
  } else {
    write_source_header_text(src, pr, out);
    for (const CodeReportData& r : reports) write_code_report_text(r, out);
  }
  return mismatch ? kExitMismatch : kExitOk;
}

int cmd_sss(const RunConfig& cfg, std::ostream& out) {
  const LoadedSource src = load_source(cfg);
  const std::vector<SetKind> base = resolve_base_kinds(cfg.kind_names);
  require(cfg.kind_names.size() == 1 && base.size() == 1, Err::Usage,
          "sss needs exactly one --kind");
  if (cfg.punctured) {
    require(has_punctured_counterpart(base[0]), Err::Usage,
            "--punctured applies only to the D0 and D12 kinds");
  }

  const PlateauedProfile pr = classify(src.f);
  RunConfig effective = cfg;
  effective.dual = true;
  effective.sss = true;
  effective.check = false;
  const CodeReportData r = build_code_report(src.f, pr, {base[0], cfg.punctured}, effective);

  if (cfg.format == OutputFormat::Json) {
    json root{{"command", "sss"},
              {"field", field_json(*src.field)},
              {"function", {{"spec", function_spec_string(src.f)}, {"source", src.source}}},
              {"classification", profile_json(pr)},
              {"code",
               {{"kind", set_kind_name(r.kind)},
                {"set", r.set},
                {"punctured", r.punctured},
                {"n", r.code.n},
                {"k", r.code.k},
                {"d", r.code.d}}},
              {"dual", dual_json(*r.dual)}};
    if (r.sss) root["sss"] = sss_json(*r.sss);
    if (!r.sss_error.empty()) root["sss_error"] = r.sss_error;
    if (r.oracle) root["oracle"] = oracle_json(*r.oracle);
    if (!r.oracle_error.empty()) root["oracle_error"] = r.oracle_error;
    out << root.dump(2) << "\n";
  } else if (cfg.format == OutputFormat::Csv) {
    if (r.sss && r.sss->d_perp == 2) {
      out << "participant,sets\n";
      for (std::size_t i = 0; i < r.sss->in_all.size(); ++i) {
        out << (i + 1) << ","
            << (r.sss->in_all[i] ? r.sss->num_minimal_access_sets : r.sss->per_other_count)
            << "\n";
      }
    } else if (r.sss) {
      out << "l,count\n";
      for (const auto& [l, count] : r.sss->coverage) out << l << "," << count << "\n";
    }
  } else {
    write_source_header_text(src, pr, out);
    write_code_report_text(r, out);
  }
  return r.sss ? kExitOk : kExitFailure;
}

CorpusTarget parse_target_spec(const std::string& spec, bool balanced_default) {
  std::vector<std::string> tokens;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) tokens.push_back(item);
  require(tokens.size() == 3 || tokens.size() == 4, Err::Usage,
          "--target must be p,m,s or p,m,s,balanced; got '" + spec + "'");
  const std::vector<long long> nums =
      parse_ll_list(tokens[0] + "," + tokens[1] + "," + tokens[2], "--target");
  CorpusTarget t;
  t.p = static_cast<int>(nums[0]);
  t.m = static_cast<int>(nums[1]);
  t.s = static_cast<int>(nums[2]);
  t.balanced = balanced_default;
  if (tokens.size() == 4) {
    require(tokens[3] == "balanced", Err::Usage,
            "the fourth --target token must be 'balanced'; got '" + tokens[3] + "'");
    t.balanced = true;
  }
  return t;
}

std::string corpus_csv(const Corpus& corpus) {
  std::ostringstream o;
  o << "p,m,s,epsilon,t,coeffs\n";
  for (const CorpusEntry& entry : corpus.entries) {
    for (const WitnessRecord& rec : entry.witnesses) {
      o << rec.p << "," << rec.m << "," << rec.s << "," << rec.epsilon << "," << rec.t << ",";
      for (std::size_t i = 0; i < rec.coeffs.size(); ++i) {
        if (i) o << ";";
        o << rec.coeffs[i];
      }
      o << "\n";
    }
  }
  return o.str();
}

int cmd_search(const RunConfig& cfg, std::ostream& out) {
  std::vector<CorpusTarget> targets;
  for (const std::string& spec : cfg.target_specs) {
    targets.push_back(parse_target_spec(spec, cfg.balanced_targets));
  }
  if (targets.empty()) {
    targets = default_corpus_targets();
    if (cfg.balanced_targets) {
      for (CorpusTarget& t : targets) t.balanced = true;
    }
  }

  const Corpus corpus = build_corpus(targets, cfg.cap, !cfg.no_summaries);
  std::string payload;
  if (cfg.format == OutputFormat::Json) {
    payload = corpus_json(corpus);
  } else if (cfg.format == OutputFormat::Csv) {
    payload = corpus_csv(corpus);
  } else {
    payload = corpus_text(corpus);
  }

  if (!cfg.out_path.empty()) {
    std::ofstream file(cfg.out_path);
    require(static_cast<bool>(file), Err::Usage, "cannot open output file '" + cfg.out_path + "'");
    file << payload;
  } else {
    out << payload;
  }
  return kExitOk;
}

void add_source_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--field", cfg.field_spec, "field spec p=<p>,m=<m>[,mod=<c0,...,cm>]");
  sub->add_option("--quad", cfg.inline_quad, "quadratic coefficients c0,c1,...");
  sub->add_option("--table", cfg.inline_table, "value table v0,v1,... of length p^m");
  sub->add_option("--function-file", cfg.function_file, "function file (header + quad:/table:)");
  sub->add_option("--corpus", cfg.corpus_file, "witness corpus file");
  sub->add_option("--witness", cfg.witness_selector, "corpus selector p,m,s[,eps]");
}

void add_format_option(CLI::App* sub, RunConfig& cfg) {
  static const std::map<std::string, OutputFormat> formats{{"text", OutputFormat::Text},
                                                           {"json", OutputFormat::Json},
                                                           {"csv", OutputFormat::Csv}};
  sub->add_option("--format", cfg.format, "output format: text | json | csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

void add_flavor_option(CLI::App* sub, RunConfig& cfg) {
  static const std::map<std::string, PunctureFlavor> flavors{
      {"antipodal", PunctureFlavor::Antipodal}, {"full-orbit", PunctureFlavor::FullOrbit}};
  sub->add_option("--flavor", cfg.flavor, "puncture transversal: antipodal | full-orbit")
      ->transform(CLI::CheckedTransformer(flavors, CLI::ignore_case));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{
      "linear codes from p-ary plateaued functions: exact spectra, weight distributions, "
      "minimality certificates, duals and access structures (PLATEAU_THREADS caps workers)"};
  app.name("plateau");
  app.require_subcommand(1);

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "spectral classification and class certificate");
  add_source_options(classify_cmd, cfg);
  add_format_option(classify_cmd, cfg);

  CLI::App* code_cmd = app.add_subcommand("code", "build codes and certify their properties");
  add_source_options(code_cmd, cfg);
  add_format_option(code_cmd, cfg);
  add_flavor_option(code_cmd, cfg);
  code_cmd->add_option("--kind", cfg.kind_names,
                       "defining-set kinds (repeatable, 'all' for every base kind)")
      ->delimiter(',');
  code_cmd->add_flag("--check", cfg.check, "compare against the closed-form tables");
  code_cmd->add_flag("--dual", cfg.dual, "append the MacWilliams dual report");
  CLI::Option* sss_flag =
      code_cmd->add_flag("--sss", cfg.sss, "append the access-structure report");
  code_cmd->add_flag("--oracle", cfg.oracle, "enumerate minimal access sets directly")
      ->needs(sss_flag);
  code_cmd->add_flag("--punctured", cfg.punctured, "also report punctured D0/D12 codes");
  code_cmd->add_option("--oracle-bound", cfg.oracle_bound, "p^k limit for the set oracle");
  code_cmd->add_option("--exhaustive-bound", cfg.exhaustive_bound,
                       "p^k limit for the minimality sweep (0 disables)");

  CLI::App* search_cmd = app.add_subcommand("search", "sweep quadratics and build a corpus");
  add_format_option(search_cmd, cfg);
  search_cmd->add_option("--target", cfg.target_specs, "target p,m,s[,balanced] (repeatable)");
  search_cmd->add_flag("--balanced", cfg.balanced_targets, "demand balanced witnesses");
  search_cmd->add_option("--cap", cfg.cap, "sweep cap per target");
  search_cmd->add_flag("--no-summaries", cfg.no_summaries, "skip per-witness code summaries");
  search_cmd->add_option("--out", cfg.out_path, "write the corpus to a file instead of stdout");

  CLI::App* sss_cmd = app.add_subcommand("sss", "access structure of one code's secret sharing");
  add_source_options(sss_cmd, cfg);
  add_format_option(sss_cmd, cfg);
  add_flavor_option(sss_cmd, cfg);
  sss_cmd->add_option("--kind", cfg.kind_names, "defining-set kind (exactly one)")
      ->delimiter(',');
  sss_cmd->add_flag("--punctured", cfg.punctured, "use the punctured code");
  sss_cmd->add_flag("--oracle", cfg.oracle, "enumerate minimal access sets directly");
  sss_cmd->add_option("--oracle-bound", cfg.oracle_bound, "p^k limit for the set oracle");
  sss_cmd->add_option("--exhaustive-bound", cfg.exhaustive_bound,
                      "p^k limit for the minimality sweep (0 disables)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("plateau");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(cfg, out);
    if (code_cmd->parsed()) return cmd_code(cfg, out);
    if (search_cmd->parsed()) return cmd_search(cfg, out);
    return cmd_sss(cfg, out);
  } catch (const PlateauError& e) {
    err << e.what() << "\n";
    if (e.code() == Err::Usage) return kExitUsage;
    if (e.code() == Err::NotPlateaued || e.code() == Err::NotWeaklyRegular) return kExitClassify;
    return kExitFailure;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace plateau
