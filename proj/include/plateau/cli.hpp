#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "plateau/code.hpp"

namespace plateau {

enum class OutputFormat { Text, Json, Csv };

// Everything the subcommands consume, assembled by the flag parser.
// Exactly one function source (inline --quad/--table with --field, a
// function file, or a corpus witness) may be given per invocation.
struct RunConfig {
  std::string field_spec;        // inline sources: "p=..,m=..[,mod=..]"
  std::string inline_quad;       // "c0,c1,..."
  std::string inline_table;      // "v0,v1,..."
  std::string function_file;     // self-describing function file
  std::string corpus_file;       // witness corpus path
  std::string witness_selector;  // "p,m,s[,eps]"

  std::vector<std::string> kind_names;  // defining-set kinds; "all" expands
  OutputFormat format = OutputFormat::Text;
  bool check = false;
  bool dual = false;
  bool sss = false;
  bool oracle = false;
  bool punctured = false;
  PunctureFlavor flavor = PunctureFlavor::Antipodal;
  long long oracle_bound = 243;
  long long exhaustive_bound = 6561;

  // search subcommand
  std::vector<std::string> target_specs;  // "p,m,s[,balanced]"
  bool balanced_targets = false;
  long long cap = 1000000;
  bool no_summaries = false;
  std::string out_path;
};

// Dispatches "classify | code | search | sss" and writes the report in the
// selected format. Exit codes: 0 success, 1 computation failure outside
// the special cases, 2 classification failure, 3 closed-form check
// mismatch, 4 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plateau
