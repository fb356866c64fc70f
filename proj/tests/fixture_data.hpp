#pragma once

#include <doctest.h>

#include <map>
#include <vector>

#include "plateau/code.hpp"

// Brute-force fixture corpus shared by the code and analysis test suites:
// quadratic witnesses, defining-set recipes, and independently computed
// code parameters.
namespace testfx {

using WeightMap = std::map<long long, long long>;

inline long long ipow(int b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// punct: 0 = none, 1 = antipodal transversal, 2 = full-orbit transversal.
struct CodeFixture {
  int p, m;
  std::vector<plateau::ffelem> coeffs;
  plateau::SetKind base;
  int punct;
  long long n;
  int k;
  long long d;
  WeightMap weights;
};

inline const std::vector<CodeFixture>& code_fixtures() {
  using plateau::SetKind;
  static const std::vector<CodeFixture> fx = {
      {3, 4, {1, 1, 0}, SetKind::D0, 0, 26, 4, 12, {{12, 12}, {18, 62}, {24, 6}}},
      {3, 4, {1, 1, 0}, SetKind::D1, 0, 36, 4, 18, {{18, 8}, {24, 60}, {30, 12}}},
      {3, 4, {1, 1, 0}, SetKind::D12, 0, 54, 4, 30, {{30, 6}, {36, 62}, {42, 12}}},
      {3, 4, {1, 1, 0}, SetKind::Dsq0, 0, 62, 4, 36, {{36, 8}, {42, 66}, {48, 6}}},
      {3, 4, {1, 1, 0}, SetKind::D0, 2, 13, 4, 6, {{6, 12}, {9, 62}, {12, 6}}},
      {3, 4, {1, 1, 0}, SetKind::D12, 2, 27, 4, 15, {{15, 6}, {18, 62}, {21, 12}}},
      {3, 3, {2, 1}, SetKind::D0, 0, 8, 2, 6, {{6, 8}}},
      {3, 3, {2, 1}, SetKind::D12, 0, 18, 3, 12, {{12, 24}, {18, 2}}},
      {3, 3, {2, 1}, SetKind::D01, 0, 8, 2, 6, {{6, 8}}},
      {3, 3, {2, 1}, SetKind::Dnsq, 0, 18, 3, 12, {{12, 24}, {18, 2}}},
      {3, 3, {2, 1}, SetKind::Dnsq0, 0, 26, 3, 18, {{18, 26}}},
      {3, 3, {2, 1}, SetKind::D12, 2, 9, 3, 6, {{6, 24}, {9, 2}}},
      {3, 3, {1, 0}, SetKind::D0, 0, 8, 3, 4, {{4, 12}, {6, 8}, {8, 6}}},
      {3, 3, {1, 0}, SetKind::D12, 0, 18, 3, 10, {{10, 6}, {12, 8}, {14, 12}}},
      {3, 3, {1, 0}, SetKind::D02, 0, 20, 3, 12, {{12, 8}, {14, 12}, {16, 6}}},
      {3, 3, {1, 0}, SetKind::D12, 2, 9, 3, 5, {{5, 6}, {6, 8}, {7, 12}}},
      {5, 3, {3, 1}, SetKind::D0, 0, 24, 2, 20, {{20, 24}}},
      {5, 3, {3, 1}, SetKind::D2, 0, 50, 3, 40, {{40, 120}, {50, 4}}},
      {5, 3, {3, 1}, SetKind::Dsq0, 0, 24, 2, 20, {{20, 24}}},
      {5, 3, {3, 1}, SetKind::D0, 1, 12, 2, 10, {{10, 24}}},
      {5, 3, {3, 1}, SetKind::D0, 2, 6, 2, 5, {{5, 24}}},
      {5, 3, {3, 1}, SetKind::D12, 1, 25, 3, 20, {{20, 120}, {25, 4}}},
      {5, 3, {3, 1}, SetKind::Dnsq, 2, 25, 3, 20, {{20, 120}, {25, 4}}},
      {5, 3, {4, 1}, SetKind::D0, 0, 4, 1, 4, {{4, 4}}},
      {5, 3, {4, 1}, SetKind::D12, 0, 60, 3, 48, {{48, 100}, {50, 24}}},
      {5, 3, {4, 1}, SetKind::Dsq, 0, 60, 3, 40, {{40, 12}, {48, 100}, {60, 12}}},
      {5, 3, {4, 1}, SetKind::Dnsq0, 0, 64, 3, 40, {{40, 12}, {52, 100}, {60, 12}}},
      {5, 3, {4, 1}, SetKind::D12, 1, 30, 3, 24, {{24, 100}, {25, 24}}},
      {5, 3, {4, 1}, SetKind::Dsq, 2, 15, 3, 10, {{10, 12}, {12, 100}, {15, 12}}},
      {3, 5, {42, 1, 0}, SetKind::D0, 0, 80, 5, 36, {{36, 12}, {54, 224}, {72, 6}}},
      {3, 5, {42, 1, 0}, SetKind::D0, 2, 40, 5, 18, {{18, 12}, {27, 224}, {36, 6}}},
  };
  return fx;
}

// Generic full-orbit transversal for sets outside puncture()'s production
// scope (value-class sets like Dsq are orbit-closed for quadratics because
// scaling multiplies the value by a square).
inline plateau::DefiningSet full_orbit_transversal(const plateau::DefiningSet& ds) {
  using namespace plateau;
  const FieldCtx& F = *ds.ctx;
  std::vector<char> in(static_cast<std::size_t>(F.q), 0);
  std::vector<char> seen(static_cast<std::size_t>(F.q), 0);
  for (ffelem d : ds.elements) in[static_cast<std::size_t>(d)] = 1;
  DefiningSet out;
  out.ctx = ds.ctx;
  out.kind = ds.kind;
  out.flavor = PunctureFlavor::FullOrbit;
  for (ffelem d : ds.elements) {
    if (seen[static_cast<std::size_t>(d)]) continue;
    for (int a = 1; a < F.p; ++a) {
      const ffelem ad = ff_mul(F, ff_scalar(F, a), d);
      REQUIRE(in[static_cast<std::size_t>(ad)] == 1);
      seen[static_cast<std::size_t>(ad)] = 1;
    }
    out.elements.push_back(d);
  }
  return out;
}

inline plateau::DefiningSet fixture_set(const plateau::FieldCtx& F, const CodeFixture& fx) {
  using namespace plateau;
  const PFunction f = quadratic(F, fx.coeffs);
  DefiningSet ds = build_defining_set(f, fx.base, false);
  if (fx.punct == 0) return ds;
  const PunctureFlavor flavor =
      fx.punct == 1 ? PunctureFlavor::Antipodal : PunctureFlavor::FullOrbit;
  if (fx.base == SetKind::D0 || fx.base == SetKind::D12) return puncture(ds, flavor);
  REQUIRE(flavor == PunctureFlavor::FullOrbit);
  return full_orbit_transversal(ds);
}

}  // namespace testfx
