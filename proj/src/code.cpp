#include "plateau/code.hpp"

#include <algorithm>

#include "plateau/arith.hpp"
#include "plateau/threads.hpp"

namespace plateau {

namespace {

// Row evaluation runs in 128-bit arithmetic; the entry guard in
// closed_form_distribution keeps every intermediate well inside it.
using wide = __int128;

long long narrow(wide v) {
  require(v <= wide(1LL << 62) && v >= -wide(1LL << 62), Err::OverflowGuard,
          "closed-form value exceeds the integer guard");
  return static_cast<long long>(v);
}

wide P(int p, int e) {
  wide r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

// sqrt(p*)^e for even non-negative e.
wide SQ(int p, int e) {
  require(e >= 0, Err::OutOfRange, "Gauss-sum exponent is negative; parameters out of range");
  require(e % 2 == 0, Err::NonIntegerResult, "odd power of sqrt(p*) in an integer formula");
  wide r = 1;
  for (int i = 0; i < e / 2; ++i) r *= eta_neg1(p) * p;
  return r;
}

int EP(int p, int k) { return eta_neg1_pow(p, k); }

int msign(int m) { return m % 2 == 0 ? 1 : -1; }  // (-1)^m

wide dv(wide num, wide den) {
  require(num % den == 0, Err::NonIntegerResult,
          "closed-form row is not an integer at this parameter point");
  return num / den;
}

using Rows = std::vector<std::pair<wide, wide>>;

Rows t_d0_even(int p, int m, int s, int e) {
  const wide pm = P(p, m);
  return {
      {(p - 1) * P(p, m - 2), pm - P(p, m - s) - 1},
      {dv((pm - e * (p - 1) * SQ(p, m + s)) * (p - 1), wide(p) * p),
       P(p, m - s - 1) + e * EP(p, m + 1) * (p - 1) * SQ(p, m - s - 2)},
      {dv((pm + e * SQ(p, m + s)) * (p - 1), wide(p) * p),
       (p - 1) * (P(p, m - s - 1) - e * EP(p, m + 1) * SQ(p, m - s - 2))},
  };
}

Rows t_d1_odd_p1(int p, int m, int s, int e) {
  return {
      {(p - 1) * (P(p, m - 2) - e * SQ(p, m + s - 3)), P(p, m - s - 1)},
      {(p - 1) * P(p, m - 2) + e * 2 * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) + e * SQ(p, m - s - 1)) * (p - 1), 2)},
      {(p - 1) * P(p, m - 2),
       P(p, m) - P(p, m - s) - 1 + dv((P(p, m - s - 1) - e * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_d1_odd_p3(int p, int m, int s, int e) {
  return {
      {(p - 1) * (P(p, m - 2) + e * SQ(p, m + s - 3)), P(p, m - s - 1)},
      {(p - 1) * P(p, m - 2),
       P(p, m) - P(p, m - s) - 1 +
           dv((P(p, m - s - 1) + e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
      {(p - 1) * P(p, m - 2) - e * 2 * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) - e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_d1_even(int p, int m, int s, int e) {
  const wide pm = P(p, m);
  return {
      {(p - 1) * P(p, m - 2), pm - P(p, m - s) - 1},
      {dv((pm + e * SQ(p, m + s)) * (p - 1), wide(p) * p),
       P(p, m - s - 1) +
           dv((P(p, m - s - 1) + e * EP(p, m + 1) * SQ(p, m - s - 2)) * (p - 1), 2)},
      {dv((p - 1) * pm - e * (p + 1) * SQ(p, m + s), wide(p) * p),
       dv((P(p, m - s - 1) - e * EP(p, m + 1) * SQ(p, m - s - 2)) * (p - 1), 2)},
  };
}

Rows t_d01_odd(int p, int m, int s, int e) {
  const int et = eta_neg1(p);
  return {
      {2 * (p - 1) * P(p, m - 2), P(p, m) - P(p, m - s) - 1},
      {(p - 1) * (2 * P(p, m - 2) - e * et * SQ(p, m + s - 3)), P(p, m - s - 1)},
      {2 * (p - 1) * P(p, m - 2) - e * (p - 2 - et) * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) + e * EP(p, m) * SQ(p, m - s - 1)) * (p - 1), 2)},
      {2 * (p - 1) * P(p, m - 2) + e * (p - 2 + et) * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) - e * EP(p, m) * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_d01_even(int p, int m, int s, int e) {
  const wide pm = P(p, m);
  return {
      {2 * (p - 1) * P(p, m - 2), pm - P(p, m - s) - 1},
      {dv((2 * pm - e * (p - 2) * SQ(p, m + s)) * (p - 1), wide(p) * p),
       P(p, m - s - 1) + e * EP(p, m + 1) * (p - 1) * SQ(p, m - s - 2)},
      {dv(2 * ((p - 1) * pm - e * SQ(p, m + s)), wide(p) * p),
       dv((P(p, m - s - 1) - e * EP(p, m + 1) * SQ(p, m - s - 2)) * (p - 1), 2)},
      {dv(2 * (pm + e * SQ(p, m + s)) * (p - 1), wide(p) * p),
       dv((P(p, m - s - 1) - e * EP(p, m + 1) * SQ(p, m - s - 2)) * (p - 1), 2)},
  };
}

Rows t_d2_odd_p1(int p, int m, int s, int e) {
  return {
      {(p - 1) * (P(p, m - 2) + e * SQ(p, m + s - 3)), P(p, m - s - 1)},
      {(p - 1) * P(p, m - 2),
       P(p, m) - P(p, m - s) - 1 + dv((P(p, m - s - 1) + e * SQ(p, m - s - 1)) * (p - 1), 2)},
      {(p - 1) * P(p, m - 2) - e * 2 * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) - e * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_d2_odd_p3(int p, int m, int s, int e) {
  return {
      {(p - 1) * (P(p, m - 2) - e * SQ(p, m + s - 3)), P(p, m - s - 1)},
      {(p - 1) * P(p, m - 2) + e * 2 * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) + e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
      {(p - 1) * P(p, m - 2),
       P(p, m) - P(p, m - s) - 1 +
           dv((P(p, m - s - 1) - e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_d02_odd(int p, int m, int s, int e) {
  const int et = eta_neg1(p);
  return {
      {2 * (p - 1) * P(p, m - 2), P(p, m) - P(p, m - s) - 1},
      {(p - 1) * (2 * P(p, m - 2) + e * et * SQ(p, m + s - 3)), P(p, m - s - 1)},
      {2 * (p - 1) * P(p, m - 2) - e * (p - 2 + et) * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) + e * EP(p, m) * SQ(p, m - s - 1)) * (p - 1), 2)},
      {2 * (p - 1) * P(p, m - 2) + e * (p - 2 - et) * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) - e * EP(p, m) * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_d12_odd(int p, int m, int s, int e) {
  return {
      {2 * (p - 1) * P(p, m - 2), P(p, m - s - 1) + P(p, m) - P(p, m - s) - 1},
      {2 * (p - 1) * P(p, m - 2) + e * 2 * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) + e * EP(p, m) * SQ(p, m - s - 1)) * (p - 1), 2)},
      {2 * (p - 1) * P(p, m - 2) - e * 2 * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) - e * EP(p, m) * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_d12_even(int p, int m, int s, int e) {
  const wide pm = P(p, m);
  return {
      {2 * (p - 1) * P(p, m - 2), pm - P(p, m - s) - 1},
      {dv(2 * (p - 1) * (pm + e * SQ(p, m + s)), wide(p) * p),
       P(p, m - s - 1) + e * EP(p, m + 1) * (p - 1) * SQ(p, m - s - 2)},
      {dv(2 * ((p - 1) * pm - e * SQ(p, m + s)), wide(p) * p),
       (p - 1) * (P(p, m - s - 1) - e * EP(p, m + 1) * SQ(p, m - s - 2))},
  };
}

Rows t_sq_odd_p1(int p, int m, int s, int e) {
  return {
      {dv((P(p, m - 2) - e * SQ(p, m + s - 3)) * (p - 1) * (p - 1), 2), P(p, m - s - 1)},
      {(p - 1) * (dv(P(p, m - 2) * (p - 1), 2) + e * SQ(p, m + s - 3)),
       dv((P(p, m - s - 1) + e * SQ(p, m - s - 1)) * (p - 1), 2)},
      {dv(P(p, m - 2) * (p - 1) * (p - 1), 2),
       P(p, m) - P(p, m - s) - 1 + dv((P(p, m - s - 1) - e * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_sq_odd_p3(int p, int m, int s, int e) {
  return {
      {dv((P(p, m - 2) + e * SQ(p, m + s - 3)) * (p - 1) * (p - 1), 2), P(p, m - s - 1)},
      {dv(P(p, m - 2) * (p - 1) * (p - 1), 2),
       P(p, m) - P(p, m - s) - 1 +
           dv((P(p, m - s - 1) + e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
      {(p - 1) * (dv(P(p, m - 2) * (p - 1), 2) - e * SQ(p, m + s - 3)),
       dv((P(p, m - s - 1) - e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_sq_even(int p, int m, int s, int e) {
  const wide pm = P(p, m);
  const wide pp2 = 2 * wide(p) * p;
  return {
      {dv(pm * (p - 1) * (p - 1), pp2), pm - P(p, m - s) - 1},
      {dv((pm + e * SQ(p, m + s)) * (p - 1) * (p - 1), pp2),
       P(p, m - s - 1) +
           dv((P(p, m - s - 1) + e * EP(p, m + 1) * SQ(p, m - s - 2)) * (p - 1), 2)},
      {dv(((p - 1) * pm - e * (p + 1) * SQ(p, m + s)) * (p - 1), pp2),
       dv((P(p, m - s - 1) - e * EP(p, m + 1) * SQ(p, m - s - 2)) * (p - 1), 2)},
  };
}

Rows t_sq0_odd_p1(int p, int m, int s, int e) {
  const wide base = dv(P(p, m - 2) * (wide(p) * p - 1), 2);
  return {
      {base - dv(e * SQ(p, m + s - 3) * (p - 1) * (p - 1), 2), P(p, m - s - 1)},
      {base,
       P(p, m) - P(p, m - s) - 1 + dv((P(p, m - s - 1) + e * SQ(p, m - s - 1)) * (p - 1), 2)},
      {base + e * (p - 1) * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) - e * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_sq0_odd_p3(int p, int m, int s, int e) {
  const wide base = dv(P(p, m - 2) * (wide(p) * p - 1), 2);
  return {
      {base + dv(e * SQ(p, m + s - 3) * (p - 1) * (p - 1), 2), P(p, m - s - 1)},
      {base - e * (p - 1) * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) + e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
      {base,
       P(p, m) - P(p, m - s) - 1 +
           dv((P(p, m - s - 1) - e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_sq0_even(int p, int m, int s, int e) {
  const wide pm = P(p, m);
  const wide pp2 = 2 * wide(p) * p;
  return {
      {dv(pm * (wide(p) * p - 1), pp2), pm - P(p, m - s) - 1},
      {dv(((p + 1) * pm - e * (p - 1) * SQ(p, m + s)) * (p - 1), pp2),
       P(p, m - s - 1) +
           dv((p - 1) * (P(p, m - s - 1) + e * EP(p, m + 1) * SQ(p, m - s - 2)), 2)},
      {dv((pm + e * SQ(p, m + s)) * (wide(p) * p - 1), pp2),
       dv((p - 1) * (P(p, m - s - 1) - e * EP(p, m + 1) * SQ(p, m - s - 2)), 2)},
  };
}

Rows t_nsq_odd_p1(int p, int m, int s, int e) {
  return {
      {dv((P(p, m - 2) + e * SQ(p, m + s - 3)) * (p - 1) * (p - 1), 2), P(p, m - s - 1)},
      {dv(P(p, m - 2) * (p - 1) * (p - 1), 2),
       P(p, m) - P(p, m - s) - 1 + dv((P(p, m - s - 1) + e * SQ(p, m - s - 1)) * (p - 1), 2)},
      {(p - 1) * (dv(P(p, m - 2) * (p - 1), 2) - e * SQ(p, m + s - 3)),
       dv((P(p, m - s - 1) - e * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_nsq_odd_p3(int p, int m, int s, int e) {
  return {
      {dv((P(p, m - 2) - e * SQ(p, m + s - 3)) * (p - 1) * (p - 1), 2), P(p, m - s - 1)},
      {(p - 1) * (dv(P(p, m - 2) * (p - 1), 2) + e * SQ(p, m + s - 3)),
       dv((P(p, m - s - 1) + e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
      {dv(P(p, m - 2) * (p - 1) * (p - 1), 2),
       P(p, m) - P(p, m - s) - 1 +
           dv((P(p, m - s - 1) - e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_nsq0_odd_p1(int p, int m, int s, int e) {
  const wide base = dv(P(p, m - 2) * (wide(p) * p - 1), 2);
  return {
      {base + dv(e * SQ(p, m + s - 3) * (p - 1) * (p - 1), 2), P(p, m - s - 1)},
      {base - e * (p - 1) * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) + e * SQ(p, m - s - 1)) * (p - 1), 2)},
      {base,
       P(p, m) - P(p, m - s) - 1 + dv((P(p, m - s - 1) - e * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_nsq0_odd_p3(int p, int m, int s, int e) {
  const wide base = dv(P(p, m - 2) * (wide(p) * p - 1), 2);
  return {
      {base - dv(e * SQ(p, m + s - 3) * (p - 1) * (p - 1), 2), P(p, m - s - 1)},
      {base,
       P(p, m) - P(p, m - s) - 1 +
           dv((P(p, m - s - 1) + e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
      {base + e * (p - 1) * SQ(p, m + s - 3),
       dv((P(p, m - s - 1) - e * msign(m) * SQ(p, m - s - 1)) * (p - 1), 2)},
  };
}

Rows t_puncd0_even(int p, int m, int s, int e) {
  return {
      {P(p, m - 2), P(p, m) - P(p, m - s) - 1},
      {P(p, m - 2) - e * (p - 1) * SQ(p, m + s - 4),
       P(p, m - s - 1) + e * EP(p, m + 1) * (p - 1) * SQ(p, m - s - 2)},
      {P(p, m - 2) + e * SQ(p, m + s - 4),
       (p - 1) * (P(p, m - s - 1) - e * EP(p, m + 1) * SQ(p, m - s - 2))},
  };
}

Rows t_punc12_odd(int m, int s, int e) {
  return {
      {2 * P(3, m - 2), P(3, m - s - 1) + P(3, m) - P(3, m - s) - 1},
      {2 * P(3, m - 2) + e * SQ(3, m + s - 3), P(3, m - s - 1) + e * msign(m) * SQ(3, m - s - 1)},
      {2 * P(3, m - 2) - e * SQ(3, m + s - 3), P(3, m - s - 1) - e * msign(m) * SQ(3, m - s - 1)},
  };
}

Rows t_punc12_even(int m, int s, int e) {
  return {
      {2 * P(3, m - 2), P(3, m) - P(3, m - s) - 1},
      {2 * (P(3, m - 2) + e * SQ(3, m + s - 4)),
       P(3, m - s - 1) + e * msign(m + 1) * 2 * SQ(3, m - s - 2)},
      {2 * P(3, m - 2) - e * SQ(3, m + s - 4),
       2 * (P(3, m - s - 1) - e * msign(m + 1) * SQ(3, m - s - 2))},
  };
}

Rows halved(Rows rows) {
  for (auto& r : rows) r.first = dv(r.first, 2);
  return rows;
}

bool set_member(SetKind kind, int v, const QuadChar& chi) {
  switch (kind) {
    case SetKind::D0: return v == 0;
    case SetKind::D1: return v == 1;
    case SetKind::D2: return v == 2;
    case SetKind::D01: return v == 0 || v == 1;
    case SetKind::D02: return v == 0 || v == 2;
    case SetKind::D12: return v == 1 || v == 2;
    case SetKind::Dsq: return v != 0 && chi.is_square(v);
    case SetKind::Dnsq: return v != 0 && !chi.is_square(v);
    case SetKind::Dsq0: return v == 0 || chi.is_square(v);
    case SetKind::Dnsq0: return v == 0 || !chi.is_square(v);
    default: break;
  }
  fail(Err::BadEntry, "no membership predicate for punctured kinds");
}

LinearCode finish_code(const DefiningSet& ds, const std::vector<long long>& wt) {
  const FieldCtx& F = *ds.ctx;
  long long kernel = 0;
  std::map<long long, long long> hist;
  for (long long w : wt) {
    if (w == 0) {
      ++kernel;
    } else {
      ++hist[w];
    }
  }
  // The zero-weight frequencies form the annihilator of span(D), an
  // F_p-subspace; every distinct codeword is hit exactly that many times.
  int defect = 0;
  long long t = kernel;
  while (t % F.p == 0) {
    t /= F.p;
    ++defect;
  }
  require(t == 1, Err::RankDeficient, "codeword fibres are not a subspace power");

  LinearCode code;
  code.ctx = ds.ctx;
  code.defining_set = ds;
  code.n = static_cast<long long>(ds.elements.size());
  code.k = F.m - defect;
  for (const auto& [w, c] : hist) {
    code.weight_distribution[w] = exact_div(c, kernel, Err::NonIntegerResult);
  }
  code.d = code.weight_distribution.begin()->first;
  return code;
}

}  // namespace

std::string set_kind_name(SetKind kind) {
  switch (kind) {
    case SetKind::D0: return "D0";
    case SetKind::D1: return "D1";
    case SetKind::D2: return "D2";
    case SetKind::D01: return "D01";
    case SetKind::D02: return "D02";
    case SetKind::D12: return "D12";
    case SetKind::Dsq: return "Dsq";
    case SetKind::Dnsq: return "Dnsq";
    case SetKind::Dsq0: return "Dsq0";
    case SetKind::Dnsq0: return "Dnsq0";
    case SetKind::PuncD0: return "PuncD0";
    case SetKind::PuncD12: return "PuncD12";
  }
  fail(Err::BadEntry, "unknown set kind");
}

SetKind parse_set_kind(const std::string& name) {
  static const std::vector<SetKind> all = {
      SetKind::D0,  SetKind::D1,   SetKind::D2,    SetKind::D01,    SetKind::D02,
      SetKind::D12, SetKind::Dsq,  SetKind::Dnsq,  SetKind::Dsq0,   SetKind::Dnsq0,
      SetKind::PuncD0, SetKind::PuncD12};
  for (SetKind k : all) {
    if (set_kind_name(k) == name) return k;
  }
  fail(Err::BadEntry,
       "unknown defining-set kind '" + name +
           "' (expected D0, D1, D2, D01, D02, D12, Dsq, Dnsq, Dsq0, Dnsq0, PuncD0 or PuncD12)");
}

bool is_punctured_kind(SetKind kind) {
  return kind == SetKind::PuncD0 || kind == SetKind::PuncD12;
}

const std::vector<SetKind>& base_set_kinds() {
  static const std::vector<SetKind> kinds = {
      SetKind::D0,  SetKind::D1,  SetKind::D2,   SetKind::D01,  SetKind::D02,
      SetKind::D12, SetKind::Dsq, SetKind::Dnsq, SetKind::Dsq0, SetKind::Dnsq0};
  return kinds;
}

std::string flavor_name(PunctureFlavor flavor) {
  return flavor == PunctureFlavor::Antipodal ? "antipodal" : "full-orbit";
}

std::string set_label(const DefiningSet& ds) {
  if (!is_punctured_kind(ds.kind)) return set_kind_name(ds.kind);
  return set_kind_name(ds.kind) + "[" + flavor_name(ds.flavor) + "]";
}

long long expected_set_size(SetKind kind, int p, int m, PunctureFlavor flavor) {
  const long long pm1 = pow_ll(p, m - 1);
  const long long orbit = flavor == PunctureFlavor::Antipodal ? 2 : p - 1;
  switch (kind) {
    case SetKind::D0: return pm1 - 1;
    case SetKind::D1:
    case SetKind::D2: return pm1;
    case SetKind::D01:
    case SetKind::D02: return 2 * pm1 - 1;
    case SetKind::D12: return 2 * pm1;
    case SetKind::Dsq:
    case SetKind::Dnsq: return pm1 * (p - 1) / 2;
    case SetKind::Dsq0:
    case SetKind::Dnsq0: return pm1 * (p + 1) / 2 - 1;
    case SetKind::PuncD0: return exact_div(pm1 - 1, orbit, Err::NotOrbitClosed);
    case SetKind::PuncD12: return exact_div(2 * pm1, orbit, Err::NotOrbitClosed);
  }
  fail(Err::BadEntry, "unknown set kind");
}

DefiningSet build_defining_set(const PFunction& f, SetKind kind, bool require_balanced) {
  require(!is_punctured_kind(kind), Err::BadEntry,
          "punctured defining sets are derived via puncture(), not built directly");
  const FieldCtx& F = *f.ctx;
  DefiningSet ds;
  ds.ctx = f.ctx;
  ds.kind = kind;
  for (ffelem x = 1; x < F.q; ++x) {
    if (set_member(kind, f(x), F.chi)) ds.elements.push_back(x);
  }
  require(!ds.elements.empty(), Err::EmptySet,
          set_kind_name(kind) + " is empty for this function");
  if (require_balanced) {
    const long long want = expected_set_size(kind, F.p, F.m);
    require(static_cast<long long>(ds.elements.size()) == want, Err::NotBalanced,
            set_kind_name(kind) + " has " + std::to_string(ds.elements.size()) +
                " elements but the balanced case gives " + std::to_string(want));
  }
  return ds;
}

DefiningSet puncture(const DefiningSet& ds, PunctureFlavor flavor, bool max_representative) {
  require(ds.kind == SetKind::D0 || ds.kind == SetKind::D12, Err::BadEntry,
          "puncturing is defined for the D0 and D12 sets");
  const FieldCtx& F = *ds.ctx;

  std::vector<ffelem> scalars;
  if (flavor == PunctureFlavor::Antipodal) {
    scalars = {ff_scalar(F, F.p - 1)};
  } else {
    for (int a = 2; a < F.p; ++a) scalars.push_back(ff_scalar(F, a));
  }

  std::vector<char> in(static_cast<std::size_t>(F.q), 0);
  for (ffelem d : ds.elements) in[static_cast<std::size_t>(d)] = 1;
  for (ffelem d : ds.elements) {
    for (ffelem a : scalars) {
      require(in[static_cast<std::size_t>(ff_mul(F, a, d))] == 1, Err::NotOrbitClosed,
              set_kind_name(ds.kind) + " is not closed under " + flavor_name(flavor) +
                  " scaling (element " + std::to_string(d) + " leaves the set)");
    }
  }

  DefiningSet out;
  out.ctx = ds.ctx;
  out.kind = ds.kind == SetKind::D0 ? SetKind::PuncD0 : SetKind::PuncD12;
  out.flavor = flavor;
  std::vector<char> seen(static_cast<std::size_t>(F.q), 0);
  for (ffelem d : ds.elements) {
    if (seen[static_cast<std::size_t>(d)]) continue;
    ffelem rep = d;
    seen[static_cast<std::size_t>(d)] = 1;
    for (ffelem a : scalars) {
      const ffelem ad = ff_mul(F, a, d);
      seen[static_cast<std::size_t>(ad)] = 1;
      if (max_representative && ad > rep) rep = ad;
    }
    out.elements.push_back(rep);
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

LinearCode brute_force_distribution(const DefiningSet& ds) {
  const FieldCtx& F = *ds.ctx;
  require(!ds.elements.empty(), Err::EmptySet, "cannot build a code on an empty defining set");
  const long long q = F.q;
  std::vector<long long> wt(static_cast<std::size_t>(q), 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_count())
#endif
  for (long long w = 0; w < q; ++w) {
    const std::int8_t* row = &F.trace_mul[static_cast<std::size_t>(w) * q];
    long long count = 0;
    for (ffelem d : ds.elements) count += row[d] != 0;
    wt[static_cast<std::size_t>(w)] = count;
  }
  return finish_code(ds, wt);
}

LinearCode brute_force_distribution_serial(const DefiningSet& ds) {
  // Independent data path: multiplication table then trace table, instead
  // of the fused trace-of-product table.
  const FieldCtx& F = *ds.ctx;
  require(!ds.elements.empty(), Err::EmptySet, "cannot build a code on an empty defining set");
  std::vector<long long> wt(static_cast<std::size_t>(F.q), 0);
  for (ffelem w = 0; w < F.q; ++w) {
    long long count = 0;
    for (ffelem d : ds.elements) count += trace(F, ff_mul(F, w, d)) != 0;
    wt[static_cast<std::size_t>(w)] = count;
  }
  return finish_code(ds, wt);
}

std::string enumerator_string(const std::map<long long, long long>& distribution) {
  std::string out = "1";
  for (const auto& [w, a] : distribution) {
    out += "+" + std::to_string(a) + "y^" + std::to_string(w);
  }
  return out;
}

ClosedFormDistribution closed_form_distribution(int p, int m, int s, int epsilon, SetKind kind,
                                                PunctureFlavor flavor) {
  require_odd_prime(p);
  require(epsilon == 1 || epsilon == -1, Err::BadEntry, "epsilon must be +-1");
  const bool even = (m + s) % 2 == 0;
  const bool in_range = m >= 2 && s >= 1 && s <= m &&
                        (even ? (m + s >= 4 && m - s >= 2) : (m + s >= 3));
  require(in_range, Err::OutOfRange,
          "no weight-distribution table applies at m = " + std::to_string(m) +
              ", s = " + std::to_string(s));
  // Entry guard: every intermediate in the row formulas is bounded by a
  // small multiple of p^(2m+2), which must stay inside 128-bit range.
  {
    wide guard = 1;
    for (int i = 0; i < 2 * m + 3; ++i) {
      guard *= p;
      require(guard <= (wide(1) << 110), Err::OverflowGuard,
              "closed-form parameters exceed the integer guard");
    }
  }

  const bool p1 = p % 4 == 1;
  Rows rows;
  std::string branch;
  const std::string parity = even ? "even" : "odd";
  const std::string pmod = p1 ? "p1mod4" : "p3mod4";

  switch (kind) {
    case SetKind::D0:
      require(even, Err::UncoveredBranch,
              "no closed form for D0 with m+s odd; compute it by brute force");
      rows = t_d0_even(p, m, s, epsilon);
      branch = "D0:even";
      break;
    case SetKind::D1:
      rows = even ? t_d1_even(p, m, s, epsilon)
                  : (p1 ? t_d1_odd_p1 : t_d1_odd_p3)(p, m, s, epsilon);
      branch = even ? "D1:even" : "D1:odd:" + pmod;
      break;
    case SetKind::D2:
      // Even parity: the statement directs D2 to the D1 table.
      rows = even ? t_d1_even(p, m, s, epsilon)
                  : (p1 ? t_d2_odd_p1 : t_d2_odd_p3)(p, m, s, epsilon);
      branch = even ? "D2:even:alias-D1" : "D2:odd:" + pmod;
      break;
    case SetKind::D01:
      rows = (even ? t_d01_even : t_d01_odd)(p, m, s, epsilon);
      branch = "D01:" + parity;
      break;
    case SetKind::D02:
      require(!even, Err::UncoveredBranch,
              "no closed form for D02 with m+s even; compute it by brute force");
      rows = t_d02_odd(p, m, s, epsilon);
      branch = "D02:odd";
      break;
    case SetKind::D12:
      rows = (even ? t_d12_even : t_d12_odd)(p, m, s, epsilon);
      branch = "D12:" + parity;
      break;
    case SetKind::Dsq:
      rows = even ? t_sq_even(p, m, s, epsilon)
                  : (p1 ? t_sq_odd_p1 : t_sq_odd_p3)(p, m, s, epsilon);
      branch = even ? "Dsq:even" : "Dsq:odd:" + pmod;
      break;
    case SetKind::Dnsq:
      rows = even ? t_sq_even(p, m, s, epsilon)
                  : (p1 ? t_nsq_odd_p1 : t_nsq_odd_p3)(p, m, s, epsilon);
      branch = even ? "Dnsq:even:alias-Dsq" : "Dnsq:odd:" + pmod;
      break;
    case SetKind::Dsq0:
      rows = even ? t_sq0_even(p, m, s, epsilon)
                  : (p1 ? t_sq0_odd_p1 : t_sq0_odd_p3)(p, m, s, epsilon);
      branch = even ? "Dsq0:even" : "Dsq0:odd:" + pmod;
      break;
    case SetKind::Dnsq0:
      rows = even ? t_sq0_even(p, m, s, epsilon)
                  : (p1 ? t_nsq0_odd_p1 : t_nsq0_odd_p3)(p, m, s, epsilon);
      branch = even ? "Dnsq0:even:alias-Dsq0" : "Dnsq0:odd:" + pmod;
      break;
    case SetKind::PuncD0:
      require(even, Err::UncoveredBranch,
              "no closed form for punctured D0 with m+s odd; compute it by brute force");
      if (flavor == PunctureFlavor::FullOrbit) {
        rows = t_puncd0_even(p, m, s, epsilon);
        branch = "PuncD0:even:full-orbit";
      } else {
        rows = halved(t_d0_even(p, m, s, epsilon));
        branch = "PuncD0:even:antipodal";
      }
      break;
    case SetKind::PuncD12:
      require(p == 3, Err::UncoveredBranch,
              "no closed form for punctured D12 away from p = 3");
      rows = (even ? t_punc12_even : t_punc12_odd)(m, s, epsilon);
      branch = "PuncD12:" + parity;
      break;
  }

  ClosedFormDistribution out;
  out.kind = kind;
  out.p = p;
  out.m = m;
  out.s = s;
  out.epsilon = epsilon;
  out.n = expected_set_size(kind, p, m, flavor);
  out.k = m;
  out.branch = branch;
  for (const auto& [w, a] : rows) {
    if (a == 0) continue;
    require(a > 0, Err::OutOfRange, "negative multiplicity; parameters are unrealizable");
    out.rows[narrow(w)] += narrow(a);
  }
  return out;
}

ClosedFormDistribution closed_form_distribution(const PlateauedProfile& profile, SetKind kind,
                                                PunctureFlavor flavor) {
  return closed_form_distribution(profile.p, profile.m, profile.s, profile.epsilon, kind, flavor);
}

int rank_mod_p(std::vector<std::vector<std::int8_t>> rows, int p) {
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].size();
  int rank = 0;
  std::size_t col = 0;
  for (std::size_t r = 0; r < rows.size() && col < n; ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    // Normalize the pivot row, then clear the column below.
    int inv = 1;
    for (int c = 1; c < p; ++c) {
      if (c * rows[r][col] % p == 1) inv = c;
    }
    for (std::size_t j = col; j < n; ++j) {
      rows[r][j] = static_cast<std::int8_t>(rows[r][j] * inv % p);
    }
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      const int factor = rows[i][col];
      if (factor == 0) continue;
      for (std::size_t j = col; j < n; ++j) {
        rows[i][j] = static_cast<std::int8_t>(((rows[i][j] - factor * rows[r][j]) % p + p) % p);
      }
    }
    ++r;
    ++rank;
  }
  return rank;
}

std::vector<std::vector<std::int8_t>> generator_matrix(const LinearCode& code) {
  const FieldCtx& F = *code.ctx;
  const std::vector<ffelem>& D = code.defining_set.elements;

  // Candidate rows are the codewords of the power-basis frequencies x^i.
  std::vector<std::vector<std::int8_t>> candidates;
  for (int i = 0; i < F.m; ++i) {
    const ffelem w = static_cast<ffelem>(F.pow_p[static_cast<std::size_t>(i)]);
    std::vector<std::int8_t> row(D.size());
    for (std::size_t j = 0; j < D.size(); ++j) {
      row[j] = F.trace_mul[static_cast<std::size_t>(w) * F.q + D[j]];
    }
    candidates.push_back(std::move(row));
  }

  // Keep rows that increase the rank until k of them are found.
  std::vector<std::vector<std::int8_t>> out;
  for (const auto& row : candidates) {
    if (static_cast<int>(out.size()) == code.k) break;
    auto trial = out;
    trial.push_back(row);
    if (rank_mod_p(trial, F.p) == static_cast<int>(trial.size())) out.push_back(row);
  }
  require(static_cast<int>(out.size()) == code.k, Err::RankDeficient,
          "could not extract " + std::to_string(code.k) + " independent codeword rows");
  return out;
}

}  // namespace plateau
