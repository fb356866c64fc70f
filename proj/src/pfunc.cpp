#include "plateau/pfunc.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace plateau {

namespace {

int pow_mod_p(int base, long long e, int p) {
  long long r = 1, b = base % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

ffelem frob_iter(const FieldCtx& F, ffelem x, int k) {
  for (int i = 0; i < k; ++i) x = F.frob_table[static_cast<std::size_t>(x)];
  return x;
}

ffelem linearized_image(const FieldCtx& F, const std::vector<ffelem>& coeffs, ffelem z) {
  ffelem acc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const ffelem ai = coeffs[i];
    if (ai == 0) continue;
    const int k = static_cast<int>(i);
    const int mk = (F.m - k) % F.m;
    const ffelem t1 = ff_mul(F, ai, frob_iter(F, z, k));
    const ffelem t2 = ff_mul(F, frob_iter(F, ai, mk), frob_iter(F, z, mk));
    acc = ff_add(F, acc, ff_add(F, t1, t2));
  }
  return acc;
}

int rank_of_columns(std::vector<std::vector<int>> cols, int p, int m) {
  int rank = 0;
  for (int row = 0; row < m && rank < static_cast<int>(cols.size()); ++row) {
    int pivot = -1;
    for (std::size_t j = static_cast<std::size_t>(rank); j < cols.size(); ++j) {
      if (cols[j][static_cast<std::size_t>(row)] != 0) {
        pivot = static_cast<int>(j);
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(cols[static_cast<std::size_t>(pivot)], cols[static_cast<std::size_t>(rank)]);
    const auto& lead = cols[static_cast<std::size_t>(rank)];
    const int inv = pow_mod_p(lead[static_cast<std::size_t>(row)], p - 2, p);
    for (std::size_t j = static_cast<std::size_t>(rank) + 1; j < cols.size(); ++j) {
      auto& col = cols[j];
      const int factor = col[static_cast<std::size_t>(row)] * inv % p;
      if (factor == 0) continue;
      for (int r = row; r < m; ++r) {
        col[static_cast<std::size_t>(r)] =
            ((col[static_cast<std::size_t>(r)] - factor * lead[static_cast<std::size_t>(r)]) % p +
             p) %
            p;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

PFunction from_table(const FieldCtx& F, const std::vector<int>& values) {
  require(static_cast<long long>(values.size()) == F.q, Err::BadLength,
          "value table needs exactly " + std::to_string(F.q) + " entries, got " +
              std::to_string(values.size()));
  PFunction f;
  f.ctx = &F;
  f.values.reserve(values.size());
  for (int v : values) {
    require(0 <= v && v < F.p, Err::BadEntry,
            "table entry " + std::to_string(v) + " is outside [0, p)");
    f.values.push_back(static_cast<std::int8_t>(v));
  }
  return f;
}

PFunction quadratic(const FieldCtx& F, const std::vector<ffelem>& coeffs) {
  const int ncoef = F.m / 2 + 1;
  require(static_cast<int>(coeffs.size()) == ncoef, Err::BadLength,
          "quadratic form over degree " + std::to_string(F.m) + " needs " +
              std::to_string(ncoef) + " coefficients, got " + std::to_string(coeffs.size()));
  for (ffelem a : coeffs) {
    require(0 <= a && a < F.q, Err::BadEntry, "coefficient encoding out of range");
  }

  PFunction f;
  f.ctx = &F;
  f.values.assign(static_cast<std::size_t>(F.q), 0);
  for (int i = 0; i < ncoef; ++i) {
    const ffelem ai = coeffs[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    const long long e = F.pow_p[static_cast<std::size_t>(i)] + 1;
    for (ffelem x = 1; x < F.q; ++x) {
      const ffelem mono = ff_mul(F, ai, ff_pow(F, x, e));
      auto& slot = f.values[static_cast<std::size_t>(x)];
      slot = static_cast<std::int8_t>((slot + trace(F, mono)) % F.p);
    }
  }
  f.provenance = QuadraticForm{coeffs};
  return f;
}

std::vector<ffelem> linearized_kernel(const PFunction& f) {
  require(f.provenance.has_value(), Err::NotQuadratic,
          "kernel computation needs quadratic provenance");
  const FieldCtx& F = *f.ctx;
  const auto& coeffs = f.provenance->coeffs;
  std::vector<ffelem> kernel;
  for (ffelem z = 0; z < F.q; ++z) {
    if (linearized_image(F, coeffs, z) == 0) kernel.push_back(z);
  }
  // The zero set of an additive map is a subspace, so its size is a power of p.
  long long sz = static_cast<long long>(kernel.size());
  while (sz % F.p == 0) sz /= F.p;
  require(sz == 1, Err::NotQuadratic, "kernel size is not a power of p");
  return kernel;
}

int linearized_kernel_dim(const PFunction& f) {
  const std::vector<ffelem> k = linearized_kernel(f);
  int dim = 0;
  long long sz = static_cast<long long>(k.size());
  while (sz > 1) {
    sz /= f.ctx->p;
    ++dim;
  }
  return dim;
}

int linearized_kernel_dim(const FieldCtx& F, const std::vector<ffelem>& coeffs) {
  require(static_cast<int>(coeffs.size()) == F.m / 2 + 1, Err::BadLength,
          "quadratic form over degree " + std::to_string(F.m) + " needs " +
              std::to_string(F.m / 2 + 1) + " coefficients, got " +
              std::to_string(coeffs.size()));
  for (ffelem a : coeffs) {
    require(0 <= a && a < F.q, Err::BadEntry, "coefficient encoding out of range");
  }
  std::vector<std::vector<int>> cols(static_cast<std::size_t>(F.m),
                                     std::vector<int>(static_cast<std::size_t>(F.m), 0));
  for (int j = 0; j < F.m; ++j) {
    const ffelem basis = static_cast<ffelem>(F.pow_p[static_cast<std::size_t>(j)]);
    const ffelem image = linearized_image(F, coeffs, basis);
    F.digits(image, cols[static_cast<std::size_t>(j)].data());
  }
  return F.m - rank_of_columns(std::move(cols), F.p, F.m);
}

std::vector<long long> value_census(const PFunction& f) {
  std::vector<long long> hist(static_cast<std::size_t>(f.ctx->p), 0);
  for (std::int8_t v : f.values) ++hist[static_cast<std::size_t>(v)];
  return hist;
}

bool is_balanced(const PFunction& f) {
  const std::vector<long long> hist = value_census(f);
  const long long want = f.ctx->q / f.ctx->p;
  for (long long h : hist) {
    if (h != want) return false;
  }
  return true;
}

WrpbCertificate check_wrpb_conditions(const PFunction& f, bool spectrum_balanced) {
  const FieldCtx& F = *f.ctx;
  WrpbCertificate cert;
  cert.f_of_zero_is_zero = (f(0) == 0);
  cert.balanced = is_balanced(f);
  require(cert.balanced == spectrum_balanced, Err::NotBalanced,
          "value census disagrees with the spectral balancedness flag");

  // Homogeneity f(ax) = a^t f(x): exponents only matter mod p-1, so even t
  // up to 2(p-1) covers every candidate.
  for (int t = 2; t <= 2 * (F.p - 1) && !cert.homogeneity_exponent_t; t += 2) {
    if (std::gcd(t - 1, F.p - 1) != 1) continue;
    bool ok = true;
    for (int a = 2; a < F.p && ok; ++a) {
      const int at = pow_mod_p(a, t, F.p);
      for (ffelem x = 0; x < F.q && ok; ++x) {
        const ffelem ax = ff_mul(F, static_cast<ffelem>(a), x);
        if (f(ax) != at * f(x) % F.p) ok = false;
      }
    }
    if (ok) cert.homogeneity_exponent_t = t;
  }

  cert.holds = cert.balanced && cert.f_of_zero_is_zero && cert.homogeneity_exponent_t.has_value();
  return cert;
}

LoadedFunction parse_function_stream(std::istream& in) {
  auto next_line = [&in](std::string& line) {
    while (std::getline(in, line)) {
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      if (line[b] == '#') continue;
      return true;
    }
    return false;
  };

  std::string header;
  require(next_line(header), Err::BadLength, "function file is empty");
  std::stringstream hs(header);
  int p = 0, m = 0;
  require(static_cast<bool>(hs >> p >> m), Err::BadEntry,
          "function file header must start with 'p m'");
  std::vector<int> mod;
  int c;
  while (hs >> c) mod.push_back(c);

  LoadedFunction out;
  out.field = std::make_shared<const FieldCtx>(mod.empty() ? build_field(p, m)
                                                           : build_field(p, m, mod));

  std::string body;
  require(next_line(body), Err::BadLength, "function file has no body line");
  const auto colon = body.find(':');
  require(colon != std::string::npos, Err::BadEntry,
          "body line must be 'quad: ...' or 'table: ...'");
  std::string tag = body.substr(0, colon);
  tag.erase(0, tag.find_first_not_of(" \t"));
  tag.erase(tag.find_last_not_of(" \t") + 1);
  std::stringstream bs(body.substr(colon + 1));

  if (tag == "quad") {
    std::vector<ffelem> coeffs;
    long long v;
    while (bs >> v) coeffs.push_back(static_cast<ffelem>(v));
    out.f = quadratic(*out.field, coeffs);
  } else if (tag == "table") {
    std::vector<int> values;
    int v;
    while (bs >> v) values.push_back(v);
    out.f = from_table(*out.field, values);
  } else {
    fail(Err::BadEntry, "unknown body tag '" + tag + "'");
  }
  return out;
}

LoadedFunction load_function_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Err::BadEntry, "cannot open function file '" + path + "'");
  return parse_function_stream(in);
}

std::string function_spec_string(const PFunction& f) {
  if (f.provenance) {
    std::string s = "quad:";
    for (ffelem a : f.provenance->coeffs) s += " " + std::to_string(a);
    return s;
  }
  return "table(" + std::to_string(f.values.size()) + " entries)";
}

}  // namespace plateau
