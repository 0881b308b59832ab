#include "metazeta/zeta.hpp"

#include <algorithm>

#include "metazeta/errors.hpp"

namespace metazeta {

namespace {

void check_indices(const GroupParams& params, unsigned i, unsigned j) {
  if (i > params.m() || j > params.n()) {
    throw InvalidArgument("index (i,j) = (" + std::to_string(i) + "," + std::to_string(j) +
                          ") out of range for " + params.to_string());
  }
}

std::uint64_t u_unchecked(const GroupParams& params, unsigned i, unsigned j) {
  if (i == params.m()) return 0;
  const std::uint64_t p = params.p();
  const std::uint64_t modulus = padic::checked_pow(p, params.m() - i);
  return padic::mod_pow_u64(params.k(), padic::checked_pow(p, params.n() - j), modulus);
}

unsigned kernel_log_unchecked(const GroupParams& params, unsigned i, unsigned j) {
  const unsigned r = params.m() - i;
  if (r == 0) return 0;  // M_m is trivial
  if (params.p() != 2) return std::min(r, j);
  const std::uint64_t u = u_unchecked(params, i, j);
  if (u == 1) return std::min(r, j);  // u is reduced below 2^r, so u == 1 mod 2^r iff u == 1
  // u + 1 <= 2^r, so its valuation already carries the min(r, .) cap.
  const unsigned s = padic::vp(2, BigInt(u) + 1).value();
  return std::min(r, s + j - 1);
}

BigInt pow_big(std::uint64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

}  // namespace

nlohmann::json ZetaCoefficients::to_json() const {
  std::vector<std::string> decimal;
  decimal.reserve(counts.size());
  for (const auto& c : counts) decimal.push_back(c.str());
  return nlohmann::json{{"p", base.p}, {"m", base.m}, {"n", base.n}, {"counts", decimal}};
}

std::uint64_t u_ij(const GroupParams& params, unsigned i, unsigned j) {
  require_valid(params);
  check_indices(params, i, j);
  return u_unchecked(params, i, j);
}

unsigned kernel_log(const GroupParams& params, unsigned i, unsigned j) {
  require_valid(params);
  check_indices(params, i, j);
  return kernel_log_unchecked(params, i, j);
}

KernelProfile kernel_profile(const GroupParams& params, unsigned i, unsigned j) {
  require_valid(params);
  check_indices(params, i, j);
  return {i, j, u_unchecked(params, i, j), kernel_log_unchecked(params, i, j)};
}

ZetaCoefficients coefficients(const GroupParams& params) {
  return coefficients(params, [](const GroupParams& g, unsigned i, unsigned j) {
    return kernel_log_unchecked(g, i, j);
  });
}

ZetaCoefficients coefficients(const GroupParams& params, const KernelLogFn& kernel) {
  require_valid(params);
  const unsigned m = params.m();
  const unsigned n = params.n();
  ZetaCoefficients out{params.base(), std::vector<BigInt>(m + n + 1)};
  for (unsigned t = 0; t <= m + n; ++t) {
    const unsigned lo = t > n ? t - n : 0;
    const unsigned hi = std::min(t, m);
    BigInt sum = 0;
    for (unsigned i = lo; i <= hi; ++i) sum += pow_big(params.p(), kernel(params, i, t - i));
    out.counts[t] = sum;
  }
  return out;
}

TwoAdicSignature two_adic_signature(const GroupParams& params) {
  if (params.p() != 2) throw InvalidArgument("two-adic signature needs p = 2");
  require_valid(params);
  const BigInt k(params.k());
  TwoAdicSignature sig;
  sig.s2 = padic::vp(2, k + 1);
  const padic::Valuation minus = padic::vp(2, k - 1);
  sig.cprime = minus.is_infinite() ? params.m() : std::min(params.m(), minus.value());
  sig.sigma = sig.s2.value() + params.n() - 1;
  return sig;
}

std::vector<unsigned> e_sequence(const GroupParams& params) {
  const TwoAdicSignature sig = two_adic_signature(params);
  const unsigned m = params.m();
  std::vector<unsigned> e(m);
  for (unsigned i = 0; i < m; ++i) {
    const unsigned cap = sig.cprime <= m ? m - sig.cprime : 0;
    e[i] = i >= cap ? std::min(m - i, params.n()) : std::min(m - i, sig.sigma);
  }
  return e;
}

bool zeta_equal_by_theorem(const GroupParams& a, const GroupParams& b) {
  if (!(a.base() == b.base())) {
    throw InvalidArgument("parameters " + a.to_string() + " and " + b.to_string() +
                          " have different (p,m,n)");
  }
  require_valid(a);
  require_valid(b);
  if (a.p() != 2 || a.n() >= a.m()) return true;
  const unsigned threshold = a.m() - a.n();
  const unsigned s1 = two_adic_signature(a).s2.value();
  const unsigned s2 = two_adic_signature(b).s2.value();
  return (s1 == s2 && s1 <= threshold) || std::min(s1, s2) > threshold;
}

std::vector<BigInt> quasiregular_counts(std::uint64_t p, unsigned ell, unsigned e) {
  padic::require_prime(p);
  if (p < 3) throw InvalidArgument("quasi-regular counts need an odd prime");
  if (e < 1 || e >= ell) throw InvalidArgument("need 1 <= e < ell");
  const unsigned f = ell - e;
  auto geometric = [p](unsigned top) { return (pow_big(p, top) - 1) / (p - 1); };
  std::vector<BigInt> out(ell + 1);
  for (unsigned t = 0; t <= ell; ++t) {
    if (t <= f) {
      out[t] = geometric(t + 1);
    } else if (t <= e) {
      out[t] = geometric(f + 1);
    } else {
      out[t] = geometric(ell - t + 1);
    }
  }
  return out;
}

std::string to_string(MaximalClassFamily f) {
  switch (f) {
    case MaximalClassFamily::dihedral: return "D";
    case MaximalClassFamily::quaternion: return "Q";
    case MaximalClassFamily::semidihedral: return "SD";
  }
  return "?";
}

std::string to_string(const BerkovichShape& s) {
  struct Visitor {
    std::string operator()(const shape::Cyclic& c) const {
      return "cyclic(" + std::to_string(c.ell) + ")";
    }
    std::string operator()(const shape::MaximalClass& c) const {
      return "maximal-class(" + to_string(c.family) + "," + std::to_string(c.ell) + ")";
    }
    std::string operator()(const shape::FullOmega& c) const {
      return "R=G(w=" + std::to_string(c.w) + ")";
    }
    std::string operator()(const shape::CyclicQuotient& c) const {
      return "cyclic-quotient(w=" + std::to_string(c.w) + ",c=" + std::to_string(c.c) + ")";
    }
    std::string operator()(const shape::MaximalClassQuotient& c) const {
      return "maximal-class-quotient(w=" + std::to_string(c.w) + "," + to_string(c.family) + "," +
             std::to_string(c.c) + ")";
    }
  };
  return std::visit(Visitor{}, s);
}

namespace {

BigInt two_pow(unsigned e) { return BigInt(1) << e; }

std::vector<BigInt> counts_for(const shape::Cyclic& s) {
  return std::vector<BigInt>(s.ell + 1, BigInt(1));
}

std::vector<BigInt> counts_for(const shape::MaximalClass& s) {
  const unsigned ell = s.ell;
  const unsigned min_ell = s.family == MaximalClassFamily::semidihedral ? 4 : 3;
  if (ell < min_ell) throw InvalidArgument("maximal-class shape needs a larger order");
  std::vector<BigInt> out(ell + 1);
  out[0] = 1;
  out[ell] = 1;
  for (unsigned t = 2; t < ell; ++t) out[t] = two_pow(ell - t) + 1;
  switch (s.family) {
    case MaximalClassFamily::dihedral: out[1] = two_pow(ell - 1) + 1; break;
    case MaximalClassFamily::quaternion: out[1] = 1; break;
    case MaximalClassFamily::semidihedral: out[1] = two_pow(ell - 2) + 1; break;
  }
  return out;
}

std::vector<BigInt> counts_for(const shape::FullOmega& s) {
  if (s.w < 1) throw InvalidArgument("R = G shape needs w >= 1");
  std::vector<BigInt> out(2 * s.w + 1);
  for (unsigned t = 0; t <= 2 * s.w; ++t) {
    out[t] = t <= s.w ? two_pow(t + 1) - 1 : two_pow(2 * s.w - t + 1) - 1;
  }
  return out;
}

std::vector<BigInt> counts_for(const shape::CyclicQuotient& s) {
  if (s.w < 1 || s.c < 1) throw InvalidArgument("cyclic-quotient shape needs w, c >= 1");
  const unsigned ell = 2 * s.w + s.c;
  std::vector<BigInt> out(ell + 1);
  for (unsigned t = 0; t <= ell; ++t) {
    if (t <= s.w) {
      out[t] = two_pow(t + 1) - 1;
    } else if (t < s.w + s.c) {
      out[t] = two_pow(s.w + 1) - 1;
    } else {
      out[t] = two_pow(ell - t + 1) - 1;
    }
  }
  return out;
}

std::vector<BigInt> counts_for(const shape::MaximalClassQuotient& s) {
  throw UnsupportedCase("no closed formula for " + to_string(BerkovichShape{s}) +
                        "; use the oracle");
}

}  // namespace

std::vector<BigInt> berkovich_counts(const BerkovichShape& s) {
  return std::visit([](const auto& v) { return counts_for(v); }, s);
}

DirichletSeries dirichlet_multiply(const DirichletSeries& a, const DirichletSeries& b) {
  DirichletSeries out;
  for (const auto& [da, ca] : a) {
    if (ca == 0) continue;
    for (const auto& [db, cb] : b) {
      if (cb == 0) continue;
      out[da * db] += ca * cb;
    }
  }
  return out;
}

DirichletSeries to_series(std::uint64_t p, const std::vector<BigInt>& counts) {
  DirichletSeries out;
  std::uint64_t order = 1;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] != 0) out[order] = counts[t];
    if (t + 1 < counts.size()) order = order * p;
  }
  return out;
}

}  // namespace metazeta
