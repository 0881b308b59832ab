#pragma once

// Closed-form subgroup counts for G(p,m,n,k).
//
// A subgroup T is determined by A = T n H (order p^i), B = pi(T) (order p^j)
// and a 1-cocycle B_j -> M_i = H/A_i. The cocycles are in bijection with the
// kernel of the norm map N_ij = 1 + T + ... + T^(p^j - 1) on Z/p^(m-i), where T
// multiplies by u_ij = k^(p^(n-j)) mod p^(m-i). Hence
//
//   a_{p^t} = sum_{i=max(0,t-n)}^{min(t,m)} |Ker N_{i,t-i}|.

#include <cstdint>
#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "json.hpp"
#include "metazeta/bigint.hpp"
#include "metazeta/group_model.hpp"
#include "metazeta/padic.hpp"

namespace metazeta {

// Subgroup counts by order: counts[t] = a_{p^t}.
struct ZetaCoefficients {
  GroupBase base;
  std::vector<BigInt> counts;

  friend bool operator==(const ZetaCoefficients&, const ZetaCoefficients&) = default;
  nlohmann::json to_json() const;
};

struct KernelProfile {
  unsigned i = 0;
  unsigned j = 0;
  std::uint64_t u = 0;
  unsigned kernel_log = 0;
};

struct TwoAdicSignature {
  padic::Valuation s2;  // v_2(k + 1)
  unsigned cprime = 0;  // min(m, v_2(k - 1))
  unsigned sigma = 0;   // s2 + n - 1
};

// Signature of log_p |Ker N_ij| so tests can inject faults into coefficients().
using KernelLogFn = std::function<unsigned(const GroupParams&, unsigned i, unsigned j)>;

std::uint64_t u_ij(const GroupParams& params, unsigned i, unsigned j);
unsigned kernel_log(const GroupParams& params, unsigned i, unsigned j);
KernelProfile kernel_profile(const GroupParams& params, unsigned i, unsigned j);

ZetaCoefficients coefficients(const GroupParams& params);
ZetaCoefficients coefficients(const GroupParams& params, const KernelLogFn& kernel);

TwoAdicSignature two_adic_signature(const GroupParams& params);

// (E_0(k), ..., E_{m-1}(k)) for p = 2, from the 2-adic signature alone.
std::vector<unsigned> e_sequence(const GroupParams& params);

// Zeta equality decided from (m, n, v_2(k1+1), v_2(k2+1)) without computing counts.
bool zeta_equal_by_theorem(const GroupParams& a, const GroupParams& b);

// Uniform counts for a quasi-regular metacyclic p-group of order p^ell, exponent p^e.
std::vector<BigInt> quasiregular_counts(std::uint64_t p, unsigned ell, unsigned e);

// Metacyclic 2-group shapes with a closed subgroup-count formula.
enum class MaximalClassFamily { dihedral, quaternion, semidihedral };
std::string to_string(MaximalClassFamily f);

namespace shape {
struct Cyclic {
  unsigned ell = 0;
};
struct MaximalClass {
  MaximalClassFamily family = MaximalClassFamily::dihedral;
  unsigned ell = 3;
};
struct FullOmega {  // w > 0 and R = G, |G| = 2^(2w)
  unsigned w = 1;
};
struct CyclicQuotient {  // w > 0 and G/R cyclic of order 2^c
  unsigned w = 1;
  unsigned c = 1;
};
struct MaximalClassQuotient {  // w > 0 and G/R of maximal class; no closed formula here
  unsigned w = 1;
  MaximalClassFamily family = MaximalClassFamily::dihedral;
  unsigned c = 3;
};
}  // namespace shape

using BerkovichShape = std::variant<shape::Cyclic, shape::MaximalClass, shape::FullOmega,
                                    shape::CyclicQuotient, shape::MaximalClassQuotient>;
std::string to_string(const BerkovichShape& s);

// Throws UnsupportedCase for MaximalClassQuotient.
std::vector<BigInt> berkovich_counts(const BerkovichShape& s);

// Sparse Dirichlet coefficients: order -> number of subgroups of that order.
using DirichletSeries = std::map<std::uint64_t, BigInt>;

DirichletSeries dirichlet_multiply(const DirichletSeries& a, const DirichletSeries& b);
DirichletSeries to_series(std::uint64_t p, const std::vector<BigInt>& counts);

}  // namespace metazeta
