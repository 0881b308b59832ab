#pragma once

// Brute-force ground truth: explicit groups, complete subgroup enumeration,
// Omega-series data and coprime direct products. Nothing here uses the
// closed formulas from zeta.hpp.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "metazeta/bigint.hpp"
#include "metazeta/config.hpp"
#include "metazeta/group_model.hpp"
#include "metazeta/zeta.hpp"

namespace metazeta {

using Element = std::uint32_t;

// Fixed-size bitset over element ids.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}

  void insert(Element e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  bool contains(Element e) const { return (words_[e >> 6] >> (e & 63)) & 1U; }
  std::size_t count() const;
  bool is_subset_of(const ElementSet& other) const;
  std::vector<Element> to_vector() const;
  std::size_t hash() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

// A finite group given by its Cayley table. Elements are ids in [0, order);
// id 0 is the identity. For the metacyclic constructions an id encodes
// coordinates (x, y, z) as (x * |K| + y) * q + z, i.e. a^x b^y times the
// generator of the coprime cyclic factor raised to z.
class ConcreteGroup {
 public:
  std::size_t order() const { return order_; }
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return table_[std::size_t{a} * order_ + b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  std::uint64_t element_order(Element a) const { return element_order_[a]; }
  std::uint64_t exponent() const;
  bool is_abelian() const;

  // Prime of the p-part (the whole group when cofactor() == 1).
  std::uint64_t prime() const { return prime_; }
  std::uint64_t cofactor() const { return cofactor_; }
  const std::optional<GroupParams>& params() const { return params_; }
  const std::string& name() const { return name_; }

  struct Coordinates {
    std::uint64_t x = 0;  // exponent of a
    std::uint64_t y = 0;  // exponent of b
    std::uint64_t z = 0;  // cofactor coordinate
  };
  Coordinates coordinates(Element e) const;

  // Cayley table and element labels for external verification.
  nlohmann::json to_json() const;

  friend ConcreteGroup build_group(const GroupParams&, const Limits&);
  friend ConcreteGroup build_metacyclic(std::uint64_t, unsigned, unsigned, unsigned,
                                        std::uint64_t, const Limits&);
  friend ConcreteGroup build_cyclic(std::uint64_t, std::uint64_t, const Limits&);
  friend ConcreteGroup direct_product(const ConcreteGroup&, std::uint64_t, const Limits&);

 private:
  template <typename Op>
  void fill(std::size_t order, Op op);

  std::size_t order_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<Element> inverse_;
  std::vector<std::uint64_t> element_order_;
  std::uint64_t prime_ = 2;
  std::uint64_t cofactor_ = 1;
  std::uint64_t normal_order_ = 1;    // |H|
  std::uint64_t quotient_order_ = 1;  // |K|
  std::optional<GroupParams> params_;
  std::string name_;
};

// G(p,m,n,k) as an explicit semidirect product.
ConcreteGroup build_group(const GroupParams& params, const Limits& limits = {});

// Metacyclic group <a, b | a^(p^m) = 1, b^(p^n) = a^(p^lambda), b a b^-1 = a^k>,
// used for non-split fixtures such as generalized quaternion groups.
// lambda == m gives the split group.
ConcreteGroup build_metacyclic(std::uint64_t p, unsigned m, unsigned n, unsigned lambda,
                               std::uint64_t k, const Limits& limits = {});

// Cyclic group of order p^ell (pass the prime so the group knows its p-part).
ConcreteGroup build_cyclic(std::uint64_t p, std::uint64_t order, const Limits& limits = {});

// g x Z_q with gcd(q, p) = 1.
ConcreteGroup direct_product(const ConcreteGroup& g, std::uint64_t q, const Limits& limits = {});

struct Subgroup {
  ElementSet members;
  std::vector<Element> elements;    // ascending
  std::vector<Element> generators;  // a generating set found during enumeration
  std::size_t order() const { return elements.size(); }
};

// All subgroups, ordered by (order, ascending element list).
struct SubgroupSet {
  std::vector<Subgroup> subgroups;
  std::size_t size() const { return subgroups.size(); }
};

// Fixpoint join-closure from the cyclic subgroups. The serial routine is the
// reference; the default routine parallelizes each round's joins with OpenMP
// and merges them in a fixed order, so both return identical sets.
SubgroupSet enumerate_subgroups(const ConcreteGroup& g, const Limits& limits = {});
SubgroupSet enumerate_subgroups_serial(const ConcreteGroup& g, const Limits& limits = {});

// Subgroup generated by the given elements.
ElementSet closure(const ConcreteGroup& g, const std::vector<Element>& generators);
bool is_subgroup(const ConcreteGroup& g, const ElementSet& s);

// counts[t] = number of subgroups of order p^t; the group must be a p-group.
std::vector<BigInt> subgroup_counts(const ConcreteGroup& g, const SubgroupSet& s);
std::vector<BigInt> subgroup_counts(const ConcreteGroup& g, const Limits& limits = {});
// Order -> count for any group.
DirichletSeries subgroup_series(const SubgroupSet& s);

struct QuotientShape {
  enum class Kind { trivial, cyclic, dihedral, quaternion, semidihedral, other };
  Kind kind = Kind::trivial;
  unsigned c = 0;  // log2 of the quotient order
  std::string to_string() const;
};

struct OmegaProfile {
  std::vector<std::uint64_t> omega_sizes;  // |Omega_i| for i = 0 .. log2|G|
  unsigned w = 0;
  ElementSet r;  // Omega_w
  QuotientShape quotient;
  unsigned ell = 0;  // log2|G|
};

// Throws InternalInconsistency when Omega_w is not a subgroup.
OmegaProfile omega_profile(const ConcreteGroup& g);

// Closed-formula shape implied by the profile, or nullopt when G/R is "other".
std::optional<BerkovichShape> detect_shape(const OmegaProfile& profile);

// (i, j) -> number of subgroups T with |T n H| = p^i and |pi(T)| = p^j.
using CocycleCensus = std::map<std::pair<unsigned, unsigned>, std::uint64_t>;
CocycleCensus cocycle_subgroup_census(const ConcreteGroup& g, const SubgroupSet& s);
CocycleCensus cocycle_subgroup_census(const GroupParams& params, const Limits& limits = {});

nlohmann::json export_subgroups(const SubgroupSet& s);

}  // namespace metazeta
