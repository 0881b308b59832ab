#include "metazeta/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "metazeta/errors.hpp"
#include "metazeta/padic.hpp"

namespace metazeta {

// ---------------------------------------------------------------- ElementSet

std::size_t ElementSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

std::vector<Element> ElementSet::to_vector() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      out.push_back(static_cast<Element>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t ElementSet::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ------------------------------------------------------------- ConcreteGroup

namespace {

constexpr std::size_t kTableLimit = std::size_t{1} << 16;

void check_order(std::uint64_t order, const Limits& limits) {
  if (order > limits.max_order) {
    throw ResourceLimit("group order " + std::to_string(order) + " exceeds the oracle bound " +
                        std::to_string(limits.max_order));
  }
  if (order > kTableLimit) {
    throw ResourceLimit("group order " + std::to_string(order) + " exceeds the table limit");
  }
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

template <typename Op>
void ConcreteGroup::fill(std::size_t order, Op op) {
  order_ = order;
  table_.assign(order * order, 0);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      table_[a * order + b] = static_cast<std::uint16_t>(op(static_cast<Element>(a),
                                                            static_cast<Element>(b)));
    }
  }
  inverse_.assign(order, 0);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      if (table_[a * order + b] == 0) {
        inverse_[a] = static_cast<Element>(b);
        break;
      }
    }
  }
  element_order_.assign(order, 1);
  for (std::size_t a = 0; a < order; ++a) {
    Element x = static_cast<Element>(a);
    std::uint64_t o = 1;
    while (x != 0) {
      x = mul(x, static_cast<Element>(a));
      ++o;
    }
    element_order_[a] = o;
  }
}

std::uint64_t ConcreteGroup::exponent() const {
  std::uint64_t e = 1;
  for (auto o : element_order_) e = std::lcm(e, o);
  return e;
}

bool ConcreteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = a + 1; b < order_; ++b) {
      if (mul(static_cast<Element>(a), static_cast<Element>(b)) !=
          mul(static_cast<Element>(b), static_cast<Element>(a))) {
        return false;
      }
    }
  }
  return true;
}

ConcreteGroup::Coordinates ConcreteGroup::coordinates(Element e) const {
  Coordinates c;
  c.z = e % cofactor_;
  const std::uint64_t rest = e / cofactor_;
  c.y = rest % quotient_order_;
  c.x = rest / quotient_order_;
  return c;
}

nlohmann::json ConcreteGroup::to_json() const {
  nlohmann::json labels = nlohmann::json::array();
  for (std::size_t e = 0; e < order_; ++e) {
    const Coordinates c = coordinates(static_cast<Element>(e));
    labels.push_back({c.x, c.y, c.z});
  }
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t a = 0; a < order_; ++a) {
    rows.push_back(std::vector<std::uint16_t>(table_.begin() + static_cast<std::ptrdiff_t>(a * order_),
                                              table_.begin() + static_cast<std::ptrdiff_t>((a + 1) * order_)));
  }
  return nlohmann::json{{"name", name_},  {"order", order_},   {"prime", prime_},
                        {"cofactor", cofactor_}, {"labels", labels}, {"table", rows}};
}

ConcreteGroup build_metacyclic(std::uint64_t p, unsigned m, unsigned n, unsigned lambda,
                               std::uint64_t k, const Limits& limits) {
  const GroupBase base = GroupBase::make(p, m, n);
  const std::uint64_t hm = base.normal_order();
  const std::uint64_t kn = base.quotient_order();
  if (lambda > m) throw InvalidArgument("lambda must not exceed m");
  const std::uint64_t shift = padic::checked_pow(p, lambda) % hm;
  k %= hm;
  if (padic::mod_pow_u64(k, kn, hm) != 1 % hm || mulmod(shift, (k + hm - 1) % hm, hm) != 0) {
    throw InvalidArgument("metacyclic presentation is not valid");
  }
  check_order(hm * kn, limits);

  std::vector<std::uint64_t> kpow(kn);
  kpow[0] = 1 % hm;
  for (std::uint64_t y = 1; y < kn; ++y) kpow[y] = mulmod(kpow[y - 1], k, hm);

  ConcreteGroup g;
  g.prime_ = p;
  g.normal_order_ = hm;
  g.quotient_order_ = kn;
  g.name_ = "M(" + std::to_string(p) + "," + std::to_string(m) + "," + std::to_string(n) + "," +
            std::to_string(lambda) + "," + std::to_string(k) + ")";
  // (x1,y1)(x2,y2) = a^(x1 + k^y1 x2) b^(y1 + y2), folding b^(p^n) = a^shift.
  g.fill(static_cast<std::size_t>(hm * kn), [&](Element e1, Element e2) {
    const std::uint64_t x1 = e1 / kn, y1 = e1 % kn;
    const std::uint64_t x2 = e2 / kn, y2 = e2 % kn;
    std::uint64_t x = (x1 + mulmod(kpow[y1], x2, hm)) % hm;
    std::uint64_t y = y1 + y2;
    if (y >= kn) {
      y -= kn;
      x = (x + shift) % hm;
    }
    return static_cast<Element>(x * kn + y);
  });
  return g;
}

ConcreteGroup build_group(const GroupParams& params, const Limits& limits) {
  if (!is_valid(params)) throw InvalidArgument("G" + params.to_string() + " is not valid");
  ConcreteGroup g =
      build_metacyclic(params.p(), params.m(), params.n(), params.m(), params.k(), limits);
  g.params_ = params;
  g.name_ = "G" + params.to_string();
  return g;
}

ConcreteGroup build_cyclic(std::uint64_t p, std::uint64_t order, const Limits& limits) {
  padic::require_prime(p);
  std::uint64_t rest = order;
  while (rest % p == 0) rest /= p;
  if (order == 0 || rest != 1) throw InvalidArgument("cyclic order must be a power of p");
  check_order(order, limits);
  ConcreteGroup g;
  g.prime_ = p;
  g.normal_order_ = order;
  g.quotient_order_ = 1;
  g.name_ = "Z" + std::to_string(order);
  g.fill(static_cast<std::size_t>(order),
         [order](Element a, Element b) { return static_cast<Element>((a + b) % order); });
  return g;
}

ConcreteGroup direct_product(const ConcreteGroup& g, std::uint64_t q, const Limits& limits) {
  if (q == 0 || std::gcd(q, g.prime()) != 1 || std::gcd(q, g.cofactor()) != 1) {
    throw InvalidArgument("cofactor order must be coprime to the group order");
  }
  check_order(g.order() * q, limits);
  ConcreteGroup out;
  out.prime_ = g.prime_;
  out.cofactor_ = g.cofactor_ * q;
  out.normal_order_ = g.normal_order_;
  out.quotient_order_ = g.quotient_order_;
  out.params_ = g.params_;
  out.name_ = g.name_ + "xZ" + std::to_string(q);
  // id = old_id * q + z keeps the (x, y, z) decoding of coordinates() intact.
  out.fill(g.order() * q, [&](Element e1, Element e2) {
    const Element prod = g.mul(static_cast<Element>(e1 / q), static_cast<Element>(e2 / q));
    return static_cast<Element>(prod * q + (e1 % q + e2 % q) % q);
  });
  return out;
}

// --------------------------------------------------------------- enumeration

ElementSet closure(const ConcreteGroup& g, const std::vector<Element>& generators) {
  ElementSet set(g.order());
  std::vector<Element> queue{g.identity()};
  set.insert(g.identity());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element h = queue[head];
    for (const Element x : generators) {
      const Element y = g.mul(h, x);
      if (!set.contains(y)) {
        set.insert(y);
        queue.push_back(y);
      }
    }
  }
  return set;
}

bool is_subgroup(const ConcreteGroup& g, const ElementSet& s) {
  if (!s.contains(g.identity())) return false;
  const auto elems = s.to_vector();
  for (const Element a : elems) {
    if (!s.contains(g.inverse(a))) return false;
    for (const Element b : elems) {
      if (!s.contains(g.mul(a, b))) return false;
    }
  }
  return true;
}

namespace {

struct Candidate {
  ElementSet members;
  std::vector<Element> generators;
};

class Enumerator {
 public:
  Enumerator(const ConcreteGroup& g, const Limits& limits) : g_(g), limits_(limits) {}

  SubgroupSet run(bool parallel) {
    seed_cyclic();
    std::vector<std::size_t> frontier(found_.size());
    std::iota(frontier.begin(), frontier.end(), 0);
    while (!frontier.empty()) {
      std::vector<std::vector<Candidate>> results(frontier.size());
      const auto count = static_cast<std::ptrdiff_t>(frontier.size());
      if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
          results[static_cast<std::size_t>(idx)] = joins_of(frontier[static_cast<std::size_t>(idx)]);
        }
      } else {
        for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
          results[static_cast<std::size_t>(idx)] = joins_of(frontier[static_cast<std::size_t>(idx)]);
        }
      }
      frontier.clear();
      for (auto& batch : results) {
        for (auto& c : batch) {
          if (add(std::move(c.members), std::move(c.generators))) frontier.push_back(found_.size() - 1);
        }
      }
    }
    return finish();
  }

 private:
  // Joins of subgroup `idx` with every cyclic subgroup not already inside it.
  // Only reads shared state, so rounds can run these concurrently.
  std::vector<Candidate> joins_of(std::size_t idx) const {
    std::vector<Candidate> out;
    const Candidate& a = found_[idx];
    std::unordered_set<ElementSet, ElementSetHash> local;
    for (const Element x : cyclic_generators_) {
      if (a.members.contains(x)) continue;
      std::vector<Element> gens = a.generators;
      gens.push_back(x);
      ElementSet joined = closure(g_, gens);
      if (index_.count(joined) != 0 || !local.insert(joined).second) continue;
      out.push_back({std::move(joined), std::move(gens)});
    }
    return out;
  }

  void seed_cyclic() {
    add(closure(g_, {}), {});
    for (std::size_t e = 1; e < g_.order(); ++e) {
      const auto x = static_cast<Element>(e);
      if (add(closure(g_, {x}), {x})) cyclic_generators_.push_back(x);
    }
  }

  bool add(ElementSet members, std::vector<Element> generators) {
    if (index_.count(members) != 0) return false;
    if (found_.size() >= limits_.max_subgroups) {
      throw ResourceLimit("subgroup count exceeds the bound " +
                          std::to_string(limits_.max_subgroups) + " for " + g_.name());
    }
    index_.emplace(members, found_.size());
    found_.push_back({std::move(members), std::move(generators)});
    return true;
  }

  SubgroupSet finish() {
    SubgroupSet out;
    out.subgroups.reserve(found_.size());
    for (auto& c : found_) {
      Subgroup s;
      s.elements = c.members.to_vector();
      s.members = std::move(c.members);
      s.generators = std::move(c.generators);
      out.subgroups.push_back(std::move(s));
    }
    std::sort(out.subgroups.begin(), out.subgroups.end(), [](const Subgroup& x, const Subgroup& y) {
      if (x.order() != y.order()) return x.order() < y.order();
      return x.elements < y.elements;
    });
    return out;
  }

  const ConcreteGroup& g_;
  Limits limits_;
  std::vector<Candidate> found_;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index_;
  std::vector<Element> cyclic_generators_;
};

}  // namespace

SubgroupSet enumerate_subgroups(const ConcreteGroup& g, const Limits& limits) {
  return Enumerator(g, limits).run(true);
}

SubgroupSet enumerate_subgroups_serial(const ConcreteGroup& g, const Limits& limits) {
  return Enumerator(g, limits).run(false);
}

std::vector<BigInt> subgroup_counts(const ConcreteGroup& g, const SubgroupSet& s) {
  if (g.cofactor() != 1) throw InvalidArgument("subgroup_counts needs a p-group");
  unsigned ell = 0;
  for (std::size_t o = 1; o < g.order(); o *= g.prime()) ++ell;
  std::vector<BigInt> counts(ell + 1);
  for (const auto& h : s.subgroups) {
    unsigned t = 0;
    for (std::size_t o = h.order(); o > 1; o /= g.prime()) ++t;
    counts[t] += 1;
  }
  return counts;
}

std::vector<BigInt> subgroup_counts(const ConcreteGroup& g, const Limits& limits) {
  return subgroup_counts(g, enumerate_subgroups(g, limits));
}

DirichletSeries subgroup_series(const SubgroupSet& s) {
  DirichletSeries out;
  for (const auto& h : s.subgroups) out[h.order()] += 1;
  return out;
}

// ------------------------------------------------------------- Omega profile

std::string QuotientShape::to_string() const {
  switch (kind) {
    case Kind::trivial: return "trivial";
    case Kind::cyclic: return "cyclic(" + std::to_string(c) + ")";
    case Kind::dihedral: return "D(" + std::to_string(c) + ")";
    case Kind::quaternion: return "Q(" + std::to_string(c) + ")";
    case Kind::semidihedral: return "SD(" + std::to_string(c) + ")";
    case Kind::other: return "other(" + std::to_string(c) + ")";
  }
  return "?";
}

namespace {

unsigned log2_exact(std::uint64_t v) { return static_cast<unsigned>(std::countr_zero(v)); }

QuotientShape classify_quotient(const ConcreteGroup& g, const ElementSet& r) {
  // Coset id of x = least element of x R.
  const auto r_elems = r.to_vector();
  std::vector<Element> coset(g.order());
  std::vector<Element> reps;
  for (std::size_t e = 0; e < g.order(); ++e) {
    Element best = static_cast<Element>(e);
    for (const Element x : r_elems) best = std::min(best, g.mul(static_cast<Element>(e), x));
    coset[e] = best;
    if (best == e) reps.push_back(best);
  }
  const std::size_t q = reps.size();
  QuotientShape shape;
  shape.c = log2_exact(q);
  if (q == 1) return shape;

  std::vector<std::uint64_t> order(q);
  std::unordered_map<Element, std::size_t> rep_index;
  for (std::size_t i = 0; i < q; ++i) rep_index[reps[i]] = i;
  std::size_t involutions = 0;
  std::uint64_t max_order = 1;
  for (std::size_t i = 0; i < q; ++i) {
    Element x = reps[i];
    std::uint64_t o = 1;
    while (coset[x] != 0) {
      x = g.mul(x, reps[i]);
      ++o;
    }
    order[i] = o;
    if (o == 2) ++involutions;
    max_order = std::max(max_order, o);
  }
  if (max_order == q) {
    shape.kind = QuotientShape::Kind::cyclic;
    return shape;
  }
  bool abelian = true;
  for (std::size_t i = 0; i < q && abelian; ++i) {
    for (std::size_t j = i + 1; j < q; ++j) {
      if (coset[g.mul(reps[i], reps[j])] != coset[g.mul(reps[j], reps[i])]) {
        abelian = false;
        break;
      }
    }
  }
  shape.kind = QuotientShape::Kind::other;
  if (abelian || shape.c < 3 || max_order != q / 2) return shape;
  // Nonabelian with a cyclic maximal subgroup: D, Q, SD or the modular group,
  // told apart by their involution counts.
  const unsigned c = shape.c;
  if (involutions == (std::size_t{1} << (c - 1)) + 1) {
    shape.kind = QuotientShape::Kind::dihedral;
  } else if (involutions == 1) {
    shape.kind = QuotientShape::Kind::quaternion;
  } else if (c >= 4 && involutions == (std::size_t{1} << (c - 2)) + 1) {
    shape.kind = QuotientShape::Kind::semidihedral;
  }
  return shape;
}

}  // namespace

OmegaProfile omega_profile(const ConcreteGroup& g) {
  if (g.prime() != 2 || g.cofactor() != 1) throw InvalidArgument("omega_profile needs a 2-group");
  OmegaProfile prof;
  prof.ell = log2_exact(g.order());
  prof.omega_sizes.assign(prof.ell + 1, 0);
  for (std::size_t e = 0; e < g.order(); ++e) {
    const unsigned lo = log2_exact(g.element_order(static_cast<Element>(e)));
    for (unsigned i = lo; i <= prof.ell; ++i) ++prof.omega_sizes[i];
  }
  for (unsigned i = 0; i <= prof.ell; ++i) {
    if (2 * i < 64 && prof.omega_sizes[i] == (std::uint64_t{1} << (2 * i))) prof.w = i;
  }
  prof.r = ElementSet(g.order());
  for (std::size_t e = 0; e < g.order(); ++e) {
    if (log2_exact(g.element_order(static_cast<Element>(e))) <= prof.w) {
      prof.r.insert(static_cast<Element>(e));
    }
  }
  if (!is_subgroup(g, prof.r)) {
    throw InternalInconsistency("Omega_" + std::to_string(prof.w) + " of " + g.name() +
                                " is not a subgroup");
  }
  prof.quotient = classify_quotient(g, prof.r);
  return prof;
}

std::optional<BerkovichShape> detect_shape(const OmegaProfile& profile) {
  using Kind = QuotientShape::Kind;
  const QuotientShape& q = profile.quotient;
  auto family = [](Kind k) {
    switch (k) {
      case Kind::quaternion: return MaximalClassFamily::quaternion;
      case Kind::semidihedral: return MaximalClassFamily::semidihedral;
      default: return MaximalClassFamily::dihedral;
    }
  };
  const bool maximal = q.kind == Kind::dihedral || q.kind == Kind::quaternion ||
                       q.kind == Kind::semidihedral;
  if (profile.w == 0) {
    if (q.kind == Kind::trivial) return shape::Cyclic{0};
    if (q.kind == Kind::cyclic) return shape::Cyclic{q.c};
    if (maximal) return shape::MaximalClass{family(q.kind), q.c};
    return std::nullopt;
  }
  if (q.kind == Kind::trivial) return shape::FullOmega{profile.w};
  if (q.kind == Kind::cyclic) return shape::CyclicQuotient{profile.w, q.c};
  if (maximal) return shape::MaximalClassQuotient{profile.w, family(q.kind), q.c};
  return std::nullopt;
}

// ------------------------------------------------------------ cocycle census

CocycleCensus cocycle_subgroup_census(const ConcreteGroup& g, const SubgroupSet& s) {
  if (!g.params() || g.cofactor() != 1) {
    throw InvalidArgument("census needs a split metacyclic group built from parameters");
  }
  const std::uint64_t p = g.prime();
  auto log_p = [p](std::uint64_t v) {
    unsigned t = 0;
    for (; v > 1; v /= p) ++t;
    return t;
  };
  CocycleCensus census;
  for (const auto& h : s.subgroups) {
    std::uint64_t in_normal = 0;
    std::vector<std::uint64_t> image;
    for (const Element e : h.elements) {
      const auto c = g.coordinates(e);
      if (c.y == 0) ++in_normal;
      image.push_back(c.y);
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    census[{log_p(in_normal), log_p(image.size())}] += 1;
  }
  return census;
}

CocycleCensus cocycle_subgroup_census(const GroupParams& params, const Limits& limits) {
  const ConcreteGroup g = build_group(params, limits);
  return cocycle_subgroup_census(g, enumerate_subgroups(g, limits));
}

nlohmann::json export_subgroups(const SubgroupSet& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& h : s.subgroups) {
    out.push_back({{"order", h.order()}, {"elements", h.elements}, {"generators", h.generators}});
  }
  return out;
}

}  // namespace metazeta
