#include "metazeta/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "metazeta/errors.hpp"

namespace metazeta {

std::size_t SubgroupLattice::cover_count() const {
  std::size_t c = 0;
  for (const auto& u : up) c += u.size();
  return c;
}

std::vector<std::pair<NodeId, NodeId>> SubgroupLattice::covers() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId v = 0; v < up.size(); ++v) {
    for (const NodeId w : up[v]) out.emplace_back(v, w);
  }
  return out;
}

std::vector<std::size_t> SubgroupLattice::level_sizes() const {
  std::vector<std::size_t> sizes;
  for (const unsigned l : level) {
    if (l >= sizes.size()) sizes.resize(l + 1, 0);
    ++sizes[l];
  }
  return sizes;
}

nlohmann::json SubgroupLattice::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (NodeId v = 0; v < size(); ++v) {
    nodes.push_back({{"id", v}, {"order", orders[v]}, {"level", level[v]}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : covers()) edges.push_back({a, b});
  return nlohmann::json{{"nodes", nodes}, {"covers", edges}};
}

std::string SubgroupLattice::to_dot(const std::string& name) const {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  rankdir=BT;\n";
  for (NodeId v = 0; v < size(); ++v) {
    os << "  n" << v << " [label=\"" << v << ": " << orders[v] << "\"];\n";
  }
  for (const auto& [a, b] : covers()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

SubgroupLattice build_lattice(const SubgroupSet& s) {
  const std::size_t n = s.size();
  if (n == 0) throw InvalidArgument("empty subgroup set");
  SubgroupLattice l;
  l.orders.resize(n);
  l.up.assign(n, {});
  l.down.assign(n, {});
  for (std::size_t v = 0; v < n; ++v) l.orders[v] = s.subgroups[v].order();

  // contains[k] = proper subgroups of k. Subgroups are sorted by order, so
  // every proper subgroup of node k has a smaller index.
  std::vector<std::vector<NodeId>> below(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t h = 0; h < k; ++h) {
      if (s.subgroups[h].order() < s.subgroups[k].order() &&
          s.subgroups[k].order() % s.subgroups[h].order() == 0 &&
          s.subgroups[h].members.is_subset_of(s.subgroups[k].members)) {
        below[k].push_back(static_cast<NodeId>(h));
      }
    }
  }
  // h is covered by k iff no proper subgroup of k strictly contains h.
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<char> shadowed(n, 0);
    for (const NodeId mid : below[k]) {
      for (const NodeId h : below[mid]) shadowed[h] = 1;
    }
    for (const NodeId h : below[k]) {
      if (!shadowed[h]) {
        l.up[h].push_back(static_cast<NodeId>(k));
        l.down[k].push_back(h);
      }
    }
  }
  // Heights by longest cover chain from the bottom; node order is topological.
  l.level.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    for (const NodeId h : l.down[k]) l.level[k] = std::max(l.level[k], l.level[h] + 1);
  }
  return l;
}

bool is_order_isomorphism(const SubgroupLattice& l1, const SubgroupLattice& l2,
                          const std::vector<NodeId>& map) {
  if (l1.size() != l2.size() || map.size() != l1.size()) return false;
  if (l1.cover_count() != l2.cover_count()) return false;
  std::vector<char> hit(l2.size(), 0);
  for (const NodeId w : map) {
    if (w >= l2.size() || hit[w]) return false;
    hit[w] = 1;
  }
  for (const auto& [a, b] : l1.covers()) {
    const auto& ups = l2.up[map[a]];
    if (std::find(ups.begin(), ups.end(), map[b]) == ups.end()) return false;
  }
  return true;
}

namespace {

// Joint refinement over the disjoint union of both diagrams: node v of l2 is
// stored at offset + v. Colors are renumbered from sorted signatures, so equal
// colors mean equal structure on either side.
class IsomorphismSearch {
 public:
  IsomorphismSearch(const SubgroupLattice& l1, const SubgroupLattice& l2)
      : l1_(l1), l2_(l2), offset_(l1.size()) {
    const std::size_t total = l1.size() + l2.size();
    up_.resize(total);
    down_.resize(total);
    for (NodeId v = 0; v < l1.size(); ++v) {
      up_[v] = l1.up[v];
      down_[v] = l1.down[v];
    }
    for (NodeId v = 0; v < l2.size(); ++v) {
      for (const NodeId w : l2.up[v]) up_[offset_ + v].push_back(static_cast<NodeId>(offset_ + w));
      for (const NodeId w : l2.down[v]) down_[offset_ + v].push_back(static_cast<NodeId>(offset_ + w));
    }
  }

  std::optional<std::vector<NodeId>> run() {
    if (l1_.size() != l2_.size() || l1_.cover_count() != l2_.cover_count()) return std::nullopt;
    std::vector<std::uint32_t> colors(up_.size());
    {
      std::vector<std::vector<std::uint32_t>> sig(up_.size());
      for (std::size_t v = 0; v < up_.size(); ++v) {
        const unsigned lvl = v < offset_ ? l1_.level[v] : l2_.level[v - offset_];
        sig[v] = {lvl, static_cast<std::uint32_t>(up_[v].size()),
                  static_cast<std::uint32_t>(down_[v].size())};
      }
      colors = renumber(sig);
    }
    return search(std::move(colors));
  }

 private:
  static std::vector<std::uint32_t> renumber(const std::vector<std::vector<std::uint32_t>>& sig) {
    std::vector<std::size_t> idx(sig.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return sig[a] < sig[b]; });
    std::vector<std::uint32_t> colors(sig.size());
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i > 0 && sig[idx[i]] != sig[idx[i - 1]]) ++next;
      colors[idx[i]] = next;
    }
    return colors;
  }

  static std::size_t distinct(const std::vector<std::uint32_t>& colors) {
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  }

  // Refine to the coarsest equitable coloring below `colors`.
  std::vector<std::uint32_t> refine(std::vector<std::uint32_t> colors) const {
    std::size_t classes = distinct(colors);
    std::vector<std::vector<std::uint32_t>> sig(colors.size());
    for (;;) {
      for (std::size_t v = 0; v < colors.size(); ++v) {
        auto& s = sig[v];
        s.clear();
        s.push_back(colors[v]);
        const std::size_t mark = s.size();
        for (const NodeId w : up_[v]) s.push_back(colors[w]);
        std::sort(s.begin() + static_cast<std::ptrdiff_t>(mark), s.end());
        s.push_back(UINT32_MAX);  // separator between up and down neighbors
        const std::size_t mark2 = s.size();
        for (const NodeId w : down_[v]) s.push_back(colors[w]);
        std::sort(s.begin() + static_cast<std::ptrdiff_t>(mark2), s.end());
      }
      auto next = renumber(sig);
      const std::size_t next_classes = distinct(next);
      colors = std::move(next);
      if (next_classes == classes) return colors;
      classes = next_classes;
    }
  }

  bool balanced(const std::vector<std::uint32_t>& colors) const {
    std::vector<std::int64_t> diff(distinct(colors), 0);
    for (std::size_t v = 0; v < offset_; ++v) ++diff[colors[v]];
    for (std::size_t v = offset_; v < colors.size(); ++v) --diff[colors[v]];
    return std::all_of(diff.begin(), diff.end(), [](std::int64_t d) { return d == 0; });
  }

  std::optional<std::vector<NodeId>> search(std::vector<std::uint32_t> colors) {
    colors = refine(std::move(colors));
    if (!balanced(colors)) return std::nullopt;

    const std::size_t k = distinct(colors);
    std::vector<std::size_t> class_size(k, 0);
    for (std::size_t v = 0; v < offset_; ++v) ++class_size[colors[v]];
    std::uint32_t target = UINT32_MAX;
    for (std::uint32_t c = 0; c < k; ++c) {
      if (class_size[c] > 1 && (target == UINT32_MAX || class_size[c] < class_size[target])) target = c;
    }

    if (target == UINT32_MAX) {
      std::vector<NodeId> by_color(k, 0);
      for (std::size_t v = offset_; v < colors.size(); ++v) {
        by_color[colors[v]] = static_cast<NodeId>(v - offset_);
      }
      std::vector<NodeId> map(offset_);
      for (std::size_t v = 0; v < offset_; ++v) map[v] = by_color[colors[v]];
      if (is_order_isomorphism(l1_, l2_, map)) return map;
      return std::nullopt;
    }

    std::size_t pivot = 0;
    while (colors[pivot] != target) ++pivot;
    const auto fresh = static_cast<std::uint32_t>(k);
    for (std::size_t w = offset_; w < colors.size(); ++w) {
      if (colors[w] != target) continue;
      auto trial = colors;
      trial[pivot] = fresh;
      trial[w] = fresh;
      if (auto found = search(std::move(trial))) return found;
    }
    return std::nullopt;
  }

  const SubgroupLattice& l1_;
  const SubgroupLattice& l2_;
  std::size_t offset_;
  std::vector<std::vector<NodeId>> up_;
  std::vector<std::vector<NodeId>> down_;
};

}  // namespace

std::optional<std::vector<NodeId>> find_lattice_isomorphism(const SubgroupLattice& l1,
                                                            const SubgroupLattice& l2) {
  return IsomorphismSearch(l1, l2).run();
}

bool is_lattice_isomorphic(const SubgroupLattice& l1, const SubgroupLattice& l2) {
  return find_lattice_isomorphism(l1, l2).has_value();
}

SubgroupLattice lattice_of(const GroupParams& params, const Limits& limits) {
  const ConcreteGroup g = build_group(params, limits);
  return build_lattice(enumerate_subgroups(g, limits));
}

KPartition lattice_classes(const GroupBase& base, const Limits& limits) {
  const KPartition iso = iso_classes(base, limits);
  const auto reps = iso.representatives();
  std::vector<SubgroupLattice> lattices(reps.size());
  std::vector<std::string> errors(reps.size());
  const auto count = static_cast<std::ptrdiff_t>(reps.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      lattices[idx] = lattice_of(GroupParams::make(base, reps[idx]), limits);
    } catch (const ResourceLimit& e) {
      errors[idx] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw ResourceLimit(e);
  }
  std::map<std::uint64_t, std::size_t> rep_index;
  for (std::size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = i;

  const KPartition by_rep =
      partition_by(base, PartitionKind::lattice, reps, [&](std::uint64_t a, std::uint64_t b) {
        return is_lattice_isomorphic(lattices[rep_index[a]], lattices[rep_index[b]]);
      });
  KPartition out{base, PartitionKind::lattice, {}};
  for (const auto& block : by_rep.blocks) {
    std::vector<std::uint64_t> expanded;
    for (const auto rep : block) {
      const auto& members = iso.blocks[iso.block_of(rep)];
      expanded.insert(expanded.end(), members.begin(), members.end());
    }
    out.blocks.push_back(std::move(expanded));
  }
  normalize(out);
  return out;
}

}  // namespace metazeta
