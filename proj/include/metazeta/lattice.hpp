#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "metazeta/config.hpp"
#include "metazeta/group_model.hpp"
#include "metazeta/oracle.hpp"

namespace metazeta {

using NodeId = std::uint32_t;

// Hasse diagram of the subgroup lattice. Node ids follow SubgroupSet order,
// so node 0 is the trivial subgroup and the last node is the whole group.
struct SubgroupLattice {
  std::vector<std::uint64_t> orders;    // |H| per node
  std::vector<unsigned> level;          // height above the bottom node
  std::vector<std::vector<NodeId>> up;    // nodes covering this one
  std::vector<std::vector<NodeId>> down;  // nodes this one covers

  std::size_t size() const { return orders.size(); }
  NodeId bottom() const { return 0; }
  NodeId top() const { return static_cast<NodeId>(orders.size() - 1); }
  std::size_t cover_count() const;
  std::vector<std::pair<NodeId, NodeId>> covers() const;  // (lower, upper)
  std::vector<std::size_t> level_sizes() const;

  nlohmann::json to_json() const;
  std::string to_dot(const std::string& name = "lattice") const;
};

SubgroupLattice build_lattice(const SubgroupSet& s);

// An order isomorphism l1 -> l2 as a node map, or nullopt if none exists.
// Color refinement prunes; exhaustive backtracking decides.
std::optional<std::vector<NodeId>> find_lattice_isomorphism(const SubgroupLattice& l1,
                                                            const SubgroupLattice& l2);
bool is_lattice_isomorphic(const SubgroupLattice& l1, const SubgroupLattice& l2);

// True when `map` is a bijection that sends covers exactly onto covers.
bool is_order_isomorphism(const SubgroupLattice& l1, const SubgroupLattice& l2,
                          const std::vector<NodeId>& map);

// Lattice of G(p,m,n,k), straight from the oracle.
SubgroupLattice lattice_of(const GroupParams& params, const Limits& limits = {});

// Partition of the valid k under lattice isomorphism. One lattice is built per
// isomorphism class and its verdict is propagated to the whole class.
KPartition lattice_classes(const GroupBase& base, const Limits& limits = {});

}  // namespace metazeta
