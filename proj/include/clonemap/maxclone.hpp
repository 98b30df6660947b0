// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_MAXCLONE_HPP
#define CLONEMAP_MAXCLONE_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "clone_algebra.hpp"

namespace clonemap {

/// Representative of a level set of the clone class together with its full
/// occurrence list.
struct MaxClone {
    NodeId node_id = kNoNode;
    Bytes clone_string;
    std::uint64_t length = 0;  // D
    double entropy = 0.0;      // H
    std::uint64_t multiplicity = 0;  // C
    FileSet files;
    std::vector<Region> occurrences;
};

/// Max-clone representation of a clone class.
///
/// Class members are taken at node granularity. A member μ is dominated when a
/// longer member ρ with ρ̄ = u·μ̄ has the same multiplicity and file set size.
/// Extending a string to the left never raises C or F, so every node on the
/// suffix-link chain from ρ down to μ shares that level; the chain is followed
/// through such nodes whether or not they are members themselves. The
/// undominated members are returned, longest first, ties by clone string.
///
/// Leaves carry no suffix link; the leaf for (file, offset) is treated as the
/// one-symbol left extension of the leaf for (file, offset + 1). Leaf
/// occurrences are the leaf's own region.
inline std::vector<MaxClone> max_clones(const SuffixIndex& index, std::span<const CloneRecord> records,
                                        const CloneQuery& query) {
    const std::size_t n = index.node_count();
    std::vector<const CloneRecord*> record_of(n, nullptr);
    std::vector<bool> in_class(n, false);
    bool any_leaf = false;
    for (const auto& r : records) {
        if (r.node_id >= n) throw BoundsError("record refers to an unknown node");
        record_of[r.node_id] = &r;
        if (member(r, query)) {
            in_class[r.node_id] = true;
            any_leaf = any_leaf || r.leaf;
        }
    }

    std::vector<NodeId> link(n, kNoNode);
    for (NodeId id = 0; id < n; ++id) {
        if (!index.node(id).is_leaf()) link[id] = index.node(id).suffix_link;
    }
    if (any_leaf) {
        // leaf_at[file][offset]
        std::vector<std::vector<NodeId>> leaf_at(index.corpus().size());
        for (std::size_t f = 0; f < leaf_at.size(); ++f) leaf_at[f].assign(index.corpus().bytes(f).size(), kNoNode);
        for (NodeId id = 0; id < n; ++id) {
            const auto& node = index.node(id);
            if (node.is_leaf() && id != index.root()) leaf_at[node.leaf_file][node.leaf_offset] = id;
        }
        for (NodeId id = 0; id < n; ++id) {
            const auto& node = index.node(id);
            if (!node.is_leaf() || id == index.root()) continue;
            if (node.leaf_offset + 1 < leaf_at[node.leaf_file].size()) {
                link[id] = leaf_at[node.leaf_file][node.leaf_offset + 1];
            }
        }
    }

    auto same_level = [&](NodeId a, NodeId b) {
        const CloneRecord* x = record_of[a];
        const CloneRecord* y = record_of[b];
        return x && y && x->multiplicity == y->multiplicity && x->file_count() == y->file_count();
    };

    // Longest strings first, so each node is settled before its link target.
    std::vector<NodeId> order(n);
    for (NodeId id = 0; id < n; ++id) order[id] = id;
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return index.node(a).depth > index.node(b).depth; });
    // member_above[v]: some member extends v to the left at v's level.
    std::vector<bool> member_above(n, false);
    for (NodeId id : order) {
        NodeId mu = link[id];
        if (mu == kNoNode || mu == index.root()) continue;
        if ((in_class[id] || member_above[id]) && same_level(id, mu)) member_above[mu] = true;
    }

    std::vector<MaxClone> out;
    for (NodeId id = 0; id < n; ++id) {
        if (!in_class[id] || member_above[id]) continue;
        const CloneRecord* r = record_of[id];
        MaxClone m;
        m.node_id = id;
        m.clone_string = index.path_string(id);
        m.length = r->length;
        m.entropy = r->entropy;
        m.multiplicity = r->multiplicity;
        m.files = r->files;
        if (r->leaf) {
            const auto& node = index.node(id);
            m.occurrences = {Region{node.leaf_file, node.leaf_offset, node.leaf_offset + m.clone_string.size()}};
        } else {
            m.occurrences = index.pullback(m.clone_string);
        }
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const MaxClone& a, const MaxClone& b) {
        if (a.length != b.length) return a.length > b.length;
        return a.clone_string < b.clone_string;
    });
    return out;
}

struct ReductionStats {
    std::size_t class_size = 0;
    std::size_t representatives = 0;
    std::size_t distinct_offsets = 0;  // distinct regions over all occurrence lists
    double fraction = 0.0;             // representatives / class_size
};

inline ReductionStats reduction_stats(std::size_t class_size, std::span<const MaxClone> representation) {
    ReductionStats s;
    s.class_size = class_size;
    s.representatives = representation.size();
    std::set<Region> regions;
    for (const auto& m : representation) regions.insert(m.occurrences.begin(), m.occurrences.end());
    s.distinct_offsets = regions.size();
    s.fraction = class_size == 0 ? 0.0 : static_cast<double>(s.representatives) / static_cast<double>(class_size);
    return s;
}

}  // namespace clonemap

#endif
