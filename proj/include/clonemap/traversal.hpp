// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_TRAVERSAL_HPP
#define CLONEMAP_TRAVERSAL_HPP

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "entropy.hpp"
#include "file_set.hpp"
#include "suffix_index.hpp"

namespace clonemap {

/// One row of the enhanced suffix array: a tree node and the clone
/// quantities of its path string.
struct CloneRecord {
    NodeId node_id = kNoNode;
    NodeId parent_id = kNoNode;
    NodeId suffix_link = kNoNode;
    std::uint32_t branch_offset = 0;
    std::uint32_t branch_len = 0;
    std::uint32_t depth = 0;         // nodes between root and this node
    std::uint64_t length = 0;        // D
    double entropy = 0.0;            // H, bits
    std::uint64_t multiplicity = 0;  // C
    FileSet files;                   // F set
    bool leaf = false;               // path string reads to the end of an artifact

    std::size_t file_count() const noexcept { return files.count(); }
};

struct TraversalFrame {
    NodeId node;
    std::size_t next_child;
    std::int64_t path_len;  // -1 on leaves
    FileSet file_set;
    std::uint64_t leaf_count;
    std::uint32_t depth;
};

struct TraversalStats {
    std::uint64_t pops = 0;
    std::uint64_t records = 0;
};

/// Entropy of every artifact suffix, indexed by global offset. Built once in
/// a backward scan so leaf records cost O(1).
inline std::vector<double> suffix_entropies(const SuffixIndex& index) {
    const Corpus& corpus = index.corpus();
    std::vector<double> out(index.text().size(), 0.0);
    for (std::size_t f = 0; f < corpus.size(); ++f) {
        BytesView bytes = corpus.bytes(f);
        std::size_t base = index.file_start(static_cast<FileId>(f));
        RunningEntropy running;
        for (std::size_t k = bytes.size(); k-- > 0;) {
            running.add(static_cast<unsigned char>(bytes[k]));
            out[base + k] = running.value();
        }
    }
    return out;
}

/// Iterative post-order walk of the suffix tree with an explicit frame stack.
///
/// A frame whose node still has unexplored children is pushed back with its
/// child cursor advanced, followed by a fresh frame for that child (pre-order
/// visit extends the running path string). An exhausted frame is post-order
/// visited: its leaf count and file set are folded into the parent frame, one
/// record is emitted, and the path string is cut back to the parent's length.
///
/// The running path string is kept only as a byte histogram; entropy is read
/// from it normalised by the path length. Records arrive in post-order, which
/// visits path strings in lexicographic order.
///
/// `visit` is called as `visit(const CloneRecord&)`.
template <typename Visitor>
TraversalStats traverse(const SuffixIndex& index, Visitor&& visit) {
    const auto universe = index.corpus().size();
    const auto text = index.text();
    const auto leaf_entropy = suffix_entropies(index);

    TraversalStats stats;
    RunningEntropy phi;
    std::vector<TraversalFrame> stack;
    stack.push_back({index.root(), 0, 0, FileSet(universe), 0, 0});

    auto label = [&](const SuffixNode& n) {
        return std::pair{text.begin() + n.offset, text.begin() + n.offset + n.length};
    };

    while (!stack.empty()) {
        TraversalFrame frame = std::move(stack.back());
        stack.pop_back();
        ++stats.pops;
        const SuffixNode& eta = index.node(frame.node);

        if (frame.next_child < eta.children.size()) {
            NodeId mu_id = eta.children[frame.next_child].child;
            std::int64_t parent_len = frame.path_len;
            std::uint32_t parent_depth = frame.depth;
            ++frame.next_child;
            stack.push_back(std::move(frame));
            stack.push_back({mu_id, 0, parent_len, FileSet(universe), 0, parent_depth + 1});

            // pre-order visit
            TraversalFrame& top = stack.back();
            const SuffixNode& mu = index.node(mu_id);
            if (mu.is_leaf()) {
                top.leaf_count = 1;
                top.file_set.insert(mu.leaf_file);
                top.path_len = -1;
            } else {
                top.path_len += mu.length;
                auto [b, e] = label(mu);
                for (auto it = b; it != e; ++it) phi.add(static_cast<unsigned char>(*it));
            }
            continue;
        }

        // post-order visit
        if (!stack.empty()) {
            TraversalFrame& parent = stack.back();
            parent.leaf_count += frame.leaf_count;
            parent.file_set |= frame.file_set;
        }

        CloneRecord rec;
        rec.node_id = frame.node;
        rec.parent_id = eta.parent;
        rec.suffix_link = eta.suffix_link;
        rec.branch_offset = eta.offset;
        rec.branch_len = eta.length;
        rec.depth = frame.depth;
        rec.multiplicity = frame.leaf_count;
        rec.leaf = eta.is_leaf();
        if (rec.leaf) {
            rec.length = eta.depth;
            rec.entropy = leaf_entropy[index.file_start(eta.leaf_file) + eta.leaf_offset];
        } else {
            rec.length = static_cast<std::uint64_t>(frame.path_len);
            rec.entropy = phi.value();
        }
        rec.files = std::move(frame.file_set);
        visit(std::as_const(rec));
        ++stats.records;

        if (!rec.leaf && frame.node != index.root()) {
            auto [b, e] = label(eta);
            for (auto it = b; it != e; ++it) phi.remove(static_cast<unsigned char>(*it));
        }
    }
    return stats;
}

/// All records in post-order.
inline std::vector<CloneRecord> collect_records(const SuffixIndex& index, TraversalStats* stats = nullptr) {
    std::vector<CloneRecord> out;
    out.reserve(index.node_count());
    auto s = traverse(index, [&](const CloneRecord& r) { out.push_back(r); });
    if (stats) *stats = s;
    return out;
}

inline constexpr const char* kArrayHeader =
    "#node_id\tparent_id\tsuffix_link_id\tbranch_offset\tbranch_len\tdepth\tD\tH\tC\tF_count\tF_set\n";

inline std::string format_fixed(double v, int decimals) {
    if (v == 0.0) v = 0.0;  // no "-0.000000"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

/// Streams records as enhanced-suffix-array TSV rows.
class ArrayWriter {
public:
    explicit ArrayWriter(std::ostream& os, bool header = true) : os_(&os) {
        if (header) *os_ << kArrayHeader;
    }

    void operator()(const CloneRecord& r) {
        auto id = [](NodeId v) { return v == kNoNode ? std::string("-1") : std::to_string(v); };
        *os_ << r.node_id << '\t' << id(r.parent_id) << '\t' << id(r.suffix_link) << '\t' << r.branch_offset << '\t'
             << r.branch_len << '\t' << r.depth << '\t' << r.length << '\t' << format_fixed(r.entropy, 6) << '\t'
             << r.multiplicity << '\t' << r.file_count() << '\t' << r.files.to_string() << '\n';
        if (!*os_) throw IoError("failed to write enhanced suffix array row");
        ++rows_;
    }

    std::size_t rows() const noexcept { return rows_; }

private:
    std::ostream* os_;
    std::size_t rows_ = 0;
};

/// Writes the header and one row per record, in the order given. Returns the
/// number of rows written.
template <typename Range>
std::size_t write_array(const Range& records, std::ostream& os) {
    ArrayWriter writer(os);
    for (const CloneRecord& r : records) writer(r);
    return writer.rows();
}

}  // namespace clonemap

#endif
