// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_SUFFIX_INDEX_HPP
#define CLONEMAP_SUFFIX_INDEX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"

namespace clonemap {

/// Symbols of the concatenated corpus: bytes are 0..255, the terminator that
/// closes artifact i is 256 + i.
using Symbol = std::uint32_t;
using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr Symbol kFirstTerminator = 256;

inline constexpr bool is_terminator(Symbol s) noexcept { return s >= kFirstTerminator; }

struct Edge {
    Symbol first;  // first symbol of the child's branch label
    NodeId child;
};

struct SuffixNode {
    std::uint32_t offset = 0;       // start of the branch label in the concatenated text
    std::uint32_t length = 0;       // branch label length, terminator included on leaves
    NodeId parent = kNoNode;
    NodeId suffix_link = kNoNode;   // internal non-root nodes only
    FileId leaf_file = 0;           // leaves only
    std::uint32_t leaf_offset = 0;  // leaves only
    std::uint32_t depth = 0;        // path string length in content symbols
    std::vector<Edge> children;     // ascending by first symbol

    bool is_leaf() const noexcept { return children.empty(); }
};

/// Generalized suffix tree over all artifacts of a corpus.
///
/// Artifacts are concatenated, each followed by its own terminator, and the
/// tree is built online with Ukkonen's algorithm. The suffixes that start at a
/// terminator are dropped afterwards, so there is exactly one leaf per byte
/// position of the corpus and no path string crosses an artifact boundary.
///
/// The index keeps a pointer to the corpus; the corpus must outlive it.
class SuffixIndex {
public:
    static SuffixIndex build(const Corpus& corpus) { return SuffixIndex(corpus); }
    static SuffixIndex build(Corpus&&) = delete;

    const Corpus& corpus() const noexcept { return *corpus_; }
    NodeId root() const noexcept { return 0; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    const SuffixNode& node(NodeId id) const { return nodes_.at(id); }
    const std::vector<SuffixNode>& nodes() const noexcept { return nodes_; }

    std::span<const Symbol> text() const noexcept { return text_; }
    Symbol symbol(std::size_t global) const { return text_.at(global); }

    /// Global offset of the first byte of artifact `file`.
    std::size_t file_start(FileId file) const { return file_start_.at(file); }

    /// Maps a global offset to (artifact, local offset). Terminator positions
    /// map to (artifact, artifact length).
    std::pair<FileId, std::size_t> locate(std::size_t global) const {
        auto it = std::upper_bound(file_start_.begin(), file_start_.end(), global);
        auto file = static_cast<FileId>(std::distance(file_start_.begin(), it) - 1);
        return {file, global - file_start_[file]};
    }

    /// Content bytes spelled from the root to `id` (terminators stripped).
    Bytes path_string(NodeId id) const {
        std::vector<NodeId> chain;
        for (NodeId cur = id; cur != root(); cur = nodes_[cur].parent) chain.push_back(cur);
        Bytes out;
        out.reserve(nodes_.at(id).depth);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            const auto& n = nodes_[*it];
            for (std::size_t p = n.offset; p < n.offset + n.length; ++p) {
                if (is_terminator(text_[p])) break;
                out.push_back(static_cast<char>(text_[p]));
            }
        }
        return out;
    }

    /// Child of `id` whose branch label starts with `s`, or kNoNode.
    NodeId child(NodeId id, Symbol s) const {
        const auto& c = nodes_.at(id).children;
        auto it = std::lower_bound(c.begin(), c.end(), s, [](const Edge& e, Symbol v) { return e.first < v; });
        return (it != c.end() && it->first == s) ? it->child : kNoNode;
    }

    /// Calls `fn(const SuffixNode&)` for every leaf below `id` (inclusive).
    template <typename Fn>
    void for_each_leaf(NodeId id, Fn&& fn) const {
        std::vector<NodeId> stack{id};
        while (!stack.empty()) {
            NodeId cur = stack.back();
            stack.pop_back();
            const auto& n = nodes_[cur];
            if (n.is_leaf()) {
                fn(n);
                continue;
            }
            for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(it->child);
        }
    }

    /// Node at or below the end of `pattern`, or kNoNode when the pattern does
    /// not occur. An empty pattern locates the root.
    NodeId locate_pattern(BytesView pattern) const {
        NodeId cur = root();
        std::size_t matched = 0;
        while (matched < pattern.size()) {
            NodeId next = child(cur, static_cast<unsigned char>(pattern[matched]));
            if (next == kNoNode) return kNoNode;
            const auto& n = nodes_[next];
            for (std::size_t k = 0; k < n.length && matched < pattern.size(); ++k, ++matched) {
                if (text_[n.offset + k] != static_cast<unsigned char>(pattern[matched])) return kNoNode;
            }
            cur = next;
        }
        return cur;
    }

    /// Γ⁻¹ via the tree: match the pattern from the root, then collect leaves.
    /// Sorted ascending; empty when the pattern does not occur.
    std::vector<Region> pullback(BytesView pattern) const {
        if (pattern.empty()) {
            throw ValidationError("pullback of the empty string is not supported");
        }
        std::vector<Region> out;
        NodeId at = locate_pattern(pattern);
        if (at == kNoNode) return out;
        for_each_leaf(at, [&](const SuffixNode& leaf) {
            out.push_back({leaf.leaf_file, leaf.leaf_offset, leaf.leaf_offset + pattern.size()});
        });
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Longest repeated substring: deepest internal node, lexicographically
    /// smallest on ties. Empty when nothing repeats.
    Bytes lcs() const {
        NodeId best = kNoNode;
        Bytes best_str;
        for (NodeId id = 1; id < nodes_.size(); ++id) {
            const auto& n = nodes_[id];
            if (n.is_leaf() || n.depth == 0) continue;
            if (best != kNoNode && n.depth < nodes_[best].depth) continue;
            Bytes s = path_string(id);
            if (best == kNoNode || n.depth > nodes_[best].depth || s < best_str) {
                best = id;
                best_str = std::move(s);
            }
        }
        return best_str;
    }

    /// Graphviz description of the tree. Intended for small corpora.
    void write_dot(std::ostream& os) const {
        os << "digraph suffix_tree {\n  node [shape=circle, fontsize=10];\n";
        for (NodeId id = 0; id < nodes_.size(); ++id) {
            const auto& n = nodes_[id];
            os << "  n" << id << " [label=\"" << id;
            if (n.is_leaf()) os << "\\n(" << n.leaf_file << "," << n.leaf_offset << ")";
            os << "\"" << (n.is_leaf() ? ", shape=box" : "") << "];\n";
        }
        for (NodeId id = 0; id < nodes_.size(); ++id) {
            const auto& n = nodes_[id];
            for (const auto& e : n.children) {
                os << "  n" << id << " -> n" << e.child << " [label=\"" << edge_label(e.child) << "\"];\n";
            }
            if (n.suffix_link != kNoNode) {
                os << "  n" << id << " -> n" << n.suffix_link << " [style=dashed, color=gray];\n";
            }
        }
        os << "}\n";
    }

private:
    explicit SuffixIndex(const Corpus& corpus) : corpus_(&corpus) {
        std::size_t n = corpus.total_length() + corpus.size();
        if (n >= std::numeric_limits<std::uint32_t>::max() - 1) {
            throw ValidationError("corpus too large for 32-bit suffix index");
        }
        text_.reserve(n);
        file_start_.reserve(corpus.size());
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            file_start_.push_back(text_.size());
            for (unsigned char b : corpus.bytes(i)) text_.push_back(b);
            text_.push_back(kFirstTerminator + static_cast<Symbol>(i));
        }
        construct();
        finalize();
    }

    /// Edge text for DOT; long edges keep their first symbols and the
    /// terminator, if any.
    std::string edge_label(NodeId id) const {
        constexpr std::size_t kShown = 16;
        const auto& n = nodes_[id];
        const std::size_t end = n.offset + n.length;
        // Only leaf edges carry a terminator, always as their last symbol.
        const std::size_t content_end = is_terminator(text_[end - 1]) ? end - 1 : end;
        std::string s;
        for (std::size_t p = n.offset; p < std::min(content_end, n.offset + kShown); ++p) {
            Symbol c = text_[p];
            if (c >= 0x20 && c < 0x7f && c != '"' && c != '\\') {
                s.push_back(static_cast<char>(c));
            } else {
                static const char* hex = "0123456789abcdef";
                s += "\\\\x";
                s.push_back(hex[c >> 4]);
                s.push_back(hex[c & 15]);
            }
        }
        if (content_end > n.offset + kShown) s += "...";
        if (content_end != end) s += "$" + std::to_string(text_[end - 1] - kFirstTerminator);
        return s;
    }

    // Build-time node: leaves keep an open end until the text is exhausted.
    struct BuildNode {
        std::uint32_t start;
        std::uint32_t end;  // exclusive; kOpen for leaves
        NodeId link;
        std::uint32_t suffix_start;  // leaves only
        std::vector<Edge> children;
    };
    static constexpr std::uint32_t kOpen = std::numeric_limits<std::uint32_t>::max();

    void construct() {
        const auto n = static_cast<std::uint32_t>(text_.size());
        std::vector<BuildNode> t;
        t.reserve(2 * static_cast<std::size_t>(n) + 1);
        t.push_back({0, 0, kNoNode, 0, {}});

        auto edge_len = [&](NodeId id, std::uint32_t pos) {
            return std::min(t[id].end, pos + 1) - t[id].start;
        };
        auto find = [&](NodeId id, Symbol s) -> std::vector<Edge>::iterator {
            auto& c = t[id].children;
            return std::lower_bound(c.begin(), c.end(), s, [](const Edge& e, Symbol v) { return e.first < v; });
        };
        auto add_child = [&](NodeId parent, Symbol s, NodeId child) {
            auto& c = t[parent].children;
            c.insert(std::lower_bound(c.begin(), c.end(), s, [](const Edge& e, Symbol v) { return e.first < v; }),
                     Edge{s, child});
        };

        NodeId active_node = 0;
        std::uint32_t active_edge = 0;
        std::uint32_t active_length = 0;
        std::uint32_t remainder = 0;

        for (std::uint32_t i = 0; i < n; ++i) {
            NodeId last_internal = kNoNode;
            ++remainder;
            while (remainder > 0) {
                if (active_length == 0) active_edge = i;
                Symbol a = text_[active_edge];
                auto it = find(active_node, a);
                if (it == t[active_node].children.end() || it->first != a) {
                    auto leaf = static_cast<NodeId>(t.size());
                    t.push_back({i, kOpen, kNoNode, i - remainder + 1, {}});
                    add_child(active_node, text_[i], leaf);
                    if (last_internal != kNoNode) {
                        t[last_internal].link = active_node;
                        last_internal = kNoNode;
                    }
                } else {
                    NodeId next = it->child;
                    std::uint32_t len = edge_len(next, i);
                    if (active_length >= len) {
                        active_edge += len;
                        active_length -= len;
                        active_node = next;
                        continue;
                    }
                    if (text_[t[next].start + active_length] == text_[i]) {
                        if (last_internal != kNoNode && active_node != 0) {
                            t[last_internal].link = active_node;
                            last_internal = kNoNode;
                        }
                        ++active_length;
                        break;
                    }
                    auto split = static_cast<NodeId>(t.size());
                    std::uint32_t split_end = t[next].start + active_length;
                    t.push_back({t[next].start, split_end, kNoNode, 0, {}});
                    it->child = split;
                    auto leaf = static_cast<NodeId>(t.size());
                    t.push_back({i, kOpen, kNoNode, i - remainder + 1, {}});
                    t[next].start = split_end;
                    add_child(split, text_[i], leaf);
                    add_child(split, text_[split_end], next);
                    if (last_internal != kNoNode) t[last_internal].link = split;
                    last_internal = split;
                }
                --remainder;
                if (active_node == 0 && active_length > 0) {
                    --active_length;
                    active_edge = i - remainder + 1;
                } else if (active_node != 0) {
                    active_node = t[active_node].link != kNoNode ? t[active_node].link : 0;
                }
            }
            if (last_internal != kNoNode) t[last_internal].link = 0;
        }

        // Drop suffixes that begin at a terminator (root children only, since
        // each terminator is unique) and renumber densely in creation order.
        auto& root_children = t[0].children;
        std::vector<bool> dropped(t.size(), false);
        for (const auto& e : root_children) {
            if (is_terminator(e.first)) dropped[e.child] = true;
        }
        std::erase_if(root_children, [](const Edge& e) { return is_terminator(e.first); });

        std::vector<NodeId> remap(t.size(), kNoNode);
        NodeId next_id = 0;
        for (std::size_t id = 0; id < t.size(); ++id) {
            if (!dropped[id]) remap[id] = next_id++;
        }
        nodes_.resize(next_id);
        for (std::size_t id = 0; id < t.size(); ++id) {
            if (dropped[id]) continue;
            auto& src = t[id];
            auto& dst = nodes_[remap[id]];
            dst.offset = src.start;
            dst.children = std::move(src.children);
            for (auto& e : dst.children) e.child = remap[e.child];
            if (dst.children.empty()) {
                auto [file, local] = locate(src.suffix_start);
                dst.leaf_file = file;
                dst.leaf_offset = static_cast<std::uint32_t>(local);
                // Leaf label runs up to and including the artifact's terminator.
                auto term = static_cast<std::uint32_t>(file_start_[file] + corpus_->bytes(file).size());
                dst.length = term + 1 - src.start;
            } else {
                dst.length = src.end - src.start;
                if (id != 0 && src.link != kNoNode) dst.suffix_link = remap[src.link];
            }
        }
        nodes_[0].offset = 0;
        nodes_[0].length = 0;
    }

    void finalize() {
        std::vector<NodeId> stack{root()};
        while (!stack.empty()) {
            NodeId id = stack.back();
            stack.pop_back();
            for (const auto& e : nodes_[id].children) {
                auto& c = nodes_[e.child];
                c.parent = id;
                std::uint32_t content = c.length;
                if (c.is_leaf()) content -= 1;  // trailing terminator
                c.depth = nodes_[id].depth + content;
                stack.push_back(e.child);
            }
        }
    }

    const Corpus* corpus_;
    std::vector<Symbol> text_;
    std::vector<std::size_t> file_start_;
    std::vector<SuffixNode> nodes_;
};

}  // namespace clonemap

#endif
