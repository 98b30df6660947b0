// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#include <clonemap/traversal.hpp>

#include <gtest/gtest.h>

#include <array>
#include <map>
#include <random>
#include <sstream>

#include "oracle.hpp"

using namespace clonemap;

namespace {

std::map<std::string, CloneRecord> internal_by_string(const SuffixIndex& index,
                                                      const std::vector<CloneRecord>& records) {
    std::map<std::string, CloneRecord> out;
    for (const auto& r : records) {
        if (!r.leaf) out[index.path_string(r.node_id)] = r;
    }
    return out;
}

}  // namespace

TEST(Entropy, CountVectors) {
    EXPECT_DOUBLE_EQ(entropy(BytesView("aaaa")), 0.0);
    EXPECT_DOUBLE_EQ(entropy(BytesView("issi")), 1.0);
    // frequencies {i:4/11, s:4/11, p:2/11, m:1/11}
    EXPECT_NEAR(entropy(BytesView("mississippi")), oracle::entropy_of("mississippi"), 1e-12);
    EXPECT_NEAR(entropy(BytesView("mississippi")), 1.8231, 5e-5);
    std::array<std::uint64_t, 4> zeros{};
    EXPECT_EQ(entropy(zeros), 0.0);
    std::array<std::uint64_t, 3> uniform{5, 5, 5};
    EXPECT_NEAR(entropy(uniform), std::log2(3.0), 1e-12);
}

TEST(Entropy, RunningMatchesDirect) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> sym(0, 5);
    RunningEntropy running;
    std::string current;
    for (int step = 0; step < 5000; ++step) {
        if (!current.empty() && step % 3 == 0) {
            running.remove(static_cast<unsigned char>(current.back()));
            current.pop_back();
        } else {
            char c = static_cast<char>('a' + sym(rng));
            running.add(static_cast<unsigned char>(c));
            current.push_back(c);
        }
        ASSERT_NEAR(running.value(), entropy(BytesView(current)), 1e-12);
    }
    while (!current.empty()) {
        running.remove(static_cast<unsigned char>(current.back()));
        current.pop_back();
    }
    EXPECT_EQ(running.value(), 0.0);
}

TEST(Traverse, MississippiRecords) {
    auto corpus = Corpus::from_strings({"mississippi"});
    auto index = SuffixIndex::build(corpus);
    auto records = collect_records(index);
    ASSERT_EQ(records.size(), index.node_count());
    auto by = internal_by_string(index, records);
    const auto& issi = by.at("issi");
    EXPECT_EQ(issi.length, 4u);
    EXPECT_NEAR(issi.entropy, 1.0, 1e-9);
    EXPECT_EQ(issi.file_count(), 1u);
    EXPECT_EQ(issi.multiplicity, 2u);

    const auto& root = records.back();
    EXPECT_EQ(root.node_id, index.root());
    EXPECT_EQ(root.length, 0u);
    EXPECT_EQ(root.entropy, 0.0);
    EXPECT_EQ(root.multiplicity, 11u);
    EXPECT_EQ(root.file_count(), 1u);
    EXPECT_EQ(root.depth, 0u);
}

TEST(Traverse, DuplicatePairRecords) {
    auto corpus = Corpus::from_strings({"ab", "ab"});
    auto index = SuffixIndex::build(corpus);
    auto records = collect_records(index);
    auto by = internal_by_string(index, records);
    EXPECT_EQ(by.at("ab").length, 2u);
    EXPECT_NEAR(by.at("ab").entropy, 1.0, 1e-12);
    EXPECT_EQ(by.at("ab").files, FileSet(2, {0, 1}));
    EXPECT_EQ(by.at("ab").multiplicity, 2u);
    EXPECT_EQ(by.at("b").length, 1u);
    EXPECT_EQ(by.at("b").entropy, 0.0);
    EXPECT_EQ(by.at("b").files, FileSet(2, {0, 1}));
    EXPECT_EQ(by.at("b").multiplicity, 2u);
    EXPECT_EQ(by.at("").files, FileSet(2, {0, 1}));
    EXPECT_EQ(by.at("").multiplicity, 4u);
}

TEST(Traverse, RunRecords) {
    auto corpus = Corpus::from_strings({"aaaa"});
    auto index = SuffixIndex::build(corpus);
    auto by = internal_by_string(index, collect_records(index));
    EXPECT_EQ(by.at("a").length, 1u);
    EXPECT_EQ(by.at("a").entropy, 0.0);
    EXPECT_EQ(by.at("a").multiplicity, 4u);
    EXPECT_EQ(by.at("a").file_count(), 1u);
}

TEST(Traverse, LeafRecordsCarryFullSuffix) {
    auto corpus = Corpus::from_strings({"abca", "ca"});
    auto index = SuffixIndex::build(corpus);
    for (const auto& r : collect_records(index)) {
        if (!r.leaf) continue;
        const auto& n = index.node(r.node_id);
        auto suffix = std::string(corpus.bytes(n.leaf_file).substr(n.leaf_offset));
        EXPECT_EQ(r.length, suffix.size());
        EXPECT_NEAR(r.entropy, oracle::entropy_of(suffix), 1e-12);
        EXPECT_EQ(r.multiplicity, 1u);
        EXPECT_EQ(r.files, FileSet(2, {n.leaf_file}));
    }
}

TEST(Traverse, PostOrderAndLexicographic) {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 40; ++round) {
        auto strings = oracle::random_corpus(rng);
        auto corpus = Corpus::from_strings(strings);
        auto index = SuffixIndex::build(corpus);
        auto records = collect_records(index);
        std::vector<bool> seen(index.node_count(), false);
        std::vector<int> prev_key;
        for (const auto& r : records) {
            for (const auto& e : index.node(r.node_id).children) ASSERT_TRUE(seen[e.child]);
            ASSERT_FALSE(seen[r.node_id]);
            seen[r.node_id] = true;
            if (!r.leaf) continue;
            // Leaves arrive in lexicographic order of content followed by the
            // artifact's end marker, markers sorting after every byte.
            const auto& n = index.node(r.node_id);
            std::vector<int> key;
            for (unsigned char c : strings[n.leaf_file].substr(n.leaf_offset)) key.push_back(c);
            key.push_back(256 + static_cast<int>(n.leaf_file));
            ASSERT_LT(prev_key, key);
            prev_key = std::move(key);
        }
        ASSERT_EQ(records.back().node_id, index.root());
    }
}

TEST(Traverse, AggregationSoundnessAndMonotonicity) {
    std::mt19937_64 rng(12);
    for (int round = 0; round < 60; ++round) {
        auto corpus = Corpus::from_strings(oracle::random_corpus(rng));
        auto index = SuffixIndex::build(corpus);
        auto records = collect_records(index);
        std::vector<const CloneRecord*> by_id(index.node_count());
        for (const auto& r : records) by_id[r.node_id] = &r;
        for (const auto& r : records) {
            const auto& n = index.node(r.node_id);
            EXPECT_GE(r.multiplicity, r.file_count());
            EXPECT_GE(r.file_count(), 1u);
            EXPECT_LE(r.entropy, std::log2(256.0));
            if (n.is_leaf()) continue;
            std::uint64_t c = 0;
            FileSet f(corpus.size());
            for (const auto& e : n.children) {
                const auto& child = *by_id[e.child];
                c += child.multiplicity;
                f |= child.files;
                EXPECT_GE(r.file_count(), child.file_count());
                EXPECT_GE(r.multiplicity, child.multiplicity);
                // A leaf whose label is only the end marker adds no content.
                if (index.node(e.child).length == 1 && child.leaf) {
                    EXPECT_EQ(r.length, child.length);
                } else {
                    EXPECT_LT(r.length, child.length);
                }
                EXPECT_EQ(child.depth, r.depth + 1);
            }
            EXPECT_EQ(r.multiplicity, c);
            EXPECT_EQ(r.files, f);
        }
    }
}

TEST(Traverse, OracleEquivalence) {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 100; ++round) {
        auto strings = oracle::random_corpus(rng);
        auto corpus = Corpus::from_strings(strings);
        auto index = SuffixIndex::build(corpus);
        for (const auto& r : collect_records(index)) {
            const auto& n = index.node(r.node_id);
            oracle::Quantities q;
            if (r.node_id == index.root()) {
                q.D = 0;
                q.C = corpus.total_length();
                for (FileId f = 0; f < corpus.size(); ++f) q.F.insert(f);
            } else if (n.is_leaf()) {
                q = oracle::leaf_quantities(strings, n.leaf_file, n.leaf_offset);
            } else {
                q = oracle::quantities(strings, index.path_string(r.node_id));
            }
            ASSERT_EQ(r.length, q.D);
            ASSERT_NEAR(r.entropy, q.H, 1e-9);
            ASSERT_EQ(r.multiplicity, q.C);
            auto ids = r.files.ids();
            ASSERT_EQ(std::set<std::uint32_t>(ids.begin(), ids.end()), q.F);
        }
    }
}

TEST(Traverse, PopBound) {
    std::mt19937_64 rng(14);
    for (int round = 0; round < 50; ++round) {
        auto corpus = Corpus::from_strings(oracle::random_corpus(rng));
        auto index = SuffixIndex::build(corpus);
        auto stats = traverse(index, [](const CloneRecord&) {});
        EXPECT_EQ(stats.records, index.node_count());
        EXPECT_EQ(stats.pops, 2 * index.node_count() - 1);
        EXPECT_LE(stats.pops, 4 * corpus.total_length());
    }
}

TEST(WriteArray, RowCounts) {
    auto m = Corpus::from_strings({"mississippi"});
    auto mi = SuffixIndex::build(m);
    std::ostringstream os;
    EXPECT_EQ(write_array(collect_records(mi), os), 18u);

    auto ab = Corpus::from_strings({"ab", "ab"});
    auto abi = SuffixIndex::build(ab);
    std::ostringstream os2;
    EXPECT_EQ(write_array(collect_records(abi), os2), 7u);

    std::ostringstream empty;
    EXPECT_EQ(write_array(std::vector<CloneRecord>{}, empty), 0u);
    EXPECT_EQ(empty.str(), kArrayHeader);
}

TEST(WriteArray, Format) {
    auto m = Corpus::from_strings({"mississippi"});
    auto index = SuffixIndex::build(m);
    auto records = collect_records(index);
    std::ostringstream os;
    write_array(records, os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "#node_id\tparent_id\tsuffix_link_id\tbranch_offset\tbranch_len\tdepth\tD\tH\tC\tF_count\tF_set");
    NodeId issi = index.locate_pattern("issi");
    bool found = false;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::vector<std::string> cols;
        for (std::string c; std::getline(row, c, '\t');) cols.push_back(c);
        ASSERT_EQ(cols.size(), 11u);
        if (cols[0] == std::to_string(index.root())) {
            EXPECT_EQ(cols[1], "-1");
            EXPECT_EQ(cols[2], "-1");
        }
        if (cols[0] == std::to_string(issi)) {
            found = true;
            EXPECT_EQ(cols[6], "4");
            EXPECT_EQ(cols[7], "1.000000");
            EXPECT_EQ(cols[8], "2");
            EXPECT_EQ(cols[9], "1");
            EXPECT_EQ(cols[10], "0");
        }
    }
    EXPECT_TRUE(found);
}

TEST(WriteArray, Deterministic) {
    std::mt19937_64 rng(15);
    auto strings = oracle::random_corpus(rng, 5, 200, 4);
    std::string first;
    for (int run = 0; run < 2; ++run) {
        auto corpus = Corpus::from_strings(strings);
        auto index = SuffixIndex::build(corpus);
        std::ostringstream os;
        ArrayWriter writer(os);
        traverse(index, writer);
        if (run == 0) {
            first = os.str();
        } else {
            EXPECT_EQ(os.str(), first);
        }
    }
}
