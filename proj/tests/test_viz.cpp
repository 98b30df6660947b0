// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#include <clonemap/viz.hpp>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "oracle.hpp"

using namespace clonemap;

namespace {

struct Indexed {
    explicit Indexed(const oracle::Strings& s)
        : corpus(Corpus::from_strings(s)), index(SuffixIndex::build(corpus)), records(collect_records(index)) {}
    Corpus corpus;
    SuffixIndex index;
    std::vector<CloneRecord> records;
};

std::size_t count_of(const std::string& svg, const std::string& cls) {
    const std::string needle = "class=\"" + cls + "\"";
    std::size_t n = 0;
    for (auto at = svg.find(needle); at != std::string::npos; at = svg.find(needle, at + 1)) ++n;
    return n;
}

void expect_well_formed(const std::string& svg) {
    std::istringstream in(svg);
    boost::property_tree::ptree tree;
    EXPECT_NO_THROW(boost::property_tree::read_xml(in, tree));
}

std::size_t expected_chords(const std::vector<MaxClone>& reps) {
    std::size_t n = 0;
    for (const auto& m : reps) n += m.occurrences.size() * (m.occurrences.size() - 1) / 2;
    return n;
}

}  // namespace

TEST(Annulus, Examples) {
    Indexed same({"ab", "ab"});
    auto reps = max_clones(same.index, same.records, CloneQuery{0, 0.0, 0, 1});
    auto svg = render_annulus(same.corpus, reps);
    EXPECT_EQ(count_of(svg, "segment"), 2U);
    EXPECT_EQ(count_of(svg, "notch"), 2U);
    EXPECT_EQ(count_of(svg, "chord"), 1U);
    expect_well_formed(svg);

    auto bare = render_annulus(same.corpus, std::vector<MaxClone>{});
    EXPECT_EQ(count_of(bare, "segment"), 2U);
    EXPECT_EQ(count_of(bare, "notch"), 2U);
    EXPECT_EQ(count_of(bare, "chord"), 0U);
    EXPECT_EQ(count_of(bare, "copy"), 0U);

    Indexed triple({"abxabyab"});
    auto r3 = max_clones(triple.index, triple.records, CloneQuery{1, 0.0, 0, 1});
    ASSERT_EQ(r3.size(), 1U);
    EXPECT_EQ(r3[0].multiplicity, 3U);
    EXPECT_EQ(count_of(render_annulus(triple.corpus, r3), "chord"), 3U);
}

TEST(Annulus, StructureOnRandomCorpora) {
    std::mt19937_64 rng(51);
    for (int round = 0; round < 40; ++round) {
        auto strings = oracle::random_corpus(rng, 5, 80);
        Indexed x(strings);
        auto reps = max_clones(x.index, x.records, CloneQuery{1, 0.0, 0, 1});
        auto svg = render_annulus(x.corpus, reps);
        EXPECT_EQ(count_of(svg, "chord"), expected_chords(reps));
        EXPECT_EQ(count_of(svg, "segment"), strings.size());
        expect_well_formed(svg);
        EXPECT_EQ(svg, render_annulus(x.corpus, reps));
    }
}

TEST(Annulus, ExtentsProportionalToLength) {
    Indexed x({std::string(100, 'a'), std::string(300, 'b'), std::string(7, 'c')});
    AnnulusOptions opt;
    auto layout = annulus_layout(x.corpus, opt);
    ASSERT_EQ(layout.size(), 3U);
    double total = 0.0;
    for (const auto& s : layout) total += s.extent;
    for (std::size_t f = 0; f < 3; ++f) {
        double share = layout[f].extent / total;
        double expected = static_cast<double>(x.corpus.bytes(static_cast<FileId>(f)).size()) / 407.0;
        EXPECT_NEAR(share / expected, 1.0, 1e-3);
    }
    EXPECT_DOUBLE_EQ(layout[0].start, opt.first_angle);
    EXPECT_NEAR(layout[1].start, layout[0].start + layout[0].extent + opt.gap, 1e-12);
    EXPECT_NEAR(total + 3 * opt.gap, 2 * std::numbers::pi, 1e-9);
}

TEST(Annulus, SectionsAndEscaping) {
    Indexed x({"abcdefgh", "abcd"});
    std::istringstream sidecar("# file name start end\n0 .text 0 4\n0 .rsrc 4 8\n\n1 a&b 0 2\n");
    auto sections = parse_sections(sidecar, x.corpus);
    ASSERT_EQ(sections.size(), 3U);
    auto svg = render_annulus(x.corpus, std::vector<MaxClone>{}, sections);
    EXPECT_EQ(count_of(svg, "section"), 3U);
    EXPECT_NE(svg.find("a&amp;b"), std::string::npos);
    expect_well_formed(svg);
}

TEST(Annulus, RejectsBadSections) {
    Indexed x({"abcdefgh"});
    auto parse = [&](const std::string& text) {
        std::istringstream in(text);
        return parse_sections(in, x.corpus);
    };
    EXPECT_THROW(parse("0 .text 0\n"), ValidationError);
    EXPECT_THROW(parse("1 .text 0 4\n"), ValidationError);
    EXPECT_THROW(parse("0 .text 5 4\n"), ValidationError);
    EXPECT_THROW(parse("0 .text 0 9\n"), ValidationError);
    EXPECT_THROW(parse("0 .text 0 4\n0 .data 3 6\n"), ValidationError);
    EXPECT_THROW(parse("0 .text 0 4 extra\n"), ValidationError);
    try {
        parse("0 .text 0 4\n0 .data x 6\n");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(Annulus, CopyNumberRing) {
    Indexed x({"abab"});
    auto reps = max_clones(x.index, x.records, CloneQuery{1, 0.0, 0, 1});
    auto svg = render_annulus(x.corpus, reps);
    EXPECT_EQ(count_of(svg, "copy"), 1U);
    EXPECT_NE(svg.find("data-copies=\"1\""), std::string::npos);
}
