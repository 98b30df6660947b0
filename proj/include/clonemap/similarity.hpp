// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_SIMILARITY_HPP
#define CLONEMAP_SIMILARITY_HPP

#include <algorithm>
#include <bit>
#include <iterator>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "maxclone.hpp"

namespace clonemap {

/// Sorted, duplicate-free artifact ids.
using Subset = std::vector<FileId>;

enum class CoverSemantics {
    interval,  // positions inside any covering occurrence
    start,     // positions where a covering occurrence begins
};

inline CoverSemantics parse_semantics(std::string_view s) {
    if (s == "interval") return CoverSemantics::interval;
    if (s == "start") return CoverSemantics::start;
    throw ValidationError("unknown coverage semantics '" + std::string(s) + "'");
}

inline Subset normalize_subset(Subset ids, const Corpus& corpus) {
    if (ids.empty()) throw ValidationError("artifact subset must not be empty");
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.back() >= corpus.size()) {
        throw ValidationError("artifact id " + std::to_string(ids.back()) + " out of range");
    }
    return ids;
}

inline std::string subset_to_string(const Subset& s) {
    std::string out;
    for (auto id : s) {
        if (!out.empty()) out.push_back(',');
        out += std::to_string(id);
    }
    return out;
}

/// Max-clones found in every artifact of a subset.
struct CoverSet {
    Subset subset;
    std::vector<const MaxClone*> clones;
};

inline CoverSet cover(const Corpus& corpus, std::span<const MaxClone> representation, Subset ids) {
    CoverSet out{normalize_subset(std::move(ids), corpus), {}};
    for (const auto& m : representation) {
        bool all = std::all_of(out.subset.begin(), out.subset.end(), [&](FileId i) { return m.files.contains(i); });
        if (all) out.clones.push_back(&m);
    }
    return out;
}

struct JaccardReport {
    Subset subset;
    double J = 0.0;
    std::size_t clone_count = 0;
    std::vector<std::size_t> covered;  // A(i, I), parallel to subset
};

namespace detail {

/// Number of positions of `file` marked by the given clones' occurrences.
inline std::size_t covered_positions(std::size_t file_len, FileId file, std::span<const MaxClone* const> clones,
                                     CoverSemantics semantics) {
    if (semantics == CoverSemantics::start) {
        std::vector<bool> mark(file_len, false);
        for (const auto* m : clones) {
            for (const auto& r : m->occurrences) {
                if (r.file == file && r.offset < file_len) mark[r.offset] = true;
            }
        }
        return static_cast<std::size_t>(std::count(mark.begin(), mark.end(), true));
    }
    std::vector<std::int64_t> diff(file_len + 1, 0);
    for (const auto* m : clones) {
        for (const auto& r : m->occurrences) {
            if (r.file != file || r.offset >= r.end) continue;
            ++diff[r.offset];
            --diff[std::min(r.end, file_len)];
        }
    }
    std::size_t count = 0;
    std::int64_t depth = 0;
    for (std::size_t a = 0; a < file_len; ++a) {
        depth += diff[a];
        if (depth > 0) ++count;
    }
    return count;
}

}  // namespace detail

/// J(I) = Σ A(i,I) / Σ |ω_i| over i ∈ I.
inline JaccardReport jaccard(const Corpus& corpus, std::span<const MaxClone> representation, Subset ids,
                             CoverSemantics semantics = CoverSemantics::interval) {
    CoverSet cs = cover(corpus, representation, std::move(ids));
    JaccardReport rep;
    rep.subset = cs.subset;
    rep.clone_count = cs.clones.size();
    std::size_t num = 0;
    std::size_t den = 0;
    for (FileId i : cs.subset) {
        std::size_t len = corpus.bytes(i).size();
        std::size_t a = detail::covered_positions(len, i, cs.clones, semantics);
        rep.covered.push_back(a);
        num += a;
        den += len;
    }
    rep.J = static_cast<double>(num) / static_cast<double>(den);
    return rep;
}

struct PairwiseEntry {
    FileId file_i = 0;
    FileId file_j = 0;
    std::size_t query_index = 0;
    double J = 0.0;
    std::size_t clone_count = 0;
};

/// Upper-triangular J({i,j}) for every query, ordered by query, then i, then j.
inline std::vector<PairwiseEntry> pairwise_matrix(const SuffixIndex& index, std::span<const CloneRecord> records,
                                                  std::span<const CloneQuery> queries,
                                                  CoverSemantics semantics = CoverSemantics::interval) {
    const Corpus& corpus = index.corpus();
    if (corpus.size() < 2) throw ValidationError("pairwise comparison needs at least two artifacts");
    std::vector<PairwiseEntry> out;
    for (std::size_t q = 0; q < queries.size(); ++q) {
        auto rep = max_clones(index, records, queries[q]);
        for (FileId i = 0; i < corpus.size(); ++i) {
            for (FileId j = i + 1; j < corpus.size(); ++j) {
                auto r = jaccard(corpus, rep, {i, j}, semantics);
                out.push_back({i, j, q, r.J, r.clone_count});
            }
        }
    }
    return out;
}

struct Topic {
    double J = 0.0;
    Subset subset;
    std::size_t clone_count = 0;
};

enum class TopicCandidates {
    file_sets,   // clone file sets and their pairwise intersections
    exhaustive,  // every subset of size ≥ 2 of the files touched by clones
};

inline constexpr std::size_t kMaxExhaustiveFiles = 20;

/// Ranks artifact subsets A (|A| ≥ 2) with non-empty Cover(A) by J(A).
inline std::vector<Topic> topic_subsets(const Corpus& corpus, std::span<const MaxClone> representation, double min_J,
                                        CoverSemantics semantics = CoverSemantics::interval,
                                        TopicCandidates mode = TopicCandidates::file_sets) {
    std::set<Subset> candidates;
    if (mode == TopicCandidates::file_sets) {
        std::set<Subset> sets;
        for (const auto& m : representation) sets.insert(m.files.ids());
        for (auto a = sets.begin(); a != sets.end(); ++a) {
            if (a->size() >= 2) candidates.insert(*a);
            for (auto b = std::next(a); b != sets.end(); ++b) {
                Subset both;
                std::set_intersection(a->begin(), a->end(), b->begin(), b->end(), std::back_inserter(both));
                if (both.size() >= 2) candidates.insert(std::move(both));
            }
        }
    } else {
        FileSet touched(corpus.size());
        for (const auto& m : representation) touched |= m.files;
        auto files = touched.ids();
        if (files.size() > kMaxExhaustiveFiles) {
            throw ValidationError("exhaustive topic enumeration refused above " + std::to_string(kMaxExhaustiveFiles) +
                                  " artifacts");
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << files.size()); ++mask) {
            if (std::popcount(mask) < 2) continue;
            Subset s;
            for (std::size_t k = 0; k < files.size(); ++k) {
                if (mask >> k & 1U) s.push_back(files[k]);
            }
            candidates.insert(std::move(s));
        }
    }

    std::vector<Topic> out;
    for (const auto& a : candidates) {
        auto r = jaccard(corpus, representation, a, semantics);
        if (r.clone_count == 0 || r.J < min_J) continue;
        out.push_back({r.J, a, r.clone_count});
    }
    std::sort(out.begin(), out.end(), [](const Topic& x, const Topic& y) {
        if (x.J != y.J) return x.J > y.J;
        if (x.subset.size() != y.subset.size()) return x.subset.size() > y.subset.size();
        return x.subset < y.subset;
    });
    return out;
}

/// Fraction of all corpus bytes inside some occurrence of some clone.
inline double coverage(const Corpus& corpus, std::span<const MaxClone> representation) {
    std::vector<const MaxClone*> all;
    for (const auto& m : representation) all.push_back(&m);
    std::size_t covered = 0;
    for (FileId f = 0; f < corpus.size(); ++f) {
        covered += detail::covered_positions(corpus.bytes(f).size(), f, all, CoverSemantics::interval);
    }
    return static_cast<double>(covered) / static_cast<double>(corpus.total_length());
}

struct SweepGrid {
    std::vector<std::int64_t> d_values;
    std::vector<double> h_values;
    std::vector<std::vector<double>> values;  // [d][h]
};

/// Coverage of ⟨d,h,f_min,c_min⟩ over a grid of (d, h).
inline SweepGrid coverage_sweep(const SuffixIndex& index, std::span<const CloneRecord> records,
                                std::vector<std::int64_t> d_values, std::vector<double> h_values, std::int64_t f_min,
                                std::int64_t c_min) {
    if (d_values.empty() || h_values.empty()) throw ValidationError("sweep value lists must not be empty");
    SweepGrid grid{std::move(d_values), std::move(h_values), {}};
    for (auto d : grid.d_values) {
        auto& row = grid.values.emplace_back();
        for (auto h : grid.h_values) {
            CloneQuery q{d, h, f_min, c_min};
            q.validate();
            row.push_back(coverage(index.corpus(), max_clones(index, records, q)));
        }
    }
    return grid;
}

inline std::string format_general(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

/// file_i  file_j  query  J  clone_count
inline void write_pairwise_tsv(std::ostream& os, std::span<const PairwiseEntry> entries,
                               std::span<const CloneQuery> queries) {
    os << "#file_i\tfile_j\tquery\tJ\tclone_count\n";
    for (const auto& e : entries) {
        os << e.file_i << '\t' << e.file_j << '\t' << queries[e.query_index].to_string() << '\t'
           << format_fixed(e.J, 6) << '\t' << e.clone_count << '\n';
    }
}

/// J  subset  clone_count
inline void write_topics_tsv(std::ostream& os, std::span<const Topic> topics) {
    os << "#J\tsubset\tclone_count\n";
    for (const auto& t : topics) {
        os << format_fixed(t.J, 6) << '\t' << subset_to_string(t.subset) << '\t' << t.clone_count << '\n';
    }
}

/// d rows, h columns.
inline void write_sweep_csv(std::ostream& os, const SweepGrid& grid) {
    os << "d\\h";
    for (auto h : grid.h_values) os << ',' << format_general(h);
    os << '\n';
    for (std::size_t i = 0; i < grid.d_values.size(); ++i) {
        os << grid.d_values[i];
        for (auto v : grid.values[i]) os << ',' << format_fixed(v, 6);
        os << '\n';
    }
}

}  // namespace clonemap

#endif
