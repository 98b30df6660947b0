// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_CORPUS_HPP
#define CLONEMAP_CORPUS_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace clonemap {

/// Artifact bytes. std::string is used as a plain byte container; content is
/// never interpreted as text.
using Bytes = std::string;
using BytesView = std::string_view;

using FileId = std::uint32_t;

inline constexpr std::size_t kByteAlphabet = 256;

struct Artifact {
    std::string name;
    Bytes bytes;
};

/// Half-open substring `[offset, end)` of artifact `file`.
struct Region {
    FileId file = 0;
    std::size_t offset = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end - offset; }

    friend auto operator<=>(const Region&, const Region&) = default;
    friend bool operator==(const Region&, const Region&) = default;
};

/// Ordered, immutable set of non-empty artifacts.
class Corpus {
public:
    explicit Corpus(std::vector<Artifact> artifacts) : artifacts_(std::move(artifacts)) {
        if (artifacts_.empty()) {
            throw ValidationError("corpus must contain at least one artifact");
        }
        for (const auto& a : artifacts_) {
            if (a.bytes.empty()) {
                throw ValidationError("artifact '" + a.name + "' is empty");
            }
            total_ += a.bytes.size();
        }
    }

    /// Convenience for tests and literals: artifacts named by position.
    static Corpus from_strings(const std::vector<std::string>& contents) {
        std::vector<Artifact> artifacts;
        artifacts.reserve(contents.size());
        for (std::size_t i = 0; i < contents.size(); ++i) {
            artifacts.push_back({"#" + std::to_string(i), contents[i]});
        }
        return Corpus(std::move(artifacts));
    }

    /// |Ω|
    std::size_t size() const noexcept { return artifacts_.size(); }
    /// ||Ω||
    std::size_t total_length() const noexcept { return total_; }
    std::size_t alphabet_size() const noexcept { return kByteAlphabet; }

    const Artifact& artifact(std::size_t i) const { return artifacts_.at(i); }
    BytesView bytes(std::size_t i) const { return artifacts_.at(i).bytes; }
    const std::vector<Artifact>& artifacts() const noexcept { return artifacts_; }

    bool valid(const Region& r) const noexcept {
        return r.file < artifacts_.size() && r.offset <= r.end &&
               r.end <= artifacts_[r.file].bytes.size();
    }

    /// Γ: the bytes addressed by a region.
    BytesView content(const Region& r) const {
        if (!valid(r)) {
            throw BoundsError("region (" + std::to_string(r.file) + "," + std::to_string(r.offset) + "," +
                              std::to_string(r.end) + ") is outside the corpus");
        }
        return BytesView(artifacts_[r.file].bytes).substr(r.offset, r.end - r.offset);
    }

    /// Brute-force pullback: every region whose content equals `pattern`,
    /// found by testing each offset of each artifact. Sorted ascending.
    std::vector<Region> naive_pullback(BytesView pattern) const {
        if (pattern.empty()) {
            throw ValidationError("pullback of the empty string is not supported");
        }
        std::vector<Region> out;
        for (std::size_t i = 0; i < artifacts_.size(); ++i) {
            BytesView text = artifacts_[i].bytes;
            if (text.size() < pattern.size()) continue;
            for (std::size_t j = 0; j + pattern.size() <= text.size(); ++j) {
                if (text.compare(j, pattern.size(), pattern) == 0) {
                    out.push_back({static_cast<FileId>(i), j, j + pattern.size()});
                }
            }
        }
        return out;
    }

private:
    std::vector<Artifact> artifacts_;
    std::size_t total_ = 0;
};

inline Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path.string() + "'");
    }
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("error while reading '" + path.string() + "'");
    }
    return data;
}

/// Load artifacts in the given order. Artifact id is the list position.
inline Corpus ingest(const std::vector<std::filesystem::path>& paths) {
    if (paths.empty()) {
        throw ValidationError("no input files given");
    }
    std::vector<Artifact> artifacts;
    artifacts.reserve(paths.size());
    for (const auto& p : paths) {
        artifacts.push_back({p.string(), read_file(p)});
    }
    return Corpus(std::move(artifacts));
}

/// Manifest: one path per line; blank lines and '#' comments skipped.
/// Relative paths are taken as written (relative to the working directory).
inline std::vector<std::filesystem::path> read_manifest(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) {
        throw IoError("cannot read manifest '" + manifest.string() + "'");
    }
    std::vector<std::filesystem::path> paths;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto last = line.find_last_not_of(" \t");
        paths.emplace_back(line.substr(first, last - first + 1));
    }
    return paths;
}

}  // namespace clonemap

#endif
