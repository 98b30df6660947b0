// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_FILE_SET_HPP
#define CLONEMAP_FILE_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "corpus.hpp"

namespace clonemap {

/// Fixed-universe set of artifact ids, one bit per artifact.
class FileSet {
public:
    FileSet() = default;
    explicit FileSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
    FileSet(std::size_t universe, std::initializer_list<FileId> ids) : FileSet(universe) {
        for (auto id : ids) insert(id);
    }

    static FileSet all(std::size_t universe) {
        FileSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<FileId>(i));
        return s;
    }

    std::size_t universe() const noexcept { return universe_; }

    void insert(FileId id) {
        if (id >= universe_) throw BoundsError("file id " + std::to_string(id) + " out of range");
        words_[id / 64] |= std::uint64_t{1} << (id % 64);
    }

    bool contains(FileId id) const noexcept {
        return id < universe_ && (words_[id / 64] >> (id % 64)) & 1U;
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const noexcept { return count() == 0; }

    FileSet& operator|=(const FileSet& other) {
        if (words_.size() < other.words_.size()) {
            words_.resize(other.words_.size(), 0);
            universe_ = other.universe_;
        }
        for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    FileSet& operator&=(const FileSet& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] &= i < other.words_.size() ? other.words_[i] : 0;
        }
        return *this;
    }

    friend FileSet operator&(FileSet a, const FileSet& b) { return a &= b; }
    friend FileSet operator|(FileSet a, const FileSet& b) { return a |= b; }

    bool is_subset_of(const FileSet& other) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
            if (words_[i] & ~o) return false;
        }
        return true;
    }

    std::vector<FileId> ids() const {
        std::vector<FileId> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1) {
                out.push_back(static_cast<FileId>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
            }
        }
        return out;
    }

    /// "0,2,5"
    std::string to_string() const {
        std::string s;
        for (auto id : ids()) {
            if (!s.empty()) s.push_back(',');
            s += std::to_string(id);
        }
        return s;
    }

    friend bool operator==(const FileSet& a, const FileSet& b) noexcept {
        return a.is_subset_of(b) && b.is_subset_of(a);
    }

    /// Lexicographic order on the ascending id lists.
    friend bool operator<(const FileSet& a, const FileSet& b) { return a.ids() < b.ids(); }

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace clonemap

#endif
