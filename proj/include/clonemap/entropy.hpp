// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_ENTROPY_HPP
#define CLONEMAP_ENTROPY_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

#include "corpus.hpp"

namespace clonemap {

/// Shannon entropy in bits of a symbol count vector. Zero for an all-zero vector.
inline double entropy(std::span<const std::uint64_t> counts) {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    if (n == 0) return 0.0;
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        double theta = static_cast<double>(c) / static_cast<double>(n);
        h += theta * std::log2(1.0 / theta);
    }
    return h;
}

inline double entropy(BytesView s) {
    std::array<std::uint64_t, kByteAlphabet> counts{};
    for (unsigned char b : s) ++counts[b];
    return entropy(counts);
}

/// Byte histogram that supports O(1) add/remove and an O(1) entropy read.
///
/// Keeps S = Σ x·log2(x) over the counts, so H = log2(n) − S/n. A histogram
/// with at most one distinct symbol reports exactly 0.
class RunningEntropy {
public:
    void add(unsigned char b) {
        auto& c = counts_[b];
        sum_ += delta(c);
        if (c++ == 0) ++distinct_;
        ++n_;
    }

    void remove(unsigned char b) {
        auto& c = counts_[b];
        --c;
        sum_ -= delta(c);
        if (c == 0) --distinct_;
        if (--n_ == 0) sum_ = 0;
    }

    std::uint64_t size() const noexcept { return n_; }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }

    double value() const noexcept {
        if (distinct_ <= 1) return 0.0;
        long double n = static_cast<long double>(n_);
        long double h = std::log2(n) - sum_ / n;
        return h < 0 ? 0.0 : static_cast<double>(h);
    }

private:
    // (c+1)·log2(c+1) − c·log2(c)
    static long double delta(std::uint64_t c) {
        long double a = static_cast<long double>(c);
        long double b = a + 1;
        return b * std::log2(b) - (c == 0 ? 0.0L : a * std::log2(a));
    }

    std::array<std::uint64_t, kByteAlphabet> counts_{};
    std::uint64_t n_ = 0;
    std::size_t distinct_ = 0;
    long double sum_ = 0;
};

}  // namespace clonemap

#endif
