// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_CLONE_ALGEBRA_HPP
#define CLONEMAP_CLONE_ALGEBRA_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "traversal.hpp"

namespace clonemap {

/// Clone class ⟨d,h,f,c⟩: every quantity strictly above its lower threshold
/// and, where an upper bound is set, strictly below it.
///
/// An entropy threshold h ≤ 0 places no constraint on H, so ⟨0,0,0,0⟩ is the
/// whole observed language. Integer thresholds may be -1 so that
/// inclusive "at least 0" bounds can be expressed; see `at_least`.
struct CloneQuery {
    std::int64_t d_min = 0;
    double h_min = 0.0;
    std::int64_t f_min = 0;
    std::int64_t c_min = 0;
    std::optional<std::int64_t> d_max = std::nullopt;
    std::optional<double> h_max = std::nullopt;
    std::optional<std::int64_t> f_max = std::nullopt;
    std::optional<std::int64_t> c_max = std::nullopt;

    static CloneQuery strict(std::int64_t d, double h, std::int64_t f, std::int64_t c) {
        CloneQuery q{d, h, f, c};
        if (d < 0 || h < 0 || f < 0 || c < 0) throw ValidationError("clone thresholds must be non-negative");
        q.validate();
        return q;
    }

    /// D ≥ d, H ≥ h, F ≥ f, C ≥ c.
    static CloneQuery at_least(std::int64_t d, double h, std::int64_t f, std::int64_t c) {
        if (d < 0 || h < 0 || f < 0 || c < 0) throw ValidationError("clone thresholds must be non-negative");
        CloneQuery q{d - 1, inclusive_entropy(h), f - 1, c - 1};
        q.validate();
        return q;
    }

    /// Largest strict entropy threshold admitting H ≥ h.
    static double inclusive_entropy(double h) { return std::nextafter(h, -std::numeric_limits<double>::infinity()); }

    void validate() const {
        if (d_min < -1 || f_min < -1 || c_min < -1 || !std::isfinite(h_min) || h_min < -1.0) {
            throw ValidationError("clone thresholds out of range");
        }
        if ((d_max && *d_max <= d_min) || (h_max && !(*h_max > h_min)) || (f_max && *f_max <= f_min) ||
            (c_max && *c_max <= c_min)) {
            throw ValidationError("each upper bound must exceed its lower threshold");
        }
    }

    bool two_sided() const noexcept { return d_max || h_max || f_max || c_max; }

    /// "<80,0.6,1,1>", with "\<dmax,hmax,fmax,cmax>" appended for bounded queries.
    std::string to_string() const {
        auto num = [](double v) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", v);
            return std::string(buf);
        };
        std::string s = "<" + std::to_string(d_min) + "," + num(h_min) + "," + std::to_string(f_min) + "," +
                        std::to_string(c_min) + ">";
        if (two_sided()) {
            auto opt = [&](const auto& v) { return v ? num(static_cast<double>(*v)) : std::string("inf"); };
            s += "\\<" + opt(d_max) + "," + opt(h_max) + "," + opt(f_max) + "," + opt(c_max) + ">";
        }
        return s;
    }
};

/// The empty string (the root record) is never a clone.
inline bool member(const CloneRecord& r, const CloneQuery& q) noexcept {
    if (r.length == 0) return false;
    auto d = static_cast<std::int64_t>(r.length);
    auto f = static_cast<std::int64_t>(r.file_count());
    auto c = static_cast<std::int64_t>(r.multiplicity);
    bool entropy_ok = q.h_min <= 0.0 || r.entropy > q.h_min;
    if (!(d > q.d_min && entropy_ok && f > q.f_min && c > q.c_min)) return false;
    if (q.d_max && !(d < *q.d_max)) return false;
    if (q.h_max && !(r.entropy < *q.h_max)) return false;
    if (q.f_max && !(f < *q.f_max)) return false;
    if (q.c_max && !(c < *q.c_max)) return false;
    return true;
}

/// Records belonging to the class, in input (post-)order.
inline std::vector<CloneRecord> call_clones(std::span<const CloneRecord> records, const CloneQuery& q) {
    std::vector<CloneRecord> out;
    for (const auto& r : records) {
        if (member(r, q)) out.push_back(r);
    }
    return out;
}

enum class NamedClass { MClone, FClone, MCloneH, FCloneH };

inline NamedClass parse_named_class(std::string_view name) {
    if (name == "M-Clone") return NamedClass::MClone;
    if (name == "F-Clone") return NamedClass::FClone;
    if (name == "M-Clone_h") return NamedClass::MCloneH;
    if (name == "F-Clone_h") return NamedClass::FCloneH;
    throw ValidationError("unknown clone class '" + std::string(name) + "'");
}

/// M-Clone: C > 1. F-Clone: F > 1. The _h variants also require H > h.
inline CloneQuery named_class(NamedClass which, double h = 0.0) {
    if (h < 0) throw ValidationError("entropy threshold must be non-negative");
    switch (which) {
        case NamedClass::MClone: return CloneQuery{0, 0.0, 0, 1};
        case NamedClass::FClone: return CloneQuery{0, 0.0, 1, 0};
        case NamedClass::MCloneH: return CloneQuery{0, h, 0, 1};
        case NamedClass::FCloneH: return CloneQuery{0, h, 1, 0};
    }
    throw ValidationError("unknown clone class");
}

inline CloneQuery named_class(std::string_view name, double h = 0.0) { return named_class(parse_named_class(name), h); }

}  // namespace clonemap

#endif
