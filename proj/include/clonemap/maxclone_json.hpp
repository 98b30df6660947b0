// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_MAXCLONE_JSON_HPP
#define CLONEMAP_MAXCLONE_JSON_HPP

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxclone.hpp"

namespace clonemap {

inline std::string to_hex(BytesView bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

inline Bytes from_hex(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0) throw ValidationError("hex string has odd length");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = nibble(hex[i]);
        int lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw ValidationError("invalid hex digit");
        out.push_back(static_cast<char>(hi << 4 | lo));
    }
    return out;
}

/// [{string_hex, D, H, C, files:[..], occurrences:[{file, offset, end}..]}, ..]
inline nlohmann::ordered_json max_clones_to_json(std::span<const MaxClone> representation) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& m : representation) {
        nlohmann::ordered_json obj;
        obj["string_hex"] = to_hex(m.clone_string);
        obj["D"] = m.length;
        obj["H"] = m.entropy;
        obj["C"] = m.multiplicity;
        obj["files"] = m.files.ids();
        auto occ = nlohmann::ordered_json::array();
        for (const auto& r : m.occurrences) {
            occ.push_back({{"file", r.file}, {"offset", r.offset}, {"end", r.end}});
        }
        obj["occurrences"] = std::move(occ);
        arr.push_back(std::move(obj));
    }
    return arr;
}

/// Inverse of max_clones_to_json. Node ids are not serialized and come back
/// as kNoNode. Occurrences are checked against the corpus.
inline std::vector<MaxClone> max_clones_from_json(const nlohmann::json& doc, const Corpus& corpus) {
    if (!doc.is_array()) throw ValidationError("max-clone document must be a JSON array");
    std::vector<MaxClone> out;
    try {
        for (const auto& obj : doc) {
            MaxClone m;
            m.clone_string = from_hex(obj.at("string_hex").get<std::string>());
            m.length = obj.at("D").get<std::uint64_t>();
            m.entropy = obj.at("H").get<double>();
            m.multiplicity = obj.at("C").get<std::uint64_t>();
            m.files = FileSet(corpus.size());
            for (const auto& f : obj.at("files")) m.files.insert(f.get<FileId>());
            for (const auto& o : obj.at("occurrences")) {
                Region r{o.at("file").get<FileId>(), o.at("offset").get<std::size_t>(), o.at("end").get<std::size_t>()};
                if (!corpus.valid(r)) throw ValidationError("max-clone occurrence outside the corpus");
                m.occurrences.push_back(r);
            }
            out.push_back(std::move(m));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed max-clone document: ") + e.what());
    } catch (const BoundsError& e) {
        throw ValidationError(std::string("malformed max-clone document: ") + e.what());
    }
    return out;
}

}  // namespace clonemap

#endif
