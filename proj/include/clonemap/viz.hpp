// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_VIZ_HPP
#define CLONEMAP_VIZ_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "maxclone.hpp"

namespace clonemap {

struct SectionAnnotation {
    FileId file = 0;
    std::string name;
    std::size_t start = 0;
    std::size_t end = 0;
};

/// Reads the sections sidecar: `file_id  name  start  end` per line,
/// whitespace separated, '#' comments and blank lines skipped.
inline std::vector<SectionAnnotation> parse_sections(std::istream& in, const Corpus& corpus) {
    std::vector<SectionAnnotation> out;
    std::string line;
    std::size_t line_no = 0;
    auto reject = [&](const std::string& why) {
        throw ValidationError("sections line " + std::to_string(line_no) + " (" + line + "): " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        long long file = -1;
        long long start = -1;
        long long end = -1;
        SectionAnnotation s;
        std::string extra;
        if (!(fields >> file >> s.name >> start >> end) || (fields >> extra)) reject("expected 4 fields");
        if (file < 0 || static_cast<std::size_t>(file) >= corpus.size()) reject("unknown file id");
        if (start < 0 || end < start) reject("invalid byte range");
        s.file = static_cast<FileId>(file);
        s.start = static_cast<std::size_t>(start);
        s.end = static_cast<std::size_t>(end);
        if (s.end > corpus.bytes(s.file).size()) reject("range exceeds file length");
        for (const auto& prev : out) {
            if (prev.file == s.file && s.start < prev.end && prev.start < s.end) reject("overlaps section " + prev.name);
        }
        out.push_back(std::move(s));
    }
    return out;
}

struct AnnulusOptions {
    double size = 1000.0;
    double outer_radius = 470.0;
    double ring_width = 26.0;     // file segments; sections paint this ring
    double copy_width = 14.0;     // copy-number ring just inside
    double gap = 0.02;            // radians between consecutive files
    double first_angle = std::numbers::pi / 2;
    double alpha_cap = 8.0;       // copy number at full opacity
};

struct AnnulusSegment {
    FileId file = 0;
    double start = 0.0;   // radians, clockwise from twelve o'clock
    double extent = 0.0;
};

/// Files in order, clockwise, extents proportional to byte length; the total
/// gap is capped at half the circle.
inline std::vector<AnnulusSegment> annulus_layout(const Corpus& corpus, const AnnulusOptions& opt = {}) {
    const double two_pi = 2 * std::numbers::pi;
    double gap = std::min(opt.gap, std::numbers::pi / static_cast<double>(corpus.size()));
    double usable = two_pi - gap * static_cast<double>(corpus.size());
    std::vector<AnnulusSegment> out;
    double angle = opt.first_angle;
    for (FileId f = 0; f < corpus.size(); ++f) {
        double extent =
            usable * static_cast<double>(corpus.bytes(f).size()) / static_cast<double>(corpus.total_length());
        out.push_back({f, angle, extent});
        angle += extent + gap;
    }
    return out;
}

namespace detail {

inline std::string num(double v) {
    if (std::abs(v) < 5e-4) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20 && c != '\t') {
                    out += '?';
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::string section_color(std::string_view name) {
    if (name == ".text") return "#4e79a7";
    if (name == ".rsrc") return "#f28e2b";
    if (name == ".rdata") return "#59a14f";
    if (name == ".data") return "#edc948";
    if (name == "INIT") return "#b07aa1";
    if (name == "reloc" || name == ".reloc") return "#9c755f";
    static constexpr const char* palette[] = {"#76b7b2", "#ff9da7", "#bab0ac", "#8cd17d", "#d37295", "#a0cbe8"};
    std::uint32_t h = 2166136261U;  // FNV-1a
    for (unsigned char c : name) h = (h ^ c) * 16777619U;
    return palette[h % std::size(palette)];
}

struct Polar {
    double cx;
    double cy;
    std::string at(double r, double theta) const {
        return num(cx + r * std::sin(theta)) + "," + num(cy - r * std::cos(theta));
    }
};

/// Annular band between radii r0 < r1 from angle a to a + extent.
inline std::string band(const Polar& p, double r0, double r1, double a, double extent) {
    std::string large = extent > std::numbers::pi ? "1" : "0";
    double b = a + extent;
    return "M" + p.at(r1, a) + " A" + num(r1) + "," + num(r1) + " 0 " + large + " 1 " + p.at(r1, b) + " L" +
           p.at(r0, b) + " A" + num(r0) + "," + num(r0) + " 0 " + large + " 0 " + p.at(r0, a) + " Z";
}

}  // namespace detail

/// Annulus clone map as a standalone SVG 1.1 document.
///
/// Outer ring: one segment per file (section colours when given) with a notch
/// at each segment start. Inner ring: red runs whose opacity tracks how many
/// occurrences overlap each byte. Interior: one counter-arc for every pair of
/// occurrences of the same max-clone.
inline std::string render_annulus(const Corpus& corpus, std::span<const MaxClone> representation,
                                  std::span<const SectionAnnotation> sections = {}, const AnnulusOptions& opt = {}) {
    using detail::num;
    const auto layout = annulus_layout(corpus, opt);
    const detail::Polar p{opt.size / 2, opt.size / 2};
    const double r_out = opt.outer_radius;
    const double r_ring = r_out - opt.ring_width;
    const double r_copy = r_ring - opt.copy_width;
    const double r_chord = r_copy - 2.0;

    auto angle_of = [&](FileId f, double offset) {
        const auto& seg = layout[f];
        return seg.start + seg.extent * offset / static_cast<double>(corpus.bytes(f).size());
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(opt.size) << "\" height=\""
        << num(opt.size) << "\" viewBox=\"0 0 " << num(opt.size) << " " << num(opt.size) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    svg << "<g id=\"segments\" stroke=\"#333333\" stroke-width=\"0.5\">\n";
    for (const auto& seg : layout) {
        svg << "<path class=\"segment\" data-file=\"" << seg.file << "\" data-start=\"" << seg.start
            << "\" data-extent=\"" << seg.extent << "\" fill=\"#dddddd\" d=\""
            << detail::band(p, r_ring, r_out, seg.start, seg.extent) << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<g id=\"sections\">\n";
    for (const auto& s : sections) {
        if (s.file >= corpus.size() || s.end <= s.start) continue;
        double a = angle_of(s.file, static_cast<double>(s.start));
        double e = angle_of(s.file, static_cast<double>(s.end)) - a;
        svg << "<path class=\"section\" data-file=\"" << s.file << "\" data-name=\"" << detail::xml_escape(s.name)
            << "\" fill=\"" << detail::section_color(s.name) << "\" d=\"" << detail::band(p, r_ring, r_out, a, e)
            << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<g id=\"notches\" stroke=\"black\" stroke-width=\"2\">\n";
    for (const auto& seg : layout) {
        svg << "<line class=\"notch\" data-file=\"" << seg.file << "\" x1=\""
            << num(p.cx + (r_out + 12) * std::sin(seg.start)) << "\" y1=\""
            << num(p.cy - (r_out + 12) * std::cos(seg.start)) << "\" x2=\""
            << num(p.cx + (r_ring) * std::sin(seg.start)) << "\" y2=\"" << num(p.cy - r_ring * std::cos(seg.start))
            << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<g id=\"copy-number\" fill=\"#ff0000\">\n";
    for (FileId f = 0; f < corpus.size(); ++f) {
        std::size_t len = corpus.bytes(f).size();
        std::vector<std::int64_t> diff(len + 1, 0);
        for (const auto& m : representation) {
            for (const auto& r : m.occurrences) {
                if (r.file != f || r.offset >= r.end || r.end > len) continue;
                ++diff[r.offset];
                --diff[r.end];
            }
        }
        std::int64_t level = 0;
        std::size_t run_start = 0;
        std::int64_t run_level = 0;
        for (std::size_t a = 0; a <= len; ++a) {
            if (a < len) level += diff[a];
            std::int64_t cur = a < len ? level : 0;
            if (cur == run_level) continue;
            if (run_level > 0) {
                double alpha = std::min(static_cast<double>(run_level) / opt.alpha_cap, 1.0);
                double s = angle_of(f, static_cast<double>(run_start));
                double e = angle_of(f, static_cast<double>(a)) - s;
                svg << "<path class=\"copy\" data-file=\"" << f << "\" data-copies=\"" << run_level
                    << "\" fill-opacity=\"" << num(alpha) << "\" d=\"" << detail::band(p, r_copy, r_ring, s, e)
                    << "\"/>\n";
            }
            run_start = a;
            run_level = cur;
        }
    }
    svg << "</g>\n";

    svg << "<g id=\"chords\" fill=\"#1f4e99\" fill-opacity=\"0.25\" stroke=\"#1f4e99\" stroke-opacity=\"0.6\" "
           "stroke-width=\"0.5\">\n";
    for (std::size_t k = 0; k < representation.size(); ++k) {
        const auto& occ = representation[k].occurrences;
        for (std::size_t i = 0; i < occ.size(); ++i) {
            for (std::size_t j = i + 1; j < occ.size(); ++j) {
                const auto& a = occ[i];
                const auto& b = occ[j];
                double a0 = angle_of(a.file, static_cast<double>(a.offset));
                double a1 = angle_of(a.file, static_cast<double>(a.end));
                double b0 = angle_of(b.file, static_cast<double>(b.offset));
                double b1 = angle_of(b.file, static_cast<double>(b.end));
                std::string centre = num(p.cx) + "," + num(p.cy);
                svg << "<path class=\"chord\" data-clone=\"" << k << "\" d=\"M" << p.at(r_chord, a0) << " A"
                    << num(r_chord) << "," << num(r_chord) << " 0 0 1 " << p.at(r_chord, a1) << " Q" << centre << " "
                    << p.at(r_chord, b0) << " A" << num(r_chord) << "," << num(r_chord) << " 0 0 1 "
                    << p.at(r_chord, b1) << " Q" << centre << " " << p.at(r_chord, a0) << " Z\"/>\n";
            }
        }
    }
    svg << "</g>\n";

    svg << "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
    for (const auto& seg : layout) {
        double mid = seg.start + seg.extent / 2;
        svg << "<text x=\"" << num(p.cx + (r_out + 20) * std::sin(mid)) << "\" y=\""
            << num(p.cy - (r_out + 20) * std::cos(mid)) << "\">"
            << detail::xml_escape(corpus.artifact(seg.file).name) << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace clonemap

#endif
