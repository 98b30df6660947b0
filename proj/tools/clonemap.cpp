// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

// clonemap: clone maps, max-clones and similarity over a corpus of binaries.
//
// Exit status: 0 on success, 1 on invalid input or flags, 2 on I/O failure.

#include <clonemap/clonemap.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace clonemap;

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct InputOptions {
    std::vector<std::string> paths;
    std::string manifest;

    Corpus load() const {
        std::vector<std::filesystem::path> files;
        if (!manifest.empty()) {
            for (auto& p : read_manifest(manifest)) files.push_back(std::move(p));
        }
        for (const auto& p : paths) files.emplace_back(p);
        if (files.empty()) throw ValidationError("no input artifacts given");
        return ingest(files);
    }
};

/// Per-quantity threshold flags. A strict flag and its inclusive twin are
/// mutually exclusive. With no threshold flag at all the default query
/// ⟨80,0.6,1,1⟩ applies; otherwise unset thresholds are 0.
struct QueryOptions {
    std::optional<std::int64_t> d, f, c;
    std::optional<double> h;
    std::optional<std::int64_t> d_at_least, f_at_least, c_at_least;
    std::optional<double> h_at_least;
    std::optional<std::int64_t> d_max, f_max, c_max;
    std::optional<double> h_max;

    bool any_lower() const {
        return d || h || f || c || d_at_least || h_at_least || f_at_least || c_at_least;
    }

    CloneQuery build() const {
        CloneQuery q = any_lower() ? CloneQuery{0, 0.0, 0, 0} : CloneQuery{80, 0.6, 1, 1};
        auto integer = [](const char* name, std::optional<std::int64_t> strict, std::optional<std::int64_t> inclusive,
                          std::int64_t& out) {
            if (strict) {
                if (*strict < 0) throw ValidationError(std::string("--") + name + " must be non-negative");
                out = *strict;
            }
            if (inclusive) {
                if (*inclusive < 0) throw ValidationError(std::string("--") + name + "-at-least must be non-negative");
                out = *inclusive - 1;
            }
        };
        integer("d", d, d_at_least, q.d_min);
        integer("f", f, f_at_least, q.f_min);
        integer("c", c, c_at_least, q.c_min);
        if (h) {
            if (*h < 0) throw ValidationError("--h must be non-negative");
            q.h_min = *h;
        }
        if (h_at_least) {
            if (*h_at_least < 0) throw ValidationError("--h-at-least must be non-negative");
            q.h_min = CloneQuery::inclusive_entropy(*h_at_least);
        }
        q.d_max = d_max;
        q.h_max = h_max;
        q.f_max = f_max;
        q.c_max = c_max;
        q.validate();
        return q;
    }
};

void add_inputs(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("inputs", in.paths, "Artifact files, in corpus order");
    cmd->add_option("--manifest", in.manifest, "File listing artifact paths, one per line (read before positional inputs)");
}

void add_query(CLI::App* cmd, QueryOptions& q) {
    auto pair = [&](const char* strict_name, auto& strict, const char* inclusive_name, auto& inclusive,
                    const char* what) {
        auto* a = cmd->add_option(strict_name, strict, std::string(what) + " strictly greater than")
                      ->group("Clone class");
        auto* b = cmd->add_option(inclusive_name, inclusive, std::string(what) + " at least")->group("Clone class");
        a->excludes(b);
    };
    pair("--d", q.d, "--d-at-least", q.d_at_least, "Length");
    pair("--h", q.h, "--h-at-least", q.h_at_least, "Entropy in bits");
    pair("--f", q.f, "--f-at-least", q.f_at_least, "Number of files");
    pair("--c", q.c, "--c-at-least", q.c_at_least, "Multiplicity");
    cmd->add_option("--d-max", q.d_max, "Length strictly less than")->group("Clone class");
    cmd->add_option("--h-max", q.h_max, "Entropy strictly less than")->group("Clone class");
    cmd->add_option("--f-max", q.f_max, "Number of files strictly less than")->group("Clone class");
    cmd->add_option("--c-max", q.c_max, "Multiplicity strictly less than")->group("Clone class");
}

/// Writes to the named file, or standard output when the name is empty.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary | std::ios::trunc);
        if (!file_) throw IoError("cannot open output file: " + path);
        path_ = path;
    }
    std::ostream& stream() { return path_.empty() ? std::cout : file_; }
    void close() {
        if (path_.empty()) {
            std::cout.flush();
            if (!std::cout) throw IoError("failed writing standard output");
            return;
        }
        file_.close();
        if (!file_) throw IoError("failed writing output file: " + path_);
    }

private:
    std::ofstream file_;
    std::string path_;
};

void write_text(const std::string& path, const std::string& text) {
    Output out(path);
    out.stream() << text;
    out.close();
}

std::vector<MaxClone> load_representation(const std::string& path, const Corpus& corpus) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
    return max_clones_from_json(doc, corpus);
}

CloneQuery parse_query_tuple(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    if (parts.size() != 4) throw ValidationError("--query expects d,h,f,c but got '" + text + "'");
    try {
        std::size_t used = 0;
        auto num = [&](const std::string& s, auto parse) {
            auto v = parse(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        };
        auto as_int = [](const std::string& s, std::size_t* u) { return std::stoll(s, u); };
        auto as_real = [](const std::string& s, std::size_t* u) { return std::stod(s, u); };
        return CloneQuery::strict(num(parts[0], as_int), num(parts[1], as_real), num(parts[2], as_int),
                                  num(parts[3], as_int));
    } catch (const ValidationError&) {
        throw;
    } catch (const std::logic_error&) {
        throw ValidationError("--query has a non-numeric field: '" + text + "'");
    }
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
    std::vector<T> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            T v;
            if constexpr (std::is_integral_v<T>) {
                v = static_cast<T>(std::stoll(item, &used));
            } else {
                v = std::stod(item, &used);
            }
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw ValidationError(std::string(flag) + " has a non-numeric entry: '" + item + "'");
        }
    }
    if (out.empty()) throw ValidationError(std::string(flag) + " must not be empty");
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Clone maps, max-clones and similarity measures over a corpus of binaries"};
    app.set_version_flag("--version", std::string("clonemap ") + CLONEMAP_VERSION);
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    InputOptions in;
    QueryOptions qo;
    std::string output;
    std::string semantics = "interval";
    std::string from_json;

    auto* array = app.add_subcommand("array", "Emit the annotated node array as TSV");
    std::string dot_path;
    add_inputs(array, in);
    array->add_option("-o,--output", output, "Output file (default: standard output)");
    array->add_option("--dot", dot_path, "Also write the suffix tree in Graphviz DOT format");

    auto* call = app.add_subcommand("call", "Emit records of every node in the clone class as TSV");
    add_inputs(call, in);
    add_query(call, qo);
    call->add_option("-o,--output", output, "Output file (default: standard output)");

    auto* maxc = app.add_subcommand("maxclones", "Emit the max-clone representation as JSON");
    add_inputs(maxc, in);
    add_query(maxc, qo);
    maxc->add_option("-o,--output", output, "Output file (default: standard output)");

    auto* jac = app.add_subcommand("jaccard", "Jaccard coefficients for every artifact pair, or one subset");
    std::vector<std::string> query_tuples;
    std::string subset_text;
    add_inputs(jac, in);
    add_query(jac, qo);
    jac->add_option("--query", query_tuples, "Strict query d,h,f,c; repeat for several tables")->allow_extra_args(false);
    jac->add_option("--subset", subset_text, "Comma-separated artifact ids, e.g. 0,1");
    jac->add_option("--semantics", semantics, "interval or start")->check(CLI::IsMember({"interval", "start"}));
    jac->add_option("--from-json", from_json, "Use a max-clone JSON document instead of computing one");
    jac->add_option("-o,--output", output, "Output file (default: standard output)");

    auto* top = app.add_subcommand("topics", "Rank artifact subsets sharing clones by Jaccard coefficient");
    double min_j = 0.0;
    bool exhaustive = false;
    add_inputs(top, in);
    add_query(top, qo);
    top->add_option("--min-j", min_j, "Smallest coefficient to report");
    top->add_flag("--exhaustive", exhaustive, "Score every subset of at least two artifacts (at most 20 artifacts)");
    top->add_option("--semantics", semantics, "interval or start")->check(CLI::IsMember({"interval", "start"}));
    top->add_option("--from-json", from_json, "Use a max-clone JSON document instead of computing one");
    top->add_option("-o,--output", output, "Output file (default: standard output)");

    auto* sweep = app.add_subcommand("sweep", "Coverage of the corpus over a grid of length and entropy thresholds");
    std::string d_values;
    std::string h_values;
    std::int64_t sweep_f = 1;
    std::int64_t sweep_c = 1;
    add_inputs(sweep, in);
    sweep->add_option("--d-values", d_values, "Comma-separated length thresholds")->required();
    sweep->add_option("--h-values", h_values, "Comma-separated entropy thresholds")->required();
    sweep->add_option("--f", sweep_f, "File-count threshold")->capture_default_str();
    sweep->add_option("--c", sweep_c, "Multiplicity threshold")->capture_default_str();
    sweep->add_option("-o,--output", output, "Output file (default: standard output)");

    auto* viz = app.add_subcommand("viz", "Render the annulus clone map as SVG");
    std::string sections_path;
    add_inputs(viz, in);
    add_query(viz, qo);
    viz->add_option("--sections", sections_path, "Section sidecar: file_id name start end per line");
    viz->add_option("--from-json", from_json, "Use a max-clone JSON document instead of computing one");
    viz->add_option("-o,--output", output, "Output file (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    // Everything below may throw the library's error types.
    const CloneQuery query = qo.build();
    const Corpus corpus = in.load();
    const auto index = SuffixIndex::build(corpus);
    const auto records = collect_records(index);

    auto representation = [&] {
        return from_json.empty() ? max_clones(index, records, query) : load_representation(from_json, corpus);
    };

    if (*array) {
        Output out(output);
        write_array(records, out.stream());
        out.close();
        if (!dot_path.empty()) {
            Output dot(dot_path);
            index.write_dot(dot.stream());
            dot.close();
        }
    } else if (*call) {
        Output out(output);
        write_array(call_clones(records, query), out.stream());
        out.close();
    } else if (*maxc) {
        auto reps = max_clones(index, records, query);
        auto stats = reduction_stats(call_clones(records, query).size(), reps);
        write_text(output, max_clones_to_json(reps).dump(2) + "\n");
        std::cerr << "query " << query.to_string() << ": class_size=" << stats.class_size
                  << " representatives=" << stats.representatives << " distinct_offsets=" << stats.distinct_offsets
                  << " fraction=" << format_fixed(stats.fraction, 6) << "\n";
    } else if (*jac) {
        auto sem = parse_semantics(semantics);
        std::vector<CloneQuery> queries;
        for (const auto& t : query_tuples) queries.push_back(parse_query_tuple(t));
        if (queries.empty()) queries.push_back(query);
        if (!from_json.empty() && queries.size() != 1) {
            throw ValidationError("--from-json supplies one representation; give at most one --query");
        }
        std::ostringstream os;
        if (!subset_text.empty()) {
            auto ids = parse_list<FileId>(subset_text, "--subset");
            os << "#subset\tquery\tJ\tclone_count\tcovered\n";
            for (const auto& q : queries) {
                auto reps = from_json.empty() ? max_clones(index, records, q) : representation();
                auto r = jaccard(corpus, reps, ids, sem);
                std::string covered;
                for (auto a : r.covered) covered += (covered.empty() ? "" : ",") + std::to_string(a);
                os << subset_to_string(r.subset) << '\t' << q.to_string() << '\t' << format_fixed(r.J, 6) << '\t'
                   << r.clone_count << '\t' << covered << '\n';
            }
        } else if (from_json.empty()) {
            write_pairwise_tsv(os, pairwise_matrix(index, records, queries, sem), queries);
        } else {
            if (corpus.size() < 2) throw ValidationError("pairwise comparison needs at least two artifacts");
            auto reps = representation();
            std::vector<PairwiseEntry> entries;
            for (FileId i = 0; i < corpus.size(); ++i) {
                for (FileId j = i + 1; j < corpus.size(); ++j) {
                    auto r = jaccard(corpus, reps, {i, j}, sem);
                    entries.push_back({i, j, 0, r.J, r.clone_count});
                }
            }
            write_pairwise_tsv(os, entries, queries);
        }
        write_text(output, os.str());
    } else if (*top) {
        auto mode = exhaustive ? TopicCandidates::exhaustive : TopicCandidates::file_sets;
        std::ostringstream os;
        write_topics_tsv(os, topic_subsets(corpus, representation(), min_j, parse_semantics(semantics), mode));
        write_text(output, os.str());
    } else if (*sweep) {
        if (sweep_f < 0 || sweep_c < 0) throw ValidationError("--f and --c must be non-negative");
        auto grid = coverage_sweep(index, records, parse_list<std::int64_t>(d_values, "--d-values"),
                                   parse_list<double>(h_values, "--h-values"), sweep_f, sweep_c);
        std::ostringstream os;
        write_sweep_csv(os, grid);
        write_text(output, os.str());
    } else if (*viz) {
        std::vector<SectionAnnotation> sections;
        if (!sections_path.empty()) {
            std::ifstream sf(sections_path);
            if (!sf) throw IoError("cannot open " + sections_path);
            sections = parse_sections(sf, corpus);
        }
        write_text(output, render_annulus(corpus, representation(), sections));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const clonemap::IoError& e) {
        std::cerr << "clonemap: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "clonemap: " << e.what() << "\n";
        return kExitValidation;
    }
}
