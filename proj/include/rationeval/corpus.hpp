#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rationeval/archive.hpp"
#include "rationeval/csv.hpp"
#include "rationeval/errors.hpp"
#include "rationeval/hash.hpp"
#include "rationeval/io.hpp"
#include "rationeval/parallel.hpp"
#include "rationeval/xml.hpp"

namespace rationeval {

// One corpus article after markup removal. `text` is the byte-exact
// concatenation of the source text nodes; qrel offsets index into it.
struct Document {
    std::string doc_id;
    std::string text;
    std::uint64_t byte_len = 0;
};

struct CorpusStats {
    std::uint64_t n_documents = 0;
    std::uint64_t total_bytes = 0;
    std::uint64_t min_doc_bytes = 0;  // 0 when the store is empty
    std::uint64_t max_doc_bytes = 0;
};

struct LoadFailure {
    std::string source;
    std::string message;
};

struct DocumentStore {
    std::map<std::string, Document> docs;
    std::vector<LoadFailure> failures;  // extraction error ledger

    const Document* find(const std::string& doc_id) const {
        auto it = docs.find(doc_id);
        return it == docs.end() ? nullptr : &it->second;
    }
    std::size_t size() const { return docs.size(); }
};

struct LoadOptions {
    std::optional<std::set<std::string>> id_filter;
    ExtractOptions extract;
    int workers = 1;
    // Optional filename-stem -> doc_id overrides.
    std::map<std::string, std::string> id_map;
};

namespace detail {

inline std::string entry_stem(const std::string& entry_name) {
    std::string name = entry_name;
    std::size_t slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    std::size_t dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

inline bool has_xml_extension(const std::string& name) {
    if (name.size() < 4) return false;
    std::string ext = to_lower(name.substr(name.size() - 4));
    return ext == ".xml";
}

}  // namespace detail

inline bool is_corpus_cache(const std::filesystem::path& source) {
    return std::filesystem::is_directory(source) &&
           std::filesystem::exists(source / "manifest.csv");
}

// Reads back a cache directory previously written by write_corpus_cache.
inline DocumentStore load_corpus_cache(const std::filesystem::path& dir,
                                       const std::optional<std::set<std::string>>& id_filter = {}) {
    DocumentStore store;
    std::vector<std::string> lines = read_lines(dir / "manifest.csv");
    for (std::size_t i = 1; i < lines.size(); ++i) {  // line 0 is the header
        std::vector<std::string> fields = csv_split(lines[i]);
        if (fields.size() < 3) {
            store.failures.push_back({"manifest.csv", "bad manifest row: " + lines[i]});
            continue;
        }
        const std::string& doc_id = fields[0];
        if (id_filter && !id_filter->count(doc_id)) continue;
        std::filesystem::path doc_path = dir / (doc_id + ".txt");
        try {
            std::string text = read_file(doc_path);
            std::uint64_t declared = parse_int<std::uint64_t>(fields[1], 1, "byte_len");
            if (declared != text.size()) {
                store.failures.push_back({doc_path.string(), "cache byte_len mismatch"});
                continue;
            }
            store.docs.emplace(doc_id, Document{doc_id, std::move(text), declared});
        } catch (const Error& e) {
            store.failures.push_back({doc_path.string(), e.what()});
        }
    }
    return store;
}

// Extracts every .xml entry of the source (directory, tar[.gz] or zip) and
// indexes the documents by id. Failed extractions land in the ledger, never
// silently dropped. Loading is deterministic: entries are processed in a
// fixed order and results keyed by doc_id.
inline DocumentStore load_corpus(const std::filesystem::path& source, const LoadOptions& opts = {}) {
    if (is_corpus_cache(source)) {
        return load_corpus_cache(source, opts.id_filter);
    }

    struct RawEntry {
        std::string name;
        std::string doc_id;
        std::string bytes;
    };
    std::vector<RawEntry> entries;
    for_each_source_entry(source, [&](const std::string& name, std::string&& bytes) {
        if (!detail::has_xml_extension(name)) return;
        std::string stem = detail::entry_stem(name);
        auto mapped = opts.id_map.find(stem);
        std::string doc_id = mapped != opts.id_map.end() ? mapped->second : stem;
        if (opts.id_filter && !opts.id_filter->count(doc_id)) return;
        entries.push_back({name, std::move(doc_id), std::move(bytes)});
    });

    struct Extracted {
        std::optional<Document> doc;
        std::optional<LoadFailure> failure;
    };
    DocumentStore store;
    ordered_parallel_map<Extracted>(
        entries.size(), opts.workers,
        [&](std::size_t i) -> Extracted {
            RawEntry& entry = entries[i];
            try {
                std::string text = extract_text(entry.bytes, opts.extract);
                std::uint64_t len = text.size();
                return {Document{entry.doc_id, std::move(text), len}, std::nullopt};
            } catch (const Error& e) {
                return {std::nullopt, LoadFailure{entry.name, e.what()}};
            }
        },
        [&](std::size_t, Extracted&& ex) {
            if (ex.failure) {
                store.failures.push_back(std::move(*ex.failure));
                return;
            }
            auto [it, inserted] = store.docs.emplace(ex.doc->doc_id, std::move(*ex.doc));
            if (!inserted) throw DuplicateDocId(it->first);
        });
    return store;
}

inline CorpusStats corpus_stats(const DocumentStore& store) {
    CorpusStats stats;
    for (const auto& [id, doc] : store.docs) {
        if (stats.n_documents == 0) {
            stats.min_doc_bytes = doc.byte_len;
            stats.max_doc_bytes = doc.byte_len;
        } else {
            stats.min_doc_bytes = std::min(stats.min_doc_bytes, doc.byte_len);
            stats.max_doc_bytes = std::max(stats.max_doc_bytes, doc.byte_len);
        }
        stats.total_bytes += doc.byte_len;
        ++stats.n_documents;
    }
    return stats;
}

// The manifest body doubles as the corpus content digest input, so a cache
// directory and a freshly extracted store hash identically.
inline std::string corpus_manifest_csv(const DocumentStore& store) {
    std::string out = "doc_id,byte_len,sha256\n";
    for (const auto& [id, doc] : store.docs) {
        out += csv_row({id, std::to_string(doc.byte_len), sha256_hex(doc.text)});
    }
    return out;
}

inline std::string corpus_digest(const DocumentStore& store) {
    return sha256_hex(corpus_manifest_csv(store));
}

// One raw-bytes file per document plus manifest.csv (doc_id, byte_len, sha256).
inline void write_corpus_cache(const DocumentStore& store, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (const auto& [id, doc] : store.docs) {
        if (id.find('/') != std::string::npos || id.find("..") != std::string::npos) {
            throw DataError("doc_id unusable as cache filename: " + id);
        }
        write_file(out_dir / (id + ".txt"), doc.text);
    }
    write_file(out_dir / "manifest.csv", corpus_manifest_csv(store));
}

}  // namespace rationeval
