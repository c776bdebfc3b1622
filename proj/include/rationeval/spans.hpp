#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace rationeval {

// Half-open byte range [offset, offset+length) on a document's UTF-8 bytes.
struct ByteSpan {
    std::uint64_t offset = 0;
    std::uint64_t length = 0;

    std::uint64_t end() const { return offset + length; }
    friend bool operator==(const ByteSpan&, const ByteSpan&) = default;
};

// Sorts by offset and merges overlapping or adjacent spans (adjacent = next
// offset equals previous end). Zero-length inputs are dropped.
inline std::vector<ByteSpan> canonicalize_spans(std::vector<ByteSpan> spans) {
    std::erase_if(spans, [](const ByteSpan& s) { return s.length == 0; });
    std::sort(spans.begin(), spans.end(), [](const ByteSpan& a, const ByteSpan& b) {
        return a.offset != b.offset ? a.offset < b.offset : a.length < b.length;
    });
    std::vector<ByteSpan> out;
    for (const ByteSpan& s : spans) {
        if (!out.empty() && s.offset <= out.back().end()) {
            out.back().length = std::max(out.back().end(), s.end()) - out.back().offset;
        } else {
            out.push_back(s);
        }
    }
    return out;
}

inline std::uint64_t covered_bytes(const std::vector<ByteSpan>& canonical) {
    std::uint64_t total = 0;
    for (const ByteSpan& s : canonical) total += s.length;
    return total;
}

// Intersection size of two canonical span lists (two-pointer sweep).
inline std::uint64_t overlap_bytes(const std::vector<ByteSpan>& a, const std::vector<ByteSpan>& b) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        std::uint64_t lo = std::max(a[i].offset, b[j].offset);
        std::uint64_t hi = std::min(a[i].end(), b[j].end());
        if (lo < hi) total += hi - lo;
        if (a[i].end() < b[j].end()) {
            ++i;
        } else {
            ++j;
        }
    }
    return total;
}

}  // namespace rationeval
