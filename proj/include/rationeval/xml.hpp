#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rationeval/errors.hpp"
#include "rationeval/strings.hpp"

namespace rationeval {

// Lenient streaming tag scanner. It recognizes tags, comments, CDATA,
// processing instructions and DOCTYPE declarations, and reports decoded
// character data in document order. It does not validate element nesting:
// the byte offsets of the extracted text are what downstream consumers rely
// on, and a recovering parser must never shift them.
//
// Lenient recovery: a '<' that cannot start any markup construct is treated
// as literal text; unknown entity references pass through as literal bytes.
// MalformedXml is raised only for constructs that are unterminated at end of
// input, i.e. input that cannot be scanned even leniently.

struct XmlCallbacks {
    // name is the raw element name; raw_attrs the unparsed attribute region.
    std::function<void(std::string_view name, std::string_view raw_attrs)> start_element;
    std::function<void(std::string_view name)> end_element;
    // Decoded character data (entities expanded, CDATA unwrapped). May be
    // called multiple times per text node.
    std::function<void(std::string_view text)> text;
};

namespace detail {

inline bool is_name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' ||
           static_cast<unsigned char>(c) >= 0x80;
}

inline bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

inline void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decodes the entity reference starting at s[pos] (the '&'). On success
// appends the decoded bytes and returns the index just past the ';'.
// On failure appends nothing and returns pos (caller emits the literal '&').
inline std::size_t decode_entity(std::string_view s, std::size_t pos, std::string& out) {
    std::size_t semi = s.find(';', pos + 1);
    if (semi == std::string_view::npos || semi == pos + 1 || semi - pos > 32) return pos;
    std::string_view name = s.substr(pos + 1, semi - pos - 1);
    if (name == "amp") out.push_back('&');
    else if (name == "lt") out.push_back('<');
    else if (name == "gt") out.push_back('>');
    else if (name == "quot") out.push_back('"');
    else if (name == "apos") out.push_back('\'');
    else if (name[0] == '#') {
        std::uint32_t cp = 0;
        bool ok = name.size() > 1;
        if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
            for (std::size_t i = 2; i < name.size() && ok; ++i) {
                char c = name[i];
                std::uint32_t digit;
                if (c >= '0' && c <= '9') digit = static_cast<std::uint32_t>(c - '0');
                else if (c >= 'a' && c <= 'f') digit = static_cast<std::uint32_t>(c - 'a' + 10);
                else if (c >= 'A' && c <= 'F') digit = static_cast<std::uint32_t>(c - 'A' + 10);
                else { ok = false; break; }
                cp = cp * 16 + digit;
                if (cp > 0x10FFFF) ok = false;
            }
        } else {
            for (std::size_t i = 1; i < name.size() && ok; ++i) {
                char c = name[i];
                if (c < '0' || c > '9') { ok = false; break; }
                cp = cp * 10 + static_cast<std::uint32_t>(c - '0');
                if (cp > 0x10FFFF) ok = false;
            }
        }
        if (!ok || cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) return pos;
        append_utf8(out, cp);
    } else {
        return pos;  // unknown entity: caller passes it through literally
    }
    return semi + 1;
}

}  // namespace detail

inline void scan_xml(std::string_view xml, const XmlCallbacks& cb) {
    std::string text_buf;
    auto flush_text = [&] {
        if (!text_buf.empty()) {
            if (cb.text) cb.text(text_buf);
            text_buf.clear();
        }
    };

    std::size_t i = 0;
    const std::size_t n = xml.size();
    while (i < n) {
        char c = xml[i];
        if (c == '<') {
            if (xml.substr(i, 4) == "<!--") {
                std::size_t end = xml.find("-->", i + 4);
                if (end == std::string_view::npos) throw MalformedXml("unterminated comment");
                i = end + 3;
                continue;
            }
            if (xml.substr(i, 9) == "<![CDATA[") {
                std::size_t end = xml.find("]]>", i + 9);
                if (end == std::string_view::npos) throw MalformedXml("unterminated CDATA section");
                text_buf.append(xml.substr(i + 9, end - (i + 9)));
                i = end + 3;
                continue;
            }
            if (i + 1 < n && xml[i + 1] == '!') {
                // DOCTYPE or other declaration; honor an internal subset.
                std::size_t j = i + 2;
                int bracket_depth = 0;
                for (; j < n; ++j) {
                    if (xml[j] == '[') ++bracket_depth;
                    else if (xml[j] == ']') --bracket_depth;
                    else if (xml[j] == '>' && bracket_depth <= 0) break;
                }
                if (j >= n) throw MalformedXml("unterminated declaration");
                i = j + 1;
                continue;
            }
            if (i + 1 < n && xml[i + 1] == '?') {
                std::size_t end = xml.find("?>", i + 2);
                if (end == std::string_view::npos) throw MalformedXml("unterminated processing instruction");
                i = end + 2;
                continue;
            }
            bool closing = i + 1 < n && xml[i + 1] == '/';
            std::size_t name_pos = i + (closing ? 2 : 1);
            if (name_pos < n && detail::is_name_start(xml[name_pos])) {
                std::size_t j = name_pos;
                while (j < n && detail::is_name_char(xml[j])) ++j;
                std::string_view name = xml.substr(name_pos, j - name_pos);
                // Scan to '>' honoring quoted attribute values.
                char quote = 0;
                std::size_t k = j;
                for (; k < n; ++k) {
                    char t = xml[k];
                    if (quote) {
                        if (t == quote) quote = 0;
                    } else if (t == '"' || t == '\'') {
                        quote = t;
                    } else if (t == '>') {
                        break;
                    }
                }
                if (k >= n) throw MalformedXml("unterminated tag <" + std::string(name));
                flush_text();
                if (closing) {
                    if (cb.end_element) cb.end_element(name);
                } else {
                    bool self_closing = k > j && xml[k - 1] == '/' && quote == 0;
                    std::string_view raw_attrs = xml.substr(j, (self_closing ? k - 1 : k) - j);
                    if (cb.start_element) cb.start_element(name, raw_attrs);
                    if (self_closing && cb.end_element) cb.end_element(name);
                }
                i = k + 1;
                continue;
            }
            // Not a recognizable markup construct: literal '<'.
            text_buf.push_back('<');
            ++i;
            continue;
        }
        if (c == '&') {
            std::size_t next = detail::decode_entity(xml, i, text_buf);
            if (next == i) {
                text_buf.push_back('&');
                ++i;
            } else {
                i = next;
            }
            continue;
        }
        text_buf.push_back(c);
        ++i;
    }
    flush_text();
}

struct ExtractOptions {
    // When set, a single '\n' is inserted between text nodes that were
    // separated by element markup, for corpora whose qrel offsets were
    // computed against a separator-bearing extraction.
    bool newline_between_text_nodes = false;
};

// Plain-text extraction: the in-order concatenation of all decoded text
// nodes. Text-node bytes are preserved exactly; nothing is trimmed,
// collapsed or normalized, because qrel spans are byte-addressed.
inline std::string extract_text(std::string_view raw_xml, const ExtractOptions& opts = {}) {
    std::string out;
    out.reserve(raw_xml.size() / 2);
    bool tag_since_text = false;
    XmlCallbacks cb;
    cb.start_element = [&](std::string_view, std::string_view) { tag_since_text = true; };
    cb.end_element = [&](std::string_view) { tag_since_text = true; };
    cb.text = [&](std::string_view t) {
        if (opts.newline_between_text_nodes && tag_since_text && !out.empty()) out.push_back('\n');
        tag_since_text = false;
        out.append(t);
    };
    scan_xml(raw_xml, cb);
    return out;
}

// Attribute parsing for the few places that need it (topic files).
// Values are entity-decoded.
inline std::vector<std::pair<std::string, std::string>> parse_tag_attributes(std::string_view raw_attrs) {
    std::vector<std::pair<std::string, std::string>> attrs;
    std::size_t i = 0;
    const std::size_t n = raw_attrs.size();
    while (i < n) {
        while (i < n && is_ascii_space(raw_attrs[i])) ++i;
        if (i >= n || !detail::is_name_start(raw_attrs[i])) break;
        std::size_t name_start = i;
        while (i < n && detail::is_name_char(raw_attrs[i])) ++i;
        std::string name(raw_attrs.substr(name_start, i - name_start));
        while (i < n && is_ascii_space(raw_attrs[i])) ++i;
        if (i >= n || raw_attrs[i] != '=') {
            attrs.emplace_back(std::move(name), "");
            continue;
        }
        ++i;
        while (i < n && is_ascii_space(raw_attrs[i])) ++i;
        if (i >= n) break;
        std::string raw_value;
        if (raw_attrs[i] == '"' || raw_attrs[i] == '\'') {
            char quote = raw_attrs[i++];
            std::size_t value_start = i;
            while (i < n && raw_attrs[i] != quote) ++i;
            raw_value = std::string(raw_attrs.substr(value_start, i - value_start));
            if (i < n) ++i;
        } else {
            std::size_t value_start = i;
            while (i < n && !is_ascii_space(raw_attrs[i])) ++i;
            raw_value = std::string(raw_attrs.substr(value_start, i - value_start));
        }
        std::string value;
        for (std::size_t p = 0; p < raw_value.size();) {
            if (raw_value[p] == '&') {
                std::size_t next = detail::decode_entity(raw_value, p, value);
                if (next == p) {
                    value.push_back('&');
                    ++p;
                } else {
                    p = next;
                }
            } else {
                value.push_back(raw_value[p++]);
            }
        }
        attrs.emplace_back(std::move(name), std::move(value));
    }
    return attrs;
}

}  // namespace rationeval
