#pragma once

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rationeval/errors.hpp"
#include "rationeval/io.hpp"

namespace rationeval {

// Visits every regular file in a corpus source: a directory tree, a .tar,
// a gzip-compressed tar, or a .zip (stored or deflated members).
// Entries are visited in a deterministic order (directory: sorted paths;
// archives: archive order). The callback receives the entry name relative
// to the source and the raw bytes.
using ArchiveEntryFn = std::function<void(const std::string& name, std::string&& bytes)>;

namespace detail {

inline std::string gunzip(std::string_view bytes) {
    z_stream zs{};
    if (inflateInit2(&zs, 15 + 16) != Z_OK) throw DataError("inflateInit2 failed");
    std::string out;
    out.resize(std::max<std::size_t>(bytes.size() * 4, 1 << 16));
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
    zs.avail_in = static_cast<uInt>(bytes.size());
    std::size_t written = 0;
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        if (written == out.size()) out.resize(out.size() * 2);
        zs.next_out = reinterpret_cast<Bytef*>(out.data() + written);
        zs.avail_out = static_cast<uInt>(out.size() - written);
        rc = inflate(&zs, Z_NO_FLUSH);
        written = out.size() - zs.avail_out;
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw DataError("gzip decompression failed");
        }
    }
    inflateEnd(&zs);
    out.resize(written);
    return out;
}

inline std::string inflate_raw(std::string_view bytes, std::size_t expected_size) {
    z_stream zs{};
    if (inflateInit2(&zs, -15) != Z_OK) throw DataError("inflateInit2 failed");
    std::string out;
    out.resize(expected_size);
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
    zs.avail_in = static_cast<uInt>(bytes.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || zs.avail_out != 0) throw DataError("zip member decompression failed");
    return out;
}

inline std::uint64_t parse_octal(const char* field, std::size_t len) {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < len; ++i) {
        char c = field[i];
        if (c == '\0' || c == ' ') {
            if (value) break;
            continue;
        }
        if (c < '0' || c > '7') throw DataError("bad octal field in tar header");
        value = value * 8 + static_cast<std::uint64_t>(c - '0');
    }
    return value;
}

inline void walk_tar(std::string_view bytes, const ArchiveEntryFn& fn) {
    std::size_t pos = 0;
    std::string pending_long_name;
    while (pos + 512 <= bytes.size()) {
        const char* hdr = bytes.data() + pos;
        bool all_zero = true;
        for (std::size_t i = 0; i < 512 && all_zero; ++i) all_zero = hdr[i] == 0;
        if (all_zero) break;

        char name_field[101] = {};
        std::memcpy(name_field, hdr, 100);
        std::string name = name_field;
        std::uint64_t size = parse_octal(hdr + 124, 12);
        char typeflag = hdr[156];
        if (std::memcmp(hdr + 257, "ustar", 5) == 0) {
            char prefix_field[156] = {};
            std::memcpy(prefix_field, hdr + 345, 155);
            if (prefix_field[0]) name = std::string(prefix_field) + "/" + name;
        }
        pos += 512;
        std::uint64_t padded = (size + 511) / 512 * 512;
        if (pos + size > bytes.size()) throw DataError("truncated tar archive");

        if (typeflag == 'L') {
            pending_long_name = std::string(bytes.substr(pos, size));
            while (!pending_long_name.empty() && pending_long_name.back() == '\0') pending_long_name.pop_back();
        } else if (typeflag == '0' || typeflag == '\0') {
            if (!pending_long_name.empty()) {
                name = pending_long_name;
                pending_long_name.clear();
            }
            fn(name, std::string(bytes.substr(pos, size)));
        } else {
            pending_long_name.clear();  // skip dirs, pax headers, links
        }
        pos += padded;
    }
}

inline std::uint32_t read_le32(const char* p) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(p[0])) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(p[1])) << 8 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(p[2])) << 16 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(p[3])) << 24;
}

inline std::uint16_t read_le16(const char* p) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(p[0]) |
                                      static_cast<unsigned char>(p[1]) << 8);
}

inline void walk_zip(std::string_view bytes, const ArchiveEntryFn& fn) {
    // Locate the end-of-central-directory record.
    const std::string_view eocd_sig = "PK\x05\x06";
    std::size_t eocd = bytes.rfind(eocd_sig);
    if (eocd == std::string_view::npos || eocd + 22 > bytes.size()) {
        throw DataError("zip: end-of-central-directory record not found");
    }
    std::uint16_t n_entries = read_le16(bytes.data() + eocd + 10);
    std::uint32_t cd_offset = read_le32(bytes.data() + eocd + 16);

    std::size_t pos = cd_offset;
    for (std::uint16_t e = 0; e < n_entries; ++e) {
        if (pos + 46 > bytes.size() || bytes.substr(pos, 4) != std::string_view("PK\x01\x02", 4)) {
            throw DataError("zip: bad central directory entry");
        }
        std::uint16_t method = read_le16(bytes.data() + pos + 10);
        std::uint32_t comp_size = read_le32(bytes.data() + pos + 20);
        std::uint32_t uncomp_size = read_le32(bytes.data() + pos + 24);
        std::uint16_t name_len = read_le16(bytes.data() + pos + 28);
        std::uint16_t extra_len = read_le16(bytes.data() + pos + 30);
        std::uint16_t comment_len = read_le16(bytes.data() + pos + 32);
        std::uint32_t local_offset = read_le32(bytes.data() + pos + 42);
        std::string name(bytes.substr(pos + 46, name_len));
        pos += 46 + name_len + extra_len + comment_len;

        if (comp_size == 0xFFFFFFFF || uncomp_size == 0xFFFFFFFF) {
            throw DataError("zip64 archives are not supported");
        }
        if (!name.empty() && name.back() == '/') continue;  // directory entry

        if (local_offset + 30 > bytes.size()) throw DataError("zip: bad local header offset");
        const char* lh = bytes.data() + local_offset;
        if (std::string_view(lh, 4) != std::string_view("PK\x03\x04", 4)) {
            throw DataError("zip: bad local header signature");
        }
        std::uint16_t lh_name_len = read_le16(lh + 26);
        std::uint16_t lh_extra_len = read_le16(lh + 28);
        std::size_t data_pos = local_offset + 30 + lh_name_len + lh_extra_len;
        if (data_pos + comp_size > bytes.size()) throw DataError("zip: truncated member data");
        std::string_view data = bytes.substr(data_pos, comp_size);

        if (method == 0) {
            fn(name, std::string(data));
        } else if (method == 8) {
            fn(name, inflate_raw(data, uncomp_size));
        } else {
            throw DataError("zip: unsupported compression method " + std::to_string(method));
        }
    }
}

}  // namespace detail

inline void for_each_source_entry(const std::filesystem::path& source, const ArchiveEntryFn& fn) {
    namespace fs = std::filesystem;
    if (!fs::exists(source)) throw SourceNotFound(source.string());
    if (fs::is_directory(source)) {
        std::vector<fs::path> paths;
        for (const auto& entry : fs::recursive_directory_iterator(source)) {
            if (entry.is_regular_file()) paths.push_back(entry.path());
        }
        std::sort(paths.begin(), paths.end());
        for (const auto& p : paths) {
            fn(fs::relative(p, source).generic_string(), read_file(p));
        }
        return;
    }
    std::string bytes = read_file(source);
    if (bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1F &&
        static_cast<unsigned char>(bytes[1]) == 0x8B) {
        std::string inflated = detail::gunzip(bytes);
        detail::walk_tar(inflated, fn);
        return;
    }
    if (bytes.size() >= 4 && bytes.compare(0, 2, "PK") == 0) {
        detail::walk_zip(bytes, fn);
        return;
    }
    if (bytes.size() >= 512) {
        detail::walk_tar(bytes, fn);
        return;
    }
    throw DataError("unrecognized corpus source format: " + source.string());
}

}  // namespace rationeval
