// io.hpp
// Window cache file format "GBSV1" and CSV helpers.
//
// Cache layout (little-endian):
//   magic "GBSV1" | u64 start | u64 length | f64 lambda[length]
//   | i8 mobius[length] | u32 d2[length] | u32 d4[length]
//   | u8 is_prime[length]
// Round-trips are bit-exact.

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "gbseed/arith.hpp"
#include "gbseed/common.hpp"

namespace gbseed::io {

inline constexpr char kCacheMagic[5] = {'G', 'B', 'S', 'V', '1'};

namespace detail {

template <typename T>
void write_raw(std::ofstream& out, const T* data, size_t count) {
    out.write(reinterpret_cast<const char*>(data),
              static_cast<std::streamsize>(count * sizeof(T)));
}

template <typename T>
void read_raw(std::ifstream& in, T* data, size_t count) {
    in.read(reinterpret_cast<char*>(data),
            static_cast<std::streamsize>(count * sizeof(T)));
    if (!in) throw format_error("window cache: truncated file");
}

} // namespace detail

inline void write_window_cache(const std::string& path,
                               const arith::SieveWindow& w) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw format_error("window cache: cannot open for writing: " + path);
    out.write(kCacheMagic, 5);
    uint64_t start = w.start, length = w.length;
    detail::write_raw(out, &start, 1);
    detail::write_raw(out, &length, 1);
    detail::write_raw(out, w.lambda.data(), w.lambda.size());
    detail::write_raw(out, w.mobius.data(), w.mobius.size());
    detail::write_raw(out, w.d2.data(), w.d2.size());
    detail::write_raw(out, w.d4.data(), w.d4.size());
    detail::write_raw(out, w.is_prime.data(), w.is_prime.size());
    if (!out) throw format_error("window cache: write failed: " + path);
}

inline arith::SieveWindow read_window_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error("window cache: cannot open: " + path);
    char magic[5];
    in.read(magic, 5);
    if (!in || std::memcmp(magic, kCacheMagic, 5) != 0)
        throw format_error("window cache: bad magic");
    arith::SieveWindow w;
    detail::read_raw(in, &w.start, 1);
    detail::read_raw(in, &w.length, 1);
    if (w.length > arith::kWindowLengthCap)
        throw format_error("window cache: implausible length field");
    size_t L = static_cast<size_t>(w.length);
    w.lambda.resize(L);
    w.mobius.resize(L);
    w.d2.resize(L);
    w.d4.resize(L);
    w.is_prime.resize(L);
    detail::read_raw(in, w.lambda.data(), L);
    detail::read_raw(in, w.mobius.data(), L);
    detail::read_raw(in, w.d2.data(), L);
    detail::read_raw(in, w.d4.data(), L);
    detail::read_raw(in, w.is_prime.data(), L);
    char extra;
    if (in.read(&extra, 1))
        throw format_error("window cache: trailing bytes");
    return w;
}

// -------------------------------------------------------------------------
// CSV with RFC 4180 quoting. Numbers are emitted with %.17g so reruns are
// byte-identical.
// -------------------------------------------------------------------------
inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::trunc) {
        if (!out_) throw format_error("csv: cannot open for writing: " + path);
    }
    void row(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << csv_escape(fields[i]);
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

// spectrum grid as (j, re, im) rows for plotting
template <typename Grid>
void write_spectrum_csv(const std::string& path, const Grid& g) {
    CsvWriter csv(path);
    csv.row({"j", "re", "im"});
    for (uint64_t j = 0; j < g.N; ++j)
        csv.row({std::to_string(j), fmt_double(g.values[j].real()),
                 fmt_double(g.values[j].imag())});
}

} // namespace gbseed::io
