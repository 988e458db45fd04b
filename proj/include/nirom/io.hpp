// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file io.hpp
///
/// Text formats: the data CSV, the model file and flat key = value configs.
///
/// Data CSV: header `t,u1..u{n_u},z1..z{n_z}`, one row per sample, values in
/// shortest round-trip decimal form.
///
/// Model file: line oriented,
///
///     nirom-model 1
///     class bilinear
///     h 0x1p+0
///     dims <r> <n_u> <n_z>
///     delay <tau_1> ... <tau_nz>
///     meta <key> = <value>
///     matrix A <rows> <cols>
///     <row-major hex-float values, one matrix row per line>
///     ...
///     end
///
/// Hex floats make the round trip bit-exact.
///
#ifndef NIROM_IO_HPP
#define NIROM_IO_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nirom/core.hpp>

namespace nirom
{

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
/// Lossless hex-float form, e.g. -0x1.8p+1.
std::string format_hex(double v);
/// Accepts decimal, hex-float (with or without 0x), inf and nan. Throws ParseError.
double parse_double(const std::string& s);

void write_csv(std::ostream& os, const TimeSeriesData& data);
void write_csv(const std::string& path, const TimeSeriesData& data);
/// Throws IoError on unreadable files and malformed content.
TimeSeriesData read_csv(std::istream& is);
TimeSeriesData read_csv(const std::string& path);

void write_model(std::ostream& os, const InferredModel& model);
void write_model(const std::string& path, const InferredModel& model);
InferredModel read_model(std::istream& is);
InferredModel read_model(const std::string& path);

///
/// Flat configuration: `key = value` lines, `#` starts a comment. A key may
/// repeat (e.g. one `source` line per source). Keys outside the allowed set
/// are rejected with ParseError.
///
class Config
{
public:
    Config() = default;

    static Config parse(std::istream& is, const std::set<std::string>& allowed);
    static Config parse_string(const std::string& text, const std::set<std::string>& allowed);
    static Config load(const std::string& path, const std::set<std::string>& allowed);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    /// Last value given for key.
    std::optional<std::string> get(const std::string& key) const;
    std::vector<std::string> get_all(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    Index get_index(const std::string& key, Index fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    void set(const std::string& key, const std::string& value) { values_[key].push_back(value); }

private:
    std::map<std::string, std::vector<std::string>> values_;
};

/// Splits on whitespace.
std::vector<std::string> split_words(const std::string& s);

} // namespace nirom

#endif /* NIROM_IO_HPP */
