// Copyright 2026 The ghostswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text formats written by ghostctl: per-pixel CSV records, plain (P2) PGM
// renders and small CSV tables. Everything is produced in memory first so a
// command can fail before touching the filesystem.

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghostswap/types.h"

namespace ghostswap::io {

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);
/// Inverse of format_double. Throws ConfigError on malformed input.
double parse_double(std::string_view text);

/// One row of an image CSV. Pixel index is 1-based.
struct ImageRecordRow {
    int pixel_index = 0;
    double analytic_intensity = 0;
    std::optional<std::int64_t> sampled_count;
    std::optional<double> corrected_count;

    friend bool operator==(const ImageRecordRow&, const ImageRecordRow&) = default;
};

inline constexpr const char* kImageRecordHeader = "pixel_index,analytic_intensity,sampled_count,corrected_count";

std::string write_image_record(std::span<const ImageRecordRow> rows);
/// Throws ConfigError on a missing header, wrong column count or bad number.
std::vector<ImageRecordRow> read_image_record(std::istream& in);

/// Comma-separated table with a header row and LF line endings.
std::string write_table(std::span<const std::string> header, std::span<const std::vector<std::string>> rows);

struct PgmImage {
    int width = 0;
    int height = 0;
    int max_value = 65535;
    std::vector<int> values;  // row-major, top row first
};

struct PgmRender {
    PgmImage image;
    /// Grey level per unit intensity; 0 for an all-zero image.
    double scale = 0;
};

inline constexpr int kPgmMaxValue = 65535;

/// Linear map of pixels onto [0, 65535] with the maximum at 65535. Row
/// layout gives a d x 1 strip; grid layout places pixel r * s + c at row r
/// counted from the bottom.
PgmRender render_pgm(std::span<const double> pixels, ObjectMask::Layout layout);

std::string write_pgm(const PgmImage& image);
/// Parses the P2 grammar including '#' comments. Throws ConfigError.
PgmImage parse_pgm(std::istream& in);

/// A file to be written: path and full contents.
struct OutputFile {
    std::filesystem::path path;
    std::string contents;
};

/// Writes every file, creating parent directories.
void write_files(std::span<const OutputFile> files);

}  // namespace ghostswap::io
