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

#include "ghostswap/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ghostswap/error.h"

namespace ghostswap::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::int64_t parse_int(std::string_view text) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("not an integer: '" + std::string(text) + "'");
    }
    return v;
}

// Next whitespace-delimited PGM token, skipping '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    char ch;
    while (in.get(ch)) {
        if (ch == '#') {
            std::string rest;
            std::getline(in, rest);
            if (!tok.empty()) break;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(ch);
    }
    return tok;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw InvariantError("could not format double");
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("not a number: '" + std::string(text) + "'");
    }
    return v;
}

std::string write_image_record(std::span<const ImageRecordRow> rows) {
    std::string out = std::string(kImageRecordHeader) + "\n";
    for (const auto& r : rows) {
        out += std::to_string(r.pixel_index);
        out += ',';
        out += format_double(r.analytic_intensity);
        out += ',';
        if (r.sampled_count) out += std::to_string(*r.sampled_count);
        out += ',';
        if (r.corrected_count) out += format_double(*r.corrected_count);
        out += '\n';
    }
    return out;
}

std::vector<ImageRecordRow> read_image_record(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kImageRecordHeader) {
        throw ConfigError("image record is missing its header row");
    }
    std::vector<ImageRecordRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 4) throw ConfigError("image record row has " + std::to_string(f.size()) + " fields");
        ImageRecordRow r;
        r.pixel_index = static_cast<int>(parse_int(f[0]));
        r.analytic_intensity = parse_double(f[1]);
        if (!f[2].empty()) r.sampled_count = parse_int(f[2]);
        if (!f[3].empty()) r.corrected_count = parse_double(f[3]);
        if (r.pixel_index != static_cast<int>(rows.size()) + 1) {
            throw ConfigError("image record rows must be pixel 1..d in order");
        }
        rows.push_back(r);
    }
    return rows;
}

std::string write_table(std::span<const std::string> header, std::span<const std::vector<std::string>> rows) {
    auto join = [](std::span<const std::string> cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        return line + "\n";
    };
    std::string out = join(header);
    for (const auto& r : rows) out += join(r);
    return out;
}

PgmRender render_pgm(std::span<const double> pixels, ObjectMask::Layout layout) {
    const int d = static_cast<int>(pixels.size());
    PgmRender out;
    auto& img = out.image;
    img.max_value = kPgmMaxValue;
    if (layout == ObjectMask::Layout::Grid) {
        auto side = grid_side(d);
        if (!side) throw InvalidArgument("grid render needs a square pixel count");
        img.width = img.height = *side;
    } else {
        img.width = d;
        img.height = 1;
    }
    const double peak = pixels.empty() ? 0.0 : *std::max_element(pixels.begin(), pixels.end());
    out.scale = peak > 0 ? kPgmMaxValue / peak : 0.0;
    img.values.assign(pixels.size(), 0);
    for (int p = 0; p < d; ++p) {
        const int grey = static_cast<int>(std::lround(pixels[static_cast<std::size_t>(p)] * out.scale));
        int slot = p;
        if (layout == ObjectMask::Layout::Grid) {
            const int row_from_bottom = p / img.width;
            const int col = p % img.width;
            slot = (img.height - 1 - row_from_bottom) * img.width + col;
        }
        img.values[static_cast<std::size_t>(slot)] = std::clamp(grey, 0, kPgmMaxValue);
    }
    return out;
}

std::string write_pgm(const PgmImage& image) {
    std::string out = "P2\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n" +
                      std::to_string(image.max_value) + "\n";
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            if (x) out += ' ';
            out += std::to_string(image.values[static_cast<std::size_t>(y * image.width + x)]);
        }
        out += '\n';
    }
    return out;
}

PgmImage parse_pgm(std::istream& in) {
    if (next_token(in) != "P2") throw ConfigError("not a plain PGM file");
    PgmImage img;
    img.width = static_cast<int>(parse_int(next_token(in)));
    img.height = static_cast<int>(parse_int(next_token(in)));
    img.max_value = static_cast<int>(parse_int(next_token(in)));
    if (img.width <= 0 || img.height <= 0 || img.max_value <= 0 || img.max_value > 65535) {
        throw ConfigError("invalid PGM header");
    }
    const auto n = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
    img.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto tok = next_token(in);
        if (tok.empty()) throw ConfigError("PGM raster is truncated");
        const auto v = parse_int(tok);
        if (v < 0 || v > img.max_value) throw ConfigError("PGM value out of range");
        img.values.push_back(static_cast<int>(v));
    }
    if (!next_token(in).empty()) throw ConfigError("PGM raster has trailing data");
    return img;
}

void write_files(std::span<const OutputFile> files) {
    for (const auto& f : files) {
        if (f.path.has_parent_path()) std::filesystem::create_directories(f.path.parent_path());
        std::ofstream out(f.path, std::ios::binary);
        if (!out) throw GhostError("cannot open " + f.path.string() + " for writing");
        out << f.contents;
        if (!out) throw GhostError("failed writing " + f.path.string());
    }
}

}  // namespace ghostswap::io
