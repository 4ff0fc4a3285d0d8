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

// JSON experiment descriptions for the image and hom commands. Parsing is
// strict: unknown keys, wrong types and out-of-range values all raise
// ConfigError before anything runs.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghostswap/coincidence.h"
#include "ghostswap/types.h"

namespace ghostswap {

/// A mask given as an array of 0/1 or as a preset name ("half_on",
/// "quadrant_on"). `layout` is "row" or "grid"; presets pick their own.
ObjectMask parse_mask(const nlohmann::json& mask, int dimension, const nlohmann::json* layout = nullptr);

/// Mask file for figure2: either a bare mask value or an object with "mask"
/// and optional "layout".
ObjectMask load_mask_file(const std::filesystem::path& path, int dimension);

nlohmann::json read_json_file(const std::filesystem::path& path);

struct ImageOutputs {
    std::string csv = "image.csv";
    std::string analytic_pgm = "analytic.pgm";
    std::string sampled_pgm = "sampled.pgm";
    std::string summary = "summary.json";
};

struct ImageExperiment {
    int dimension = 0;
    ObjectMask mask;
    std::string mask_source;  // "explicit" or the preset name
    ImageFamily family = ImageFamily::AS;
    SamplingMode mode = SamplingMode::FixedTime;
    std::optional<double> total;  // expected_total or shots
    double accidental_fraction = 0;
    std::uint64_t seed = 0;
    ImageOutputs outputs;

    /// Throws ConfigError when no total was given.
    CampaignConfig campaign() const;
};

ImageExperiment parse_image_experiment(const nlohmann::json& doc);

struct HomExperiment {
    int dimension = 0;
    ObjectMask pattern_a;
    ObjectMask pattern_d;
    std::vector<double> delays;
    double dip_width = 1;
    std::int64_t shots_per_delay = 0;
    std::uint64_t seed = 0;
    std::string csv = "hom.csv";
};

/// "delays" is an array, or {"start", "stop", "count"} for a uniform grid.
HomExperiment parse_hom_experiment(const nlohmann::json& doc);

}  // namespace ghostswap
