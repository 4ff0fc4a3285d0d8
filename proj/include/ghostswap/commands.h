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

// ghostctl subcommands. Each returns a process exit code and writes nothing
// unless it succeeds.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ghostswap/images.h"
#include "ghostswap/io.h"

namespace ghostswap::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kConfig = 2;
inline constexpr int kDegenerate = 3;
inline constexpr int kInvariant = 4;
}  // namespace exit_code

struct ImageOptions {
    std::filesystem::path config;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out_dir = ".";
    bool analytic_only = false;
};

struct Figure2Options {
    int dimension = 100;
    int budget = 20;
    std::optional<std::filesystem::path> mask;
    std::filesystem::path out_dir = ".";
    /// Places the default mask when no mask file is given.
    std::uint64_t seed = 0;
};

struct HomOptions {
    std::filesystem::path config;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out_dir = ".";
};

struct ContrastCurveOptions {
    int d_min = 2;
    int d_max = 16;
    int budget = 1;
    std::filesystem::path out = "contrast_curve.csv";
};

int cmd_image(const ImageOptions& opts, std::ostream& err);
int cmd_figure2(const Figure2Options& opts, std::ostream& err);
int cmd_hom(const HomOptions& opts, std::ostream& err);
int cmd_contrast_curve(const ContrastCurveOptions& opts, std::ostream& err);

/// Raw and accidental-corrected contrast of a sampled image, with the
/// propagated and bootstrap sigmas. Depends only on its arguments, so an
/// image CSV read back reproduces it exactly.
nlohmann::json contrast_summary(const Image<double>& counts, const Image<double>& corrected, const ObjectMask& mask,
                                std::uint64_t seed);

/// Rebuilds the sampled and corrected images from an image CSV.
std::pair<Image<double>, Image<double>> images_from_record(std::span<const io::ImageRecordRow> rows);

/// The five projection-family images and the AS + S sum.
struct Figure2Images {
    ExactImage psi_minus, psi_plus, phi, as, s, as_plus_s;
};

Figure2Images figure2_images(const ObjectMask& mask);

/// Throws InvariantError unless AS == Psi-, S == Psi+ + Phi and AS + S is
/// flat at B / d^2.
void verify_figure2_identities(const Figure2Images& images, const ObjectMask& mask);

/// Default figure2 object: `budget` bright pixels chosen by a seeded shuffle,
/// on a grid layout when d is a perfect square.
ObjectMask default_figure2_mask(int dimension, int budget, std::uint64_t seed);

}  // namespace ghostswap::cli
