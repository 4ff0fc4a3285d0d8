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

#include <CLI11.hpp>
#include <iostream>

#include "ghostswap/commands.h"

namespace cli = ghostswap::cli;

int main(int argc, char** argv) {
    CLI::App app{"ghostctl: entanglement-swapped ghost imaging simulator"};
    app.require_subcommand(1);

    cli::ImageOptions image;
    std::uint64_t image_seed = 0;
    auto* image_cmd = app.add_subcommand("image", "Analytic and sampled heralded image from an experiment file");
    image_cmd->add_option("config", image.config, "Experiment JSON file")->required();
    auto* image_seed_opt = image_cmd->add_option("--seed", image_seed, "Override the config seed");
    image_cmd->add_option("--out-dir", image.out_dir, "Directory for relative output paths");
    image_cmd->add_flag("--analytic-only", image.analytic_only, "Skip sampling; write every family image");

    cli::Figure2Options fig;
    std::string fig_mask;
    auto* fig_cmd = app.add_subcommand("figure2", "Predicted images for every B/C projection family");
    fig_cmd->add_option("--dimension,-d", fig.dimension, "Pixels per photon")->capture_default_str();
    fig_cmd->add_option("--budget,-b", fig.budget, "Number of bright object pixels")->capture_default_str();
    fig_cmd->add_option("--mask", fig_mask, "Mask JSON file (default: seeded random mask)");
    fig_cmd->add_option("--out-dir", fig.out_dir, "Output directory");
    fig_cmd->add_option("--seed", fig.seed, "Seed for the default mask");

    cli::HomOptions hom;
    std::uint64_t hom_seed = 0;
    auto* hom_cmd = app.add_subcommand("hom", "Beamsplitter coincidence rate over a delay scan");
    hom_cmd->add_option("config", hom.config, "HOM JSON file")->required();
    auto* hom_seed_opt = hom_cmd->add_option("--seed", hom_seed, "Override the config seed");
    hom_cmd->add_option("--out-dir", hom.out_dir, "Directory for relative output paths");

    cli::ContrastCurveOptions curve;
    auto* curve_cmd = app.add_subcommand("contrast-curve", "Predicted AS and S contrast against dimension");
    curve_cmd->add_option("--d-min", curve.d_min)->capture_default_str();
    curve_cmd->add_option("--d-max", curve.d_max)->capture_default_str();
    curve_cmd->add_option("--budget,-b", curve.budget)->capture_default_str();
    curve_cmd->add_option("--out,-o", curve.out, "Output CSV path")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_code::kConfig;
    }

    if (*image_cmd) {
        if (*image_seed_opt) image.seed = image_seed;
        return cli::cmd_image(image, std::cerr);
    }
    if (*fig_cmd) {
        if (!fig_mask.empty()) fig.mask = fig_mask;
        return cli::cmd_figure2(fig, std::cerr);
    }
    if (*hom_cmd) {
        if (*hom_seed_opt) hom.seed = hom_seed;
        return cli::cmd_hom(hom, std::cerr);
    }
    return cli::cmd_contrast_curve(curve, std::cerr);
}
