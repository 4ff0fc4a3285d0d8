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

#include "ghostswap/commands.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "ghostswap/coincidence.h"
#include "ghostswap/error.h"
#include "ghostswap/experiment.h"
#include "ghostswap/rng.h"

namespace ghostswap::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::kConfig;
    } catch (const InvalidArgument& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::kConfig;
    } catch (const DimensionError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::kConfig;
    } catch (const DegenerateError& e) {
        err << "degenerate request: " << e.what() << "\n";
        return exit_code::kDegenerate;
    } catch (const InvariantError& e) {
        err << "invariant breach: " << e.what() << "\n";
        return exit_code::kInvariant;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::kFailure;
    }
}

fs::path resolve(const fs::path& out_dir, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : out_dir / path;
}

std::vector<double> to_vector(const Image<double>& img) {
    return {img.pixels.data(), img.pixels.data() + img.pixels.size()};
}

json layout_json(const ObjectMask& mask) {
    if (mask.layout() == ObjectMask::Layout::Grid) {
        const int s = *grid_side(static_cast<int>(mask.size()));
        return {{"kind", "grid"}, {"width", s}, {"height", s}, {"origin", "bottom-left, row-major"}};
    }
    return {{"kind", "row"}, {"width", mask.size()}, {"height", 1}, {"origin", "pixel 1 leftmost"}};
}

json contrast_json(const ContrastValue& c) { return {{"value", c.value}, {"sigma", c.sigma}}; }

std::string sampling_mode_name(SamplingMode m) { return m == SamplingMode::FixedShots ? "fixed_shots" : "fixed_time"; }

std::vector<io::ImageRecordRow> analytic_rows(const ExactImage& img) {
    std::vector<io::ImageRecordRow> rows(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        rows[i].pixel_index = static_cast<int>(i) + 1;
        rows[i].analytic_intensity = img.value(i);
    }
    return rows;
}

}  // namespace

json contrast_summary(const Image<double>& counts, const Image<double>& corrected, const ObjectMask& mask,
                      std::uint64_t seed) {
    json raw = contrast_json(estimate_contrast(counts, mask));
    raw["bootstrap_sigma"] = bootstrap_contrast_sigma(counts, mask, 10000, seed);
    json corr = contrast_json(estimate_corrected_contrast(counts, corrected, mask));
    return {{"raw_contrast", raw}, {"corrected_contrast", corr}, {"total_counts", counts.total()}};
}

std::pair<Image<double>, Image<double>> images_from_record(std::span<const io::ImageRecordRow> rows) {
    std::vector<std::int64_t> n;
    Image<double>::Pixels corrected(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].sampled_count || !rows[i].corrected_count) {
            throw ConfigError("image record has no sampled data in row " + std::to_string(i + 1));
        }
        n.push_back(*rows[i].sampled_count);
        corrected[static_cast<Eigen::Index>(i)] = *rows[i].corrected_count;
    }
    return {Image<double>::counts(n), Image<double>(std::move(corrected), ImageKind::Counts, Provenance::Corrected)};
}

Figure2Images figure2_images(const ObjectMask& mask) {
    Figure2Images out{analytic_image_exact(mask, ImageFamily::PsiMinus),
                      analytic_image_exact(mask, ImageFamily::PsiPlus),
                      analytic_image_exact(mask, ImageFamily::Phi),
                      analytic_image_exact(mask, ImageFamily::AS),
                      analytic_image_exact(mask, ImageFamily::S),
                      {}};
    out.as_plus_s = out.as + out.s;
    return out;
}

void verify_figure2_identities(const Figure2Images& im, const ObjectMask& mask) {
    if (!(im.as == im.psi_minus)) throw InvariantError("AS image differs from the Psi- image");
    if (!(im.s == im.psi_plus + im.phi)) throw InvariantError("S image differs from Psi+ plus Phi");
    const auto d = static_cast<std::int64_t>(mask.size());
    // B / d^2 over the common denominator 2 d^2.
    if (!(im.as_plus_s == im.as + im.s) || !im.as_plus_s.flat() ||
        im.as_plus_s.denominator != 2 * d * d || im.as_plus_s.numerators.front() != 2 * mask.budget()) {
        throw InvariantError("AS + S is not flat at B / d^2");
    }
}

ObjectMask default_figure2_mask(int dimension, int budget, std::uint64_t seed) {
    Dimension d(dimension);
    if (budget < 0 || budget > dimension) throw ConfigError("budget must lie in [0, d]");
    std::vector<int> v(d.size(), 0);
    std::fill_n(v.begin(), budget, 1);
    auto eng = substream(seed, 0, 0);
    std::shuffle(v.begin(), v.end(), eng);
    return ObjectMask(std::move(v), grid_side(dimension) ? ObjectMask::Layout::Grid : ObjectMask::Layout::Row);
}

int cmd_image(const ImageOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        ImageExperiment exp = parse_image_experiment(read_json_file(opts.config));
        if (opts.seed) exp.seed = *opts.seed;
        if (!opts.analytic_only && !exp.total) {
            throw ConfigError(exp.mode == SamplingMode::FixedShots ? "'shots' is required"
                                                                   : "'expected_total' is required");
        }
        const ObjectMask& mask = exp.mask;
        const ExactImage analytic = analytic_image_exact(mask, exp.family);
        const auto analytic_img = analytic.to_image();
        const ContrastValue predicted = contrast_of_image(analytic_img, mask);

        auto rows = analytic_rows(analytic);
        json summary = {{"command", "image"},
                        {"seed", exp.seed},
                        {"dimension", exp.dimension},
                        {"budget", mask.budget()},
                        {"mask", std::vector<int>(mask.values().begin(), mask.values().end())},
                        {"mask_source", exp.mask_source},
                        {"family", std::string(to_string(exp.family))},
                        {"layout", layout_json(mask)},
                        {"analytic_only", opts.analytic_only},
                        {"analytic_contrast", contrast_json(predicted)}};

        std::vector<io::OutputFile> files;
        const auto analytic_render = io::render_pgm(to_vector(analytic_img), mask.layout());
        files.push_back({resolve(opts.out_dir, exp.outputs.analytic_pgm), io::write_pgm(analytic_render.image)});
        json scales = {{"analytic", analytic_render.scale}};

        if (opts.analytic_only) {
            const auto fig = figure2_images(mask);
            verify_figure2_identities(fig, mask);
            const std::pair<const char*, const ExactImage*> channels[] = {
                {"psi_minus", &fig.psi_minus}, {"psi_plus", &fig.psi_plus}, {"phi", &fig.phi},
                {"as", &fig.as},               {"s", &fig.s},               {"as_plus_s", &fig.as_plus_s}};
            json family_files = json::array();
            for (const auto& [name, img] : channels) {
                const std::string file = std::string("analytic_") + name + ".csv";
                files.push_back({resolve(opts.out_dir, file), io::write_image_record(analytic_rows(*img))});
                family_files.push_back(file);
            }
            summary["family_csvs"] = family_files;
        } else {
            const CampaignConfig config = exp.campaign();
            const CampaignResult result = sample_campaign(config);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto k = static_cast<Eigen::Index>(i);
                rows[i].sampled_count = static_cast<std::int64_t>(result.counts.pixels[k]);
                rows[i].corrected_count = result.corrected.pixels[k];
            }
            summary.update(contrast_summary(result.counts, result.corrected, mask, exp.seed));
            summary["mode"] = sampling_mode_name(exp.mode);
            summary[exp.mode == SamplingMode::FixedShots ? "shots" : "expected_total"] = *exp.total;
            summary["accidental_fraction"] = exp.accidental_fraction;
            summary["accidental_estimate"] = result.accidental_estimate;
            const auto sampled_render = io::render_pgm(to_vector(result.counts), mask.layout());
            files.push_back({resolve(opts.out_dir, exp.outputs.sampled_pgm), io::write_pgm(sampled_render.image)});
            scales["sampled"] = sampled_render.scale;
        }
        summary["pgm_scale"] = scales;
        files.push_back({resolve(opts.out_dir, exp.outputs.csv), io::write_image_record(rows)});
        files.push_back({resolve(opts.out_dir, exp.outputs.summary), summary.dump(2) + "\n"});
        io::write_files(files);
        return exit_code::kOk;
    });
}

int cmd_figure2(const Figure2Options& opts, std::ostream& err) {
    return guarded(err, [&] {
        const Dimension d(opts.dimension);
        if (opts.budget < 0 || opts.budget > opts.dimension) throw ConfigError("budget must lie in [0, d]");
        const ObjectMask mask = opts.mask ? load_mask_file(*opts.mask, opts.dimension)
                                          : default_figure2_mask(opts.dimension, opts.budget, opts.seed);
        if (mask.budget() != opts.budget) {
            throw ConfigError("mask has " + std::to_string(mask.budget()) + " bright pixels, budget is " +
                              std::to_string(opts.budget));
        }
        const auto fig = figure2_images(mask);
        verify_figure2_identities(fig, mask);

        std::vector<io::OutputFile> files;
        json scales = json::object();
        const std::pair<const char*, const ExactImage*> channels[] = {
            {"psi_minus", &fig.psi_minus}, {"psi_plus", &fig.psi_plus}, {"phi", &fig.phi},
            {"as", &fig.as},               {"s", &fig.s},               {"as_plus_s", &fig.as_plus_s}};
        for (const auto& [name, img] : channels) {
            files.push_back({opts.out_dir / (std::string(name) + ".csv"), io::write_image_record(analytic_rows(*img))});
            std::vector<double> px(img->size());
            for (std::size_t i = 0; i < px.size(); ++i) px[i] = img->value(i);
            const auto render = io::render_pgm(px, mask.layout());
            files.push_back({opts.out_dir / (std::string(name) + ".pgm"), io::write_pgm(render.image)});
            scales[name] = render.scale;
        }
        std::vector<double> object(mask.values().begin(), mask.values().end());
        files.push_back({opts.out_dir / "object.pgm", io::write_pgm(io::render_pgm(object, mask.layout()).image)});

        json summary = {{"command", "figure2"},
                        {"dimension", opts.dimension},
                        {"budget", mask.budget()},
                        {"mask", std::vector<int>(mask.values().begin(), mask.values().end())},
                        {"layout", layout_json(mask)},
                        {"flat_value", fig.as_plus_s.value(0)},
                        {"pgm_scale", scales}};
        if (mask.has_contrast()) {
            summary["contrast_as"] = analytic_contrast(d, mask.budget(), ImageFamily::AS).value;
            summary["contrast_s"] = analytic_contrast(d, mask.budget(), ImageFamily::S).value;
        }
        files.push_back({opts.out_dir / "figure2.json", summary.dump(2) + "\n"});
        io::write_files(files);
        return exit_code::kOk;
    });
}

int cmd_hom(const HomOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        HomExperiment exp = parse_hom_experiment(read_json_file(opts.config));
        if (opts.seed) exp.seed = *opts.seed;
        const auto scan = hom_scan(Dimension(exp.dimension), exp.pattern_a, exp.pattern_d, exp.delays, exp.dip_width,
                                   exp.shots_per_delay, exp.seed);
        const std::vector<std::string> header = {"delay", "expected_rate", "sampled_count"};
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < scan.delays.size(); ++i) {
            rows.push_back({io::format_double(scan.delays[i]), io::format_double(scan.rates[i]),
                            scan.sampled_counts ? std::to_string((*scan.sampled_counts)[i]) : std::string()});
        }
        const io::OutputFile file{resolve(opts.out_dir, exp.csv), io::write_table(header, rows)};
        io::write_files(std::span(&file, 1));
        return exit_code::kOk;
    });
}

int cmd_contrast_curve(const ContrastCurveOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        if (opts.d_min < 2 || opts.d_max < opts.d_min) throw ConfigError("need 2 <= d_min <= d_max");
        if (opts.budget < 1) throw ConfigError("budget must be at least 1");
        const std::vector<std::string> header = {"d", "contrast_as", "contrast_s"};
        std::vector<std::vector<std::string>> rows;
        auto cell = [&](int d, ImageFamily f) {
            try {
                return io::format_double(analytic_contrast(Dimension(d), opts.budget, f).value);
            } catch (const DegenerateError&) {
                return std::string("degenerate");
            }
        };
        for (int d = opts.d_min; d <= opts.d_max; ++d) {
            rows.push_back({std::to_string(d), cell(d, ImageFamily::AS), cell(d, ImageFamily::S)});
        }
        const io::OutputFile file{opts.out, io::write_table(header, rows)};
        io::write_files(std::span(&file, 1));
        return exit_code::kOk;
    });
}

}  // namespace ghostswap::cli
