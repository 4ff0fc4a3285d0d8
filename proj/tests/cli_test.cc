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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ghostswap/error.h"
#include "ghostswap/experiment.h"

using namespace ghostswap;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() / ("ghostctl_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_json(const fs::path& dir, const std::string& name, const json& doc) {
    const auto p = dir / name;
    std::ofstream(p) << doc.dump();
    return p;
}

std::size_t file_count(const fs::path& dir) {
    std::size_t n = 0;
    for ([[maybe_unused]] const auto& e : fs::recursive_directory_iterator(dir)) ++n;
    return n;
}

std::vector<io::ImageRecordRow> read_record(const fs::path& p) {
    std::ifstream in(p);
    return io::read_image_record(in);
}

int run_binary(const std::string& args) {
    const int status = std::system((std::string(GHOSTCTL_PATH) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json two_pixel_config() {
    // Flat background of 41% reproduces the raw {45, 175} split on average.
    return {{"dimension", 2},        {"mask", "half_on"}, {"family", "as"}, {"mode", "fixed_time"},
            {"expected_total", 220}, {"accidental_fraction", 0.41}, {"seed", 90}};
}

}  // namespace

TEST(CmdImage, TwoPixelSummaryAndRoundTrip) {
    TempDir dir;
    const auto cfg = write_json(dir.path(), "exp.json", two_pixel_config());
    std::ostringstream err;
    const auto out = dir.path() / "out";
    ASSERT_EQ(cli::cmd_image({cfg, std::nullopt, out, false}, err), 0) << err.str();

    const json summary = json::parse(slurp(out / "summary.json"));
    EXPECT_EQ(summary["seed"].get<std::uint64_t>(), 90u);
    EXPECT_EQ(summary["analytic_contrast"]["value"].get<double>(), -1.0);
    const double raw = summary["raw_contrast"]["value"];
    const double sigma = summary["raw_contrast"]["sigma"];
    // Expected counts {45.1, 174.9}: contrast -0.59 with a Poisson spread of about 0.054.
    EXPECT_LT(std::abs(raw + 0.59), 4 * 0.055) << raw;
    EXPECT_GT(sigma, 0.04);
    EXPECT_LT(sigma, 0.07);
    EXPECT_LT(std::abs(summary["raw_contrast"]["bootstrap_sigma"].get<double>() - sigma) / sigma, 0.2);
    EXPECT_LT(summary["corrected_contrast"]["value"].get<double>(), raw);
    EXPECT_EQ(summary["layout"]["kind"], "row");

    // Re-ingesting the CSV reproduces the contrast summary bit for bit.
    const auto rows = read_record(out / "image.csv");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].analytic_intensity, 0.0);
    EXPECT_EQ(rows[1].analytic_intensity, 0.125);
    const auto [counts, corrected] = cli::images_from_record(rows);
    const json again = cli::contrast_summary(counts, corrected, ObjectMask::half_on(2), 90);
    EXPECT_EQ(again["raw_contrast"], summary["raw_contrast"]);
    EXPECT_EQ(again["corrected_contrast"], summary["corrected_contrast"]);

    for (const char* pgm : {"analytic.pgm", "sampled.pgm"}) {
        std::ifstream in(out / pgm);
        const auto img = io::parse_pgm(in);
        EXPECT_EQ(img.width * img.height, 2);
        EXPECT_EQ(img.max_value, 65535);
    }
}

TEST(CmdImage, SeedEchoReproducesOutputs) {
    TempDir dir;
    const auto cfg = write_json(dir.path(), "exp.json", two_pixel_config());
    std::ostringstream err;
    ASSERT_EQ(cli::cmd_image({cfg, 1234u, dir.path() / "a", false}, err), 0);
    ASSERT_EQ(cli::cmd_image({cfg, 1234u, dir.path() / "b", false}, err), 0);
    ASSERT_EQ(cli::cmd_image({cfg, 99u, dir.path() / "c", false}, err), 0);
    for (const char* f : {"image.csv", "sampled.pgm", "summary.json", "analytic.pgm"}) {
        EXPECT_EQ(slurp(dir.path() / "a" / f), slurp(dir.path() / "b" / f)) << f;
    }
    EXPECT_EQ(json::parse(slurp(dir.path() / "a" / "summary.json"))["seed"].get<std::uint64_t>(), 1234u);
    EXPECT_NE(slurp(dir.path() / "a" / "image.csv"), slurp(dir.path() / "c" / "image.csv"));
}

TEST(CmdImage, QuadrantUsesGridLayout) {
    TempDir dir;
    const auto cfg = write_json(dir.path(), "exp.json",
                                {{"dimension", 4}, {"mask", "quadrant_on"}, {"family", "as"}, {"expected_total", 684}});
    std::ostringstream err;
    ASSERT_EQ(cli::cmd_image({cfg, std::nullopt, dir.path(), false}, err), 0) << err.str();
    std::ifstream in(dir.path() / "analytic.pgm");
    const auto img = io::parse_pgm(in);
    EXPECT_EQ(img.width, 2);
    EXPECT_EQ(img.height, 2);
    // Bright object pixel (bottom-left) is dark in the anti-symmetric image.
    EXPECT_EQ(img.values, (std::vector<int>{65535, 65535, 0, 65535}));
}

TEST(CmdImage, AnalyticOnlyWritesEveryFamily) {
    TempDir dir;
    std::vector<int> mask(100, 0);
    for (int i = 0; i < 20; ++i) mask[static_cast<std::size_t>(i * 5 + 2)] = 1;
    const auto cfg = write_json(dir.path(), "exp.json",
                                {{"dimension", 100}, {"mask", mask}, {"layout", "grid"}, {"family", "as"}});
    std::ostringstream err;
    ASSERT_EQ(cli::cmd_image({cfg, std::nullopt, dir.path() / "out", true}, err), 0) << err.str();
    const ObjectMask m(mask);
    const std::pair<const char*, ImageFamily> families[] = {{"psi_minus", ImageFamily::PsiMinus},
                                                            {"psi_plus", ImageFamily::PsiPlus},
                                                            {"phi", ImageFamily::Phi},
                                                            {"as", ImageFamily::AS},
                                                            {"s", ImageFamily::S}};
    for (const auto& [name, f] : families) {
        const auto rows = read_record(dir.path() / "out" / (std::string("analytic_") + name + ".csv"));
        const auto expected = analytic_image_exact(m, f);
        ASSERT_EQ(rows.size(), 100u);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            EXPECT_EQ(rows[i].analytic_intensity, expected.value(i));
            EXPECT_FALSE(rows[i].sampled_count);
        }
    }
    for (const auto& r : read_record(dir.path() / "out" / "analytic_as_plus_s.csv")) EXPECT_EQ(r.analytic_intensity, 2e-3);
    EXPECT_FALSE(fs::exists(dir.path() / "out" / "sampled.pgm"));
}

TEST(CmdImage, MalformedConfigWritesNothing) {
    TempDir dir;
    const auto cfg = write_json(dir.path(), "exp.json", {{"dimension", 2}, {"mask", "half_on"}, {"famly", "as"}});
    {
        std::ofstream(dir.path() / "broken.json") << "{ not json";
    }
    const auto out = dir.path() / "out";
    std::ostringstream err;
    EXPECT_EQ(cli::cmd_image({cfg, std::nullopt, out, false}, err), 2);
    EXPECT_EQ(cli::cmd_image({dir.path() / "broken.json", std::nullopt, out, false}, err), 2);
    EXPECT_EQ(cli::cmd_image({dir.path() / "missing.json", std::nullopt, out, false}, err), 2);
    // No expected_total for a sampled run.
    const auto no_total = write_json(dir.path(), "nt.json", {{"dimension", 2}, {"mask", "half_on"}, {"family", "as"}});
    EXPECT_EQ(cli::cmd_image({no_total, std::nullopt, out, false}, err), 2);
    EXPECT_FALSE(fs::exists(out));
}

TEST(CmdImage, DegenerateMaskExitsThree) {
    TempDir dir;
    const auto out = dir.path() / "out";
    std::ostringstream err;
    for (const json mask : {json::array({0, 0}), json::array({1, 1})}) {
        const auto cfg = write_json(dir.path(), "exp.json",
                                    {{"dimension", 2}, {"mask", mask}, {"family", "as"}, {"expected_total", 100}});
        EXPECT_EQ(cli::cmd_image({cfg, std::nullopt, out, false}, err), 3);
        EXPECT_EQ(cli::cmd_image({cfg, std::nullopt, out, true}, err), 3);
    }
    EXPECT_FALSE(fs::exists(out));
}

TEST(CmdFigure2, FlatSumAtDefaultParameters) {
    TempDir dir;
    std::ostringstream err;
    ASSERT_EQ(cli::cmd_figure2({100, 20, std::nullopt, dir.path(), 7}, err), 0) << err.str();
    for (const auto& r : read_record(dir.path() / "as_plus_s.csv")) EXPECT_EQ(r.analytic_intensity, 2e-3);
    EXPECT_EQ(slurp(dir.path() / "as.csv"), slurp(dir.path() / "psi_minus.csv"));
    const auto pp = read_record(dir.path() / "psi_plus.csv");
    const auto phi = read_record(dir.path() / "phi.csv");
    const auto s = read_record(dir.path() / "s.csv");
    int bright = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_NEAR(s[i].analytic_intensity, pp[i].analytic_intensity + phi[i].analytic_intensity, 1e-18);
        if (phi[i].analytic_intensity > 0) ++bright;
    }
    EXPECT_EQ(bright, 20);
    for (const char* name : {"psi_minus", "psi_plus", "phi", "as", "s", "as_plus_s", "object"}) {
        std::ifstream in(dir.path() / (std::string(name) + ".pgm"));
        const auto img = io::parse_pgm(in);
        EXPECT_EQ(img.width, 10);
        EXPECT_EQ(img.height, 10);
    }
    const json summary = json::parse(slurp(dir.path() / "figure2.json"));
    EXPECT_EQ(summary["flat_value"].get<double>(), 2e-3);
    EXPECT_EQ(summary["contrast_as"].get<double>(), -1.0 / (20.0 * 99.0));
}

TEST(CmdFigure2, TwoPixelPsiMinusEqualsAntiSymmetric) {
    TempDir dir;
    std::ostringstream err;
    const auto mask = write_json(dir.path(), "mask.json", json::array({1, 0}));
    ASSERT_EQ(cli::cmd_figure2({2, 1, mask, dir.path() / "out", 0}, err), 0) << err.str();
    EXPECT_EQ(slurp(dir.path() / "out" / "psi_minus.csv"), slurp(dir.path() / "out" / "as.csv"));
}

TEST(CmdFigure2, BudgetMismatchAndInvariantBreach) {
    TempDir dir;
    std::ostringstream err;
    const auto mask = write_json(dir.path(), "mask.json", {{"mask", {1, 0, 1, 0}}, {"layout", "grid"}});
    EXPECT_EQ(cli::cmd_figure2({4, 1, mask, dir.path() / "out", 0}, err), 2);
    EXPECT_EQ(cli::cmd_figure2({4, 7, std::nullopt, dir.path() / "out", 0}, err), 2);
    EXPECT_FALSE(fs::exists(dir.path() / "out"));

    const ObjectMask m{1, 0, 1, 0};
    auto images = cli::figure2_images(m);
    EXPECT_NO_THROW(cli::verify_figure2_identities(images, m));
    images.as.numerators[0] += 1;
    EXPECT_THROW(cli::verify_figure2_identities(images, m), InvariantError);
    images = cli::figure2_images(m);
    images.phi.numerators[1] += 2;
    EXPECT_THROW(cli::verify_figure2_identities(images, m), InvariantError);
}

TEST(CmdHom, SameAndOppositePatterns) {
    TempDir dir;
    std::ostringstream err;
    auto run = [&](const json& pattern_d) {
        const auto cfg = write_json(dir.path(), "hom.json",
                                    {{"dimension", 2},
                                     {"pattern_a", {1, 0}},
                                     {"pattern_d", pattern_d},
                                     {"delays", {{"start", -40}, {"stop", 40}, {"count", 41}}},
                                     {"dip_width", 8},
                                     {"shots_per_delay", 500},
                                     {"seed", 3}});
        EXPECT_EQ(cli::cmd_hom({cfg, std::nullopt, dir.path()}, err), 0) << err.str();
        std::ifstream in(dir.path() / "hom.csv");
        std::string line;
        std::getline(in, line);
        EXPECT_EQ(line, "delay,expected_rate,sampled_count");
        std::vector<std::pair<double, double>> out;
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string a, b, c;
            std::getline(ss, a, ',');
            std::getline(ss, b, ',');
            std::getline(ss, c, ',');
            EXPECT_FALSE(c.empty());
            out.emplace_back(io::parse_double(a), io::parse_double(b));
        }
        return out;
    };
    const auto same = run(json::array({1, 0}));
    ASSERT_EQ(same.size(), 41u);
    EXPECT_EQ(same[20].first, 0.0);
    EXPECT_EQ(same[20].second, 0.0);
    for (const auto& [tau, rate] : same) EXPECT_GE(rate, same[20].second);
    const auto opposite = run(json::array({0, 1}));
    for (const auto& [tau, rate] : opposite) EXPECT_NEAR(rate, 0.5, 1e-15);
}

TEST(CmdHom, EmptyDelayGridExitsTwo) {
    TempDir dir;
    std::ostringstream err;
    const auto cfg = write_json(dir.path(), "hom.json",
                                {{"dimension", 2},
                                 {"pattern_a", {1, 0}},
                                 {"pattern_d", {1, 0}},
                                 {"delays", json::array()},
                                 {"dip_width", 8}});
    EXPECT_EQ(cli::cmd_hom({cfg, std::nullopt, dir.path() / "out"}, err), 2);
    EXPECT_FALSE(fs::exists(dir.path() / "out"));
}

TEST(CmdContrastCurve, SmallRange) {
    TempDir dir;
    std::ostringstream err;
    const auto out = dir.path() / "curve.csv";
    ASSERT_EQ(cli::cmd_contrast_curve({2, 4, 1, out}, err), 0);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "d,contrast_as,contrast_s");
    const double expected[3][2] = {{-1.0, 1.0 / 3.0}, {-0.5, 0.25}, {-1.0 / 3.0, 0.2}};
    for (int d = 2; d <= 4; ++d) {
        ASSERT_TRUE(std::getline(in, line));
        std::stringstream ss(line);
        std::string a, b, c;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        std::getline(ss, c, ',');
        EXPECT_EQ(std::stoi(a), d);
        EXPECT_EQ(io::parse_double(b), expected[d - 2][0]);
        EXPECT_EQ(io::parse_double(c), expected[d - 2][1]);
    }
}

TEST(CmdContrastCurve, DegenerateRowsAndBadRange) {
    TempDir dir;
    std::ostringstream err;
    const auto out = dir.path() / "curve.csv";
    ASSERT_EQ(cli::cmd_contrast_curve({2, 3, 3, out}, err), 0);
    EXPECT_EQ(slurp(out), "d,contrast_as,contrast_s\n2,degenerate,degenerate\n3,degenerate,degenerate\n");
    EXPECT_EQ(cli::cmd_contrast_curve({4, 3, 1, dir.path() / "bad.csv"}, err), 2);
    EXPECT_EQ(cli::cmd_contrast_curve({1, 3, 1, dir.path() / "bad.csv"}, err), 2);
    EXPECT_EQ(cli::cmd_contrast_curve({2, 3, 0, dir.path() / "bad.csv"}, err), 2);
    EXPECT_FALSE(fs::exists(dir.path() / "bad.csv"));
}

TEST(Binary, ExitCodes) {
    TempDir dir;
    const auto d = dir.path().string();
    EXPECT_EQ(run_binary("contrast-curve --d-min 2 --d-max 4 --budget 1 --out " + d + "/c.csv"), 0);
    EXPECT_EQ(run_binary("contrast-curve --d-min 5 --d-max 4 --out " + d + "/c2.csv"), 2);
    EXPECT_EQ(run_binary("no-such-command"), 2);
    EXPECT_EQ(run_binary("image"), 2);
    const auto cfg = write_json(dir.path(), "exp.json", two_pixel_config());
    EXPECT_EQ(run_binary("image " + cfg.string() + " --seed 5 --out-dir " + d + "/img"), 0);
    EXPECT_TRUE(fs::exists(dir.path() / "img" / "summary.json"));
    EXPECT_EQ(run_binary("figure2 -d 16 -b 4 --out-dir " + d + "/fig"), 0);
    EXPECT_EQ(run_binary("figure2 -d 16 -b 40 --out-dir " + d + "/fig2"), 2);
    const auto degenerate = write_json(dir.path(), "deg.json",
                                       {{"dimension", 2}, {"mask", {0, 0}}, {"family", "as"}, {"expected_total", 5}});
    EXPECT_EQ(run_binary("image " + degenerate.string() + " --out-dir " + d + "/deg"), 3);
}

TEST(Binary, ShippedConfigsRun) {
    TempDir dir;
    const fs::path configs(CONFIG_DIR);
    EXPECT_EQ(run_binary("image " + (configs / "two_pixel.json").string() + " --out-dir " + dir.path().string() + "/2"), 0);
    EXPECT_EQ(run_binary("image " + (configs / "four_pixel.json").string() + " --out-dir " + dir.path().string() + "/4"), 0);
    EXPECT_EQ(run_binary("hom " + (configs / "hom.json").string() + " --out-dir " + dir.path().string() + "/h"), 0);
}
