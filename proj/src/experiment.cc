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

#include "ghostswap/experiment.h"

#include <cmath>
#include <fstream>
#include <set>

#include "ghostswap/error.h"

namespace ghostswap {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed, const std::string& where) {
    if (!doc.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

const json& require(const json& doc, const std::string& key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ConfigError("missing required key '" + key + "'");
    return *it;
}

int as_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
    return v.get<int>();
}

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
    return v.get<std::string>();
}

std::uint64_t as_seed(const json& v) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ConfigError("'seed' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

int checked_dimension(const json& doc) {
    const int d = as_int(require(doc, "dimension"), "dimension");
    if (d < 2) throw ConfigError("'dimension' must be at least 2");
    return d;
}

// Rethrows library argument errors as schema errors.
template <typename F>
auto schema_guard(F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const DegenerateError&) {
        throw;
    } catch (const GhostError& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

ObjectMask parse_mask(const json& mask, int dimension, const json* layout) {
    return schema_guard([&] {
        std::optional<ObjectMask::Layout> lay;
        if (layout) {
            const auto name = as_string(*layout, "layout");
            if (name == "row") lay = ObjectMask::Layout::Row;
            else if (name == "grid") lay = ObjectMask::Layout::Grid;
            else throw ConfigError("'layout' must be \"row\" or \"grid\"");
        }
        if (mask.is_string()) {
            const auto name = mask.get<std::string>();
            std::optional<ObjectMask> m;
            if (name == "half_on") m = ObjectMask::half_on(dimension);
            else if (name == "quadrant_on") m = ObjectMask::quadrant_on(dimension);
            else throw ConfigError("unknown mask preset '" + name + "'");
            if (lay) m = ObjectMask(std::vector<int>(m->values().begin(), m->values().end()), *lay);
            return *m;
        }
        if (!mask.is_array()) throw ConfigError("'mask' must be an array of 0/1 or a preset name");
        std::vector<int> v;
        for (const auto& x : mask) {
            if (!x.is_number_integer()) throw ConfigError("mask entries must be integers 0 or 1");
            v.push_back(x.get<int>());
        }
        if (static_cast<int>(v.size()) != dimension) {
            throw ConfigError("mask has " + std::to_string(v.size()) + " entries, dimension is " +
                              std::to_string(dimension));
        }
        return ObjectMask(std::move(v), lay.value_or(ObjectMask::Layout::Row));
    });
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

ObjectMask load_mask_file(const std::filesystem::path& path, int dimension) {
    const json doc = read_json_file(path);
    if (doc.is_object()) {
        reject_unknown_keys(doc, {"mask", "layout"}, "mask file");
        auto lay = doc.find("layout");
        return parse_mask(require(doc, "mask"), dimension, lay == doc.end() ? nullptr : &*lay);
    }
    return parse_mask(doc, dimension);
}

CampaignConfig ImageExperiment::campaign() const {
    if (!total) throw ConfigError(mode == SamplingMode::FixedShots ? "'shots' is required" : "'expected_total' is required");
    return schema_guard([&] {
        CampaignConfig c{Dimension(dimension), mask, family, mode, *total, accidental_fraction, seed};
        if (mask.size() != c.dimension.size()) throw ConfigError("mask size does not match dimension");
        return c;
    });
}

ImageExperiment parse_image_experiment(const json& doc) {
    reject_unknown_keys(doc,
                        {"dimension", "mask", "layout", "family", "mode", "expected_total", "shots",
                         "accidental_fraction", "seed", "outputs"},
                        "experiment file");
    const int d = checked_dimension(doc);
    auto lay = doc.find("layout");
    ObjectMask mask = parse_mask(require(doc, "mask"), d, lay == doc.end() ? nullptr : &*lay);
    const json& mask_field = doc["mask"];
    std::string source = mask_field.is_string() ? mask_field.get<std::string>() : "explicit";

    const auto family_name = as_string(require(doc, "family"), "family");
    auto family = parse_image_family(family_name);
    if (!family) throw ConfigError("unknown family '" + family_name + "'");

    SamplingMode mode = SamplingMode::FixedTime;
    if (auto it = doc.find("mode"); it != doc.end()) {
        const auto name = as_string(*it, "mode");
        if (name == "fixed_time") mode = SamplingMode::FixedTime;
        else if (name == "fixed_shots") mode = SamplingMode::FixedShots;
        else throw ConfigError("'mode' must be \"fixed_time\" or \"fixed_shots\"");
    }

    std::optional<double> total;
    const bool has_expected = doc.contains("expected_total");
    const bool has_shots = doc.contains("shots");
    if (mode == SamplingMode::FixedTime && has_shots) throw ConfigError("'shots' requires mode fixed_shots");
    if (mode == SamplingMode::FixedShots && has_expected) {
        throw ConfigError("'expected_total' requires mode fixed_time");
    }
    if (has_expected) {
        total = as_number(doc["expected_total"], "expected_total");
        if (!(*total > 0) || !std::isfinite(*total)) throw ConfigError("'expected_total' must be positive");
    }
    if (has_shots) {
        total = as_int(doc["shots"], "shots");
        if (*total <= 0) throw ConfigError("'shots' must be positive");
    }

    double accidental = 0;
    if (auto it = doc.find("accidental_fraction"); it != doc.end()) {
        accidental = as_number(*it, "accidental_fraction");
        if (!(accidental >= 0 && accidental < 1)) throw ConfigError("'accidental_fraction' must lie in [0, 1)");
    }

    std::uint64_t seed = 0;
    if (auto it = doc.find("seed"); it != doc.end()) seed = as_seed(*it);

    ImageOutputs outputs;
    if (auto it = doc.find("outputs"); it != doc.end()) {
        reject_unknown_keys(*it, {"csv", "analytic_pgm", "sampled_pgm", "summary"}, "'outputs'");
        if (it->contains("csv")) outputs.csv = as_string((*it)["csv"], "csv");
        if (it->contains("analytic_pgm")) outputs.analytic_pgm = as_string((*it)["analytic_pgm"], "analytic_pgm");
        if (it->contains("sampled_pgm")) outputs.sampled_pgm = as_string((*it)["sampled_pgm"], "sampled_pgm");
        if (it->contains("summary")) outputs.summary = as_string((*it)["summary"], "summary");
    }

    return ImageExperiment{d, std::move(mask), std::move(source), *family, mode, total, accidental, seed, outputs};
}

HomExperiment parse_hom_experiment(const json& doc) {
    reject_unknown_keys(doc,
                        {"dimension", "pattern_a", "pattern_d", "delays", "dip_width", "shots_per_delay", "seed",
                         "outputs"},
                        "HOM config");
    const int d = checked_dimension(doc);
    ObjectMask a = parse_mask(require(doc, "pattern_a"), d);
    ObjectMask dd = parse_mask(require(doc, "pattern_d"), d);
    if (a.degenerate() || dd.degenerate()) throw ConfigError("HOM patterns must transmit at least one pixel");

    std::vector<double> delays;
    const json& grid = require(doc, "delays");
    if (grid.is_array()) {
        for (const auto& x : grid) delays.push_back(as_number(x, "delays"));
    } else if (grid.is_object()) {
        reject_unknown_keys(grid, {"start", "stop", "count"}, "'delays'");
        const double start = as_number(require(grid, "start"), "start");
        const double stop = as_number(require(grid, "stop"), "stop");
        const int count = as_int(require(grid, "count"), "count");
        if (count < 1) throw ConfigError("'count' must be positive");
        if (count == 1) {
            delays.push_back(start);
        } else {
            for (int i = 0; i < count; ++i) delays.push_back(start + (stop - start) * i / (count - 1));
        }
    } else {
        throw ConfigError("'delays' must be an array or a {start, stop, count} grid");
    }
    if (delays.empty()) throw ConfigError("delay grid is empty");
    for (std::size_t i = 1; i < delays.size(); ++i) {
        if (!(delays[i] > delays[i - 1])) throw ConfigError("delays must be strictly increasing");
    }

    const double width = as_number(require(doc, "dip_width"), "dip_width");
    if (!(width > 0)) throw ConfigError("'dip_width' must be positive");

    std::int64_t shots = 0;
    if (auto it = doc.find("shots_per_delay"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
            throw ConfigError("'shots_per_delay' must be a nonnegative integer");
        }
        shots = it->get<std::int64_t>();
    }
    std::uint64_t seed = 0;
    if (auto it = doc.find("seed"); it != doc.end()) seed = as_seed(*it);

    std::string csv = "hom.csv";
    if (auto it = doc.find("outputs"); it != doc.end()) {
        reject_unknown_keys(*it, {"csv"}, "'outputs'");
        if (it->contains("csv")) csv = as_string((*it)["csv"], "csv");
    }
    return HomExperiment{d, std::move(a), std::move(dd), std::move(delays), width, shots, seed, csv};
}

}  // namespace ghostswap
