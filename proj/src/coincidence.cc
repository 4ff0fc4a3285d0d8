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

#include "ghostswap/coincidence.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "ghostswap/hilbert.h"
#include "ghostswap/rng.h"

namespace ghostswap {

namespace {

// Channel index reserved for the multinomial draw of a fixed-shots campaign.
constexpr std::uint64_t kShotsChannel = ~0ull;

std::vector<double> gradient_weights(const ObjectMask& mask) {
    const double n_bright = mask.budget();
    const double n_dark = static_cast<double>(mask.size()) - n_bright;
    std::vector<double> s(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) s[i] = mask.bright(i) ? 1.0 / n_bright : -1.0 / n_dark;
    return s;
}

}  // namespace

void CampaignConfig::validate() const {
    if (mask.size() != dimension.size()) {
        throw DimensionError("mask has " + std::to_string(mask.size()) + " pixels, dimension is " +
                             std::to_string(dimension.value()));
    }
    if (!(shots_or_expected_total > 0) || !std::isfinite(shots_or_expected_total)) {
        throw InvalidArgument("expected total must be positive");
    }
    if (mode == SamplingMode::FixedShots && shots_or_expected_total != std::floor(shots_or_expected_total)) {
        throw InvalidArgument("fixed-shots campaigns need an integer number of shots");
    }
    if (!(accidental_fraction >= 0 && accidental_fraction < 1)) {
        throw InvalidArgument("accidental fraction must lie in [0, 1)");
    }
    if (!mask.has_contrast()) {
        throw DegenerateError("campaign mask needs at least one bright and one dark pixel");
    }
}

std::vector<double> expected_counts(const CampaignConfig& config) {
    config.validate();
    const ExactImage img = analytic_image_exact(config.mask, config.family);
    std::int64_t total_num = 0;
    for (auto n : img.numerators) total_num += n;
    if (total_num == 0) throw DegenerateError("analytic image is identically zero");
    const double total = config.shots_or_expected_total;
    const double a = config.accidental_fraction;
    const double flat = a * total / static_cast<double>(img.size());
    std::vector<double> lambda(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        lambda[i] = (1.0 - a) * total * static_cast<double>(img.numerators[i]) / static_cast<double>(total_num) + flat;
    }
    return lambda;
}

CampaignResult sample_campaign(const CampaignConfig& config, std::uint64_t trial) {
    const std::vector<double> lambda = expected_counts(config);
    const std::size_t d = lambda.size();
    std::vector<std::int64_t> n(d, 0);
    if (config.mode == SamplingMode::FixedTime) {
        for (std::size_t k = 0; k < d; ++k) {
            if (lambda[k] <= 0) continue;
            auto eng = substream(config.seed, trial, k);
            std::poisson_distribution<std::int64_t> draw(lambda[k]);
            n[k] = draw(eng);
        }
    } else {
        // Sequential conditional binomials give a multinomial draw.
        auto eng = substream(config.seed, trial, kShotsChannel);
        auto remaining = static_cast<std::int64_t>(config.shots_or_expected_total);
        double mass = 0;
        for (double l : lambda) mass += l;
        for (std::size_t k = 0; k + 1 < d && remaining > 0; ++k) {
            const double p = mass > 0 ? std::clamp(lambda[k] / mass, 0.0, 1.0) : 0.0;
            std::binomial_distribution<std::int64_t> draw(remaining, p);
            n[k] = draw(eng);
            remaining -= n[k];
            mass -= lambda[k];
        }
        n[d - 1] += remaining;
    }

    const double flat = config.accidental_fraction * config.shots_or_expected_total / static_cast<double>(d);
    std::vector<double> accidentals(d, flat);
    auto counts = Image<double>::counts(n, Provenance::Sampled, config.family);
    auto corrected = subtract_accidentals(counts, accidentals);
    CampaignResult result{counts,
                          corrected,
                          estimate_contrast(counts, config.mask),
                          estimate_corrected_contrast(counts, corrected, config.mask),
                          std::move(accidentals),
                          config.seed,
                          trial};
    return result;
}

std::vector<CampaignResult> run_campaigns(const CampaignConfig& config, std::size_t repetitions, unsigned workers) {
    config.validate();
    workers = std::max(1u, workers);
    std::vector<std::optional<CampaignResult>> slots(repetitions);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            for (std::size_t t = w; t < repetitions; t += workers) slots[t] = sample_campaign(config, t);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<CampaignResult> out;
    out.reserve(repetitions);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

ContrastValue estimate_contrast(const Image<double>& counts, const ObjectMask& mask) {
    std::vector<double> var(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const double n = counts.pixels[static_cast<Eigen::Index>(k)];
        if (counts.kind == ImageKind::Counts && n != std::floor(n)) {
            throw InvalidArgument("count image has a non-integer pixel");
        }
        var[k] = n;
    }
    return estimate_contrast(counts, var, mask);
}

ContrastValue estimate_contrast(const Image<double>& values, std::span<const double> variances,
                                const ObjectMask& mask) {
    if (variances.size() != values.size()) throw DimensionError("variance vector size mismatch");
    const double c = contrast_value(values.pixels, mask);
    const double total = values.total();
    const auto s = gradient_weights(mask);
    double var = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double g = (s[k] - c) / total;
        var += g * g * variances[k];
    }
    return {c, std::sqrt(var)};
}

double bootstrap_contrast_sigma(const Image<double>& counts, const ObjectMask& mask, std::size_t resamples,
                                std::uint64_t seed) {
    // Validates shapes and the mask before resampling.
    (void)contrast_value(counts.pixels, mask);
    const std::size_t d = counts.size();
    Eigen::VectorXd draw(static_cast<Eigen::Index>(d));
    double sum = 0;
    double sum_sq = 0;
    std::size_t used = 0;
    for (std::size_t r = 0; r < resamples; ++r) {
        auto eng = substream(seed, r, 0);
        for (std::size_t k = 0; k < d; ++k) {
            const double mean = counts.pixels[static_cast<Eigen::Index>(k)];
            draw[static_cast<Eigen::Index>(k)] =
                mean > 0 ? static_cast<double>(std::poisson_distribution<std::int64_t>(mean)(eng)) : 0.0;
        }
        if (draw.sum() <= 0) continue;
        const double c = contrast_value(draw, mask);
        sum += c;
        sum_sq += c * c;
        ++used;
    }
    if (used < 2) throw DegenerateError("too few usable bootstrap resamples");
    const double mean = sum / static_cast<double>(used);
    const double var = (sum_sq - static_cast<double>(used) * mean * mean) / static_cast<double>(used - 1);
    return std::sqrt(std::max(var, 0.0));
}

Image<double> subtract_accidentals(const Image<double>& counts, std::span<const double> estimate) {
    if (estimate.size() != counts.size()) throw DimensionError("accidental estimate size mismatch");
    Image<double>::Pixels px(counts.pixels.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (estimate[k] < 0) throw InvalidArgument("accidental estimate must be nonnegative");
        const auto i = static_cast<Eigen::Index>(k);
        px[i] = std::max(counts.pixels[i] - estimate[k], 0.0);
    }
    return Image<double>(std::move(px), counts.kind, Provenance::Corrected, counts.family);
}

ContrastValue estimate_corrected_contrast(const Image<double>& raw, const Image<double>& corrected,
                                          const ObjectMask& mask) {
    if (raw.size() != corrected.size()) throw DimensionError("raw and corrected images differ in size");
    std::vector<double> var(raw.pixels.data(), raw.pixels.data() + raw.pixels.size());
    return estimate_contrast(corrected, var, mask);
}

double indistinguishability(double delay, double dip_width) {
    if (!(dip_width > 0)) throw InvalidArgument("dip width must be positive");
    return std::exp(-delay * delay / (2.0 * dip_width * dip_width));
}

double heralded_antisymmetric_weight(const ObjectMask& pattern_a, const ObjectMask& pattern_d) {
    if (pattern_a.size() != pattern_d.size()) throw DimensionError("HOM patterns differ in size");
    if (pattern_a.degenerate() || pattern_d.degenerate()) {
        throw InvalidArgument("HOM patterns must transmit at least one pixel");
    }
    const Dimension d = pattern_a.dimension();
    const auto state = apply_object_mask(apply_object_mask(build_initial_state(d), pattern_a, Arm::A), pattern_d,
                                         Arm::D);
    return family_weight(state, {BellFamily::PsiMinus}) / state.norm_sq();
}

HomScanResult hom_scan(Dimension d, const ObjectMask& pattern_a, const ObjectMask& pattern_d,
                       std::span<const double> delays, double dip_width, std::int64_t shots_per_delay,
                       std::uint64_t seed) {
    if (pattern_a.size() != d.size() || pattern_d.size() != d.size()) {
        throw DimensionError("HOM pattern size does not match the dimension");
    }
    if (delays.empty()) throw InvalidArgument("delay grid is empty");
    for (std::size_t i = 1; i < delays.size(); ++i) {
        if (!(delays[i] > delays[i - 1])) throw InvalidArgument("delays must be strictly increasing");
    }
    if (!(dip_width > 0)) throw InvalidArgument("dip width must be positive");
    if (shots_per_delay < 0) throw InvalidArgument("shots per delay must be nonnegative");

    HomScanResult out;
    out.antisymmetric_weight = heralded_antisymmetric_weight(pattern_a, pattern_d);
    out.delays.assign(delays.begin(), delays.end());
    out.rates.reserve(delays.size());
    for (double tau : delays) {
        const double g = indistinguishability(tau, dip_width);
        // Written so that g == 1 gives P_AS and g == 0 gives 1/2 without rounding.
        out.rates.push_back(g == 1.0 ? out.antisymmetric_weight : 0.5 - g * (0.5 - out.antisymmetric_weight));
    }
    if (shots_per_delay > 0) {
        std::vector<std::int64_t> counts(delays.size());
        for (std::size_t i = 0; i < delays.size(); ++i) {
            auto eng = substream(seed, 0, i);
            counts[i] = std::binomial_distribution<std::int64_t>(shots_per_delay, out.rates[i])(eng);
        }
        out.sampled_counts = std::move(counts);
    }
    return out;
}

double rate_budget(double p_per_arm) {
    if (!(p_per_arm > 0 && p_per_arm <= 1)) throw InvalidArgument("per-arm fraction must lie in (0, 1]");
    return p_per_arm * p_per_arm * p_per_arm * p_per_arm;
}

}  // namespace ghostswap
