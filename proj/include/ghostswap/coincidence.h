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

// Monte Carlo four-fold coincidence sampling, contrast estimation with
// Poisson uncertainties, accidental subtraction, HOM delay scans and the
// single-pixel count-rate budget.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ghostswap/images.h"
#include "ghostswap/types.h"

namespace ghostswap {

/// FixedTime draws every pixel independently from a Poisson law, so the total
/// fluctuates. FixedShots distributes exactly `shots` events multinomially.
enum class SamplingMode { FixedShots, FixedTime };

struct CampaignConfig {
    Dimension dimension;
    ObjectMask mask;
    ImageFamily family = ImageFamily::AS;
    SamplingMode mode = SamplingMode::FixedTime;
    /// Expected total counts for FixedTime, exact number of events for FixedShots.
    double shots_or_expected_total = 0;
    /// Share of the expected total that is flat accidental background.
    double accidental_fraction = 0;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument, DimensionError or DegenerateError.
    void validate() const;
};

struct CampaignResult {
    Image<double> counts;
    Image<double> corrected;
    ContrastValue raw_contrast;
    ContrastValue corrected_contrast;
    std::vector<double> accidental_estimate;
    std::uint64_t seed_echo = 0;
    std::uint64_t trial = 0;
};

/// Per-pixel expected counts: the analytic image rescaled to the expected
/// total, mixed with a flat accidental share.
std::vector<double> expected_counts(const CampaignConfig& config);

/// One seeded campaign. `trial` selects an independent substream of the seed.
CampaignResult sample_campaign(const CampaignConfig& config, std::uint64_t trial = 0);

/// Trials 0..repetitions-1, spread over `workers` threads. The output does
/// not depend on `workers`.
std::vector<CampaignResult> run_campaigns(const CampaignConfig& config, std::size_t repetitions,
                                          unsigned workers = 1);

/// Contrast of integer counts with a first-order Poisson error (variance N
/// per pixel).
ContrastValue estimate_contrast(const Image<double>& counts, const ObjectMask& mask);

/// Contrast of `values` with first-order error propagation of independent
/// per-pixel variances.
ContrastValue estimate_contrast(const Image<double>& values, std::span<const double> variances,
                                const ObjectMask& mask);

/// Standard deviation of the contrast over parametric Poisson resamples of
/// the counts. Resamples with zero total are skipped.
double bootstrap_contrast_sigma(const Image<double>& counts, const ObjectMask& mask, std::size_t resamples = 10000,
                                std::uint64_t seed = 0);

/// Per-pixel max(count - estimate, 0).
Image<double> subtract_accidentals(const Image<double>& counts, std::span<const double> estimate);

/// Contrast of accidental-subtracted counts, propagating the raw Poisson
/// variance of each pixel.
ContrastValue estimate_corrected_contrast(const Image<double>& raw, const Image<double>& corrected,
                                          const ObjectMask& mask);

struct HomScanResult {
    std::vector<double> delays;
    std::vector<double> rates;
    std::optional<std::vector<std::int64_t>> sampled_counts;
    /// Anti-symmetric weight of the heralded B/C state.
    double antisymmetric_weight = 0;
};

/// Gaussian two-photon overlap exp(-tau^2 / (2 w^2)).
double indistinguishability(double delay, double dip_width);

/// Probability that the B/C pair heralded by patterns on A and D lies in the
/// anti-symmetric subspace. Computed on the full four-photon state.
double heralded_antisymmetric_weight(const ObjectMask& pattern_a, const ObjectMask& pattern_d);

/// Beamsplitter coincidence probability gamma * P_AS + (1 - gamma) / 2 over
/// a delay grid. Counts are drawn binomially when shots_per_delay > 0.
HomScanResult hom_scan(Dimension d, const ObjectMask& pattern_a, const ObjectMask& pattern_d,
                       std::span<const double> delays, double dip_width, std::int64_t shots_per_delay = 0,
                       std::uint64_t seed = 0);

/// Four-fold rate reduction when each of the four arms keeps a fraction p.
double rate_budget(double p_per_arm);

}  // namespace ghostswap
