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

// Closed-form heralded ghost images and contrasts for binary object masks.
//
// With B bright pixels out of d, the image seen by photon D is
//   Psi-, Psi+ :  (B - O(i)) / 2d^2
//   Phi        :  2 O(i)     / 2d^2
//   AS = Psi-  :  (B - O(i)) / 2d^2
//   S = Psi+ + Phi : (B + O(i)) / 2d^2
// so every analytic image is an integer numerator over the common
// denominator 2d^2 and the identities between them hold exactly.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghostswap/error.h"
#include "ghostswap/hilbert.h"
#include "ghostswap/types.h"

namespace ghostswap {

enum class ImageKind { Probability, Counts };
enum class Provenance { Analytic, BruteForce, Sampled, Corrected };

/// Per-pixel nonnegative intensities for photon D. Probability images are not
/// normalized to unit sum.
template <typename Scalar = double>
struct Image {
    using Pixels = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Pixels pixels;
    ImageKind kind = ImageKind::Probability;
    Provenance provenance = Provenance::Analytic;
    std::optional<ImageFamily> family;

    Image(Pixels px, ImageKind k, Provenance p, std::optional<ImageFamily> f = std::nullopt)
        : pixels(std::move(px)), kind(k), provenance(p), family(f) {
        if (pixels.size() > 0 && pixels.minCoeff() < Scalar(0)) throw InvalidArgument("image has a negative pixel");
    }

    static Image counts(const std::vector<std::int64_t>& n, Provenance p = Provenance::Sampled,
                        std::optional<ImageFamily> f = std::nullopt) {
        Pixels px(static_cast<Eigen::Index>(n.size()));
        for (std::size_t i = 0; i < n.size(); ++i) px[static_cast<Eigen::Index>(i)] = static_cast<Scalar>(n[i]);
        return Image(std::move(px), ImageKind::Counts, p, f);
    }

    std::size_t size() const { return static_cast<std::size_t>(pixels.size()); }
    Scalar total() const { return pixels.sum(); }
};

/// Analytic image held exactly as integer numerators over one denominator.
struct ExactImage {
    std::vector<std::int64_t> numerators;
    std::int64_t denominator = 1;
    ImageFamily family = ImageFamily::AS;

    std::size_t size() const { return numerators.size(); }

    template <typename Scalar = double>
    Scalar value(std::size_t i) const {
        return static_cast<Scalar>(numerators[i]) / static_cast<Scalar>(denominator);
    }

    template <typename Scalar = double>
    Image<Scalar> to_image() const {
        typename Image<Scalar>::Pixels px(static_cast<Eigen::Index>(size()));
        for (std::size_t i = 0; i < size(); ++i) px[static_cast<Eigen::Index>(i)] = value<Scalar>(i);
        return Image<Scalar>(std::move(px), ImageKind::Probability, Provenance::Analytic, family);
    }

    /// True when every numerator is the same.
    bool flat() const {
        for (auto n : numerators)
            if (n != numerators.front()) return false;
        return true;
    }

    friend bool operator==(const ExactImage& a, const ExactImage& b) {
        return a.numerators == b.numerators && a.denominator == b.denominator;
    }
};

/// Pixelwise sum; both operands must share a denominator.
inline ExactImage operator+(const ExactImage& a, const ExactImage& b) {
    if (a.size() != b.size() || a.denominator != b.denominator) {
        throw DimensionError("cannot add exact images of different shape");
    }
    ExactImage out{a.numerators, a.denominator, a.family};
    for (std::size_t i = 0; i < out.size(); ++i) out.numerators[i] += b.numerators[i];
    return out;
}

inline ExactImage analytic_image_exact(const ObjectMask& mask, ImageFamily family) {
    const auto d = static_cast<std::int64_t>(mask.size());
    const std::int64_t budget = mask.budget();
    ExactImage img;
    img.denominator = 2 * d * d;
    img.family = family;
    img.numerators.resize(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const std::int64_t o = mask[i];  // O(i)^2 == O(i) for a binary mask
        switch (family) {
            case ImageFamily::PsiMinus:
            case ImageFamily::PsiPlus:
            case ImageFamily::AS:
                img.numerators[i] = budget - o;
                break;
            case ImageFamily::Phi:
                img.numerators[i] = 2 * o;
                break;
            case ImageFamily::S:
                img.numerators[i] = budget + o;
                break;
        }
    }
    return img;
}

template <typename Scalar = double>
Image<Scalar> analytic_image(const ObjectMask& mask, ImageFamily family) {
    return analytic_image_exact(mask, family).template to_image<Scalar>();
}

/// Probability that the unmasked B/C pair is projected into the
/// anti-symmetric subspace, (d-1)/2d, or the symmetric one, (d+1)/2d.
template <typename Scalar = double>
Scalar projection_probability(Dimension d, ImageFamily family) {
    const Scalar n = static_cast<Scalar>(d.value());
    switch (family) {
        case ImageFamily::AS:
            return (n - 1) / (2 * n);
        case ImageFamily::S:
            return (n + 1) / (2 * n);
        default:
            throw InvalidArgument("projection_probability is defined for the AS and S families only");
    }
}

/// Unnormalized state of photon D heralded on A passing the mask and B/C
/// landing in `family`. The trace is the heralding probability.
template <typename Scalar = double>
DensityMatrix<Scalar> conditional_density(const ObjectMask& mask, ImageFamily family) {
    const Dimension d = mask.dimension();
    const auto state = apply_object_mask(build_initial_state<Scalar>(d), mask);
    auto rho = DensityMatrix<Scalar>::zero(d);
    for (const auto& p : enumerate_projectors(d, families_of(family))) rho += trace_out_a(project_bc(state, p));
    return rho;
}

struct ContrastValue {
    double value = 0;
    double sigma = 0;
};

/// -1 / (B (d-1)) for AS and +1 / (B (d+1)) for S. Throws DegenerateError
/// when the mask would have no dark or no bright pixel.
inline ContrastValue analytic_contrast(Dimension d, int budget, ImageFamily family) {
    if (budget < 1 || budget >= d.value()) {
        throw DegenerateError("contrast is undefined for budget " + std::to_string(budget) + " at d=" +
                              std::to_string(d.value()));
    }
    const double b = budget;
    const double n = d.value();
    switch (family) {
        case ImageFamily::AS:
            return {-1.0 / (b * (n - 1.0)), 0.0};
        case ImageFamily::S:
            return {1.0 / (b * (n + 1.0)), 0.0};
        default:
            throw InvalidArgument("analytic_contrast is defined for the AS and S families only");
    }
}

/// (mean over bright pixels - mean over dark pixels) / total, from any
/// per-pixel intensity vector.
template <typename Derived>
double contrast_value(const Eigen::MatrixBase<Derived>& pixels, const ObjectMask& mask) {
    if (static_cast<std::size_t>(pixels.size()) != mask.size()) {
        throw DimensionError("image and mask sizes differ");
    }
    if (!mask.has_contrast()) {
        throw DegenerateError("mask needs at least one bright and one dark pixel");
    }
    double bright = 0;
    double dark = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        (mask.bright(i) ? bright : dark) += static_cast<double>(pixels[static_cast<Eigen::Index>(i)]);
    }
    const double total = bright + dark;
    if (total <= 0) throw DegenerateError("image has zero total intensity");
    const double n_bright = mask.budget();
    const double n_dark = static_cast<double>(mask.size()) - n_bright;
    return (bright / n_bright - dark / n_dark) / total;
}

template <typename Scalar>
ContrastValue contrast_of_image(const Image<Scalar>& image, const ObjectMask& mask) {
    return {contrast_value(image.pixels, mask), 0.0};
}

}  // namespace ghostswap
