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

#include "ghostswap/types.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "ghostswap/error.h"

namespace ghostswap {

Dimension::Dimension(int d) : d_(d) {
    if (d < 2) {
        throw DimensionError("dimension must be at least 2, got " + std::to_string(d));
    }
}

void Dimension::require_exact() const {
    if (d_ > kMaxExactDimension) {
        throw DimensionError("dimension " + std::to_string(d_) + " exceeds the exact-mode limit of " +
                             std::to_string(kMaxExactDimension));
    }
}

ObjectMask::ObjectMask(std::vector<int> values, Layout layout) : values_(std::move(values)), layout_(layout) {
    if (values_.size() < 2) {
        throw DimensionError("mask needs at least 2 pixels, got " + std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] != 0 && values_[i] != 1) {
            throw InvalidArgument("mask pixel " + std::to_string(i + 1) + " is " + std::to_string(values_[i]) +
                                  ", expected 0 or 1");
        }
    }
    if (layout_ == Layout::Grid && !grid_side(static_cast<int>(values_.size()))) {
        throw InvalidArgument("grid layout needs a square pixel count, got " + std::to_string(values_.size()));
    }
    budget_ = std::accumulate(values_.begin(), values_.end(), 0);
}

ObjectMask ObjectMask::half_on(int d) {
    Dimension dim(d);
    std::vector<int> v(dim.size(), 0);
    std::fill_n(v.begin(), (d + 1) / 2, 1);
    return ObjectMask(std::move(v));
}

ObjectMask ObjectMask::quadrant_on(int d) {
    Dimension dim(d);
    auto side = grid_side(d);
    if (!side) {
        throw InvalidArgument("quadrant_on needs a square pixel count, got " + std::to_string(d));
    }
    const int s = *side;
    const int half = (s + 1) / 2;
    std::vector<int> v(dim.size(), 0);
    // Row 0 is the bottom row.
    for (int row = 0; row < half; ++row) {
        for (int col = 0; col < half; ++col) {
            v[static_cast<std::size_t>(row * s + col)] = 1;
        }
    }
    return ObjectMask(std::move(v), Layout::Grid);
}

ObjectMask ObjectMask::inverted() const {
    std::vector<int> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [](int x) { return 1 - x; });
    return ObjectMask(std::move(v), layout_);
}

std::optional<int> grid_side(int d) {
    if (d <= 0) return std::nullopt;
    int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(d))));
    if (s * s == d) return s;
    return std::nullopt;
}

FamilySet families_of(ImageFamily f) {
    switch (f) {
        case ImageFamily::PsiMinus:
        case ImageFamily::AS:
            return {BellFamily::PsiMinus};
        case ImageFamily::PsiPlus:
            return {BellFamily::PsiPlus};
        case ImageFamily::Phi:
            return {BellFamily::Phi};
        case ImageFamily::S:
            return {BellFamily::PsiPlus, BellFamily::Phi};
    }
    return {};
}

std::string_view to_string(ImageFamily f) {
    switch (f) {
        case ImageFamily::PsiMinus: return "psi_minus";
        case ImageFamily::PsiPlus: return "psi_plus";
        case ImageFamily::Phi: return "phi";
        case ImageFamily::AS: return "as";
        case ImageFamily::S: return "s";
    }
    return "?";
}

std::optional<ImageFamily> parse_image_family(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (auto f : {ImageFamily::PsiMinus, ImageFamily::PsiPlus, ImageFamily::Phi, ImageFamily::AS, ImageFamily::S}) {
        if (lower == to_string(f)) return f;
    }
    return std::nullopt;
}

BellProjector BellProjector::psi_minus(int n, int m) {
    if (n >= m) throw InvalidArgument("Psi- indices must satisfy n < m");
    return {BellFamily::PsiMinus, n, m};
}

BellProjector BellProjector::psi_plus(int n, int m) {
    if (n >= m) throw InvalidArgument("Psi+ indices must satisfy n < m");
    return {BellFamily::PsiPlus, n, m};
}

BellProjector BellProjector::phi(int n) { return {BellFamily::Phi, n, n}; }

void BellProjector::validate(Dimension d) const {
    if (n_ < 0 || m_ < 0 || n_ >= d.value() || m_ >= d.value()) {
        throw InvalidArgument("projector " + label() + " out of range for d=" + std::to_string(d.value()));
    }
}

std::string BellProjector::label() const {
    switch (family_) {
        case BellFamily::PsiMinus:
            return "Psi-(" + std::to_string(n_ + 1) + "," + std::to_string(m_ + 1) + ")";
        case BellFamily::PsiPlus:
            return "Psi+(" + std::to_string(n_ + 1) + "," + std::to_string(m_ + 1) + ")";
        case BellFamily::Phi:
            return "Phi(" + std::to_string(n_ + 1) + ")";
    }
    return "?";
}

std::vector<BellProjector> enumerate_projectors(Dimension d, FamilySet families) {
    const int n = d.value();
    std::vector<BellProjector> out;
    out.reserve(d.size() * d.size());
    if (families.contains(BellFamily::PsiMinus)) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) out.push_back(BellProjector::psi_minus(i, j));
    }
    if (families.contains(BellFamily::PsiPlus)) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) out.push_back(BellProjector::psi_plus(i, j));
    }
    if (families.contains(BellFamily::Phi)) {
        for (int i = 0; i < n; ++i) out.push_back(BellProjector::phi(i));
    }
    return out;
}

}  // namespace ghostswap
