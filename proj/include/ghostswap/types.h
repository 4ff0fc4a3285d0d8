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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ghostswap {

/// Largest dimension for which the dense d^4 four-photon tensor is built.
inline constexpr int kMaxExactDimension = 16;

/// Number of position-basis pixels per photon. Always >= 2.
class Dimension {
public:
    explicit Dimension(int d);

    int value() const { return d_; }
    std::size_t size() const { return static_cast<std::size_t>(d_); }
    bool exact_mode() const { return d_ <= kMaxExactDimension; }

    /// Throws DimensionError unless the dense four-photon tensor is allowed.
    void require_exact() const;

    friend bool operator==(Dimension, Dimension) = default;

private:
    int d_;
};

/// Binary transmission mask O(i) over d pixels. Pixels are stored 0-based.
class ObjectMask {
public:
    enum class Layout { Row, Grid };

    explicit ObjectMask(std::vector<int> values, Layout layout = Layout::Row);
    ObjectMask(std::initializer_list<int> values) : ObjectMask(std::vector<int>(values)) {}

    /// First ceil(d/2) pixels transmit.
    static ObjectMask half_on(int d);
    /// Bottom-left quadrant of a sqrt(d) x sqrt(d) grid, row-major from the
    /// bottom-left corner. Throws InvalidArgument unless d is a perfect square.
    static ObjectMask quadrant_on(int d);
    /// Complement of this mask.
    ObjectMask inverted() const;

    Dimension dimension() const { return Dimension(static_cast<int>(values_.size())); }
    std::size_t size() const { return values_.size(); }
    int operator[](std::size_t i) const { return values_[i]; }
    bool bright(std::size_t i) const { return values_[i] != 0; }
    std::span<const int> values() const { return values_; }
    Layout layout() const { return layout_; }

    /// Number of transmitting pixels.
    int budget() const { return budget_; }
    /// No pixel transmits.
    bool degenerate() const { return budget_ == 0; }
    /// Has at least one bright and one dark pixel, so contrast is defined.
    bool has_contrast() const { return budget_ > 0 && budget_ < static_cast<int>(values_.size()); }

    friend bool operator==(const ObjectMask& a, const ObjectMask& b) { return a.values_ == b.values_; }

private:
    std::vector<int> values_;
    int budget_ = 0;
    Layout layout_ = Layout::Row;
};

/// Side length of a square grid holding d pixels, if d is a perfect square.
std::optional<int> grid_side(int d);

enum class BellFamily : std::uint8_t { PsiMinus = 0, PsiPlus = 1, Phi = 2 };

/// Set of Bell families, as a bitmask.
class FamilySet {
public:
    constexpr FamilySet() = default;
    constexpr FamilySet(std::initializer_list<BellFamily> families) {
        for (auto f : families) bits_ |= bit(f);
    }

    static constexpr FamilySet all() { return {BellFamily::PsiMinus, BellFamily::PsiPlus, BellFamily::Phi}; }
    static constexpr FamilySet none() { return {}; }

    constexpr bool contains(BellFamily f) const { return (bits_ & bit(f)) != 0; }
    constexpr bool empty() const { return bits_ == 0; }

    friend constexpr bool operator==(FamilySet, FamilySet) = default;

private:
    static constexpr std::uint8_t bit(BellFamily f) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(f)); }
    std::uint8_t bits_ = 0;
};

/// Projection outcomes for which ghost images are defined. AS is the
/// anti-symmetric subspace {Psi-}; S is the symmetric subspace {Psi+, Phi}.
enum class ImageFamily { PsiMinus, PsiPlus, Phi, AS, S };

FamilySet families_of(ImageFamily f);
std::string_view to_string(ImageFamily f);
/// Accepts "psi_minus", "psi_plus", "phi", "as", "s" (case-insensitive).
std::optional<ImageFamily> parse_image_family(std::string_view name);

/// One member of the Psi-_{nm}, Psi+_{nm} or Phi_n families. Indices are
/// 0-based with first < second for the Psi families; Phi uses first only.
class BellProjector {
public:
    static BellProjector psi_minus(int n, int m);
    static BellProjector psi_plus(int n, int m);
    static BellProjector phi(int n);

    BellFamily family() const { return family_; }
    int first() const { return n_; }
    int second() const { return m_; }

    /// Throws InvalidArgument if an index is outside [0, d).
    void validate(Dimension d) const;

    /// 1-based label, e.g. "Psi-(1,2)" or "Phi(3)".
    std::string label() const;

    friend bool operator==(const BellProjector&, const BellProjector&) = default;

private:
    BellProjector(BellFamily f, int n, int m) : family_(f), n_(n), m_(m) {}
    BellFamily family_;
    int n_;
    int m_;
};

/// All projectors of the requested families for dimension d, ordered by
/// family (Psi-, Psi+, Phi) and then lexicographically by index.
std::vector<BellProjector> enumerate_projectors(Dimension d, FamilySet families);

}  // namespace ghostswap
