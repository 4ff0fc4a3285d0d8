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

// Dense state-vector and projector algebra for two independent photon pairs
// (A,B) and (C,D) in a d-pixel position basis. The full state is kept as a
// d^4 complex vector with no assumption about its correlation structure, so
// it can serve as a brute-force reference for closed-form results.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>

#include "ghostswap/error.h"
#include "ghostswap/types.h"

namespace ghostswap {

enum class Arm { A, B, C, D };

template <typename Scalar = double>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Amplitude tensor psi(a, b, c, d) over four photons, 0-based pixel indices,
/// stored with the D index fastest.
template <typename Scalar = double>
class FourPhotonState {
public:
    using Complex = std::complex<Scalar>;
    using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

    FourPhotonState(Dimension d, Vector amplitudes) : dim_(d), amplitudes_(std::move(amplitudes)) {
        d.require_exact();
        const auto n = d.size();
        if (static_cast<std::size_t>(amplitudes_.size()) != n * n * n * n) {
            throw DimensionError("amplitude vector has " + std::to_string(amplitudes_.size()) +
                                 " entries, expected d^4");
        }
        norm_sq_ = amplitudes_.squaredNorm();
    }

    Dimension dimension() const { return dim_; }
    const Vector& amplitudes() const { return amplitudes_; }
    Scalar norm_sq() const { return norm_sq_; }
    bool degenerate() const { return norm_sq_ == Scalar(0); }

    Complex amplitude(int a, int b, int c, int dd) const { return amplitudes_[index(dim_.value(), a, b, c, dd)]; }

    static Eigen::Index index(int d, int a, int b, int c, int dd) {
        return ((static_cast<Eigen::Index>(a) * d + b) * d + c) * d + dd;
    }

    /// The (b, c) x dd block at fixed A pixel, rows ordered b * d + c.
    auto slice_for_a(int a) const {
        const Eigen::Index d = dim_.value();
        using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        return Eigen::Map<const RowMajor>(amplitudes_.data() + a * d * d * d, d * d, d);
    }

private:
    Dimension dim_;
    Vector amplitudes_;
    Scalar norm_sq_;
};

/// Two SPDC pairs, each maximally correlated in position:
/// (1/d) sum_{i,j} |i>_A |i>_B |j>_C |j>_D.
template <typename Scalar = double>
FourPhotonState<Scalar> build_initial_state(Dimension d) {
    d.require_exact();
    const int n = d.value();
    using State = FourPhotonState<Scalar>;
    typename State::Vector amps = State::Vector::Zero(static_cast<Eigen::Index>(n) * n * n * n);
    const Scalar w = Scalar(1) / Scalar(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) amps[State::index(n, i, i, j, j)] = w;
    return State(d, std::move(amps));
}

/// Multiplies every amplitude by O(pixel of `arm`). The result is not
/// renormalized; a fully opaque mask yields the degenerate zero state.
template <typename Scalar>
FourPhotonState<Scalar> apply_object_mask(const FourPhotonState<Scalar>& state, const ObjectMask& mask,
                                          Arm arm = Arm::A) {
    const int n = state.dimension().value();
    if (static_cast<int>(mask.size()) != n) {
        throw DimensionError("mask has " + std::to_string(mask.size()) + " pixels, state has d=" + std::to_string(n));
    }
    auto amps = state.amplitudes();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int dd = 0; dd < n; ++dd) {
                    const int pixel = arm == Arm::A ? a : arm == Arm::B ? b : arm == Arm::C ? c : dd;
                    if (!mask.bright(static_cast<std::size_t>(pixel))) {
                        amps[FourPhotonState<Scalar>::index(n, a, b, c, dd)] = Scalar(0);
                    }
                }
    return FourPhotonState<Scalar>(state.dimension(), std::move(amps));
}

/// Two-photon B/C state vector of a projector as a d x d matrix over (b, c).
template <typename Scalar = double>
ComplexMatrix<Scalar> projector_state_vector(const BellProjector& p, Dimension d) {
    p.validate(d);
    ComplexMatrix<Scalar> v = ComplexMatrix<Scalar>::Zero(d.value(), d.value());
    const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
    const int n = p.first();
    const int m = p.second();
    switch (p.family()) {
        case BellFamily::PsiMinus:
            v(n, m) = h;
            v(m, n) = -h;
            break;
        case BellFamily::PsiPlus:
            v(n, m) = h;
            v(m, n) = h;
            break;
        case BellFamily::Phi:
            v(n, n) = Scalar(1);
            break;
    }
    return v;
}

/// <p|q> for two projector state vectors.
template <typename Scalar = double>
std::complex<Scalar> projector_overlap(const BellProjector& p, const BellProjector& q, Dimension d) {
    return projector_state_vector<Scalar>(p, d).cwiseProduct(projector_state_vector<Scalar>(q, d).conjugate()).sum();
}

/// Unnormalized A/D state left after projecting B/C onto one projector.
/// `weight` is the squared norm, i.e. the probability of that outcome.
template <typename Scalar = double>
struct TwoPhotonState {
    ComplexMatrix<Scalar> amplitudes;  // rows: A pixel, cols: D pixel
    Scalar weight;

    explicit TwoPhotonState(ComplexMatrix<Scalar> amps)
        : amplitudes(std::move(amps)), weight(amplitudes.squaredNorm()) {}
};

/// Contracts the B and C indices with the conjugated projector vector.
template <typename Scalar>
TwoPhotonState<Scalar> project_bc(const FourPhotonState<Scalar>& state, const BellProjector& p) {
    const Dimension d = state.dimension();
    const int n = d.value();
    p.validate(d);
    const ComplexMatrix<Scalar> v = projector_state_vector<Scalar>(p, d);
    // Row-major flatten of conj(v) to match the slice row order b * d + c.
    Eigen::Matrix<std::complex<Scalar>, 1, Eigen::Dynamic> bra(static_cast<Eigen::Index>(n) * n);
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) bra[b * n + c] = std::conj(v(b, c));
    ComplexMatrix<Scalar> out(n, n);
    for (int a = 0; a < n; ++a) out.row(a) = bra * state.slice_for_a(a);
    return TwoPhotonState<Scalar>(std::move(out));
}

/// table(a, dd): probability that A is found at a, D at dd, and B/C lands in
/// any projector of `families`.
template <typename Scalar>
RealMatrix<Scalar> joint_probability_table(const FourPhotonState<Scalar>& state, FamilySet families) {
    const Dimension d = state.dimension();
    RealMatrix<Scalar> table = RealMatrix<Scalar>::Zero(d.value(), d.value());
    for (const auto& p : enumerate_projectors(d, families)) {
        table += project_bc(state, p).amplitudes.cwiseAbs2();
    }
    return table;
}

template <typename Scalar>
Scalar joint_probability(const FourPhotonState<Scalar>& state, FamilySet families, int a_pixel, int d_pixel) {
    const int n = state.dimension().value();
    if (a_pixel < 0 || a_pixel >= n || d_pixel < 0 || d_pixel >= n) {
        throw InvalidArgument("pixel index out of range for d=" + std::to_string(n));
    }
    Scalar total = 0;
    for (const auto& p : enumerate_projectors(state.dimension(), families)) {
        total += std::norm(project_bc(state, p).amplitudes(a_pixel, d_pixel));
    }
    return total;
}

/// Total probability that B/C lands in any projector of `families`.
template <typename Scalar>
Scalar family_weight(const FourPhotonState<Scalar>& state, FamilySet families) {
    Scalar total = 0;
    for (const auto& p : enumerate_projectors(state.dimension(), families)) total += project_bc(state, p).weight;
    return total;
}

/// d x d density matrix with its trace cached. Not necessarily unit trace.
template <typename Scalar = double>
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix<Scalar> entries) : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols()) throw DimensionError("density matrix must be square");
        trace_ = entries_.trace().real();
    }

    static DensityMatrix zero(Dimension d) { return DensityMatrix(ComplexMatrix<Scalar>::Zero(d.value(), d.value())); }

    const ComplexMatrix<Scalar>& entries() const { return entries_; }
    Scalar trace() const { return trace_; }
    Eigen::Index size() const { return entries_.rows(); }
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> diagonal() const { return entries_.diagonal().real(); }

    bool is_hermitian(Scalar tol = Scalar(1e-12)) const {
        return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }

    bool is_positive_semidefinite(Scalar tol = Scalar(1e-10)) const {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> solver(entries_, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff() >= -tol;
    }

    DensityMatrix& operator+=(const DensityMatrix& other) {
        if (other.size() != size()) throw DimensionError("density matrix size mismatch");
        entries_ += other.entries_;
        trace_ = entries_.trace().real();
        return *this;
    }

    friend DensityMatrix operator+(DensityMatrix a, const DensityMatrix& b) { return a += b; }

private:
    ComplexMatrix<Scalar> entries_;
    Scalar trace_;
};

/// Reduced state of photon D: rho(k, l) = sum_a psi(a, k) conj(psi(a, l)).
template <typename Scalar>
DensityMatrix<Scalar> trace_out_a(const TwoPhotonState<Scalar>& ad) {
    return DensityMatrix<Scalar>(ad.amplitudes.transpose() * ad.amplitudes.conjugate());
}

}  // namespace ghostswap
