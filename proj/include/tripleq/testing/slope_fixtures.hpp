#pragma once

// Random U = P D P^-1 with known block structure, shared by the unit tests,
// the acceptance binary and the selftest command.

#include <algorithm>
#include <vector>

#include "tripleq/random.hpp"
#include "tripleq/slope.hpp"

namespace tripleq::testing {

enum class BlockKind { Scalar, Zero, Half };

struct Block {
    BlockKind kind = BlockKind::Scalar;
    Slope slope;
    PadicNum value;  // the eigenvalue for Scalar, the square of the eigenvalues for Half
    int size() const { return kind == BlockKind::Half ? 2 : 1; }
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

inline IntMatrix int_identity(int n) {
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// a unimodular matrix and its inverse, both with integer entries
inline std::pair<IntMatrix, IntMatrix> random_unimodular(Rng& rng, int n) {
    IntMatrix P = int_identity(n), Pinv = int_identity(n);
    if (n < 2) return {P, Pinv};
    for (int step = 0; step < 2 * n; ++step) {
        int i = static_cast<int>(rng.below(n)), j = static_cast<int>(rng.below(n - 1));
        if (j >= i) ++j;
        std::int64_t c = rng.range(-2, 2);
        // P <- P (I + c e_ij): column j += c column i
        for (int r = 0; r < n; ++r) P[r][j] += c * P[r][i];
        // Pinv <- (I - c e_ij) Pinv: row i -= c row j
        for (int col = 0; col < n; ++col) Pinv[i][col] -= c * Pinv[j][col];
    }
    return {P, Pinv};
}

struct Construction {
    const Ring* ring = nullptr;
    int n = 0;
    std::vector<Block> blocks;
    std::vector<int> offset;
    PadicMatrix P, Pinv, D, U;

    PadicMatrix conjugate(const PadicMatrix& block_diag) const { return P * block_diag * Pinv; }

    PadicMatrix oracle_projector(Slope a) const {
        PadicMatrix E(*ring, n);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (blocks[b].kind == BlockKind::Zero || blocks[b].slope > a) continue;
            for (int k = 0; k < blocks[b].size(); ++k) E.at(offset[b] + k, offset[b] + k) = PadicNum::from_int(*ring, 1);
        }
        return conjugate(E);
    }

    // projector onto the eigenspace of a scalar eigenvalue
    PadicMatrix oracle_eigenprojector(const PadicNum& value) const {
        PadicMatrix E(*ring, n);
        for (std::size_t b = 0; b < blocks.size(); ++b)
            if (blocks[b].kind == BlockKind::Scalar && agrees_to(blocks[b].value, value, ring->cap()))
                E.at(offset[b], offset[b]) = PadicNum::from_int(*ring, 1);
        return conjugate(E);
    }

    std::vector<PadicVector> kernel() const {
        std::vector<PadicVector> out;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (blocks[b].kind != BlockKind::Zero) continue;
            PadicVector v(n);
            for (int r = 0; r < n; ++r) v[r] = P.at(r, offset[b]);
            out.push_back(v);
        }
        return out;
    }

    int count_at_most(Slope a) const {
        int m = 0;
        for (const auto& b : blocks)
            if (b.kind != BlockKind::Zero && b.slope <= a) m += b.size();
        return m;
    }

    std::vector<SlopeMultiplicity> expected_slopes() const {
        std::vector<SlopeMultiplicity> out;
        std::vector<Block> sorted = blocks;
        std::sort(sorted.begin(), sorted.end(), [](const Block& x, const Block& y) { return x.slope < y.slope; });
        for (const auto& b : sorted) {
            if (b.kind == BlockKind::Zero) continue;
            if (!out.empty() && out.back().slope == b.slope) out.back().multiplicity += b.size();
            else out.push_back({b.slope, b.size()});
        }
        return out;
    }
};

inline PadicMatrix to_padic(const Ring& R, const IntMatrix& m) { return PadicMatrix::from_ints(R, m); }

inline PadicNum random_unit(const Ring& R, Rng& rng) {
    const std::uint64_t p = R.p();
    std::uint64_t u = rng.below(R.modulus());
    if (u % p == 0) u += 1 + rng.below(p - 1);
    return PadicNum::from_residue(R, u % R.modulus(), R.cap());
}

// n in 1..6; slopes drawn from {0, 1/2, 1, 2, infinity}.  Slope-0 eigenvalues get
// distinct residues mod p while that is possible.
inline Construction random_construction(const Ring& R, Rng& rng, int n, bool first_scalar = false) {
    Construction c;
    c.ring = &R;
    c.n = n;
    std::vector<std::uint64_t> used_residues;
    int filled = 0;
    while (filled < n) {
        Block b;
        int kind = static_cast<int>(rng.below(5));
        if (first_scalar && c.blocks.empty()) kind = static_cast<int>(rng.below(3));
        if (kind == 4 && filled + 2 > n) kind = 0;
        PadicNum u = random_unit(R, rng);
        switch (kind) {
            case 0: {
                if (used_residues.size() + 1 < R.p()) {
                    while (std::find(used_residues.begin(), used_residues.end(), u.residue_mod(1)) != used_residues.end())
                        u = random_unit(R, rng);
                    used_residues.push_back(u.residue_mod(1));
                }
                b = {BlockKind::Scalar, Slope(0), u};
                break;
            }
            case 1: b = {BlockKind::Scalar, Slope(1), u.shift(1)}; break;
            case 2: b = {BlockKind::Scalar, Slope(2), u.shift(2)}; break;
            case 3: b = {BlockKind::Zero, Slope(0), PadicNum::exact_zero(R)}; break;
            default: b = {BlockKind::Half, Slope(1, 2), u.shift(1)}; break;
        }
        c.offset.push_back(filled);
        c.blocks.push_back(b);
        filled += b.size();
    }
    c.D = PadicMatrix(R, n);
    for (std::size_t b = 0; b < c.blocks.size(); ++b) {
        const int o = c.offset[b];
        if (c.blocks[b].kind == BlockKind::Scalar) c.D.at(o, o) = c.blocks[b].value;
        if (c.blocks[b].kind == BlockKind::Half) {
            c.D.at(o, o + 1) = c.blocks[b].value;
            c.D.at(o + 1, o) = PadicNum::from_int(R, 1);
        }
    }
    auto [P, Pinv] = random_unimodular(rng, n);
    c.P = to_padic(R, P);
    c.Pinv = to_padic(R, Pinv);
    c.U = c.P * c.D * c.Pinv;
    return c;
}

inline Slope random_cut(Rng& rng) {
    static const Slope cuts[] = {Slope(0), Slope(1, 2), Slope(1), Slope(3, 2), Slope(2), Slope(3)};
    return cuts[rng.below(6)];
}

struct PairingSystem {
    Construction c;
    PadicMatrix Phi, phi;
    PadicVector eta;
    Slope a;
    std::vector<PadicVector> tests;
};

// phi is the adjoint of U for <x, y> = x^T Phi y, and eta an eigenvector of
// phi whose eigenvalue has slope <= a
inline PairingSystem random_pairing_system(const Ring& R, Rng& rng) {
    PairingSystem s;
    const int n = static_cast<int>(rng.range(2, 6));
    s.c = random_construction(R, rng, n, true);
    auto [Phi, PhiInv] = random_unimodular(rng, n);
    s.Phi = to_padic(R, Phi);
    const PadicMatrix PhiInvM = to_padic(R, PhiInv);
    s.phi = (s.Phi * s.c.U * PhiInvM).transpose();
    const Block& first = s.c.blocks.front();
    do s.a = random_cut(rng);
    while (s.a < first.slope);
    // eta = Phi^-T P^-T e_0
    PadicVector e0(n, PadicNum::exact_zero(R));
    e0[0] = PadicNum::from_int(R, 1);
    s.eta = PhiInvM.transpose() * (s.c.Pinv.transpose() * e0);
    for (int k = 0; k < 5; ++k) {
        PadicVector v(n);
        for (auto& x : v) x = PadicNum::from_residue(R, rng.below(R.modulus()), R.cap());
        s.tests.push_back(v);
    }
    return s;
}

}  // namespace tripleq::testing
