#pragma once
// Seeded property checks shared by the unit suite (few trials) and the
// acceptance binary (full trial counts).

#include <cstddef>
#include <cstdint>
#include <string>

#include "diagform/decomp.hpp"
#include "diagform/form.hpp"

namespace props {

struct Tally {
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::string first_failure;

    double rate() const { return trials ? static_cast<double>(passed) / static_cast<double>(trials) : 0.0; }
    bool all() const { return trials > 0 && passed == trials; }
    void record(bool ok, const std::string& what);
};

/// random_diagonalizable with n = 1 + i % 4, d = 3 + (i / 4) % 2; pass when the
/// verdict is diagonalizable, verify holds and (row, lambda) pairs match the
/// ground truth up to permutation.
Tally round_trip(std::size_t trials, std::uint64_t seed);

/// span center(A P^d) == P^{-1} center(A) P for diagonalizable and direct-sum A.
Tally center_conjugation(std::size_t trials, std::uint64_t seed);

/// Random dense ternary cubics with coefficients in [-9, 9]; pass when the
/// center has dimension 1.
Tally generic_centrality(std::size_t trials, std::uint64_t seed);

/// Forms sum lambda_i (q_i . x)^d with Q rational orthogonal; pass when the
/// precheck holds and decompose reports diagonalizable with ortho orthogonal.
Tally odeco_positive(std::size_t trials, std::uint64_t seed);

/// Same tensors with one Gram entry moved by a nonzero integer; pass when the
/// precheck fails.
Tally odeco_perturbed(std::size_t trials, std::uint64_t seed);

/// Degenerate g(l_1, ..., l_r): slicing rank, n - dim radical and the
/// essential rank of the reduction all equal r, and the reduction expands back
/// to f.
Tally rank_law(std::size_t trials, std::uint64_t seed);

/// Two decompositions with different seeds give the same (row, lambda) pairs.
Tally seed_uniqueness(std::size_t trials, std::uint64_t seed);

/// Random block-diagonal forms in disguise: decompose reports direct_sum and
/// the congruent tensor has no entries across blocks.
Tally block_separation(std::size_t trials, std::uint64_t seed);

/// Random dense forms decompose to central_indecomposable.
Tally generic_verdict(std::size_t trials, std::uint64_t seed);

/// True when the congruence of gram(f) by dec.P has no entry joining two blocks.
bool blocks_separate(const diagform::Form& f, const diagform::Decomposition& dec);

} // namespace props
