#pragma once

#include <random>

#include "mqspace/subspaces.hpp"

namespace mqspace {

/// Engine used by every randomized suite; results are reproducible from the seed.
using Rng = std::mt19937_64;

/// Entries with independent standard-normal real and imaginary parts.
Operator random_operator(const SpinSystem& system, Rng& rng);

/// (A + A^dagger) / 2 of a random operator.
Operator random_hermitian(const SpinSystem& system, Rng& rng);

/// Random Hermitian member of a subspace (random Hermitian, then projected).
Operator random_member(const SpinSystem& system, SubspaceTag tag, Rng& rng);

/// Random Hermitian zero-quantum operator with an identically zero diagonal.
Operator random_zqc(const SpinSystem& system, Rng& rng);

/// Random Hermitian operator supported on S(k) x S(k).
Operator random_block_operator(const SpinSystem& system, int k, Rng& rng);

}  // namespace mqspace
