#pragma once

#include <cstdint>
#include <vector>

#include "qkdpost/bitstring.hpp"
#include "qkdpost/rng.hpp"

namespace qkdpost {

enum class Basis : std::uint8_t { X = 0, Z = 1 };

enum class ClickPattern : std::uint8_t { None = 0, Single = 1, Double = 2 };

/// Joint per-pulse record: Alice's preparation and Bob's detection outcome.
/// Which pulses produced clicks is common knowledge (the detection report is
/// treated as part of the quantum-exchange layer); double-click bit and, in
/// passive setups, basis assignments happen at key sift with Bob's RNG.
struct RawDetection {
    std::uint8_t alice_bit = 0;
    Basis alice_basis = Basis::X;
    Basis bob_basis = Basis::X;
    ClickPattern click = ClickPattern::None;
    std::uint8_t bob_bit = 0;  // meaningful for Single clicks
};

/// Both parties' views of the n-bit raw key after key sift.
struct RawKeyPair {
    BitString alice_bits;
    BitString bob_bits;
    BitString alice_bases;  // bit = 1 means Z
    BitString bob_bases;
    std::vector<std::uint64_t> retained;  // indices into the detection list

    std::uint64_t n() const { return alice_bits.size(); }
};

/// Step 1: discard no-clicks; double clicks get a uniformly random bit (and,
/// in passive mode, a uniformly random basis). No classical communication.
RawKeyPair key_sift(const std::vector<RawDetection>& detections, Rng& bob_rng,
                    bool passive_double_basis);

/// Per-basis sifted keys (step 2 output), after discarding mismatched-basis
/// rounds.
struct SiftedKeys {
    BitString x_alice, x_bob;
    BitString z_alice, z_bob;
    std::vector<std::uint64_t> x_rounds, z_rounds;  // indices into the raw key

    std::uint64_t n_x() const { return x_alice.size(); }
    std::uint64_t n_z() const { return z_alice.size(); }
    long double q_x() const {
        const long double tot = static_cast<long double>(n_x()) + n_z();
        return tot == 0.0L ? 0.0L : static_cast<long double>(n_x()) / tot;
    }
};

/// The pure computation both parties run on the (authenticated) basis
/// strings: keep rounds with equal bases, split by basis.
SiftedKeys split_by_basis(const RawKeyPair& raw, const BitString& alice_bases,
                          const BitString& bob_bases);

}  // namespace qkdpost
