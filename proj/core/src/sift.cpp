#include "qkdpost/sift.hpp"

#include <stdexcept>

namespace qkdpost {

RawKeyPair key_sift(const std::vector<RawDetection>& detections, Rng& bob_rng,
                    bool passive_double_basis) {
    RawKeyPair out;
    for (std::uint64_t i = 0; i < detections.size(); ++i) {
        const RawDetection& d = detections[i];
        if (d.click == ClickPattern::None) continue;

        bool bob_bit;
        Basis bob_basis = d.bob_basis;
        if (d.click == ClickPattern::Double) {
            bob_bit = bob_rng.bit();
            if (passive_double_basis) bob_basis = bob_rng.bit() ? Basis::Z : Basis::X;
        } else {
            bob_bit = d.bob_bit != 0;
        }

        out.alice_bits.push_back(d.alice_bit != 0);
        out.bob_bits.push_back(bob_bit);
        out.alice_bases.push_back(d.alice_basis == Basis::Z);
        out.bob_bases.push_back(bob_basis == Basis::Z);
        out.retained.push_back(i);
    }
    return out;
}

SiftedKeys split_by_basis(const RawKeyPair& raw, const BitString& alice_bases,
                          const BitString& bob_bases) {
    const std::uint64_t n = raw.n();
    if (alice_bases.size() != n || bob_bases.size() != n)
        throw std::invalid_argument("split_by_basis: basis string length != raw key length");

    SiftedKeys out;
    for (std::uint64_t i = 0; i < n; ++i) {
        const bool az = alice_bases.get(i);
        if (az != bob_bases.get(i)) continue;
        if (!az) {
            out.x_alice.push_back(raw.alice_bits.get(i));
            out.x_bob.push_back(raw.bob_bits.get(i));
            out.x_rounds.push_back(i);
        } else {
            out.z_alice.push_back(raw.alice_bits.get(i));
            out.z_bob.push_back(raw.bob_bits.get(i));
            out.z_rounds.push_back(i);
        }
    }
    return out;
}

}  // namespace qkdpost
