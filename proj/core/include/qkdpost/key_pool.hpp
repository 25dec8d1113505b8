#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdpost/bitstring.hpp"

namespace qkdpost {

struct PoolExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pre-shared secret key store. Draws are sequential and never reused.
/// Pads and error-correction encryption bits are consumed; LFSR-Toeplitz
/// matrix keys stay private after use (the tags are one-time-pad encrypted)
/// and are tracked separately so Eq.-(8)-style net accounting can exclude
/// them while the pool ledger still reconciles bit for bit.
class KeyPool {
public:
    struct LedgerEntry {
        std::string purpose;
        std::uint64_t amount = 0;
        bool reusable = false;  // matrix keys: drawn but not consumed
    };

    KeyPool() = default;
    explicit KeyPool(BitString bits) : bits_(std::move(bits)) {}

    std::uint64_t capacity() const { return bits_.size(); }
    std::uint64_t drawn() const { return drawn_; }
    std::uint64_t remaining() const { return bits_.size() - drawn_; }

    /// Consumed bits only (pads, EC encryption): what Eq. (8) charges.
    std::uint64_t consumed() const;
    /// Reusable matrix-key bits drawn this session.
    std::uint64_t reusable_drawn() const;

    BitString draw(const std::string& purpose, std::uint64_t nbits, bool reusable = false);

    const std::vector<LedgerEntry>& ledger() const { return ledger_; }

    /// Ledger invariant: entries sum to drawn().
    bool ledger_consistent() const;

private:
    BitString bits_;
    std::uint64_t drawn_ = 0;
    std::vector<LedgerEntry> ledger_;
};

}  // namespace qkdpost
