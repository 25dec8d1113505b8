#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "qkdpost/bitstring.hpp"

namespace qkdpost {

enum class CodecKind : std::uint8_t { Cascade, ShannonOracle };

/// One reconciliation exchange. Parities carry key content (Alice to Bob,
/// one-time-pad encrypted on the wire and metered as k_ec); Feedback carries
/// error-pattern information only (Bob to Alice, sent in the clear).
struct EcMessage {
    enum class Kind : std::uint8_t { Parities = 0, Feedback = 1 };
    Kind kind = Kind::Parities;
    BitString payload;
};

/// k_ec is exactly the number of OTP-encrypted reconciliation bits on the
/// wire; bits_sent additionally counts the cleartext feedback.
struct LeakageMeter {
    std::uint64_t bits_sent = 0;
    std::uint64_t k_ec = 0;
};

/// Message-driven endpoint of a two-party reconciliation. The session
/// alternates: Alice's step() emits Parities, Bob's step() consumes them and
/// emits Feedback, which Alice consumes to produce the next Parities. A
/// nullopt from Alice ends the run.
class ReconcilerEndpoint {
public:
    virtual ~ReconcilerEndpoint() = default;
    virtual std::optional<EcMessage> step(const std::optional<EcMessage>& incoming) = 0;
    virtual bool done() const = 0;
    /// corrected positions so far (common knowledge between the endpoints)
    virtual std::uint64_t corrections() const = 0;
    virtual const BitString& key() const = 0;
};

struct CascadeConfig {
    unsigned passes = 4;
    long double e_est = 0.04L;   // initial block size ceil(0.73/e_est)
    std::uint64_t nonce = 0;     // shared public randomness for the pass permutations
    /// hard cap on exchanged messages, the non-convergence guard
    std::uint64_t max_rounds = 1u << 20;
};

/// Interactive Cascade: block parities per pass, batched binary search on
/// mismatched blocks, corrections cascading back into earlier passes. If the
/// first pass sees no mismatch and nothing has been corrected, the run stops
/// after pass 1.
std::unique_ptr<ReconcilerEndpoint> make_cascade_alice(BitString key, const CascadeConfig& cfg);
std::unique_ptr<ReconcilerEndpoint> make_cascade_bob(BitString key, const CascadeConfig& cfg);

/// Shannon-limit accounting codec: corrects out-of-band (it is constructed
/// with both keys) while charging exactly ceil(n H2(e)) encrypted bits, the
/// f = 1 mode used to reproduce idealized-efficiency accounting. The wire
/// payload is deterministic filler, so tampering with it does not disturb
/// the correction itself.
std::unique_ptr<ReconcilerEndpoint> make_oracle_alice(BitString key, const BitString& peer_key);
std::unique_ptr<ReconcilerEndpoint> make_oracle_bob(BitString key, const BitString& peer_key);

}  // namespace qkdpost
