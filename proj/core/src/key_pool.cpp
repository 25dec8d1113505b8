#include "qkdpost/key_pool.hpp"

namespace qkdpost {

std::uint64_t KeyPool::consumed() const {
    std::uint64_t n = 0;
    for (const auto& e : ledger_)
        if (!e.reusable) n += e.amount;
    return n;
}

std::uint64_t KeyPool::reusable_drawn() const {
    std::uint64_t n = 0;
    for (const auto& e : ledger_)
        if (e.reusable) n += e.amount;
    return n;
}

BitString KeyPool::draw(const std::string& purpose, std::uint64_t nbits, bool reusable) {
    if (drawn_ + nbits > bits_.size())
        throw PoolExhaustedError("key pool exhausted drawing " + std::to_string(nbits) +
                                 " bits for " + purpose);
    BitString out = bits_.slice(drawn_, nbits);
    drawn_ += nbits;
    ledger_.push_back(LedgerEntry{purpose, nbits, reusable});
    return out;
}

bool KeyPool::ledger_consistent() const {
    std::uint64_t sum = 0;
    for (const auto& e : ledger_) sum += e.amount;
    return sum == drawn_;
}

}  // namespace qkdpost
