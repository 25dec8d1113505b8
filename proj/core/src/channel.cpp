#include "qkdpost/channel.hpp"

#include <stdexcept>

namespace qkdpost {

void ChannelModel::validate() const {
    auto prob = [](long double p) { return p >= 0.0L && p <= 1.0L; };
    if (!(eta > 0.0L && eta <= 1.0L)) throw std::invalid_argument("channel: eta outside (0,1]");
    if (!prob(qber_x) || !prob(qber_z) || !prob(double_click_prob) || !prob(dark_like_noise))
        throw std::invalid_argument("channel: probability outside [0,1]");
}

std::vector<RawDetection> simulate_quantum_exchange(std::uint64_t n_pulses, long double p_x,
                                                    const ChannelModel& model, Rng& rng) {
    model.validate();
    if (!(p_x > 0.0L && p_x < 1.0L))
        throw std::invalid_argument("simulate_quantum_exchange: p_x outside (0,1)");

    const std::uint64_t n_clicks = rng.binomial(n_pulses, static_cast<double>(model.eta));
    std::vector<RawDetection> out;
    out.reserve(n_clicks);
    const auto px = static_cast<double>(p_x);

    for (std::uint64_t i = 0; i < n_clicks; ++i) {
        RawDetection d;
        d.alice_bit = rng.bit();
        d.alice_basis = rng.bernoulli(px) ? Basis::X : Basis::Z;
        d.bob_basis = rng.bernoulli(px) ? Basis::X : Basis::Z;

        if (rng.bernoulli(static_cast<double>(model.double_click_prob))) {
            d.click = ClickPattern::Double;
        } else {
            d.click = ClickPattern::Single;
            if (d.bob_basis == d.alice_basis) {
                const long double qber = d.bob_basis == Basis::X ? model.qber_x : model.qber_z;
                d.bob_bit = d.alice_bit ^ (rng.bernoulli(static_cast<double>(qber)) ? 1 : 0);
            } else {
                d.bob_bit = rng.bit();
            }
            if (rng.bernoulli(static_cast<double>(model.dark_like_noise))) d.bob_bit = rng.bit();
        }
        out.push_back(d);
    }
    return out;
}

}  // namespace qkdpost
