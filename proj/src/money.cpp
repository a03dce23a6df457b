#include "fundsim/money.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fundsim {

Money round_half_even(double value) {
    if (std::isnan(value)) {
        throw std::invalid_argument("round_half_even: NaN");
    }
    // nearbyint honours the ambient rounding mode; we never touch the FP
    // environment, so this is round-to-nearest, ties-to-even.
    double r = std::nearbyint(value);
    if (r < -9.223372036854775e18 || r > 9.223372036854775e18) {
        throw std::overflow_error("round_half_even: out of Money range");
    }
    return static_cast<Money>(r);
}

namespace {

void check_total(Money total) {
    if (total < 0) {
        throw std::invalid_argument("allocate_proportional: negative total");
    }
}

// Hand out `residue` extra units to the entries with the largest remainders,
// lowest index first on ties. `rank` carries (remainder_key, index).
template <typename Key>
void distribute_residue(std::vector<Money>& out, std::vector<std::pair<Key, std::size_t>>& rank,
                        Money residue) {
    std::sort(rank.begin(), rank.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t i = 0; residue > 0; i = (i + 1) % rank.size()) {
        out[rank[i].second] += 1;
        --residue;
    }
}

}  // namespace

std::vector<Money> allocate_proportional(Money total, std::span<const Money> weights) {
    check_total(total);
    if (weights.empty()) {
        throw std::invalid_argument("allocate_proportional: no weights");
    }
    __int128 sum = 0;
    for (Money w : weights) {
        if (w < 0) throw std::invalid_argument("allocate_proportional: negative weight");
        sum += w;
    }
    if (sum == 0) {
        throw std::invalid_argument("allocate_proportional: zero weight sum");
    }
    std::vector<Money> out(weights.size(), 0);
    // (remainder, index) pairs; remainders are exact thanks to 128-bit products.
    std::vector<std::pair<__int128, std::size_t>> rank;
    rank.reserve(weights.size());
    Money assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        __int128 prod = static_cast<__int128>(total) * weights[i];
        out[i] = static_cast<Money>(prod / sum);
        assigned += out[i];
        rank.emplace_back(prod % sum, i);
    }
    distribute_residue(out, rank, total - assigned);
    return out;
}

std::vector<Money> allocate_proportional(Money total, std::span<const double> weights) {
    check_total(total);
    if (weights.empty()) {
        throw std::invalid_argument("allocate_proportional: no weights");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw std::invalid_argument("allocate_proportional: bad weight");
        }
        sum += w;
    }
    if (sum <= 0.0) {
        throw std::invalid_argument("allocate_proportional: zero weight sum");
    }
    std::vector<Money> out(weights.size(), 0);
    std::vector<std::pair<double, std::size_t>> rank;
    rank.reserve(weights.size());
    Money assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        double quota = static_cast<double>(total) * (weights[i] / sum);
        double fl = std::floor(quota);
        out[i] = static_cast<Money>(fl);
        assigned += out[i];
        rank.emplace_back(quota - fl, i);
    }
    Money residue = total - assigned;
    if (residue < 0) {
        // Floating quotas crept above the exact values; claw back from the
        // smallest remainders, highest index first. Rare and bounded by a few units.
        std::sort(rank.begin(), rank.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second > b.second;
        });
        for (std::size_t i = 0; residue < 0; i = (i + 1) % rank.size()) {
            if (out[rank[i].second] > 0) {
                out[rank[i].second] -= 1;
                ++residue;
            }
        }
        return out;
    }
    distribute_residue(out, rank, residue);
    return out;
}

}  // namespace fundsim
