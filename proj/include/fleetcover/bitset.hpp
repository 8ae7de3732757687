#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fleetcover {

/// Fixed-universe bitset sized at runtime. Visited-cell sets are stored as
/// one of these per time slot; selection scoring is unions plus weighted
/// popcounts over the words, which is the evaluation hot path.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t bit_count)
        : bits_(bit_count), words_((bit_count + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i) {
        if (i >= bits_) throw std::out_of_range("Bitset::set past universe");
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    Bitset& operator|=(const Bitset& other) {
        check_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    Bitset& operator&=(const Bitset& other) {
        check_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }

    bool intersects(const Bitset& other) const {
        check_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    bool operator==(const Bitset& other) const = default;

    /// Visit every set bit in ascending index order.
    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                int bit = std::countr_zero(w);
                fn(wi * 64 + static_cast<std::size_t>(bit));
                w &= w - 1;
            }
        }
    }

    std::span<const std::uint64_t> words() const { return words_; }

private:
    void check_universe(const Bitset& other) const {
        if (bits_ != other.bits_) throw std::logic_error("Bitset universe mismatch");
    }

    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace fleetcover
