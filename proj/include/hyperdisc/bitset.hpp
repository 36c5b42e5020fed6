// Fixed-size bitset with the popcount primitives the projections live on.
#ifndef HYPERDISC_BITSET_HPP
#define HYPERDISC_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace hyperdisc {

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }

    void set(std::size_t i) { words_[i >> 6] |= (1ULL << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    std::int64_t count() const {
        std::int64_t c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    std::int64_t and_count(const Bitset& o) const {
        std::int64_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }

    // |this \ o| == 0, i.e. this is a subset of o.
    bool subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    std::int64_t andnot_count(const Bitset& o) const {
        std::int64_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & ~o.words_[i]);
        return c;
    }

    void or_with(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    }

    Bitset andnot(const Bitset& o) const {
        Bitset r(bits_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
        return r;
    }

    // The lowest-index `cap` set bits, as a new bitset.
    Bitset first_n(std::int64_t cap) const {
        Bitset r(bits_);
        std::int64_t taken = 0;
        for (std::size_t i = 0; i < words_.size() && taken < cap; ++i) {
            std::uint64_t w = words_[i];
            while (w && taken < cap) {
                std::uint64_t low = w & (~w + 1);
                r.words_[i] |= low;
                w ^= low;
                ++taken;
            }
        }
        return r;
    }

    std::vector<std::size_t> ones() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
        return out;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.bits_ == b.bits_ && a.words_ == b.words_;
    }

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace hyperdisc

#endif
