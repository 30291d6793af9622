#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "cdna/errors.hpp"

namespace cdna {

/// A binary strand stored as packed 64-bit words with an explicit length.
///
/// Bits past `size()` are always zero, so word-wise equality and hashing are
/// exact. Rows order lexicographically by bit sequence, a proper prefix
/// sorting first.
class Row {
public:
    Row() = default;

    explicit Row(std::size_t length) : words_(word_count(length), 0), size_(length) {}

    Row(std::initializer_list<int> bits) : Row(bits.size()) {
        std::size_t i = 0;
        for (int b : bits) {
            if (b != 0 && b != 1) throw DomainError("row symbols must be 0 or 1");
            set(i++, b == 1);
        }
    }

    static Row from_string(std::string_view text) {
        Row row(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '1')
                row.set(i, true);
            else if (text[i] != '0')
                throw FormatError("row contains a character other than 0/1");
        }
        return row;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool operator[](std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }

    bool at(std::size_t i) const {
        if (i >= size_) throw ShapeError("row index out of range");
        return (*this)[i];
    }

    void set(std::size_t i, bool value) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    void push_back(bool value) {
        if ((size_ & 63) == 0) words_.push_back(0);
        ++size_;
        set(size_ - 1, value);
    }

    /// Removes the symbol at `i` and shifts the tail left.
    void erase(std::size_t i) {
        if (i >= size_) throw ShapeError("row erase index out of range");
        for (std::size_t k = i; k + 1 < size_; ++k) set(k, (*this)[k + 1]);
        set(size_ - 1, false);
        --size_;
        if (word_count(size_) < words_.size()) words_.pop_back();
    }

    /// Inserts `value` before position `i` (i == size() appends).
    void insert(std::size_t i, bool value) {
        if (i > size_) throw ShapeError("row insert position out of range");
        push_back(false);
        for (std::size_t k = size_ - 1; k > i; --k) set(k, (*this)[k - 1]);
        set(i, value);
    }

    std::size_t count() const noexcept {
        std::size_t total = 0;
        for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    std::string to_string() const {
        std::string out(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if ((*this)[i]) out[i] = '1';
        return out;
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ size_;
        for (auto w : words_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
        return static_cast<std::size_t>(h);
    }

    friend bool operator==(const Row& a, const Row& b) noexcept {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    friend std::strong_ordering operator<=>(const Row& a, const Row& b) noexcept {
        const std::size_t common = a.size_ < b.size_ ? a.size_ : b.size_;
        for (std::size_t i = 0; i < common; ++i) {
            const bool x = a[i], y = b[i];
            if (x != y) return x ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return a.size_ <=> b.size_;
    }

private:
    static std::size_t word_count(std::size_t bits) noexcept { return (bits + 63) / 64; }

    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

}  // namespace cdna
