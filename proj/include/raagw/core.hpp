#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace raagw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

// Thrown when a configurable search/enumeration budget is exhausted.
struct BudgetError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

// A generator or its inverse: id = 2*vertex + sign_bit (sign_bit 1 = inverse).
struct Letter {
    std::uint8_t id = 0;

    constexpr Letter() = default;
    constexpr explicit Letter(std::uint8_t raw) : id(raw) {}

    static constexpr Letter positive(int vertex) { return Letter(static_cast<std::uint8_t>(2 * vertex)); }
    static constexpr Letter negative(int vertex) { return Letter(static_cast<std::uint8_t>(2 * vertex + 1)); }
    static constexpr Letter make(int vertex, int sign) { return sign >= 0 ? positive(vertex) : negative(vertex); }

    constexpr int vertex() const { return id >> 1; }
    constexpr bool is_negative() const { return id & 1; }
    constexpr Letter inverse() const { return Letter(static_cast<std::uint8_t>(id ^ 1)); }

    friend constexpr bool operator==(Letter a, Letter b) { return a.id == b.id; }
    friend constexpr bool operator!=(Letter a, Letter b) { return a.id != b.id; }
    friend constexpr bool operator<(Letter a, Letter b) { return a.id < b.id; }
};

// Subset of V^+- as a bit mask, letter ids as bit positions.  Supports
// graphs with up to 32 vertices (64 letters), far beyond the exhaustive
// range this library targets.
struct LetterSet {
    std::uint64_t bits = 0;

    constexpr LetterSet() = default;
    constexpr explicit LetterSet(std::uint64_t b) : bits(b) {}

    static constexpr LetterSet single(Letter x) { return LetterSet(std::uint64_t(1) << x.id); }

    constexpr bool contains(Letter x) const { return (bits >> x.id) & 1; }
    constexpr bool empty() const { return bits == 0; }
    constexpr int size() const { return std::popcount(bits); }

    constexpr void insert(Letter x) { bits |= std::uint64_t(1) << x.id; }
    constexpr void erase(Letter x) { bits &= ~(std::uint64_t(1) << x.id); }

    constexpr LetterSet operator|(LetterSet o) const { return LetterSet(bits | o.bits); }
    constexpr LetterSet operator&(LetterSet o) const { return LetterSet(bits & o.bits); }
    constexpr LetterSet minus(LetterSet o) const { return LetterSet(bits & ~o.bits); }
    constexpr bool intersects(LetterSet o) const { return (bits & o.bits) != 0; }
    constexpr bool subset_of(LetterSet o) const { return (bits & ~o.bits) == 0; }

    constexpr Letter least() const { return Letter(static_cast<std::uint8_t>(std::countr_zero(bits))); }

    std::vector<Letter> letters() const {
        std::vector<Letter> out;
        for (std::uint64_t b = bits; b; b &= b - 1)
            out.push_back(Letter(static_cast<std::uint8_t>(std::countr_zero(b))));
        return out;
    }

    friend constexpr bool operator==(LetterSet a, LetterSet b) { return a.bits == b.bits; }
    friend constexpr bool operator!=(LetterSet a, LetterSet b) { return a.bits != b.bits; }
    friend constexpr bool operator<(LetterSet a, LetterSet b) { return a.bits < b.bits; }
};

// Dynamic bit set for index universes larger than 64 (partition catalogs).
struct IndexSet {
    std::vector<std::uint64_t> w;

    IndexSet() = default;
    explicit IndexSet(std::size_t n) : w((n + 63) / 64, 0) {}

    void set(std::size_t i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }
    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }

    IndexSet& operator&=(const IndexSet& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
        return *this;
    }
    IndexSet& operator|=(const IndexSet& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
        return *this;
    }
    IndexSet& subtract(const IndexSet& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
        return *this;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < w.size(); ++k)
            for (std::uint64_t b = w[k]; b; b &= b - 1)
                f(k * 64 + static_cast<std::size_t>(std::countr_zero(b)));
    }

    // Lowest set index, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t first() const {
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w[k]));
        return npos;
    }

    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.w == b.w; }
};

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace raagw
