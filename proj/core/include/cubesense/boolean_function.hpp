#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cubesense/caps.hpp"

namespace cubesense {

// A vertex of {0,1}^n. Coordinate i (1-based) is bit i-1 of the index.
struct Point {
    std::uint32_t index = 0;
};

// A subset of the coordinates {1..n}, kept as a bitmask.
struct CoordSet {
    std::uint32_t mask = 0;

    bool contains(int coord) const { return (mask >> (coord - 1)) & 1u; }
    int count() const { return std::popcount(mask); }
    bool empty() const { return mask == 0; }

    // Ascending list of 1-based coordinates.
    std::vector<int> coords() const {
        std::vector<int> out;
        for (std::uint32_t m = mask; m; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
        return out;
    }

    friend bool operator==(const CoordSet&, const CoordSet&) = default;
};

inline std::uint32_t coord_bit(int coord) { return std::uint32_t{1} << (coord - 1); }

// Truth table of f:{0,1}^n -> {+1,-1} as a packed bit vector. Bit b(x) at
// index x holds the value via f(x) = (-1)^{b(x)}; this convention is fixed
// globally, so XOR of tables is pointwise product of the +-1 values.
// Immutable after construction; all member functions are const and pure.
class BooleanFunction {
public:
    BooleanFunction() = default;

    // bits[x] = b(x); bits.size() must be exactly 2^n.
    static BooleanFunction from_bits(int n, const std::vector<std::uint8_t>& bits,
                                     const Caps& caps = default_caps());
    // Packed words, bit x of the table at words[x/64] bit x%64.
    static BooleanFunction from_words(int n, std::vector<std::uint64_t> words,
                                      const Caps& caps = default_caps());
    static BooleanFunction constant(int n, int value, const Caps& caps = default_caps());

    int arity() const { return n_; }
    std::uint64_t table_size() const { return std::uint64_t{1} << n_; }

    bool bit(std::uint64_t x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
    int value(std::uint64_t x) const { return bit(x) ? -1 : +1; }

    // Range-checked evaluation; throws std::out_of_range past 2^n.
    int evaluate(Point x) const;

    bool is_constant() const;

    // Exactly the coordinates i with f(x) != f(x ^ e_i) for some x.
    CoordSet support_dims() const;
    int dim() const { return support_dims().count(); }

    // Table with coordinate i (1-based) fixed to bit value b; arity drops by
    // one and higher coordinates shift down.
    BooleanFunction restrict_coord(int coord, int b) const;

    const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;  // ceil(2^n / 64), unused high bits zero
};

// Truth-table file format: line 1 "n=<int>"; line 2 a hex string of
// ceil(2^n/4) digits, LSB-first (bit x of the table is bit x%4 of digit x/4).
std::string to_table_hex(const BooleanFunction& f);
BooleanFunction from_table_hex(int n, std::string_view hex, const Caps& caps = default_caps());
void write_table(std::ostream& os, const BooleanFunction& f);
BooleanFunction read_table(std::istream& is, const Caps& caps = default_caps());
BooleanFunction read_table_file(const std::string& path, const Caps& caps = default_caps());
void write_table_file(const std::string& path, const BooleanFunction& f);

}  // namespace cubesense
