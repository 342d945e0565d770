#include "cubesense/families.hpp"

#include <bit>
#include <functional>
#include <stdexcept>

#include "cubesense/rng.hpp"

namespace cubesense {

namespace {

std::vector<std::uint8_t> bits_of(int n, const std::function<int(std::uint32_t)>& b) {
    std::vector<std::uint8_t> bits(std::uint64_t{1} << n);
    for (std::uint64_t x = 0; x < bits.size(); ++x)
        bits[x] = static_cast<std::uint8_t>(b(static_cast<std::uint32_t>(x)) & 1);
    return bits;
}

bool power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

[[noreturn]] void bad_params(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

BooleanFunction parity_fn(int n, const Caps& caps) {
    return BooleanFunction::from_bits(n, bits_of(n, [](std::uint32_t x) {
                                          return std::popcount(x) & 1;
                                      }),
                                      caps);
}

BooleanFunction and_fn(int n, const Caps& caps) {
    const std::uint32_t all = (std::uint32_t{1} << n) - 1;
    return BooleanFunction::from_bits(
        n, bits_of(n, [all](std::uint32_t x) { return x == all ? 1 : 0; }), caps);
}

BooleanFunction or_fn(int n, const Caps& caps) {
    return BooleanFunction::from_bits(
        n, bits_of(n, [](std::uint32_t x) { return x != 0 ? 1 : 0; }), caps);
}

BooleanFunction dictator_fn(int n, int coord, const Caps& caps) {
    if (coord < 1 || coord > n) bad_params("dictator coordinate out of range");
    return BooleanFunction::from_bits(
        n, bits_of(n, [coord](std::uint32_t x) { return (x >> (coord - 1)) & 1; }), caps);
}

BooleanFunction address_tree_fn(int n, const Caps& caps) {
    if (!power_of_two(std::int64_t{n} + 1) || n < 1)
        bad_params("address tree needs n = 2^h - 1");
    // Walk the search-ordered complete tree: leaf index parity is the value.
    return BooleanFunction::from_bits(n, bits_of(n, [n](std::uint32_t x) {
                                          int lo = 1, hi = n;
                                          while (lo <= hi) {
                                              const int mid = (lo + hi) / 2;
                                              if ((x >> (mid - 1)) & 1) lo = mid + 1;
                                              else hi = mid - 1;
                                          }
                                          return (lo - 1) & 1;
                                      }),
                                      caps);
}

namespace {
bool hamming_codeword(std::uint32_t y, int m) {
    std::uint32_t syndrome = 0;
    for (int j = 1; j <= m; ++j)
        if ((y >> (j - 1)) & 1) syndrome ^= static_cast<std::uint32_t>(j);
    return syndrome == 0;
}
}  // namespace

BooleanFunction hamming_fn(int m, const Caps& caps) {
    if (!power_of_two(std::int64_t{m} + 1) || m < 3) bad_params("hamming needs m = 2^r - 1, m >= 3");
    return BooleanFunction::from_bits(
        m, bits_of(m, [m](std::uint32_t y) { return hamming_codeword(y, m) ? 1 : 0; }), caps);
}

BooleanFunction or_ham_parity_fn(int m, int l, const Caps& caps) {
    if (!power_of_two(std::int64_t{m} + 1) || m < 3) bad_params("or_ham_parity needs m = 2^r - 1");
    if (l < 1) bad_params("or_ham_parity needs l >= 1");
    const std::int64_t n = std::int64_t{m} * m * l;
    require_cap(n <= caps.table, "table arity <= " + std::to_string(caps.table),
                "or_ham_parity arity m*m*l = " + std::to_string(n));
    return BooleanFunction::from_bits(
        static_cast<int>(n), bits_of(static_cast<int>(n), [m, l](std::uint32_t x) {
            for (int i = 0; i < m; ++i) {
                std::uint32_t y = 0;
                for (int j = 0; j < m; ++j) {
                    const int base = (i * m + j) * l;
                    const std::uint32_t block = (x >> base) & ((std::uint32_t{1} << l) - 1);
                    y |= static_cast<std::uint32_t>(std::popcount(block) & 1) << j;
                }
                if (hamming_codeword(y, m)) return 1;
            }
            return 0;
        }),
        caps);
}

BooleanFunction hadamard_gadget_fn(int n, const Caps& caps) {
    if (!power_of_two(n) || n < 2) bad_params("hadamard gadget needs n a power of two, n >= 2");
    const int half = n / 2;
    return BooleanFunction::from_bits(n, bits_of(n, [n, half](std::uint32_t x) {
                                          const std::uint32_t lo =
                                              x & ((std::uint32_t{1} << half) - 1);
                                          for (std::uint32_t i = 0;
                                               i < static_cast<std::uint32_t>(half); ++i) {
                                              std::uint32_t word = 0;
                                              for (int j = 0; j < half; ++j)
                                                  word |= static_cast<std::uint32_t>(
                                                              std::popcount(i & static_cast<std::uint32_t>(j)) & 1)
                                                          << j;
                                              if (word == lo) return (x >> (half + i)) & 1;
                                          }
                                          return std::uint32_t{0};
                                      }),
                                      caps);
}

BooleanFunction dnf_parity_rows_fn(int rows, int width, const Caps& caps) {
    if (rows < 1 || width < 1) bad_params("dnf_parity_rows needs rows,width >= 1");
    const std::int64_t n = std::int64_t{rows} * width;
    require_cap(n <= caps.table, "table arity <= " + std::to_string(caps.table),
                "dnf_parity_rows arity rows*width = " + std::to_string(n));
    return BooleanFunction::from_bits(
        static_cast<int>(n), bits_of(static_cast<int>(n), [rows, width](std::uint32_t x) {
            for (int i = 0; i < rows; ++i) {
                const std::uint32_t row =
                    (x >> (i * width)) & ((std::uint32_t{1} << width) - 1);
                if (std::popcount(row) & 1) return 1;
            }
            return 0;
        }),
        caps);
}

BooleanFunction random_fn(int n, std::uint64_t seed, const Caps& caps) {
    Rng rng(seed);
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<std::uint64_t> words((size + 63) / 64);
    for (auto& w : words) w = rng.next();
    return BooleanFunction::from_words(n, std::move(words), caps);
}

BooleanFunction random_width_dnf_fn(int n, int width, int terms, std::uint64_t seed,
                                    const Caps& caps) {
    if (width < 1 || width > n) bad_params("random_width_dnf needs 1 <= width <= n");
    if (terms < 1) bad_params("random_width_dnf needs terms >= 1");
    Rng rng(seed);
    // Each term: a width-subset of coordinates plus required signs.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> term_masks(terms);
    for (auto& [vars, signs] : term_masks) {
        std::vector<int> coords(n);
        for (int i = 0; i < n; ++i) coords[i] = i;
        vars = 0;
        for (int i = 0; i < width; ++i) {
            const int j = i + static_cast<int>(rng.below(n - i));
            std::swap(coords[i], coords[j]);
            vars |= std::uint32_t{1} << coords[i];
        }
        signs = 0;
        for (std::uint32_t m = vars; m; m &= m - 1)
            if (rng.below(2)) signs |= m & -m;
    }
    return BooleanFunction::from_bits(
        n, bits_of(n, [&term_masks](std::uint32_t x) {
            for (const auto& [vars, signs] : term_masks)
                if ((x & vars) == signs) return 1;
            return 0;
        }),
        caps);
}

FamilySpec parse_family(const std::string& text) {
    FamilySpec spec;
    const auto colon = text.find(':');
    spec.name = text.substr(0, colon);
    if (spec.name.empty()) throw std::invalid_argument("empty family name");
    if (colon != std::string::npos) {
        std::size_t pos = colon + 1;
        while (pos <= text.size()) {
            const auto comma = text.find(',', pos);
            const std::string tok =
                text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                spec.params.push_back(std::stoll(tok));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad family parameter: " + tok);
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return spec;
}

BooleanFunction make_family(const FamilySpec& spec, const Caps& caps) {
    const auto& p = spec.params;
    auto want = [&](std::size_t count) {
        if (p.size() != count)
            bad_params("family " + spec.name + " takes " + std::to_string(count) +
                       " parameter(s)");
    };
    if (spec.name == "parity") {
        want(1);
        return parity_fn(static_cast<int>(p[0]), caps);
    }
    if (spec.name == "and") {
        want(1);
        return and_fn(static_cast<int>(p[0]), caps);
    }
    if (spec.name == "or") {
        want(1);
        return or_fn(static_cast<int>(p[0]), caps);
    }
    if (spec.name == "dictator") {
        want(2);
        return dictator_fn(static_cast<int>(p[0]), static_cast<int>(p[1]), caps);
    }
    if (spec.name == "address_tree") {
        want(1);
        return address_tree_fn(static_cast<int>(p[0]), caps);
    }
    if (spec.name == "hamming") {
        want(1);
        return hamming_fn(static_cast<int>(p[0]), caps);
    }
    if (spec.name == "or_ham_parity") {
        want(2);
        return or_ham_parity_fn(static_cast<int>(p[0]), static_cast<int>(p[1]), caps);
    }
    if (spec.name == "hadamard_gadget") {
        want(1);
        return hadamard_gadget_fn(static_cast<int>(p[0]), caps);
    }
    if (spec.name == "dnf_parity_rows") {
        want(2);
        return dnf_parity_rows_fn(static_cast<int>(p[0]), static_cast<int>(p[1]), caps);
    }
    if (spec.name == "random") {
        want(2);
        return random_fn(static_cast<int>(p[0]), static_cast<std::uint64_t>(p[1]), caps);
    }
    if (spec.name == "random_width_dnf") {
        want(4);
        return random_width_dnf_fn(static_cast<int>(p[0]), static_cast<int>(p[1]),
                                   static_cast<int>(p[2]), static_cast<std::uint64_t>(p[3]), caps);
    }
    bad_params("unknown family: " + spec.name);
}

}  // namespace cubesense
