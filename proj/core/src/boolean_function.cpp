#include "cubesense/boolean_function.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace cubesense {

namespace {
std::uint64_t word_count(int n) { return ((std::uint64_t{1} << n) + 63) >> 6; }

void check_arity(int n, const Caps& caps) {
    if (n < 1) throw std::invalid_argument("arity must be at least 1");
    require_cap(n <= caps.table, "table arity <= " + std::to_string(caps.table),
                "n=" + std::to_string(n));
}
}  // namespace

BooleanFunction BooleanFunction::from_bits(int n, const std::vector<std::uint8_t>& bits,
                                           const Caps& caps) {
    check_arity(n, caps);
    if (bits.size() != (std::uint64_t{1} << n))
        throw std::invalid_argument("bit vector length " + std::to_string(bits.size()) +
                                    " does not match 2^n = " + std::to_string(1ull << n));
    BooleanFunction f;
    f.n_ = n;
    f.words_.assign(word_count(n), 0);
    for (std::uint64_t x = 0; x < bits.size(); ++x)
        if (bits[x]) f.words_[x >> 6] |= std::uint64_t{1} << (x & 63);
    return f;
}

BooleanFunction BooleanFunction::from_words(int n, std::vector<std::uint64_t> words,
                                            const Caps& caps) {
    check_arity(n, caps);
    if (words.size() != word_count(n))
        throw std::invalid_argument("word vector length does not match arity");
    if (n < 6) words[0] &= (std::uint64_t{1} << (1 << n)) - 1;
    BooleanFunction f;
    f.n_ = n;
    f.words_ = std::move(words);
    return f;
}

BooleanFunction BooleanFunction::constant(int n, int value, const Caps& caps) {
    check_arity(n, caps);
    if (value != 1 && value != -1) throw std::invalid_argument("constant value must be +-1");
    BooleanFunction f;
    f.n_ = n;
    f.words_.assign(word_count(n), value == -1 ? ~std::uint64_t{0} : 0);
    if (value == -1 && n < 6) f.words_[0] &= (std::uint64_t{1} << (1 << n)) - 1;
    return f;
}

int BooleanFunction::evaluate(Point x) const {
    if (x.index >= table_size()) throw std::out_of_range("point index past 2^n");
    return value(x.index);
}

bool BooleanFunction::is_constant() const {
    const bool b0 = bit(0);
    const std::uint64_t target = b0 ? ~std::uint64_t{0} : 0;
    const std::uint64_t size = table_size();
    if (size < 64) return words_[0] == (b0 ? (std::uint64_t{1} << size) - 1 : 0);
    for (auto w : words_)
        if (w != target) return false;
    return true;
}

CoordSet BooleanFunction::support_dims() const {
    std::uint32_t mask = 0;
    const std::uint64_t size = table_size();
    for (int i = 0; i < n_; ++i) {
        const std::uint64_t step = std::uint64_t{1} << i;
        bool sensitive = false;
        for (std::uint64_t x = 0; x < size && !sensitive; ++x)
            if (!(x & step) && bit(x) != bit(x | step)) sensitive = true;
        if (sensitive) mask |= std::uint32_t{1} << i;
    }
    return CoordSet{mask};
}

BooleanFunction BooleanFunction::restrict_coord(int coord, int b) const {
    if (coord < 1 || coord > n_) throw std::invalid_argument("coordinate out of range");
    if (n_ == 1) throw std::invalid_argument("cannot restrict a 1-variable function");
    const std::uint64_t step = std::uint64_t{1} << (coord - 1);
    const std::uint64_t lo_mask = step - 1;
    std::vector<std::uint8_t> bits(std::uint64_t{1} << (n_ - 1));
    for (std::uint64_t y = 0; y < bits.size(); ++y) {
        std::uint64_t x = (y & lo_mask) | ((y & ~lo_mask) << 1) | (b ? step : 0);
        bits[y] = bit(x);
    }
    return from_bits(n_ - 1, bits);
}

std::string to_table_hex(const BooleanFunction& f) {
    static const char* digits = "0123456789abcdef";
    const std::uint64_t size = f.table_size();
    const std::uint64_t ndigits = (size + 3) / 4;
    std::string out(ndigits, '0');
    for (std::uint64_t d = 0; d < ndigits; ++d) {
        unsigned v = 0;
        for (unsigned j = 0; j < 4; ++j) {
            std::uint64_t x = 4 * d + j;
            if (x < size && f.bit(x)) v |= 1u << j;
        }
        out[d] = digits[v];
    }
    return out;
}

BooleanFunction from_table_hex(int n, std::string_view hex, const Caps& caps) {
    check_arity(n, caps);
    const std::uint64_t size = std::uint64_t{1} << n;
    const std::uint64_t ndigits = (size + 3) / 4;
    if (hex.size() != ndigits)
        throw std::invalid_argument("hex table has " + std::to_string(hex.size()) +
                                    " digits, expected " + std::to_string(ndigits));
    std::vector<std::uint8_t> bits(size, 0);
    for (std::uint64_t d = 0; d < ndigits; ++d) {
        char c = hex[d];
        unsigned v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
        else if (c >= 'A' && c <= 'F') v = 10 + (c - 'A');
        else throw std::invalid_argument("invalid hex digit in truth table");
        for (unsigned j = 0; j < 4; ++j) {
            std::uint64_t x = 4 * d + j;
            if (x < size) bits[x] = (v >> j) & 1;
        }
    }
    return BooleanFunction::from_bits(n, bits, caps);
}

void write_table(std::ostream& os, const BooleanFunction& f) {
    os << "n=" << f.arity() << "\n" << to_table_hex(f) << "\n";
}

BooleanFunction read_table(std::istream& is, const Caps& caps) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("n=", 0) != 0)
        throw std::invalid_argument("truth-table file must start with n=<int>");
    int n;
    try {
        n = std::stoi(line.substr(2));
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed arity line: " + line);
    }
    std::string hex;
    if (!std::getline(is, hex)) throw std::invalid_argument("missing truth-table hex line");
    while (!hex.empty() && (hex.back() == '\r' || hex.back() == ' ')) hex.pop_back();
    return from_table_hex(n, hex, caps);
}

BooleanFunction read_table_file(const std::string& path, const Caps& caps) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open truth-table file: " + path);
    return read_table(is, caps);
}

void write_table_file(const std::string& path, const BooleanFunction& f) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot write truth-table file: " + path);
    write_table(os, f);
}

}  // namespace cubesense
