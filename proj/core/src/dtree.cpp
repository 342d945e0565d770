#include "cubesense/dtree.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace cubesense {

namespace {

// Alternating masks: bit p of kBlock[k] is set iff bit k of p is 0.
constexpr std::uint64_t kBlock[7] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
    0xffffffffffffffffull,
};

// Packed truth table of an m-variable subfunction; the canonical key for the
// memo (restrictions that yield the same subfunction collide here).
struct SubTable {
    int m = 0;
    std::vector<std::uint64_t> w;

    bool operator==(const SubTable&) const = default;
};

struct SubTableHash {
    std::size_t operator()(const SubTable& t) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(t.m);
        for (std::uint64_t x : t.w) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

SubTable to_subtable(const BooleanFunction& f) {
    return SubTable{f.arity(), f.words()};
}

bool table_constant(const SubTable& t) {
    if (t.m < 6) {
        const std::uint64_t full = (std::uint64_t{1} << (1 << t.m)) - 1;
        return (t.w[0] & full) == 0 || (t.w[0] & full) == full;
    }
    for (std::uint64_t x : t.w)
        if (x != t.w[0]) return false;
    return t.w[0] == 0 || t.w[0] == ~std::uint64_t{0};
}

// Drop variable var (0-based) fixed to bit b.
SubTable restrict_var(const SubTable& t, int var, int b) {
    SubTable r;
    r.m = t.m - 1;
    const std::size_t out_words = r.m >= 6 ? (std::size_t{1} << (r.m - 6)) : 1;
    r.w.assign(out_words, 0);
    if (var >= 6) {
        // Whole-word blocks: bit var of x is bit (var-6) of the word index.
        const std::size_t block = std::size_t{1} << (var - 6);
        std::size_t src = b ? block : 0, dst = 0;
        while (dst < out_words) {
            for (std::size_t i = 0; i < block && dst < out_words; ++i)
                r.w[dst++] = t.w[src + i];
            src += 2 * block;
        }
        return r;
    }
    // In-word: select the half with bit var == b, then squeeze the gaps out.
    const int shift = 1 << var;
    const std::size_t in_words = t.w.size();
    std::vector<std::uint64_t> half(in_words);
    for (std::size_t i = 0; i < in_words; ++i) {
        std::uint64_t x = b ? (t.w[i] >> shift) : t.w[i];
        x &= kBlock[var];
        for (int s = var; s < 5; ++s) x = (x | (x >> (1 << s))) & kBlock[s + 1];
        half[i] = x;  // valid data now in the low 32 bits (fewer if t.m <= 6)
    }
    if (t.m <= 6) {
        r.w[0] = half[0] & ((std::uint64_t{1} << (1 << r.m)) - 1);
    } else {
        for (std::size_t i = 0; i < out_words; ++i)
            r.w[i] = (half[2 * i] & 0xffffffffull) | (half[2 * i + 1] << 32);
    }
    return r;
}

// Mask of 0-based variables the subfunction depends on.
std::uint32_t support_mask(const SubTable& t) {
    std::uint32_t mask = 0;
    for (int var = 0; var < t.m; ++var) {
        bool dep = false;
        if (var < 6) {
            const int shift = 1 << var;
            std::uint64_t valid = kBlock[var];
            if (t.m < 6) valid &= (std::uint64_t{1} << (1 << t.m)) - 1;
            for (std::uint64_t x : t.w)
                if (((x ^ (x >> shift)) & valid) != 0) {
                    dep = true;
                    break;
                }
        } else {
            const std::size_t block = std::size_t{1} << (var - 6);
            for (std::size_t base = 0; base < t.w.size() && !dep; base += 2 * block)
                for (std::size_t i = 0; i < block; ++i)
                    if (t.w[base + i] != t.w[base + block + i]) {
                        dep = true;
                        break;
                    }
        }
        if (dep) mask |= std::uint32_t{1} << var;
    }
    return mask;
}

struct Solver {
    std::unordered_map<SubTable, int, SubTableHash> memo;

    int solve(const SubTable& t) {
        if (table_constant(t)) return 0;
        auto it = memo.find(t);
        if (it != memo.end()) return it->second;

        const std::uint32_t support = support_mask(t);
        const int dim = std::popcount(support);
        // A depth-d tree reads at most 2^d - 1 distinct variables.
        int lower = 1;
        while ((1 << lower) - 1 < dim) ++lower;

        int best = dim;  // query every support variable in a fixed order
        if (best > lower) {
            for (std::uint32_t vars = support; vars; vars &= vars - 1) {
                const int var = std::countr_zero(vars);
                const int d0 = solve(restrict_var(t, var, 0));
                if (d0 + 1 >= best) continue;
                const int d1 = solve(restrict_var(t, var, 1));
                best = std::min(best, 1 + std::max(d0, d1));
                if (best == lower) break;
            }
        }
        memo.emplace(t, best);
        return best;
    }
};

void check_dtree_cap(const BooleanFunction& f, const Caps& caps) {
    require_cap(f.arity() <= caps.dtree, "dtree arity <= " + std::to_string(caps.dtree),
                "n=" + std::to_string(f.arity()));
}

}  // namespace

int decision_tree_depth(const BooleanFunction& f, const Caps& caps) {
    check_dtree_cap(f, caps);
    Solver solver;
    return solver.solve(to_subtable(f));
}

int DecisionTree::evaluate(std::uint32_t x) const {
    int node = root;
    for (;;) {
        const Node& nd = nodes[node];
        if (nd.query == 0) return nd.value;
        node = (x >> (nd.query - 1)) & 1u ? nd.hi : nd.lo;
    }
}

DecisionTree optimal_tree(const BooleanFunction& f, const Caps& caps) {
    check_dtree_cap(f, caps);
    Solver solver;
    DecisionTree tree;

    // coords[i] = original 1-based coordinate of local variable i.
    auto build = [&](auto&& self, const SubTable& t, std::vector<int> coords) -> int {
        const int node = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (table_constant(t)) {
            tree.nodes[node].value = (t.w[0] & 1u) ? -1 : +1;
            return node;
        }
        const int depth = solver.solve(t);
        for (std::uint32_t vars = support_mask(t); vars; vars &= vars - 1) {
            const int var = std::countr_zero(vars);
            const SubTable t0 = restrict_var(t, var, 0);
            const SubTable t1 = restrict_var(t, var, 1);
            if (1 + std::max(solver.solve(t0), solver.solve(t1)) != depth) continue;
            std::vector<int> sub = coords;
            sub.erase(sub.begin() + var);
            tree.nodes[node].query = coords[var];
            tree.nodes[node].lo = self(self, t0, sub);
            tree.nodes[node].hi = self(self, t1, std::move(sub));
            return node;
        }
        throw std::logic_error("no coordinate matches the optimal depth");
    };

    std::vector<int> coords(f.arity());
    for (int i = 0; i < f.arity(); ++i) coords[i] = i + 1;
    tree.root = build(build, to_subtable(f), std::move(coords));
    tree.depth = solver.solve(to_subtable(f));
    return tree;
}

}  // namespace cubesense
