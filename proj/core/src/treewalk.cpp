#include "cubesense/treewalk.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "cubesense/dtree.hpp"
#include "cubesense/sensitivity.hpp"

namespace cubesense {

namespace {

std::uint32_t sens_mask(const BooleanFunction& f, std::uint32_t x) {
    std::uint32_t m = 0;
    const bool b = f.bit(x);
    for (int i = 0; i < f.arity(); ++i)
        if (b != f.bit(x ^ (std::uint32_t{1} << i))) m |= std::uint32_t{1} << i;
    return m;
}

// Sensitive neighbors of x in coordinate order; 1-based rank of coord within
// this list is the index recorded by the walk encoding.
int neighbor_rank(const BooleanFunction& f, std::uint32_t x, int coord) {
    const std::uint32_t mask = sens_mask(f, x);
    const std::uint32_t below = mask & (coord_bit(coord) - 1);
    return std::popcount(below) + 1;
}

// Enumerates every vertex set inducing a sensitive tree exactly once
// (connected-subgraph enumeration over G_f with a min-root rule, pruned by
// the tree conditions, which are hereditary downward). The callback receives
// the vertices in insertion order plus the label mask; returning false
// aborts.
class TreeEnumerator {
public:
    TreeEnumerator(const BooleanFunction& f, int max_edges)
        : f_(f), n_(f.arity()), cap_vertices_(max_edges + 1) {
        const std::uint64_t size = f.table_size();
        sens_.resize(size);
        for (std::uint64_t x = 0; x < size; ++x)
            sens_[x] = sens_mask(f, static_cast<std::uint32_t>(x));
        in_set_.assign(size, 0);
        blocked_.assign(size, 0);
    }

    template <class Cb>
    void run(Cb&& cb) {
        if (cap_vertices_ < 2) return;
        const std::uint64_t size = f_.table_size();
        for (std::uint32_t root = 0; root < size; ++root) {
            if (!sens_[root]) continue;
            root_ = root;
            in_set_[root] = 1;
            blocked_[root] = 1;
            set_.assign(1, root);
            labels_ = 0;
            std::vector<std::uint32_t> ext, added;
            for (std::uint32_t m = sens_[root]; m; m &= m - 1) {
                const std::uint32_t u = root ^ (m & -m);
                if (u > root && !blocked_[u]) {
                    ext.push_back(u);
                    blocked_[u] = 1;
                    added.push_back(u);
                }
            }
            const bool keep_going = extend(ext, cb);
            in_set_[root] = 0;
            blocked_[root] = 0;
            for (std::uint32_t u : added) blocked_[u] = 0;
            if (!keep_going) return;
        }
    }

private:
    // v joins as a leaf iff it has exactly one cube neighbor inside the set,
    // reached by a sensitive edge whose direction is unused. Any violation is
    // inherited by every superset, so pruning the branch is safe.
    int attach_coord(std::uint32_t v) const {
        int coord = 0;
        for (int i = 0; i < n_; ++i) {
            const std::uint32_t u = v ^ (std::uint32_t{1} << i);
            if (!in_set_[u]) continue;
            if (coord) return 0;
            if (!((sens_[v] >> i) & 1)) return 0;
            if ((labels_ >> i) & 1) return 0;
            coord = i + 1;
        }
        return coord;
    }

    template <class Cb>
    bool extend(std::vector<std::uint32_t>& ext, Cb&& cb) {
        if (set_.size() >= 2 && !cb(set_, labels_)) return false;
        if (static_cast<int>(set_.size()) >= cap_vertices_) return true;
        while (!ext.empty()) {
            const std::uint32_t w = ext.back();
            ext.pop_back();
            const int coord = attach_coord(w);
            if (!coord) continue;
            std::vector<std::uint32_t> next = ext;
            std::vector<std::uint32_t> added;
            for (std::uint32_t m = sens_[w]; m; m &= m - 1) {
                const std::uint32_t u = w ^ (m & -m);
                if (u > root_ && !blocked_[u]) {
                    next.push_back(u);
                    blocked_[u] = 1;
                    added.push_back(u);
                }
            }
            in_set_[w] = 1;
            set_.push_back(w);
            labels_ |= coord_bit(coord);
            const bool keep_going = extend(next, cb);
            labels_ &= ~coord_bit(coord);
            set_.pop_back();
            in_set_[w] = 0;
            for (std::uint32_t u : added) blocked_[u] = 0;
            if (!keep_going) return false;
        }
        return true;
    }

    const BooleanFunction& f_;
    int n_;
    int cap_vertices_;
    std::uint32_t root_ = 0;
    std::uint32_t labels_ = 0;
    std::vector<std::uint32_t> sens_;
    std::vector<std::uint8_t> in_set_, blocked_;
    std::vector<std::uint32_t> set_;
};

void check_tree_cap(const BooleanFunction& f, const Caps& caps) {
    require_cap(f.arity() <= caps.tree_search,
                "tree search arity <= " + std::to_string(caps.tree_search),
                "n=" + std::to_string(f.arity()));
}

}  // namespace

SensitiveTree induced_tree(const BooleanFunction& f, std::vector<std::uint32_t> vertices) {
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw std::invalid_argument("tree vertex set has duplicates");
    if (vertices.size() < 2) throw std::invalid_argument("a sensitive tree is non-trivial");
    if (vertices.back() >= f.table_size())
        throw std::invalid_argument("tree vertex past 2^n");

    SensitiveTree t;
    t.n = f.arity();
    t.vertices = vertices;
    std::uint32_t labels = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            const std::uint32_t diff = vertices[i] ^ vertices[j];
            if (std::popcount(diff) != 1) continue;
            const int coord = std::countr_zero(diff) + 1;
            if (f.bit(vertices[i]) == f.bit(vertices[j]))
                throw std::invalid_argument("induced edge is not sensitive");
            if (labels & coord_bit(coord))
                throw std::invalid_argument("induced edges repeat a direction");
            labels |= coord_bit(coord);
            t.edges.push_back({vertices[i], vertices[j], coord});
        }
    }
    if (t.edges.size() + 1 != vertices.size())
        throw std::invalid_argument("vertex set does not induce a tree");
    // edge count = vertices - 1; connectivity makes it a tree
    std::vector<std::uint32_t> reach{vertices[0]};
    std::vector<bool> seen(vertices.size(), false);
    seen[0] = true;
    for (std::size_t head = 0; head < reach.size(); ++head) {
        for (const auto& e : t.edges) {
            for (auto [from, to] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
                if (from != reach[head]) continue;
                const auto it = std::lower_bound(vertices.begin(), vertices.end(), to);
                const std::size_t idx = it - vertices.begin();
                if (!seen[idx]) {
                    seen[idx] = true;
                    reach.push_back(to);
                }
            }
        }
    }
    if (reach.size() != vertices.size())
        throw std::invalid_argument("vertex set does not induce a connected tree");
    t.labels = CoordSet{labels};
    return t;
}

int Walk::dimension() const {
    std::uint32_t mask = 0;
    for (int c : flips) mask |= coord_bit(c);
    return std::popcount(mask);
}

std::vector<std::uint32_t> Walk::vertices() const {
    std::vector<std::uint32_t> v{start};
    std::uint32_t cur = start;
    for (int c : flips) {
        cur ^= coord_bit(c);
        v.push_back(cur);
    }
    return v;
}

std::uint32_t Walk::end() const {
    std::uint32_t cur = start;
    for (int c : flips) cur ^= coord_bit(c);
    return cur;
}

bool is_proper_walk(const BooleanFunction& f, const Walk& w) {
    if (w.start >= f.table_size()) throw std::invalid_argument("walk start past 2^n");
    std::uint32_t cur = w.start;
    std::uint32_t flipped = 0;
    for (int c : w.flips) {
        if (c < 1 || c > f.arity()) throw std::invalid_argument("walk flips bad coordinate");
        const std::uint32_t bit = coord_bit(c);
        if (!(flipped & bit)) {
            if (f.bit(cur) == f.bit(cur ^ bit)) return false;
            flipped |= bit;
        }
        cur ^= bit;
    }
    return true;
}

int tree_sensitivity(const BooleanFunction& f, const Caps& caps) {
    check_tree_cap(f, caps);
    const int n = f.arity();
    int best = 0;
    TreeEnumerator enumerator(f, n);
    enumerator.run([&](const std::vector<std::uint32_t>& set, std::uint32_t) {
        best = std::max(best, static_cast<int>(set.size()) - 1);
        return best < n;
    });
    return best;
}

int tree_sensitivity_at(const BooleanFunction& f, Point x, const Caps& caps) {
    check_tree_cap(f, caps);
    if (x.index >= f.table_size()) throw std::out_of_range("point index past 2^n");
    const int n = f.arity();

    // Depth-first growth rooted at x; every tree through x arises by adding
    // leaves starting from x, so no root scan is needed (duplicates only cost
    // time).
    std::vector<std::uint8_t> in_set(f.table_size(), 0);
    std::vector<std::uint32_t> set{x.index};
    in_set[x.index] = 1;
    std::uint32_t labels = 0;
    int best = 0;

    auto attach = [&](std::uint32_t v) -> int {
        int coord = 0;
        for (int i = 0; i < n; ++i) {
            const std::uint32_t u = v ^ (std::uint32_t{1} << i);
            if (!in_set[u]) continue;
            if (coord) return 0;
            if (f.bit(v) == f.bit(u)) return 0;
            if ((labels >> (i)) & 1) return 0;
            coord = i + 1;
        }
        return coord;
    };

    auto dfs = [&](auto&& self) -> bool {
        best = std::max(best, static_cast<int>(set.size()) - 1);
        if (best == n) return false;
        for (std::size_t i = 0; i < set.size(); ++i) {
            const std::uint32_t u = set[i];
            for (std::uint32_t m = sens_mask(f, u) & ~labels; m; m &= m - 1) {
                const std::uint32_t v = u ^ (m & -m);
                if (in_set[v]) continue;
                const int coord = attach(v);
                if (!coord) continue;
                in_set[v] = 1;
                set.push_back(v);
                labels |= coord_bit(coord);
                const bool keep_going = self(self);
                labels &= ~coord_bit(coord);
                set.pop_back();
                in_set[v] = 0;
                if (!keep_going) return false;
            }
        }
        return true;
    };
    dfs(dfs);
    return best;
}

std::vector<std::uint64_t> count_sensitive_trees_up_to(const BooleanFunction& f, int j_max,
                                                       const Caps& caps) {
    check_tree_cap(f, caps);
    if (j_max < 0) throw std::invalid_argument("tree size must be >= 0");
    std::vector<std::uint64_t> counts(j_max + 1, 0);
    TreeEnumerator enumerator(f, j_max);
    enumerator.run([&](const std::vector<std::uint32_t>& set, std::uint32_t) {
        ++counts[set.size() - 1];
        return true;
    });
    return counts;
}

std::uint64_t count_sensitive_trees(const BooleanFunction& f, int j, const Caps& caps) {
    if (j < 1) throw std::invalid_argument("tree size must be >= 1");
    return count_sensitive_trees_up_to(f, j, caps)[j];
}

TreeClass classify_tree(const BooleanFunction& f, const SensitiveTree& t, const Caps& caps) {
    const SensitiveTree checked = induced_tree(f, t.vertices);  // validates
    TreeClass result;

    result.maximal = true;
    for (std::uint32_t v : checked.vertices) {
        if (sens_mask(f, v) & ~checked.labels.mask) {
            result.maximal = false;
            break;
        }
    }

    const std::uint32_t full = f.arity() == 32 ? ~std::uint32_t{0}
                                               : (std::uint32_t{1} << f.arity()) - 1;
    const std::uint32_t complement = full & ~checked.labels.mask;
    if (std::popcount(complement) > caps.orchard_shift) {
        result.orchard = OrchardStatus::kUnverified;
        return result;
    }
    result.orchard = OrchardStatus::kYes;
    // Submask walk over every shift vector supported off the labels.
    std::uint32_t v = complement;
    for (;;) {
        for (std::uint32_t x : checked.vertices) {
            if (f.bit(x) != f.bit(x ^ v)) {
                result.orchard = OrchardStatus::kNo;
                return result;
            }
        }
        if (v == 0) break;
        v = (v - 1) & complement;
    }
    return result;
}

Walk full_dim_proper_walk(const BooleanFunction& f, const Caps& caps) {
    const int n = f.arity();
    require_cap(n <= caps.full_dim_walk,
                "full-dimension walk arity <= " + std::to_string(caps.full_dim_walk),
                "n=" + std::to_string(n));
    if (f.dim() != n)
        throw std::invalid_argument("function does not depend on all coordinates (dim=" +
                                    std::to_string(f.dim()) + " < n=" + std::to_string(n) + ")");

    const std::uint64_t size = f.table_size();
    std::vector<std::uint32_t> xs;      // x_1 .. x_i
    std::vector<int> ls;                // matching coordinates l_1 .. l_i
    std::uint32_t live = 0;             // mask of chosen coordinates
    std::uint32_t anchor = 0;           // fixed bits of the current subcube C

    // x_1: smallest vertex sensitive to coordinate 1.
    for (std::uint32_t x = 0;; ++x) {
        if (f.bit(x) != f.bit(x ^ 1u)) {
            xs.push_back(x);
            ls.push_back(1);
            live = 1u;
            anchor = x & ~live;
            break;
        }
    }

    while (static_cast<int>(ls.size()) < n) {
        const int k = static_cast<int>(ls.size());
        // Case 1: a vertex of C sensitive outside the chosen coordinates.
        bool found = false;
        for (std::uint32_t y = 0; y < (std::uint32_t{1} << k) && !found; ++y) {
            std::uint32_t u = anchor, rest = live;
            for (int j = 0; j < k; ++j) {
                const std::uint32_t bit = rest & -rest;
                rest &= rest - 1;
                if ((y >> j) & 1) u |= bit;
            }
            const std::uint32_t outside = sens_mask(f, u) & ~live;
            if (outside) {
                const int coord = std::countr_zero(outside) + 1;
                xs.push_back(u);
                ls.push_back(coord);
                live |= coord_bit(coord);
                anchor &= ~live;
                found = true;
            }
        }
        if (found) continue;
        // Case 2: shift the whole subcube one step toward the nearest vertex
        // sensitive outside the chosen coordinates; re-scan after each step.
        std::uint32_t best_v = 0;
        int best_d = -1;
        for (std::uint64_t v = 0; v < size; ++v) {
            if (!(sens_mask(f, static_cast<std::uint32_t>(v)) & ~live)) continue;
            const int d = std::popcount((static_cast<std::uint32_t>(v) ^ anchor) & ~live);
            if (best_d < 0 || d < best_d) {
                best_d = d;
                best_v = static_cast<std::uint32_t>(v);
            }
        }
        if (best_d <= 0) throw std::logic_error("subcube shift expected a positive distance");
        const std::uint32_t diff = (best_v ^ anchor) & ~live;
        const std::uint32_t step = diff & -diff;
        anchor ^= step;
        for (auto& x : xs) x ^= step;
    }

    // Stitch the walk: before leaving x_i make sure l_i has been flipped at
    // x_i, then take a shortest path to x_{i+1} (coordinates ascending).
    Walk w;
    w.start = xs[0];
    for (int i = 0; i + 1 < n; ++i) {
        const std::uint32_t diff = xs[i] ^ xs[i + 1];
        if (diff & coord_bit(ls[i])) {
            w.flips.push_back(ls[i]);
        } else {
            w.flips.push_back(ls[i]);
            w.flips.push_back(ls[i]);
        }
        for (std::uint32_t m = diff & ~coord_bit(ls[i]); m; m &= m - 1)
            w.flips.push_back(std::countr_zero(m) + 1);
    }
    w.flips.push_back(ls[n - 1]);

    if (!is_proper_walk(f, w) || w.dimension() != n ||
        w.length() > static_cast<std::size_t>(n) * (n + 1) / 2)
        throw std::logic_error("full-dimension walk construction broke its own bound");
    return w;
}

namespace {

struct Phase {
    int edges = 0;
    std::vector<std::uint8_t> tour_bits;
    std::vector<int> betas;
    std::vector<std::uint8_t> cube_bits;
};

// Canonical maximum sensitive tree: largest label set, ties broken by the
// lexicographically least sorted vertex list.
std::vector<std::uint32_t> max_tree_canonical(const BooleanFunction& g, const Caps& caps) {
    std::vector<std::uint32_t> best;
    int best_size = 0;
    TreeEnumerator enumerator(g, g.arity());
    enumerator.run([&](const std::vector<std::uint32_t>& set, std::uint32_t) {
        const int sz = static_cast<int>(set.size()) - 1;
        if (sz < best_size) return true;
        std::vector<std::uint32_t> sorted = set;
        std::sort(sorted.begin(), sorted.end());
        if (sz > best_size || sorted < best) {
            best_size = sz;
            best = std::move(sorted);
        }
        return true;
    });
    (void)caps;
    if (best.empty()) throw std::logic_error("no sensitive tree in a non-constant function");
    return best;
}

// Recursive full-depth walk for f restricted to (live, anchor): tour a
// canonical maximum sensitive tree of the restriction (shifted within its
// orchard to meet the recursive walk), walk inside the label cube to the next
// start, then continue on a restriction of full remaining depth.
Walk build_full_depth_walk(const BooleanFunction& f, const std::vector<int>& live,
                           std::uint32_t anchor, std::vector<Phase>* phases, const Caps& caps) {
    const int arity = static_cast<int>(live.size());
    std::uint32_t live_mask = 0;
    for (int c : live) live_mask |= coord_bit(c);
    const Restriction rho{f.arity(), live_mask, anchor};
    const BooleanFunction g = apply_restriction(f, rho);

    auto lift = [&](std::uint32_t local) { return rho.subcube_point(local); };

    const std::vector<std::uint32_t> tree_local = max_tree_canonical(g, caps);
    const int m = static_cast<int>(tree_local.size()) - 1;

    std::uint32_t label_local = 0;  // local label mask of the tree
    {
        const SensitiveTree t = induced_tree(g, tree_local);
        label_local = t.labels.mask;
    }

    Walk tail;
    std::uint32_t next_start_local = 0;
    std::vector<Phase> tail_phases;
    std::vector<std::uint32_t> tree_shifted = tree_local;

    if (m < arity) {
        // Lowest assignment to the tree labels whose restriction keeps full
        // depth; one exists because dt(g) equals the arity.
        const std::vector<int> label_coords = CoordSet{label_local}.coords();
        std::uint32_t chosen = 0;
        bool found = false;
        for (std::uint32_t a = 0; a < (std::uint32_t{1} << m) && !found; ++a) {
            std::uint32_t fixed = 0;
            for (int t = 0; t < m; ++t)
                if ((a >> t) & 1) fixed |= coord_bit(label_coords[t]);
            const Restriction inner{arity, ~label_local & ((std::uint32_t{1} << arity) - 1),
                                    fixed};
            if (decision_tree_depth(apply_restriction(g, inner), caps) == arity - m) {
                chosen = fixed;
                found = true;
            }
        }
        if (!found) throw std::logic_error("no full-depth assignment under the tree labels");

        // Lift the recursion onto the original cube.
        std::vector<int> live_rest;
        std::uint32_t anchor_rest = anchor;
        for (int t = 0; t < arity; ++t) {
            if ((label_local >> t) & 1) {
                if ((chosen >> t) & 1) anchor_rest |= coord_bit(live[t]);
            } else {
                live_rest.push_back(live[t]);
            }
        }
        tail = build_full_depth_walk(f, live_rest, anchor_rest, phases ? &tail_phases : nullptr,
                                     caps);

        // Shift the tree inside its orchard so it agrees with the tail start
        // on the coordinates off its labels.
        std::uint32_t target_local = 0;
        for (int t = 0; t < arity; ++t)
            if (tail.start & coord_bit(live[t])) target_local |= std::uint32_t{1} << t;
        next_start_local = target_local;
        const std::uint32_t shift = (tree_local[0] ^ target_local) & ~label_local;
        for (auto& v : tree_shifted) {
            const std::uint32_t moved = v ^ shift;
            if (g.bit(v) != g.bit(moved))
                throw std::logic_error("maximum tree failed to shift within its orchard");
            v = moved;
        }
        std::sort(tree_shifted.begin(), tree_shifted.end());
    }

    // Tour the (shifted) tree from its least vertex, each edge twice,
    // children in ascending label order.
    const SensitiveTree tree = induced_tree(g, tree_shifted);
    const std::uint32_t root = tree.vertices[0];

    Phase phase;
    phase.edges = m;
    Walk walk;
    walk.start = lift(root);

    std::vector<std::uint8_t> visited(tree.vertices.size(), 0);
    auto vertex_idx = [&](std::uint32_t v) {
        return std::lower_bound(tree.vertices.begin(), tree.vertices.end(), v) -
               tree.vertices.begin();
    };
    std::uint32_t cur_full = walk.start;
    auto tour = [&](auto&& self, std::uint32_t u) -> void {
        visited[vertex_idx(u)] = 1;
        std::vector<std::pair<int, std::uint32_t>> children;
        for (const auto& e : tree.edges) {
            if (e.a == u && !visited[vertex_idx(e.b)]) children.push_back({e.coord, e.b});
            if (e.b == u && !visited[vertex_idx(e.a)]) children.push_back({e.coord, e.a});
        }
        std::sort(children.begin(), children.end());
        for (auto [local_coord, child] : children) {
            const int orig = live[local_coord - 1];
            phase.tour_bits.push_back(1);
            phase.betas.push_back(neighbor_rank(f, cur_full, orig));
            walk.flips.push_back(orig);
            cur_full ^= coord_bit(orig);
            self(self, child);
            phase.tour_bits.push_back(0);
            walk.flips.push_back(orig);
            cur_full ^= coord_bit(orig);
        }
    };
    tour(tour, root);
    if (cur_full != walk.start) throw std::logic_error("tree tour did not return to its root");

    // Walk inside the label cube to the start of the tail.
    const std::uint32_t diff_local = m < arity ? (root ^ next_start_local) : 0;
    const std::vector<int> sorted_labels = CoordSet{label_local}.coords();
    for (int local_coord : sorted_labels) {
        const bool flip = (diff_local >> (local_coord - 1)) & 1;
        phase.cube_bits.push_back(flip ? 1 : 0);
        if (flip) walk.flips.push_back(live[local_coord - 1]);
    }
    if (diff_local & ~label_local)
        throw std::logic_error("tail start leaves the label cube");

    if (phases) phases->push_back(std::move(phase));
    if (m < arity) {
        if (tail.start != walk.end())
            throw std::logic_error("in-cube walk missed the tail start");
        walk.flips.insert(walk.flips.end(), tail.flips.begin(), tail.flips.end());
        if (phases)
            phases->insert(phases->end(), tail_phases.begin(), tail_phases.end());
    }
    return walk;
}

}  // namespace

Walk proper_walk_3n(const BooleanFunction& f, const Caps& caps) {
    const int n = f.arity();
    require_cap(n <= caps.walk_3n, "3n walk arity <= " + std::to_string(caps.walk_3n),
                "n=" + std::to_string(n));
    const int depth = decision_tree_depth(f, caps);
    if (depth != n)
        throw std::invalid_argument("function does not have full decision-tree depth (dt=" +
                                    std::to_string(depth) + " < n=" + std::to_string(n) + ")");
    std::vector<int> live(n);
    for (int i = 0; i < n; ++i) live[i] = i + 1;
    Walk w = build_full_depth_walk(f, live, 0, nullptr, caps);
    if (!is_proper_walk(f, w) || w.dimension() != n || w.length() > 3 * static_cast<std::size_t>(n))
        throw std::logic_error("3n walk construction broke its own bound");
    return w;
}

std::optional<int> min_proper_walk(const BooleanFunction& f, const Caps& caps) {
    const int n = f.arity();
    require_cap(n <= caps.min_walk, "min walk arity <= " + std::to_string(caps.min_walk),
                "n=" + std::to_string(n));
    if (f.dim() != n) return std::nullopt;

    // BFS over (flipped coordinate set, vertex) from every (empty, vertex)
    // state. A new direction may be crossed only along a sensitive edge.
    // States fit in 2n <= 24 bits.
    const std::uint32_t size = static_cast<std::uint32_t>(f.table_size());
    std::vector<std::uint8_t> dist(std::uint64_t{size} << n, 0xff);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t v = 0; v < size; ++v) {
        dist[v] = 0;
        queue.push_back(v);
    }
    while (!queue.empty()) {
        const std::uint32_t state = queue.front();
        queue.pop_front();
        const std::uint32_t v = state & (size - 1);
        const std::uint32_t flipped = state >> n;
        const int d = dist[state];
        if (flipped == size - 1) return d;
        const std::uint32_t sens = sens_mask(f, v);
        for (int i = 0; i < n; ++i) {
            const std::uint32_t bit = std::uint32_t{1} << i;
            if (!(flipped & bit) && !(sens & bit)) continue;
            const std::uint32_t next = ((flipped | bit) << n) | (v ^ bit);
            if (dist[next] == 0xff) {
                dist[next] = static_cast<std::uint8_t>(d + 1);
                queue.push_back(next);
            }
        }
    }
    return std::nullopt;  // unreachable when dim(f) = n
}

WalkEncoding encode_walk(const BooleanFunction& f, const Restriction& rho, const Caps& caps) {
    if (rho.n != f.arity()) throw std::invalid_argument("restriction arity mismatch");
    const int k = rho.live_count();
    require_cap(k <= caps.walk_3n, "3n walk arity <= " + std::to_string(caps.walk_3n),
                "k=" + std::to_string(k));
    WalkEncoding enc;
    enc.n = f.arity();
    enc.k = k;
    if (k == 0) {
        enc.v0 = rho.fixed;
        return enc;
    }
    const BooleanFunction g = apply_restriction(f, rho);
    if (decision_tree_depth(g, caps) != k)
        throw std::invalid_argument("restricted function does not have full depth");

    std::vector<Phase> phases;
    const Walk walk =
        build_full_depth_walk(f, CoordSet{rho.live}.coords(), rho.fixed, &phases, caps);
    if (!is_proper_walk(f, walk)) throw std::logic_error("encoded walk is not proper");

    enc.v0 = walk.start;
    int total = 0;
    for (const Phase& p : phases) {
        total += p.edges;
        enc.phase_ends.push_back(total);
        enc.tour_bits.insert(enc.tour_bits.end(), p.tour_bits.begin(), p.tour_bits.end());
        enc.cube_bits.insert(enc.cube_bits.end(), p.cube_bits.begin(), p.cube_bits.end());
        enc.neighbor_indices.insert(enc.neighbor_indices.end(), p.betas.begin(), p.betas.end());
    }
    if (total != k || enc.tour_bits.size() != std::size_t(2 * k) ||
        enc.cube_bits.size() != std::size_t(k) || enc.neighbor_indices.size() != std::size_t(k))
        throw std::logic_error("walk phases do not cover the live coordinates");
    return enc;
}

Restriction decode_walk(const BooleanFunction& f, const WalkEncoding& enc, int k,
                        const Caps& caps) {
    const int n = f.arity();
    if (k < 0 || enc.v0 >= f.table_size()) throw DecodeError("bad start vertex");
    if (enc.tour_bits.size() != std::size_t(2 * k) || enc.cube_bits.size() != std::size_t(k) ||
        enc.neighbor_indices.size() != std::size_t(k))
        throw DecodeError("component lengths do not match k");
    if (k == 0) {
        if (!enc.phase_ends.empty()) throw DecodeError("phase markers with k = 0");
        return Restriction{n, 0, enc.v0};
    }
    if (enc.phase_ends.empty() || enc.phase_ends.back() != k)
        throw DecodeError("phase markers must end at k");
    int prev = 0;
    for (int e : enc.phase_ends) {
        if (e <= prev || e > k) throw DecodeError("phase markers must ascend within [1,k]");
        prev = e;
    }

    std::uint32_t cur = enc.v0;
    std::uint32_t flipped = 0;
    std::size_t bpos = 0, cpos = 0, betapos = 0;
    int done = 0;
    for (int end : enc.phase_ends) {
        const int edges = end - done;
        done = end;
        std::vector<std::uint32_t> stack;
        std::uint32_t phase_labels = 0;
        for (int step = 0; step < 2 * edges; ++step) {
            if (enc.tour_bits[bpos++]) {
                const int rank = enc.neighbor_indices[betapos++];
                const std::uint32_t sens = sens_mask(f, cur);
                if (rank < 1 || rank > std::popcount(sens))
                    throw DecodeError("sensitive-neighbor index out of range");
                std::uint32_t m = sens;
                for (int skip = 1; skip < rank; ++skip) m &= m - 1;
                const std::uint32_t bit = m & -m;
                const int coord = std::countr_zero(bit) + 1;
                if (phase_labels & bit) throw DecodeError("tree repeats a direction");
                phase_labels |= bit;
                stack.push_back(cur);
                cur ^= bit;
                flipped |= bit;
            } else {
                if (stack.empty()) throw DecodeError("tree traversal underflows its root");
                cur = stack.back();
                stack.pop_back();
            }
        }
        if (!stack.empty()) throw DecodeError("tree traversal did not return to its root");
        for (int c : CoordSet{phase_labels}.coords()) {
            if (enc.cube_bits[cpos++]) {
                cur ^= coord_bit(c);
            }
        }
    }
    if (std::popcount(flipped) != k) throw DecodeError("walk does not span k directions");
    const Restriction rho{n, flipped, enc.v0 & ~flipped};

    // Only images of the encoder decode: re-encode and compare, so the result
    // really is the unique preimage.
    try {
        if (!(encode_walk(f, rho, caps) == enc))
            throw DecodeError("encoding is not canonical for the recovered restriction");
    } catch (const std::invalid_argument&) {
        throw DecodeError("recovered restriction lacks full restricted depth");
    }
    return rho;
}

EncodingScan encoding_bijection_scan(const BooleanFunction& f, int k, const Caps& caps) {
    const int n = f.arity();
    if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    EncodingScan scan;
    scan.n = n;
    scan.k = k;

    std::unordered_set<std::string> seen;
    std::uint64_t qualifying = 0;
    for_each_restriction(
        n, k,
        [&](const Restriction& rho) {
            const BooleanFunction g = apply_restriction(f, rho);
            if (decision_tree_depth(g, caps) != k) return;
            ++qualifying;
            const WalkEncoding enc = encode_walk(f, rho, caps);
            const Restriction back = decode_walk(f, enc, k, caps);
            if (!(back == rho)) ++scan.roundtrip_failures;
            std::string key = std::to_string(enc.v0);
            for (int e : enc.phase_ends) key += "," + std::to_string(e);
            key += ";";
            for (auto b : enc.tour_bits) key += char('0' + b);
            key += ";";
            for (auto c : enc.cube_bits) key += char('0' + c);
            key += ";";
            for (int b : enc.neighbor_indices) key += std::to_string(b) + ",";
            if (!seen.insert(key).second) ++scan.duplicate_encodings;
        },
        caps);

    scan.qualifying = qualifying;
    const BigInt total = BigInt{restriction_count(n, k)};
    scan.observed = Rational{BigInt{qualifying}, total};
    const int s = max_sensitivity(f);
    scan.bound = Rational{ipow(BigInt{32} * s, k), binomial(n, k)};
    scan.pass = scan.roundtrip_failures == 0 && scan.duplicate_encodings == 0 &&
                scan.observed <= scan.bound;
    return scan;
}

}  // namespace cubesense
