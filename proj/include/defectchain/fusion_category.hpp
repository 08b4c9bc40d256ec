#pragma once

// Skeletal multiplicity-free fusion categories: label set, fusion table,
// quantum dimensions, and F-symbols with exact cyclotomic entries.
//
// F-symbol convention: fsymbols maps (a, b, c, d, e, f) to the matrix entry
// (F^d_{abc})_{e,f}, where e runs over a*b (paired with d in e*c) and f runs
// over b*c (paired with d in a*f).  The accessor returns exact zero for
// inadmissible index tuples; validate() insists every admissible tuple is
// stored explicitly.

#include <defectchain/cyclotomic.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace defectchain {

struct FusionCategory {
    std::vector<std::string> labels;
    std::size_t unit = 0;
    std::vector<std::vector<std::vector<std::size_t>>> fusion;  // fusion[a][b], sorted indices
    std::vector<Scalar> qdim;
    std::map<std::array<std::size_t, 6>, Scalar> fsymbols;
    unsigned scalar_order = 8;

    std::size_t size() const { return labels.size(); }

    std::size_t index(const std::string& name) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == name)
                return i;
        throw std::runtime_error("unknown label '" + name + "'");
    }

    const std::vector<std::size_t>& fuse(std::size_t a, std::size_t b) const {
        return fusion.at(a).at(b);
    }

    bool contains(std::size_t c, std::size_t a, std::size_t b) const {
        const auto& prods = fuse(a, b);
        return std::binary_search(prods.begin(), prods.end(), c);
    }

    // admissibility of (F^d_{abc})_{e,f}
    bool admissible(std::size_t a, std::size_t b, std::size_t c, std::size_t d, std::size_t e,
                    std::size_t f) const {
        return contains(e, a, b) && contains(d, e, c) && contains(f, b, c) && contains(d, a, f);
    }

    Scalar fsym(std::size_t a, std::size_t b, std::size_t c, std::size_t d, std::size_t e,
                std::size_t f) const {
        if (!admissible(a, b, c, d, e, f))
            return Scalar(scalar_order);
        auto it = fsymbols.find({a, b, c, d, e, f});
        if (it == fsymbols.end())
            throw std::runtime_error("missing F-symbol entry for an admissible tuple");
        return it->second;
    }

    // structural well-formedness; throws with a description on the first failure
    void validate() const {
        const std::size_t n = size();
        if (n == 0)
            throw std::runtime_error("category has no labels");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (labels[i] == labels[j])
                    throw std::runtime_error("duplicate label '" + labels[i] + "'");
        if (unit >= n)
            throw std::runtime_error("unit index out of range");
        if (fusion.size() != n)
            throw std::runtime_error("fusion table has wrong row count");
        for (std::size_t a = 0; a < n; ++a) {
            if (fusion[a].size() != n)
                throw std::runtime_error("fusion table has wrong column count");
            for (std::size_t b = 0; b < n; ++b) {
                const auto& prods = fusion[a][b];
                if (prods.empty())
                    throw std::runtime_error("empty fusion product " + labels[a] + " * " + labels[b]);
                for (std::size_t k = 0; k < prods.size(); ++k) {
                    if (prods[k] >= n)
                        throw std::runtime_error("fusion product index out of range");
                    if (k > 0 && prods[k] <= prods[k - 1])
                        throw std::runtime_error("fusion products must be sorted and duplicate-free");
                }
            }
        }
        for (std::size_t a = 0; a < n; ++a) {
            if (fuse(unit, a) != std::vector<std::size_t>{a} || fuse(a, unit) != std::vector<std::size_t>{a})
                throw std::runtime_error("unit does not act trivially on '" + labels[a] + "'");
        }

        if (qdim.size() != n)
            throw std::runtime_error("quantum dimension list has wrong length");
        Scalar one = Scalar::integer(1, scalar_order);
        if (!(qdim[unit] == one))
            throw std::runtime_error("unit must have quantum dimension 1");
        for (std::size_t a = 0; a < n; ++a) {
            if (qdim[a].order() != scalar_order)
                throw std::runtime_error("quantum dimension has inconsistent cyclotomic order");
            if (!(qdim[a].conj() == qdim[a]))
                throw std::runtime_error("quantum dimension of '" + labels[a] + "' is not real");
            if (to_float(qdim[a]).real() <= 0.0)
                throw std::runtime_error("quantum dimension of '" + labels[a] + "' is not positive");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Scalar lhs = qdim[a] * qdim[b];
                Scalar rhs(scalar_order);
                for (std::size_t c : fuse(a, b))
                    rhs += qdim[c];
                if (!(lhs == rhs))
                    throw std::runtime_error("quantum dimensions violate the fusion product rule at " +
                                             labels[a] + " * " + labels[b]);
            }

        for (const auto& [key, value] : fsymbols) {
            if (!admissible(key[0], key[1], key[2], key[3], key[4], key[5]))
                throw std::runtime_error("stored F-symbol entry has inadmissible indices");
            if (value.order() != scalar_order)
                throw std::runtime_error("F-symbol entry has inconsistent cyclotomic order");
        }

        // every admissible tuple must be stored; unit gauge; unitary blocks
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d)
                        validate_block(a, b, c, d);
    }

private:
    void validate_block(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
        std::vector<std::size_t> rows, cols;
        for (std::size_t e : fuse(a, b))
            if (contains(d, e, c))
                rows.push_back(e);
        for (std::size_t f : fuse(b, c))
            if (contains(d, a, f))
                cols.push_back(f);
        if (rows.empty() && cols.empty())
            return;
        if (rows.size() != cols.size())
            throw std::runtime_error("F-symbol block at (" + labels[a] + "," + labels[b] + "," +
                                     labels[c] + ";" + labels[d] + ") is not square");
        Scalar one = Scalar::integer(1, scalar_order);
        for (std::size_t e : rows)
            for (std::size_t f : cols) {
                auto it = fsymbols.find({a, b, c, d, e, f});
                if (it == fsymbols.end())
                    throw std::runtime_error("missing F-symbol entry at (" + labels[a] + "," +
                                             labels[b] + "," + labels[c] + ";" + labels[d] + ")");
                if ((a == unit || b == unit || c == unit) && !(it->second == one))
                    throw std::runtime_error("F-symbol with a unit strand must equal 1");
            }
        for (std::size_t e1 : rows)
            for (std::size_t e2 : rows) {
                Scalar acc(scalar_order);
                for (std::size_t f : cols)
                    acc += fsymbols.at({a, b, c, d, e1, f}) * fsymbols.at({a, b, c, d, e2, f}).conj();
                Scalar expect = e1 == e2 ? one : Scalar(scalar_order);
                if (!(acc == expect))
                    throw std::runtime_error("F-symbol block at (" + labels[a] + "," + labels[b] + "," +
                                             labels[c] + ";" + labels[d] + ") is not unitary");
            }
    }
};

// pointed category of Z/p graded vector spaces with trivial associator
inline FusionCategory vec_zp(unsigned p, unsigned scalar_order = 8) {
    if (p == 0)
        throw std::runtime_error("group order must be positive");
    FusionCategory C;
    C.scalar_order = scalar_order;
    C.unit = 0;
    for (unsigned g = 0; g < p; ++g)
        C.labels.push_back(std::to_string(g));
    C.fusion.assign(p, std::vector<std::vector<std::size_t>>(p));
    for (unsigned a = 0; a < p; ++a)
        for (unsigned b = 0; b < p; ++b)
            C.fusion[a][b] = {(a + b) % p};
    C.qdim.assign(p, Scalar::integer(1, scalar_order));
    for (unsigned a = 0; a < p; ++a)
        for (unsigned b = 0; b < p; ++b)
            for (unsigned c = 0; c < p; ++c)
                C.fsymbols[{a, b, c, (a + b + c) % p, (a + b) % p, (b + c) % p}] =
                    Scalar::integer(1, scalar_order);
    return C;
}

// three-object extension of the Z/2 category by a self-dual strand of
// dimension sqrt(2); kappa = +1 or -1 selects one of the two solutions
inline FusionCategory ising(int kappa = 1) {
    if (kappa != 1 && kappa != -1)
        throw std::runtime_error("kappa must be +1 or -1");
    FusionCategory C;
    C.scalar_order = 8;
    C.labels = {"0", "1", "*"};
    C.unit = 0;
    const std::size_t s = 2;  // the sqrt(2)-dimensional strand
    C.fusion.assign(3, std::vector<std::vector<std::size_t>>(3));
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            C.fusion[a][b] = {(a + b) % 2};
    C.fusion[0][s] = {s};
    C.fusion[1][s] = {s};
    C.fusion[s][0] = {s};
    C.fusion[s][1] = {s};
    C.fusion[s][s] = {0, 1};
    Scalar one = Scalar::integer(1);
    C.qdim = {one, one, Scalar::sqrt2()};

    auto sign = [&](std::size_t a, std::size_t b) {
        return (a * b) % 2 == 0 ? one : -one;
    };
    Scalar t = Scalar::integer(kappa) / Scalar::sqrt2();
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t c = 0; c < 2; ++c)
                C.fsymbols[{a, b, c, (a + b + c) % 2, (a + b) % 2, (b + c) % 2}] = one;
            C.fsymbols[{a, b, s, s, (a + b) % 2, s}] = one;           // group, group, strand
            C.fsymbols[{a, s, b, s, s, s}] = sign(a, b);              // group, strand, group
            C.fsymbols[{s, a, b, s, s, (a + b) % 2}] = one;           // strand, group, group
            C.fsymbols[{a, s, s, (a + b) % 2, s, b}] = one;           // group, strand, strand
            C.fsymbols[{s, a, s, b, s, s}] = sign(a, b);              // strand, group, strand
            C.fsymbols[{s, s, a, (a + b) % 2, b, s}] = one;           // strand, strand, group
            C.fsymbols[{s, s, s, s, a, b}] = sign(a, b) * t;          // all strand
        }
    return C;
}

struct PentagonReport {
    std::size_t instances_checked = 0;
    std::vector<std::array<std::size_t, 9>> violations;  // (a, b, c, d, e, f, g, k, l)
    bool ok() const { return violations.empty(); }
};

// exact pentagon identity:
//   (F^e_{fcd})_{g,l} (F^e_{abl})_{f,k} = sum_h (F^g_{abc})_{f,h} (F^e_{ahd})_{g,k} (F^k_{bcd})_{h,l}
// checked over every index chain that can make either side nonzero
inline PentagonReport check_pentagon(const FusionCategory& C) {
    PentagonReport report;
    const std::size_t n = C.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d)
                    for (std::size_t f : C.fuse(a, b))
                        for (std::size_t g : C.fuse(f, c))
                            for (std::size_t e : C.fuse(g, d))
                                for (std::size_t l : C.fuse(c, d))
                                    for (std::size_t k : C.fuse(b, l)) {
                                        Scalar lhs = C.fsym(f, c, d, e, g, l) * C.fsym(a, b, l, e, f, k);
                                        Scalar rhs(C.scalar_order);
                                        for (std::size_t h : C.fuse(b, c))
                                            rhs += C.fsym(a, b, c, g, f, h) * C.fsym(a, h, d, e, g, k) *
                                                   C.fsym(b, c, d, k, h, l);
                                        ++report.instances_checked;
                                        if (!(lhs == rhs))
                                            report.violations.push_back({a, b, c, d, e, f, g, k, l});
                                    }
    return report;
}

// internal edge labelings x_1..x_{N-1} of a fusion chain with N leaves of
// type X: x_0 = left, x_i in x_{i-1} * X, and right in x_{N-1} * X;
// results are ordered lexicographically by label index
inline std::vector<std::vector<std::size_t>> admissible_labelings(const FusionCategory& C,
                                                                  std::size_t left, std::size_t right,
                                                                  std::size_t X,
                                                                  std::size_t n_leaves) {
    if (left >= C.size() || right >= C.size() || X >= C.size())
        throw std::runtime_error("label index out of range");
    if (n_leaves == 0)
        throw std::runtime_error("a fusion chain needs at least one leaf");
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current;
    auto extend = [&](auto&& self, std::size_t prev, std::size_t remaining) -> void {
        if (remaining == 1) {
            if (C.contains(right, prev, X))
                out.push_back(current);
            return;
        }
        for (std::size_t next : C.fuse(prev, X)) {
            current.push_back(next);
            self(self, next, remaining - 1);
            current.pop_back();
        }
    };
    extend(extend, left, n_leaves);
    return out;
}

// binary fusion tree: leaves carry bare labels, internal nodes carry the
// fused label of their two subtrees
struct FusionTree {
    std::size_t label = 0;
    std::vector<FusionTree> children;  // empty or exactly two

    bool operator==(const FusionTree& o) const {
        return label == o.label && children == o.children;
    }
    bool operator<(const FusionTree& o) const {
        if (label != o.label)
            return label < o.label;
        return std::lexicographical_compare(children.begin(), children.end(), o.children.begin(),
                                            o.children.end());
    }
};

inline FusionTree leaf(std::size_t label) { return FusionTree{label, {}}; }

inline FusionTree node(std::size_t label, FusionTree left, FusionTree right) {
    return FusionTree{label, {std::move(left), std::move(right)}};
}

namespace detail {

inline void validate_tree(const FusionCategory& C, const FusionTree& t) {
    if (t.label >= C.size())
        throw std::runtime_error("fusion tree label out of range");
    if (t.children.empty())
        return;
    if (t.children.size() != 2)
        throw std::runtime_error("fusion tree nodes must have zero or two children");
    for (const auto& ch : t.children)
        validate_tree(C, ch);
    if (!C.contains(t.label, t.children[0].label, t.children[1].label))
        throw std::runtime_error("fusion tree node label is not a fusion product of its children");
}

// paths (sequences of child indices) to the lower endpoint of each internal
// edge, in preorder
inline void collect_internal_edges(const FusionTree& t, std::vector<std::vector<int>>& out,
                                   std::vector<int>& path) {
    for (int i = 0; i < static_cast<int>(t.children.size()); ++i) {
        const FusionTree& ch = t.children[i];
        if (!ch.children.empty()) {
            path.push_back(i);
            out.push_back(path);
            collect_internal_edges(ch, out, path);
            path.pop_back();
        }
    }
}

inline FusionTree* navigate(FusionTree& t, const std::vector<int>& path, std::size_t depth) {
    FusionTree* cur = &t;
    for (std::size_t i = 0; i < depth; ++i)
        cur = &cur->children.at(static_cast<std::size_t>(path[i]));
    return cur;
}

} // namespace detail

// one associativity move on the internal edge with the given preorder index.
// An edge whose lower node is a left child carries a ((a b) c) -> (a (b c))
// move with coefficients (F^d_{abc})_{e,f}; a right-child edge carries the
// inverse move with the conjugated coefficients.
inline std::map<FusionTree, Scalar> f_move(const FusionCategory& C, const FusionTree& tree,
                                           std::size_t position) {
    detail::validate_tree(C, tree);
    std::vector<std::vector<int>> edges;
    std::vector<int> scratch;
    detail::collect_internal_edges(tree, edges, scratch);
    if (position >= edges.size())
        throw std::runtime_error("internal edge index out of range (tree has " +
                                 std::to_string(edges.size()) + " internal edges)");
    const std::vector<int>& path = edges[position];

    std::map<FusionTree, Scalar> out;
    FusionTree work = tree;
    FusionTree* parent = detail::navigate(work, path, path.size() - 1);
    const int side = path.back();
    if (side == 0) {
        // ((a b)_e c)_d -> sum_f (F^d_{abc})_{e,f} (a (b c)_f)_d
        FusionTree a = parent->children[0].children[0];
        FusionTree b = parent->children[0].children[1];
        FusionTree c = parent->children[1];
        const std::size_t e = parent->children[0].label, d = parent->label;
        for (std::size_t f : C.fuse(b.label, c.label)) {
            Scalar coeff = C.fsym(a.label, b.label, c.label, d, e, f);
            if (coeff.is_zero())
                continue;
            *parent = node(d, a, node(f, b, c));
            out[work] = coeff;
            parent = detail::navigate(work, path, path.size() - 1);
        }
    } else {
        // (a (b c)_f)_d -> sum_e conj((F^d_{abc})_{e,f}) ((a b)_e c)_d
        FusionTree a = parent->children[0];
        FusionTree b = parent->children[1].children[0];
        FusionTree c = parent->children[1].children[1];
        const std::size_t f = parent->children[1].label, d = parent->label;
        for (std::size_t e : C.fuse(a.label, b.label)) {
            Scalar coeff = C.fsym(a.label, b.label, c.label, d, e, f).conj();
            if (coeff.is_zero())
                continue;
            *parent = node(d, node(e, a, b), c);
            out[work] = coeff;
            parent = detail::navigate(work, path, path.size() - 1);
        }
    }
    return out;
}

} // namespace defectchain
