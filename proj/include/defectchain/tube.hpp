#pragma once

// Three-strand annular diagram engine over pointed acting categories.
//
// A diagram key D(m,n,p; x,y,z) is the standard-form annulus with radial
// module strands m, n, p and three connecting arcs: x joins the m- and
// p-strands (innermost radius), z joins the n- and p-strands (middle), and
// y joins the m- and n-strands (outermost).  The arcs act as
//   m -> (x |> m) <| y,   n -> y |> (n <| z),   p -> (x |> p) <| z,
// so the key is a morphism from the inner triple (m,n,p) to that target
// triple.  Composition stacks a second annulus outside the first and
// reduces to standard form; the accumulated bimodule associator phases are
// exact cyclotomic scalars.

#include <defectchain/bimodule.hpp>

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace defectchain {

struct ObjectTriple {
    std::size_t m = 0, n = 0, p = 0;
    auto operator<=>(const ObjectTriple&) const = default;
};

struct AnnularKey {
    ObjectTriple source;
    std::size_t x = 0, y = 0, z = 0;
    auto operator<=>(const AnnularKey&) const = default;
};

using AnnularElement = std::map<AnnularKey, Scalar>;

// M is an A-B bimodule, N a B-C bimodule, P an A-C bimodule; all three
// acting categories must be pointed and share one scalar order
struct AnnularContext {
    Bimodule M, N, P;

    const FusionCategory& A() const { return *M.left_cat; }
    const FusionCategory& B() const { return *M.right_cat; }
    const FusionCategory& C() const { return *N.right_cat; }
    unsigned scalar_order() const { return M.scalar_order; }
};

namespace detail {

inline bool same_group(const FusionCategory& a, const FusionCategory& b) {
    return a.labels == b.labels && a.unit == b.unit && a.fusion == b.fusion;
}

inline std::size_t mul(const FusionCategory& C, std::size_t a, std::size_t b) {
    return C.fuse(a, b).at(0);
}

} // namespace detail

inline AnnularContext make_annular_context(Bimodule M, Bimodule N, Bimodule P) {
    AnnularContext ctx{std::move(M), std::move(N), std::move(P)};
    if (!ctx.M.left_cat || !ctx.M.right_cat || !ctx.N.left_cat || !ctx.N.right_cat ||
        !ctx.P.left_cat || !ctx.P.right_cat)
        throw std::runtime_error("annular context bimodules are missing acting categories");
    if (!detail::same_group(*ctx.M.right_cat, *ctx.N.left_cat))
        throw std::runtime_error("middle acting categories of the two upper strands disagree");
    if (!detail::same_group(*ctx.M.left_cat, *ctx.P.left_cat))
        throw std::runtime_error("left acting categories of the m- and p-strands disagree");
    if (!detail::same_group(*ctx.N.right_cat, *ctx.P.right_cat))
        throw std::runtime_error("right acting categories of the n- and p-strands disagree");
    if (!is_pointed(ctx.A()) || !is_pointed(ctx.B()) || !is_pointed(ctx.C()))
        throw std::runtime_error("annular composition requires pointed acting categories");
    if (ctx.M.scalar_order != ctx.N.scalar_order || ctx.M.scalar_order != ctx.P.scalar_order)
        throw std::runtime_error("annular context bimodules disagree on scalar order");
    return ctx;
}

inline ObjectTriple annular_target(const AnnularContext& ctx, const AnnularKey& k) {
    return ObjectTriple{ctx.M.act_right(ctx.M.act_left(k.x, k.source.m), k.y),
                        ctx.N.act_left(k.y, ctx.N.act_right(k.source.n, k.z)),
                        ctx.P.act_right(ctx.P.act_left(k.x, k.source.p), k.z)};
}

inline AnnularElement annular_generator(const AnnularContext& ctx, const ObjectTriple& source,
                                        std::size_t x, std::size_t y, std::size_t z) {
    if (source.m >= ctx.M.size() || source.n >= ctx.N.size() || source.p >= ctx.P.size())
        throw std::runtime_error("annular source object out of range");
    if (x >= ctx.A().size() || y >= ctx.B().size() || z >= ctx.C().size())
        throw std::runtime_error("annular arc label out of range");
    return AnnularElement{{AnnularKey{source, x, y, z}, Scalar::integer(1, ctx.scalar_order())}};
}

inline AnnularElement& accumulate(AnnularElement& acc, const AnnularKey& k, const Scalar& c) {
    auto [it, fresh] = acc.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero())
            acc.erase(it);
    } else if (it->second.is_zero()) {
        acc.erase(it);
    }
    return acc;
}

inline AnnularElement add(AnnularElement a, const AnnularElement& b) {
    for (const auto& [k, c] : b)
        accumulate(a, k, c);
    return a;
}

inline AnnularElement scale(const Scalar& c, const AnnularElement& a) {
    AnnularElement out;
    if (c.is_zero())
        return out;
    for (const auto& [k, v] : a)
        out.emplace(k, c * v);
    return out;
}

namespace detail {

// phase produced by sliding the outer annulus (x2,y2,z2) onto the inner key
// and reducing to standard form; one bracketed group per strand
inline Scalar annular_phase(const AnnularContext& ctx, std::size_t x2, std::size_t y2,
                            std::size_t z2, const AnnularKey& k) {
    const std::size_t m = k.source.m, n = k.source.n, p = k.source.p;
    const std::size_t x1 = k.x, y1 = k.y, z1 = k.z;
    const std::size_t xx = mul(ctx.A(), x2, x1);
    const std::size_t zz = mul(ctx.C(), z1, z2);
    Scalar phase = ctx.M.assoc_c(x2, ctx.M.act_left(x1, m), y1) * ctx.M.assoc_l(x2, x1, m) *
                   ctx.M.assoc_r(ctx.M.act_left(xx, m), y1, y2);
    phase *= ctx.N.assoc_c(y1, ctx.N.act_right(n, z1), z2).inverse() *
             ctx.N.assoc_r(n, z1, z2) * ctx.N.assoc_l(y2, y1, ctx.N.act_right(n, zz));
    phase *= ctx.P.assoc_c(x2, ctx.P.act_left(x1, p), z1) * ctx.P.assoc_l(x2, x1, p) *
             ctx.P.assoc_r(ctx.P.act_left(xx, p), z1, z2);
    return phase;
}

} // namespace detail

// stack every term of `outer` outside every term of `inner`; each pairing
// must be composable (inner target equals outer source)
inline AnnularElement compose(const AnnularContext& ctx, const AnnularElement& outer,
                              const AnnularElement& inner) {
    AnnularElement out;
    for (const auto& [ki, ci] : inner) {
        const ObjectTriple mid = annular_target(ctx, ki);
        for (const auto& [ko, co] : outer) {
            if (ko.source != mid)
                throw std::runtime_error("annular composition mismatch: inner target does not "
                                         "match outer source");
            AnnularKey composite{ki.source, detail::mul(ctx.A(), ko.x, ki.x),
                                 detail::mul(ctx.B(), ki.y, ko.y),
                                 detail::mul(ctx.C(), ki.z, ko.z)};
            accumulate(out, composite, ci * co * detail::annular_phase(ctx, ko.x, ko.y, ko.z, ki));
        }
    }
    return out;
}

// adjoint: reverse the annulus inside-out.  Implemented for contexts whose
// bimodules have trivial left/right associators (the catalog bimodules all
// do); the correction phases then involve only the mixed associators.
inline AnnularElement dagger(const AnnularContext& ctx, const AnnularElement& elem) {
    if (!ctx.M.assoc_left.empty() || !ctx.M.assoc_right.empty() || !ctx.N.assoc_left.empty() ||
        !ctx.N.assoc_right.empty() || !ctx.P.assoc_left.empty() || !ctx.P.assoc_right.empty())
        throw std::runtime_error("adjoint is implemented only for bimodules with trivial "
                                 "left/right associators");
    AnnularElement out;
    for (const auto& [k, c] : elem) {
        const ObjectTriple t = annular_target(ctx, k);
        const std::size_t xi = inverse_label(ctx.A(), k.x);
        const std::size_t yi = inverse_label(ctx.B(), k.y);
        const std::size_t zi = inverse_label(ctx.C(), k.z);
        Scalar phase = ctx.M.assoc_c(xi, t.m, yi) * ctx.N.assoc_c(yi, t.n, zi).inverse() *
                       ctx.P.assoc_c(xi, t.p, zi);
        accumulate(out, AnnularKey{t, xi, yi, zi}, c.conj() * phase);
    }
    return out;
}

// orbit decomposition of the object triples under all arc-label moves;
// each class is sorted and led by its lexicographically smallest member
inline std::vector<std::vector<ObjectTriple>> object_classes(const AnnularContext& ctx) {
    std::vector<std::vector<ObjectTriple>> classes;
    std::map<ObjectTriple, bool> seen;
    for (std::size_t m = 0; m < ctx.M.size(); ++m)
        for (std::size_t n = 0; n < ctx.N.size(); ++n)
            for (std::size_t p = 0; p < ctx.P.size(); ++p) {
                ObjectTriple start{m, n, p};
                if (seen.count(start))
                    continue;
                std::vector<ObjectTriple> orbit{start};
                seen[start] = true;
                for (std::size_t i = 0; i < orbit.size(); ++i)
                    for (std::size_t x = 0; x < ctx.A().size(); ++x)
                        for (std::size_t y = 0; y < ctx.B().size(); ++y)
                            for (std::size_t z = 0; z < ctx.C().size(); ++z) {
                                ObjectTriple next =
                                    annular_target(ctx, AnnularKey{orbit[i], x, y, z});
                                if (!seen.count(next)) {
                                    seen[next] = true;
                                    orbit.push_back(next);
                                }
                            }
                std::sort(orbit.begin(), orbit.end());
                classes.push_back(std::move(orbit));
            }
    return classes;
}

// endomorphism algebra of one object triple: basis diagrams, the exact
// multiplication table, and the identity's basis index
struct EndoAlgebra {
    ObjectTriple object;
    std::vector<AnnularKey> basis;  // lex-ordered
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> table;  // [outer][inner]
    std::size_t identity = 0;
    unsigned scalar_order = 8;
};

inline EndoAlgebra endomorphism_algebra(const AnnularContext& ctx, const ObjectTriple& obj) {
    if (obj.m >= ctx.M.size() || obj.n >= ctx.N.size() || obj.p >= ctx.P.size())
        throw std::runtime_error("endomorphism object out of range");
    EndoAlgebra alg;
    alg.object = obj;
    alg.scalar_order = ctx.scalar_order();
    for (std::size_t x = 0; x < ctx.A().size(); ++x)
        for (std::size_t y = 0; y < ctx.B().size(); ++y)
            for (std::size_t z = 0; z < ctx.C().size(); ++z) {
                AnnularKey k{obj, x, y, z};
                if (annular_target(ctx, k) == obj)
                    alg.basis.push_back(k);
            }
    std::map<AnnularKey, std::size_t> index;
    for (std::size_t i = 0; i < alg.basis.size(); ++i)
        index[alg.basis[i]] = i;
    AnnularKey unit{obj, ctx.A().unit, ctx.B().unit, ctx.C().unit};
    auto it = index.find(unit);
    if (it == index.end())
        throw std::logic_error("identity diagram missing from endomorphism basis");
    alg.identity = it->second;
    alg.table.assign(alg.basis.size(), {});
    for (std::size_t i = 0; i < alg.basis.size(); ++i) {
        alg.table[i].reserve(alg.basis.size());
        for (std::size_t j = 0; j < alg.basis.size(); ++j) {
            const AnnularKey& inner = alg.basis[j];
            AnnularKey composite{obj, detail::mul(ctx.A(), alg.basis[i].x, inner.x),
                                 detail::mul(ctx.B(), inner.y, alg.basis[i].y),
                                 detail::mul(ctx.C(), inner.z, alg.basis[i].z)};
            auto found = index.find(composite);
            if (found == index.end())
                throw std::logic_error("endomorphism algebra is not closed under composition");
            alg.table[i].push_back({found->second,
                                    detail::annular_phase(ctx, alg.basis[i].x, alg.basis[i].y,
                                                          alg.basis[i].z, inner)});
        }
    }
    return alg;
}

inline std::vector<Scalar> alg_zero(const EndoAlgebra& alg) {
    return std::vector<Scalar>(alg.basis.size(), Scalar(alg.scalar_order));
}

inline std::vector<Scalar> alg_unit(const EndoAlgebra& alg) {
    auto v = alg_zero(alg);
    v[alg.identity] = Scalar::integer(1, alg.scalar_order);
    return v;
}

// product in the endomorphism algebra: a stacked outside b
inline std::vector<Scalar> alg_mul(const EndoAlgebra& alg, const std::vector<Scalar>& a,
                                   const std::vector<Scalar>& b) {
    auto out = alg_zero(alg);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero())
                continue;
            const auto& [k, phase] = alg.table[i][j];
            out[k] += a[i] * b[j] * phase;
        }
    }
    return out;
}

inline bool alg_is_zero(const std::vector<Scalar>& v) {
    for (const auto& c : v)
        if (!c.is_zero())
            return false;
    return true;
}

inline AnnularElement element_from_vector(const EndoAlgebra& alg, const std::vector<Scalar>& v) {
    AnnularElement out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            out.emplace(alg.basis[i], v[i]);
    return out;
}

// throws unless the table describes a unital, associative, commutative algebra
inline void check_algebra(const EndoAlgebra& alg) {
    const std::size_t n = alg.basis.size();
    Scalar one = Scalar::integer(1, alg.scalar_order);
    for (std::size_t j = 0; j < n; ++j) {
        if (alg.table[alg.identity][j] != std::make_pair(j, one) ||
            alg.table[j][alg.identity] != std::make_pair(j, one))
            throw std::runtime_error("endomorphism algebra identity is not neutral");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& [kij, pij] = alg.table[i][j];
            const auto& [kji, pji] = alg.table[j][i];
            if (kij != kji || !(pij == pji))
                throw std::runtime_error("endomorphism algebra is not commutative");
            for (std::size_t k = 0; k < n; ++k) {
                // (b_i b_j) b_k vs b_i (b_j b_k)
                const auto& [kjk, pjk] = alg.table[j][k];
                const auto& [l1, p1] = alg.table[kij][k];
                const auto& [l2, p2] = alg.table[i][kjk];
                if (l1 != l2 || !(pij * p1 == pjk * p2))
                    throw std::runtime_error("endomorphism algebra is not associative");
            }
        }
}

inline EndoAlgebra embed_algebra(const EndoAlgebra& alg, unsigned order) {
    EndoAlgebra out = alg;
    out.scalar_order = order;
    for (auto& row : out.table)
        for (auto& [k, phase] : row)
            phase = phase.embed(order);
    return out;
}

// exact rank of a list of coefficient vectors via Gaussian elimination
inline std::size_t exact_rank(std::vector<std::vector<Scalar>> rows) {
    std::size_t rank = 0;
    if (rows.empty())
        return 0;
    const std::size_t cols = rows[0].size();
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col].is_zero())
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        Scalar inv = rows[rank][col].inverse();
        for (std::size_t c = col; c < cols; ++c)
            rows[rank][c] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero())
                continue;
            Scalar factor = rows[r][col];
            for (std::size_t c = col; c < cols; ++c)
                rows[r][c] -= factor * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

struct IdempotentSet {
    EndoAlgebra algebra;  // possibly embedded into a larger cyclotomic order
    std::vector<std::vector<Scalar>> idempotents;
};

// complete set of primitive orthogonal idempotents of the (commutative)
// endomorphism algebra, computed exactly by spectral splitting along every
// basis diagram and returned in a deterministic order
inline IdempotentSet primitive_idempotents(const AnnularContext& ctx, const ObjectTriple& obj) {
    EndoAlgebra base = endomorphism_algebra(ctx, obj);
    check_algebra(base);
    const std::size_t n = base.basis.size();

    // each basis diagram powers up to a phase multiple of the identity;
    // find that power and phase to size the splitting field
    struct PowerData {
        std::size_t order_k = 0;  // g^k = c * id
        Scalar phase;             // c
        unsigned root_order = 0;  // smallest r with c^r = 1
    };
    std::vector<PowerData> powers(n);
    unsigned target_order = base.scalar_order;
    for (std::size_t g = 0; g < n; ++g) {
        std::size_t idx = g;
        Scalar phase = Scalar::integer(1, base.scalar_order);
        std::size_t k = 1;
        const std::size_t bound = 4 * n + 4;
        while (idx != base.identity) {
            const auto& [next, step] = base.table[g][idx];
            phase *= step;
            idx = next;
            ++k;
            if (k > bound)
                throw std::runtime_error("basis diagram does not power to the identity");
        }
        unsigned r = 1;
        Scalar c = phase;
        while (!c.is_one()) {
            c *= phase;
            ++r;
            if (r > 4 * base.scalar_order)
                throw std::runtime_error("diagram phase is not a root of unity");
        }
        powers[g] = {k, phase, r};
        target_order = std::lcm(target_order, static_cast<unsigned>(k) * r);
    }

    IdempotentSet result{embed_algebra(base, target_order), {}};
    const EndoAlgebra& alg = result.algebra;
    Scalar one = Scalar::integer(1, target_order);

    std::vector<std::vector<Scalar>> current{alg_unit(alg)};
    for (std::size_t g = 0; g < n; ++g) {
        Scalar c = powers[g].phase.embed(target_order);
        const std::size_t k = powers[g].order_k;
        // all k-th roots w of c in the splitting field
        std::vector<Scalar> roots;
        for (unsigned t = 0; t < target_order; ++t) {
            Scalar w = Scalar::root_of_unity(target_order, t);
            Scalar wk = one;
            for (std::size_t i = 0; i < k; ++i)
                wk *= w;
            if (wk == c)
                roots.push_back(w);
        }
        if (roots.size() != k)
            throw std::logic_error("splitting field does not contain every eigenvalue candidate");

        std::vector<Scalar> gvec = alg_zero(alg);
        gvec[g] = one;
        std::vector<std::vector<Scalar>> next;
        for (const auto& P : current) {
            for (const auto& w : roots) {
                std::vector<Scalar> E = P;
                for (const auto& wp : roots) {
                    if (wp == w)
                        continue;
                    // E *= (g - wp) / (w - wp)
                    std::vector<Scalar> shifted = gvec;
                    shifted[alg.identity] -= wp;
                    E = alg_mul(alg, E, shifted);
                    Scalar denom = (w - wp).inverse();
                    for (auto& coeff : E)
                        coeff *= denom;
                }
                if (!alg_is_zero(E))
                    next.push_back(std::move(E));
            }
        }
        current = std::move(next);
    }

    // exact verification: idempotency, orthogonality, completeness, primitivity
    auto sum = alg_zero(alg);
    for (const auto& P : current)
        for (std::size_t i = 0; i < n; ++i)
            sum[i] += P[i];
    if (sum != alg_unit(alg))
        throw std::logic_error("idempotents do not sum to the identity");
    for (std::size_t i = 0; i < current.size(); ++i)
        for (std::size_t j = 0; j < current.size(); ++j) {
            auto prod = alg_mul(alg, current[i], current[j]);
            if (i == j ? prod != current[i] : !alg_is_zero(prod))
                throw std::logic_error("idempotents fail orthogonality");
        }
    for (const auto& P : current) {
        std::vector<std::vector<Scalar>> corner;
        for (std::size_t g = 0; g < n; ++g) {
            std::vector<Scalar> gvec = alg_zero(alg);
            gvec[g] = one;
            corner.push_back(alg_mul(alg, alg_mul(alg, P, gvec), P));
        }
        if (exact_rank(corner) != 1)
            throw std::logic_error("idempotent corner is not one-dimensional");
    }

    std::sort(current.begin(), current.end(), [](const auto& a, const auto& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int cmp = Scalar::compare(a[i], b[i]);
            if (cmp != 0)
                return cmp < 0;
        }
        return false;
    });
    result.idempotents = std::move(current);
    return result;
}

// morphism-space basis extraction: all diagrams from the idempotent's
// object to `target`, composed onto the idempotent, with their exact rank
struct VertexSpace {
    std::vector<AnnularElement> candidates;  // in arc-label lex order
    std::size_t rank = 0;
    AnnularElement basis_vector;  // first nonzero candidate, empty when rank 0
};

inline VertexSpace vertex_basis(const AnnularContext& ctx, const ObjectTriple& source,
                                const AnnularElement& idempotent, const ObjectTriple& target) {
    VertexSpace out;
    std::vector<AnnularKey> keys;
    for (std::size_t x = 0; x < ctx.A().size(); ++x)
        for (std::size_t y = 0; y < ctx.B().size(); ++y)
            for (std::size_t z = 0; z < ctx.C().size(); ++z) {
                AnnularKey k{source, x, y, z};
                if (annular_target(ctx, k) == target)
                    keys.push_back(k);
            }
    std::map<AnnularKey, std::size_t> column;
    std::vector<std::vector<Scalar>> rows;
    for (const AnnularKey& k : keys) {
        AnnularElement candidate =
            compose(ctx, annular_generator(ctx, source, k.x, k.y, k.z), idempotent);
        for (const auto& [key, coeff] : candidate)
            column.emplace(key, column.size());
        out.candidates.push_back(std::move(candidate));
    }
    for (const auto& candidate : out.candidates) {
        std::vector<Scalar> row(column.size(), Scalar(ctx.scalar_order()));
        for (const auto& [key, coeff] : candidate)
            row[column.at(key)] = coeff;
        rows.push_back(std::move(row));
    }
    out.rank = exact_rank(rows);
    for (const auto& candidate : out.candidates)
        if (!candidate.empty()) {
            out.basis_vector = candidate;
            break;
        }
    return out;
}

} // namespace defectchain
