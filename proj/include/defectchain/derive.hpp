#pragma once

// Derives the fusion category generated by a single dynamical defect over
// the order-two invertible theory. Every number in the output is read off
// the defect's annular diagram algebra: the two-strand families come from
// the bimodule associators, the mixed defect families from trace pairings
// of vertex vectors, and the defect-square block from pentagon covariance
// plus unitary normalization (kappa picks the square-root sign). Nothing
// about the answer is assumed up front; the assembled table is re-checked
// against the pentagon identity before it is returned.

#include <defectchain/tube.hpp>

namespace defectchain {

inline FusionCategory derive_extended_fsymbols(const FusionCategory& base, const Bimodule& defect,
                                               int kappa) {
    if (kappa != 1 && kappa != -1)
        throw std::runtime_error("kappa must be +1 or -1");
    base.validate();
    if (base.size() != 2 || !is_pointed(base) || base.unit != 0)
        throw std::runtime_error(
            "unsupported: acting category must be the order-two pointed category with the unit "
            "listed first");
    for (const auto& [key, value] : base.fsymbols)
        if (!value.is_one())
            throw std::runtime_error("unsupported: acting category must have a trivial associator");
    if (!defect.left_cat || !defect.right_cat)
        throw std::runtime_error("defect bimodule is missing its acting categories");
    if (!detail::same_group(*defect.left_cat, base) ||
        !detail::same_group(*defect.right_cat, base))
        throw std::runtime_error("unsupported: defect must be a bimodule over the acting category");
    for (const auto* side : {defect.left_cat.get(), defect.right_cat.get()})
        for (const auto& [key, value] : side->fsymbols)
            if (!value.is_one())
                throw std::runtime_error(
                    "unsupported: acting category must have a trivial associator");
    if (defect.size() != 1)
        throw std::runtime_error("unsupported: defect bimodule must have a single object");
    if (!defect.assoc_left.empty() || !defect.assoc_right.empty())
        throw std::runtime_error(
            "unsupported: defect bimodule must have strict one-sided associators");
    if (base.scalar_order != defect.scalar_order)
        throw std::runtime_error("acting category and defect disagree on scalar order");
    const unsigned order = defect.scalar_order;
    if (order % 8 != 0)
        throw std::runtime_error("unsupported: scalar order must allow sqrt(2)");
    if (!check_bimodule(defect).ok())
        throw std::runtime_error("defect bimodule fails coherence");

    // invertible twist line used as the third strand of the annulus
    Bimodule twist;
    twist.name = "twist";
    twist.left_cat = defect.left_cat;
    twist.right_cat = defect.right_cat;
    twist.objects = {"0", "1"};
    twist.left_act = {{0, 1}, {1, 0}};
    twist.right_act = {{0, 1}, {1, 0}};
    twist.scalar_order = order;

    AnnularContext ctx = make_annular_context(defect, defect, twist);
    const ObjectTriple rep{0, 0, 0};

    // the character-free idempotent: fixed by every loop diagram
    IdempotentSet set = primitive_idempotents(ctx, rep);
    AnnularElement unit_idem;
    std::size_t found = 0;
    for (const auto& vec : set.idempotents) {
        AnnularElement e = element_from_vector(set.algebra, vec);
        bool fixed = true;
        for (std::size_t a = 0; a < 2 && fixed; ++a)
            for (std::size_t b = 0; b < 2 && fixed; ++b)
                fixed = compose(ctx, annular_generator(ctx, rep, b, a, b), e) == e;
        if (fixed) {
            unit_idem = e;
            ++found;
        }
    }
    if (found != 1)
        throw std::logic_error("expected a unique character-free idempotent");

    // one vertex vector per invertible sector of the defect square
    std::array<AnnularElement, 2> v;
    for (std::size_t alpha = 0; alpha < 2; ++alpha) {
        VertexSpace space = vertex_basis(ctx, rep, unit_idem, ObjectTriple{0, 0, alpha});
        if (space.rank != 1)
            throw std::runtime_error(
                "unsupported: defect square does not decompose with multiplicity one");
        v[alpha] = space.basis_vector;
    }

    auto trace = [&](const AnnularElement& e) {
        auto it = e.find(AnnularKey{rep, 0, 0, 0});
        return it == e.end() ? Scalar(order) : it->second;
    };
    std::array<Scalar, 2> norm{Scalar(order), Scalar(order)};
    for (std::size_t alpha = 0; alpha < 2; ++alpha) {
        norm[alpha] = trace(compose(ctx, dagger(ctx, v[alpha]), v[alpha]));
        if (norm[alpha].is_zero())
            throw std::logic_error("vertex vector has zero norm");
    }
    // pairing of v_{target} against an arc-labelled annulus glued onto v_b
    auto paired = [&](std::size_t x, std::size_t y, std::size_t z, std::size_t b,
                      std::size_t target) {
        AnnularElement middle = annular_generator(ctx, ObjectTriple{0, 0, b}, x, y, z);
        Scalar value = trace(compose(ctx, dagger(ctx, v[target]), compose(ctx, middle, v[b])));
        return value / norm[target];
    };

    // the eight families of the extended table, indexed by group labels
    auto fam1 = [&](std::size_t a, std::size_t b, std::size_t c) {
        return base.fsym(a, b, c, (a + b + c) % 2, (a + b) % 2, (b + c) % 2);
    };
    auto fam2 = [&](std::size_t a, std::size_t b) { return defect.assoc_l(a, b, 0); };
    auto fam3 = [&](std::size_t a, std::size_t b) { return defect.assoc_c(a, 0, b); };
    auto fam4 = [&](std::size_t a, std::size_t b) { return defect.assoc_r(0, a, b); };
    auto fam5 = [&](std::size_t a, std::size_t b) { return paired(a, 0, 0, b, (a + b) % 2); };
    auto fam6 = [&](std::size_t a, std::size_t b) { return paired(0, a, 0, b, b); };
    auto fam7 = [&](std::size_t a, std::size_t b) { return paired(0, 0, a, b, (a + b) % 2); };

    // defect-square block up to overall normalization, grown from the two
    // pentagon instances that relate neighbouring entries
    std::array<std::array<Scalar, 2>, 2> rho{
        {{Scalar(order), Scalar(order)}, {Scalar(order), Scalar(order)}}};
    std::array<std::array<bool, 2>, 2> known{{{false, false}, {false, false}}};
    rho[0][0] = Scalar::integer(1, order);
    known[0][0] = true;
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t f = 0; f < 2; ++f)
                for (std::size_t k = 0; k < 2; ++k) {
                    if (!known[f][k])
                        continue;
                    std::size_t kx = (k + x) % 2;
                    if (!known[f][kx]) {
                        rho[f][kx] = fam3(f, x) * rho[f][k] / (fam4(kx, x) * fam7(x, kx));
                        known[f][kx] = true;
                        grew = true;
                    }
                    std::size_t fx = (f + x) % 2;
                    if (!known[fx][k]) {
                        rho[fx][k] = fam3(x, k) * rho[f][k] / (fam5(x, fx) * fam2(x, fx));
                        known[fx][k] = true;
                        grew = true;
                    }
                }
    }
    for (const auto& row : known)
        for (bool flag : row)
            if (!flag)
                throw std::logic_error("pentagon recurrence left an entry undetermined");
    // every instance of both pentagon families must now hold
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t f = 0; f < 2; ++f)
            for (std::size_t k = 0; k < 2; ++k) {
                std::size_t kx = (k + x) % 2;
                if (fam3(f, x) * rho[f][k] != rho[f][kx] * fam4(kx, x) * fam7(x, kx))
                    throw std::logic_error("derived tables are not pentagon-covariant");
                std::size_t fx = (f + x) % 2;
                if (fam3(x, k) * rho[f][k] != rho[fx][k] * fam5(x, fx) * fam2(x, fx))
                    throw std::logic_error("derived tables are not pentagon-covariant");
            }

    // unitary row normalization fixes |t|; kappa picks the sign
    Scalar two = Scalar::integer(2, order);
    for (std::size_t a = 0; a < 2; ++a) {
        Scalar row_sum(order);
        for (std::size_t b = 0; b < 2; ++b)
            row_sum += rho[a][b] * rho[a][b].conj();
        if (row_sum != two)
            throw std::runtime_error("unsupported: cannot normalize the defect-square block");
    }
    Scalar t = Scalar::integer(kappa, order) / Scalar::sqrt2(order);

    FusionCategory out;
    out.scalar_order = order;
    out.labels = base.labels;
    for (const auto& label : base.labels)
        if (label == "*")
            throw std::runtime_error("unsupported: acting category already uses the defect label");
    out.labels.push_back("*");
    out.unit = 0;
    const std::size_t s = 2;
    out.fusion.assign(3, std::vector<std::vector<std::size_t>>(3));
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            out.fusion[a][b] = {detail::mul(base, a, b)};
    for (std::size_t a = 0; a < 2; ++a) {
        out.fusion[a][s] = {s};
        out.fusion[s][a] = {s};
    }
    out.fusion[s][s] = {0, 1};
    out.qdim = {base.qdim.at(0), base.qdim.at(1), Scalar::sqrt2(order)};
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t c = 0; c < 2; ++c)
                out.fsymbols[{a, b, c, (a + b + c) % 2, (a + b) % 2, (b + c) % 2}] =
                    fam1(a, b, c);
            out.fsymbols[{a, b, s, s, (a + b) % 2, s}] = fam2(a, b);
            out.fsymbols[{a, s, b, s, s, s}] = fam3(a, b);
            out.fsymbols[{s, a, b, s, s, (a + b) % 2}] = fam4(a, b);
            out.fsymbols[{a, s, s, (a + b) % 2, s, b}] = fam5(a, b);
            out.fsymbols[{s, a, s, b, s, s}] = fam6(a, b);
            out.fsymbols[{s, s, a, (a + b) % 2, b, s}] = fam7(a, b);
            out.fsymbols[{s, s, s, s, a, b}] = rho[a][b] * t;
        }
    out.validate();
    if (!check_pentagon(out).ok())
        throw std::runtime_error("derived F-symbols violate the pentagon identity");
    return out;
}

} // namespace defectchain
