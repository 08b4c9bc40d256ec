#include <defectchain/tube.hpp>

#include <catch2/catch_amalgamated.hpp>

using defectchain::AnnularContext;
using defectchain::AnnularElement;
using defectchain::AnnularKey;
using defectchain::Bimodule;
using defectchain::ObjectTriple;
using defectchain::Scalar;
using defectchain::annular_generator;
using defectchain::annular_target;
using defectchain::catalog_bimodule;
using defectchain::compose;
using defectchain::dagger;
using defectchain::make_annular_context;

namespace {

AnnularContext twist_context_p2() {
    return make_annular_context(catalog_bimodule(2, "F1"), catalog_bimodule(2, "F1"),
                                catalog_bimodule(2, "X1"));
}

// the four basis loops of the twist context's endomorphism algebra
AnnularElement loop_diagram(const AnnularContext& ctx, std::size_t a, std::size_t b) {
    return annular_generator(ctx, ObjectTriple{0, 0, 0}, b, a, b);
}

AnnularElement expected_idempotent(const AnnularContext& ctx, std::size_t x, std::size_t y) {
    AnnularElement acc;
    Scalar quarter = Scalar::from_rational(defectchain::Rational(1, 4), ctx.scalar_order());
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            Scalar sign = (a * x + b * y) % 2 == 0 ? quarter : -quarter;
            acc = add(std::move(acc), scale(sign, loop_diagram(ctx, a, b)));
        }
    return acc;
}

} // namespace

TEST_CASE("annular context validation") {
    REQUIRE_NOTHROW(twist_context_p2());
    // mixed group orders are rejected
    REQUIRE_THROWS(make_annular_context(catalog_bimodule(2, "F1"), catalog_bimodule(3, "F1"),
                                        catalog_bimodule(2, "X1")));
}

TEST_CASE("diagram targets follow the three strand actions") {
    AnnularContext ctx = twist_context_p2();
    // p-strand of the invertible twist moves by x + z
    REQUIRE(annular_target(ctx, AnnularKey{{0, 0, 0}, 1, 0, 0}) == ObjectTriple{0, 0, 1});
    REQUIRE(annular_target(ctx, AnnularKey{{0, 0, 0}, 1, 1, 1}) == ObjectTriple{0, 0, 0});
    REQUIRE(annular_target(ctx, AnnularKey{{0, 0, 1}, 0, 0, 1}) == ObjectTriple{0, 0, 0});

    auto classes = object_classes(ctx);
    REQUIRE(classes.size() == 1);
    REQUIRE(classes[0] == std::vector<ObjectTriple>{{0, 0, 0}, {0, 0, 1}});
}

TEST_CASE("loop diagrams obey the group law with unit phases") {
    AnnularContext ctx = twist_context_p2();
    Scalar one = Scalar::integer(1, ctx.scalar_order());
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c)
                for (std::size_t d = 0; d < 2; ++d) {
                    AnnularElement prod =
                        compose(ctx, loop_diagram(ctx, c, d), loop_diagram(ctx, a, b));
                    REQUIRE(prod.size() == 1);
                    AnnularKey expect{{0, 0, 0}, (b + d) % 2, (a + c) % 2, (b + d) % 2};
                    REQUIRE(prod.count(expect) == 1);
                    REQUIRE(prod.at(expect) == one);
                }
}

TEST_CASE("gluing a general annulus onto a loop gives the sign phase") {
    // outer (alpha, beta, gamma) onto inner loop (b-arc west/east, a-arc
    // south) multiplies by (-1)^(a(alpha+gamma)) and adds the labels
    AnnularContext ctx = twist_context_p2();
    for (std::size_t alpha = 0; alpha < 2; ++alpha)
        for (std::size_t beta = 0; beta < 2; ++beta)
            for (std::size_t gamma = 0; gamma < 2; ++gamma)
                for (std::size_t a = 0; a < 2; ++a)
                    for (std::size_t b = 0; b < 2; ++b) {
                        AnnularElement outer = annular_generator(
                            ctx, annular_target(ctx, AnnularKey{{0, 0, 0}, b, a, b}), alpha, beta,
                            gamma);
                        AnnularElement prod = compose(ctx, outer, loop_diagram(ctx, a, b));
                        REQUIRE(prod.size() == 1);
                        AnnularKey expect{
                            {0, 0, 0}, (alpha + b) % 2, (a + beta) % 2, (b + gamma) % 2};
                        Scalar sign = Scalar::integer(a * (alpha + gamma) % 2 == 0 ? 1 : -1,
                                                      ctx.scalar_order());
                        REQUIRE(prod.count(expect) == 1);
                        REQUIRE(prod.at(expect) == sign);
                    }
}

TEST_CASE("composition requires matching boundaries") {
    AnnularContext ctx = twist_context_p2();
    AnnularElement at_zero = annular_generator(ctx, {0, 0, 0}, 0, 0, 0);
    AnnularElement at_one = annular_generator(ctx, {0, 0, 1}, 0, 0, 0);
    REQUIRE_THROWS(compose(ctx, at_one, at_zero));
    REQUIRE_NOTHROW(compose(ctx, at_zero, at_zero));
}

TEST_CASE("composition is associative across twisted contexts") {
    SECTION("order-three twists with distinct middle modules") {
        AnnularContext ctx = make_annular_context(
            catalog_bimodule(3, "F1"), catalog_bimodule(3, "F2"), catalog_bimodule(3, "X1"));
        ObjectTriple s{0, 0, 0};
        const std::size_t g = 3;
        for (std::size_t x1 = 0; x1 < g; ++x1)
            for (std::size_t y1 = 0; y1 < g; ++y1)
                for (std::size_t z1 = 0; z1 < g; ++z1) {
                    AnnularElement d1 = annular_generator(ctx, s, x1, y1, z1);
                    ObjectTriple t1 = annular_target(ctx, d1.begin()->first);
                    for (std::size_t x2 = 0; x2 < g; ++x2)
                        for (std::size_t y2 = 0; y2 < g; ++y2)
                            for (std::size_t z2 = 0; z2 < g; ++z2) {
                                AnnularElement d2 = annular_generator(ctx, t1, x2, y2, z2);
                                AnnularElement d21 = compose(ctx, d2, d1);
                                ObjectTriple t2 = annular_target(ctx, d2.begin()->first);
                                for (std::size_t x3 = 0; x3 < g; ++x3)
                                    for (std::size_t y3 = 0; y3 < g; ++y3)
                                        for (std::size_t z3 = 0; z3 < g; ++z3) {
                                            AnnularElement d3 =
                                                annular_generator(ctx, t2, x3, y3, z3);
                                            REQUIRE(compose(ctx, d3, d21) ==
                                                    compose(ctx, compose(ctx, d3, d2), d1));
                                        }
                            }
                }
    }
    SECTION("a regauged module with nontrivial left associator") {
        Bimodule gauged = catalog_bimodule(2, "F1");
        gauged.assoc_left[{1, 1, 0}] = -Scalar::integer(1, gauged.scalar_order);
        REQUIRE(check_bimodule(gauged).ok());
        AnnularContext ctx = make_annular_context(gauged, catalog_bimodule(2, "F1"),
                                                  catalog_bimodule(2, "X1"));
        ObjectTriple s{0, 0, 0};
        for (std::size_t k1 = 0; k1 < 8; ++k1)
            for (std::size_t k2 = 0; k2 < 8; ++k2)
                for (std::size_t k3 = 0; k3 < 8; ++k3) {
                    AnnularElement d1 = annular_generator(ctx, s, k1 & 1, (k1 >> 1) & 1, k1 >> 2);
                    ObjectTriple t1 = annular_target(ctx, d1.begin()->first);
                    AnnularElement d2 =
                        annular_generator(ctx, t1, k2 & 1, (k2 >> 1) & 1, k2 >> 2);
                    ObjectTriple t2 = annular_target(ctx, d2.begin()->first);
                    AnnularElement d3 =
                        annular_generator(ctx, t2, k3 & 1, (k3 >> 1) & 1, k3 >> 2);
                    REQUIRE(compose(ctx, d3, compose(ctx, d2, d1)) ==
                            compose(ctx, compose(ctx, d3, d2), d1));
                }
    }
}

TEST_CASE("adjoint is an involutive antihomomorphism") {
    AnnularContext ctx = make_annular_context(catalog_bimodule(3, "F1"), catalog_bimodule(3, "F2"),
                                              catalog_bimodule(3, "X1"));
    ObjectTriple s{0, 0, 0};
    const std::size_t g = 3;
    for (std::size_t x1 = 0; x1 < g; ++x1)
        for (std::size_t y1 = 0; y1 < g; ++y1)
            for (std::size_t z1 = 0; z1 < g; ++z1) {
                AnnularElement d1 = annular_generator(ctx, s, x1, y1, z1);
                REQUIRE(dagger(ctx, dagger(ctx, d1)) == d1);
                ObjectTriple t1 = annular_target(ctx, d1.begin()->first);
                for (std::size_t x2 = 0; x2 < g; ++x2)
                    for (std::size_t y2 = 0; y2 < g; ++y2)
                        for (std::size_t z2 = 0; z2 < g; ++z2) {
                            AnnularElement d2 = annular_generator(ctx, t1, x2, y2, z2);
                            REQUIRE(dagger(ctx, compose(ctx, d2, d1)) ==
                                    compose(ctx, dagger(ctx, d1), dagger(ctx, d2)));
                        }
            }

    // scaling conjugates: (c D)^dag = conj(c) D^dag
    Scalar i = Scalar::root_of_unity(24, 6);
    AnnularElement d = annular_generator(ctx, s, 1, 2, 1);
    REQUIRE(dagger(ctx, scale(i, d)) == scale(i.conj(), dagger(ctx, d)));

    // unsupported for nontrivial left/right associators
    Bimodule gauged = catalog_bimodule(2, "F1");
    gauged.assoc_left[{1, 1, 0}] = -Scalar::integer(1, gauged.scalar_order);
    AnnularContext bad = make_annular_context(gauged, catalog_bimodule(2, "F1"),
                                              catalog_bimodule(2, "X1"));
    REQUIRE_THROWS(dagger(bad, annular_generator(bad, s, 0, 0, 0)));
}

TEST_CASE("endomorphism algebra of the twist context") {
    AnnularContext ctx = twist_context_p2();
    auto alg = endomorphism_algebra(ctx, ObjectTriple{0, 0, 0});
    REQUIRE(alg.basis.size() == 4);
    REQUIRE_NOTHROW(check_algebra(alg));
    // basis keys are the loops (b, a, b)
    for (const auto& k : alg.basis)
        REQUIRE(k.x == k.z);
}

TEST_CASE("primitive idempotents of the twist context are the four characters") {
    AnnularContext ctx = twist_context_p2();
    auto set = primitive_idempotents(ctx, ObjectTriple{0, 0, 0});
    REQUIRE(set.idempotents.size() == 4);
    REQUIRE(set.algebra.scalar_order == 8);

    std::vector<AnnularElement> expected;
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            expected.push_back(expected_idempotent(ctx, x, y));
    std::vector<AnnularElement> got;
    for (const auto& v : set.idempotents)
        got.push_back(element_from_vector(set.algebra, v));
    for (const auto& e : expected)
        REQUIRE(std::count(got.begin(), got.end(), e) == 1);

    // determinism: a second run produces the identical ordered list
    auto again = primitive_idempotents(ctx, ObjectTriple{0, 0, 0});
    REQUIRE(again.idempotents == set.idempotents);

    // adjoint fixes every idempotent
    for (const auto& e : got)
        REQUIRE(dagger(ctx, e) == e);
}

TEST_CASE("idempotents split a plain group algebra") {
    // middle strand over the trivial bimodule: dimension-2 endomorphism
    // algebra isomorphic to the group algebra of the south arc
    AnnularContext ctx = make_annular_context(catalog_bimodule(2, "F1"), catalog_bimodule(2, "F1"),
                                              catalog_bimodule(2, "T"));
    auto classes = object_classes(ctx);
    REQUIRE(classes.size() == 1);
    REQUIRE(classes[0].size() == 4);
    auto alg = endomorphism_algebra(ctx, classes[0][0]);
    REQUIRE(alg.basis.size() == 2);
    auto set = primitive_idempotents(ctx, classes[0][0]);
    REQUIRE(set.idempotents.size() == 2);
}

TEST_CASE("vertex spaces of the twist context have rank one") {
    AnnularContext ctx = twist_context_p2();
    auto set = primitive_idempotents(ctx, ObjectTriple{0, 0, 0});

    // locate the trivial-character idempotent: every loop acts as +1
    AnnularElement p00;
    for (const auto& v : set.idempotents) {
        AnnularElement cand = element_from_vector(set.algebra, v);
        bool trivial = true;
        for (std::size_t a = 0; a < 2 && trivial; ++a)
            for (std::size_t b = 0; b < 2 && trivial; ++b)
                trivial = compose(ctx, loop_diagram(ctx, a, b), cand) == cand;
        if (trivial)
            p00 = cand;
    }
    REQUIRE_FALSE(p00.empty());
    REQUIRE(p00 == expected_idempotent(ctx, 0, 0));

    for (std::size_t alpha = 0; alpha < 2; ++alpha) {
        auto space = vertex_basis(ctx, ObjectTriple{0, 0, 0}, p00, ObjectTriple{0, 0, alpha});
        REQUIRE(space.candidates.size() == 4);
        REQUIRE(space.rank == 1);
        // canonical vector: quarter-sum with alternating west-arc sign
        AnnularElement expect;
        Scalar quarter = Scalar::from_rational(defectchain::Rational(1, 4), ctx.scalar_order());
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                Scalar sign = (a * alpha) % 2 == 0 ? quarter : -quarter;
                expect = add(std::move(expect),
                             scale(sign, annular_generator(ctx, {0, 0, 0}, (alpha + b) % 2, a, b)));
            }
        REQUIRE(space.basis_vector == expect);
    }
}
