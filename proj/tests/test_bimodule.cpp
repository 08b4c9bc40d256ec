#include <defectchain/bimodule.hpp>

#include <catch2/catch_amalgamated.hpp>

using defectchain::Bimodule;
using defectchain::Scalar;
using defectchain::catalog_bimodule;
using defectchain::catalog_names;
using defectchain::check_bimodule;

TEST_CASE("every catalog bimodule is coherent") {
    for (unsigned p : {1u, 2u, 3u, 5u}) {
        for (const auto& name : catalog_names(p)) {
            INFO("p=" << p << " name=" << name);
            Bimodule M = catalog_bimodule(p, name);
            auto report = check_bimodule(M);
            for (const auto& v : report.violations)
                INFO(v);
            REQUIRE(report.ok());
            REQUIRE(report.identities_checked > 0);
        }
    }
}

TEST_CASE("catalog shapes and actions") {
    SECTION("trivial bimodule carries the two-sided regular action") {
        Bimodule T = catalog_bimodule(3, "T");
        REQUIRE(T.size() == 9);
        std::size_t m = T.object_index("(1,2)");
        REQUIRE(T.objects[T.act_left(2, m)] == "(0,2)");
        REQUIRE(T.objects[T.act_right(m, 2)] == "(1,1)");
    }
    SECTION("one-sided bimodules shift on one side only") {
        Bimodule L = catalog_bimodule(5, "L");
        REQUIRE(L.size() == 5);
        REQUIRE(L.act_left(3, 1) == 1);
        REQUIRE(L.act_right(1, 3) == 4);
        Bimodule R = catalog_bimodule(5, "R");
        REQUIRE(R.act_left(3, 1) == 4);
        REQUIRE(R.act_right(1, 3) == 1);
    }
    SECTION("invertible twists scale the right action") {
        Bimodule X = catalog_bimodule(5, "X2");
        REQUIRE(X.act_left(3, 1) == 4);
        REQUIRE(X.act_right(1, 3) == (1 + 2 * 3) % 5);
        // X0 parses and coincides with R's action table
        Bimodule X0 = catalog_bimodule(5, "X0");
        Bimodule R = catalog_bimodule(5, "R");
        REQUIRE(X0.left_act == R.left_act);
        REQUIRE(X0.right_act == R.right_act);
    }
    SECTION("bad names are rejected") {
        REQUIRE_THROWS(catalog_bimodule(2, "Q"));
        REQUIRE_THROWS(catalog_bimodule(2, "X"));
        REQUIRE_THROWS(catalog_bimodule(2, "F"));
        REQUIRE_THROWS(catalog_bimodule(2, "F1x"));
        REQUIRE_THROWS(catalog_bimodule(0, "T"));
    }
    SECTION("parameters reduce mod p") {
        Bimodule A = catalog_bimodule(3, "F4");
        Bimodule B = catalog_bimodule(3, "F1");
        REQUIRE(A.assoc_mid == B.assoc_mid);
    }
}

TEST_CASE("one-object bimodule associators are bicharacters") {
    SECTION("the mod-2 twist is the parity sign") {
        Bimodule F1 = catalog_bimodule(2, "F1");
        REQUIRE(F1.size() == 1);
        Scalar one = Scalar::integer(1, F1.scalar_order);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                Scalar expect = (a * b) % 2 == 0 ? one : -one;
                REQUIRE(F1.assoc_c(a, 0, b) == expect);
            }
        // left and right associators stay trivial
        REQUIRE(F1.assoc_l(1, 1, 0) == one);
        REQUIRE(F1.assoc_r(0, 1, 1) == one);
    }
    SECTION("mod-3 twists take cube-root values") {
        Bimodule F = catalog_bimodule(3, "F1");
        REQUIRE(F.scalar_order == 24);
        Scalar w = Scalar::root_of_unity(24, 8);  // primitive cube root
        REQUIRE(F.assoc_c(1, 0, 1) == w);
        REQUIRE(F.assoc_c(1, 0, 2) == w * w);
        REQUIRE(F.assoc_c(2, 0, 2) == w);  // 2*2 = 4 = 1 mod 3
        Bimodule G = catalog_bimodule(3, "F2");
        REQUIRE(G.assoc_c(1, 0, 1) == w * w);
    }
    SECTION("the plain one-object bimodule has no twist") {
        Bimodule F0 = catalog_bimodule(5, "F0");
        REQUIRE(F0.assoc_mid.empty());
        REQUIRE(check_bimodule(F0).ok());
    }
}

TEST_CASE("coherence check detects broken data") {
    SECTION("a lone mixed-associator sign flip breaks a hexagon") {
        Bimodule F1 = catalog_bimodule(2, "F1");
        F1.assoc_mid[{0, 0, 1}] = -Scalar::integer(1, F1.scalar_order);
        auto report = check_bimodule(F1);
        REQUIRE_FALSE(report.ok());
        bool hexagon = false;
        for (const auto& v : report.violations)
            hexagon = hexagon || v.find("hexagon") != std::string::npos;
        REQUIRE(hexagon);
    }
    SECTION("clearing the top sign lands on the untwisted solution") {
        Bimodule F1 = catalog_bimodule(2, "F1");
        F1.assoc_mid.erase({1, 0, 1});  // now identical to F0
        REQUIRE(check_bimodule(F1).ok());
    }
    SECTION("broken action tables are flagged") {
        Bimodule L = catalog_bimodule(2, "L");
        L.right_act[0] = {0, 0};  // no longer a bijection
        auto report = check_bimodule(L);
        REQUIRE_FALSE(report.ok());
    }
    SECTION("unit-violating associator entries are flagged") {
        Bimodule F0 = catalog_bimodule(2, "F0");
        F0.assoc_mid[{0, 0, 0}] = -Scalar::integer(1, F0.scalar_order);
        REQUIRE_FALSE(check_bimodule(F0).ok());
    }
    SECTION("malformed shapes throw") {
        Bimodule L = catalog_bimodule(2, "L");
        L.left_act.pop_back();
        REQUIRE_THROWS(check_bimodule(L));
    }
}

TEST_CASE("catalog name list covers the distinct entries") {
    auto names = catalog_names(2);
    REQUIRE(names == std::vector<std::string>{"T", "L", "R", "F0", "F1", "X1"});
    REQUIRE(catalog_names(1) == std::vector<std::string>{"T", "L", "R", "F0"});
    REQUIRE(catalog_names(5).size() == 3 + 5 + 4);
}
