#include <defectchain/derive.hpp>

#include <catch2/catch_amalgamated.hpp>

using defectchain::Bimodule;
using defectchain::FusionCategory;
using defectchain::Scalar;
using defectchain::catalog_bimodule;
using defectchain::derive_extended_fsymbols;
using defectchain::ising;
using defectchain::vec_zp;

namespace {

void require_equal_categories(const FusionCategory& got, const FusionCategory& want) {
    REQUIRE(got.labels == want.labels);
    REQUIRE(got.unit == want.unit);
    REQUIRE(got.fusion == want.fusion);
    REQUIRE(got.scalar_order == want.scalar_order);
    REQUIRE(got.qdim.size() == want.qdim.size());
    for (std::size_t i = 0; i < got.qdim.size(); ++i)
        REQUIRE(got.qdim[i] == want.qdim[i]);
    REQUIRE(got.fsymbols.size() == want.fsymbols.size());
    for (const auto& [key, value] : want.fsymbols) {
        REQUIRE(got.fsymbols.count(key) == 1);
        REQUIRE(got.fsymbols.at(key) == value);
    }
}

} // namespace

TEST_CASE("sign defect over the order-two theory derives the extended table") {
    FusionCategory base = vec_zp(2);
    Bimodule defect = catalog_bimodule(2, "F1");
    for (int kappa : {1, -1}) {
        FusionCategory got = derive_extended_fsymbols(base, defect, kappa);
        require_equal_categories(got, ising(kappa));
        REQUIRE_NOTHROW(got.validate());
        REQUIRE(check_pentagon(got).ok());
    }
}

TEST_CASE("the two sign choices differ exactly on the defect-square block") {
    FusionCategory base = vec_zp(2);
    Bimodule defect = catalog_bimodule(2, "F1");
    FusionCategory plus = derive_extended_fsymbols(base, defect, 1);
    FusionCategory minus = derive_extended_fsymbols(base, defect, -1);
    const std::size_t s = 2;
    for (const auto& [key, value] : plus.fsymbols) {
        bool square = key[0] == s && key[1] == s && key[2] == s;
        if (square)
            REQUIRE(minus.fsymbols.at(key) == -value);
        else
            REQUIRE(minus.fsymbols.at(key) == value);
    }
}

TEST_CASE("derivation is deterministic") {
    FusionCategory base = vec_zp(2);
    Bimodule defect = catalog_bimodule(2, "F1");
    FusionCategory a = derive_extended_fsymbols(base, defect, 1);
    FusionCategory b = derive_extended_fsymbols(base, defect, 1);
    require_equal_categories(a, b);
}

TEST_CASE("derivation rejects unsupported inputs") {
    FusionCategory base = vec_zp(2);
    Bimodule defect = catalog_bimodule(2, "F1");

    SECTION("bad sign parameter") {
        REQUIRE_THROWS(derive_extended_fsymbols(base, defect, 0));
        REQUIRE_THROWS(derive_extended_fsymbols(base, defect, 2));
    }
    SECTION("sign-free defect has a degenerate square block") {
        REQUIRE_THROWS(derive_extended_fsymbols(base, catalog_bimodule(2, "F0"), 1));
    }
    SECTION("multi-object bimodules") {
        REQUIRE_THROWS(derive_extended_fsymbols(base, catalog_bimodule(2, "T"), 1));
        REQUIRE_THROWS(derive_extended_fsymbols(base, catalog_bimodule(2, "L"), 1));
    }
    SECTION("wrong group order") {
        REQUIRE_THROWS(derive_extended_fsymbols(vec_zp(3, 24), catalog_bimodule(3, "F1"), 1));
    }
    SECTION("twisted acting category") {
        FusionCategory twisted = vec_zp(2);
        twisted.fsymbols[{1, 1, 1, 1, 0, 0}] = -Scalar::integer(1);
        REQUIRE(check_pentagon(twisted).ok());
        REQUIRE_THROWS(derive_extended_fsymbols(twisted, defect, 1));
    }
    SECTION("scalar order mismatch") {
        REQUIRE_THROWS(derive_extended_fsymbols(vec_zp(2, 16), defect, 1));
    }
    SECTION("regauged defect with lax one-sided associator") {
        Bimodule gauged = defect;
        gauged.assoc_left[{1, 1, 0}] = -Scalar::integer(1);
        REQUIRE(check_bimodule(gauged).ok());
        REQUIRE_THROWS(derive_extended_fsymbols(base, gauged, 1));
    }
}
