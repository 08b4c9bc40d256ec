#include <defectchain/spectra.hpp>

#include <catch2/catch_amalgamated.hpp>

using defectchain::Boundary;
using defectchain::ChainOperator;
using defectchain::DiagonalizeMode;
using defectchain::Spectrum;
using defectchain::compare_spectra;
using defectchain::defect_chain_hamiltonian;
using defectchain::diagonalize;
using defectchain::free_fermion_energy;
using defectchain::golden_chain_hamiltonian;
using defectchain::reference_energy_per_site;
using defectchain::spectrum_union;
using defectchain::tfim_ground_energy_dense;
using defectchain::tfim_reference;
using defectchain::vec_zp;

namespace {

constexpr double root2 = 1.4142135623730951;

} // namespace

TEST_CASE("single-window chain has the two analytic levels") {
    Spectrum defect = diagonalize(defect_chain_hamiltonian(3, Boundary::fixed("*", "*"), 1));
    REQUIRE(defect.eigenvalues.size() == 2);
    REQUIRE(defect.eigenvalues[0] == Catch::Approx(-root2).margin(1e-12));
    REQUIRE(defect.eigenvalues[1] == Catch::Approx(0.0).margin(1e-12));

    Spectrum reference = diagonalize(tfim_reference(1));
    REQUIRE(compare_spectra(defect, reference, 1e-12).equal);
}

TEST_CASE("defect-chain spectra match the reference chain") {
    for (std::size_t k = 1; k <= 6; ++k) {
        Spectrum defect =
            diagonalize(defect_chain_hamiltonian(2 * k + 1, Boundary::fixed("*", "*"), 1));
        Spectrum reference = diagonalize(tfim_reference(k));
        auto report = compare_spectra(defect, reference, 1e-10);
        REQUIRE(report.equal);
        REQUIRE(report.max_deviation < 1e-12);

        Spectrum other =
            diagonalize(defect_chain_hamiltonian(2 * k + 1, Boundary::fixed("*", "*"), -1));
        REQUIRE(compare_spectra(defect, other, 1e-12).equal);
    }
}

TEST_CASE("free boundary decomposes into the fixed sectors") {
    for (std::size_t k = 2; k <= 5; ++k) {
        std::size_t n_edges = 2 * k + 1;
        Spectrum free_spec =
            diagonalize(defect_chain_hamiltonian(n_edges, Boundary::free_ends(), 1));
        Spectrum sectors =
            diagonalize(defect_chain_hamiltonian(n_edges, Boundary::fixed("*", "*"), 1));
        for (const char* l : {"0", "1"})
            for (const char* r : {"0", "1"})
                sectors = spectrum_union(
                    sectors,
                    diagonalize(defect_chain_hamiltonian(n_edges, Boundary::fixed(l, r), 1)));
        REQUIRE(free_spec.eigenvalues.size() == sectors.eigenvalues.size());
        auto report = compare_spectra(free_spec, sectors, 1e-10);
        REQUIRE(report.equal);
    }
}

TEST_CASE("pure chain ground state counting") {
    auto C = vec_zp(2);
    Spectrum pinned = diagonalize(golden_chain_hamiltonian(C, "1", 7, Boundary::fixed("0", "1")));
    REQUIRE(pinned.eigenvalues.size() == 1);
    REQUIRE(pinned.eigenvalues[0] == Catch::Approx(-6.0).margin(1e-12));
    REQUIRE(pinned.degeneracies.size() == 1);
    REQUIRE(pinned.degeneracies[0].second == 1);

    Spectrum ring = diagonalize(golden_chain_hamiltonian(C, "1", 6, Boundary::periodic()));
    REQUIRE(ring.eigenvalues.size() == 2);
    REQUIRE(ring.degeneracies.size() == 1);
    REQUIRE(ring.degeneracies[0].first == Catch::Approx(-6.0).margin(1e-12));
    REQUIRE(ring.degeneracies[0].second == 2);
}

TEST_CASE("comparison flags a perturbed spectrum") {
    Spectrum a = diagonalize(tfim_reference(3));
    Spectrum b = a;
    b.eigenvalues[2] += 1e-3;
    std::sort(b.eigenvalues.begin(), b.eigenvalues.end());
    auto report = compare_spectra(a, b, 1e-10);
    REQUIRE_FALSE(report.equal);
    REQUIRE(report.max_deviation == Catch::Approx(1e-3).epsilon(0.01));
    REQUIRE(report.unmatched >= 1);

    Spectrum shorter = a;
    shorter.eigenvalues.pop_back();
    REQUIRE_FALSE(compare_spectra(a, shorter, 1e-10).equal);
}

TEST_CASE("diagonalization guards its inputs") {
    defectchain::SparseEntries skew;
    skew[{0, 1}] = {1.0, 0.0};  // missing mirror entry
    REQUIRE_THROWS(diagonalize(2, skew));

    defectchain::SparseEntries oob;
    oob[{5, 5}] = {1.0, 0.0};
    REQUIRE_THROWS(diagonalize(2, oob));
}

TEST_CASE("lanczos matches the dense low end") {
    ChainOperator H = tfim_reference(5);
    Spectrum dense = diagonalize(H);
    Spectrum low = diagonalize(H, DiagonalizeMode::lanczos_lowk(3));
    REQUIRE(low.eigenvalues.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        REQUIRE(low.eigenvalues[i] == Catch::Approx(dense.eigenvalues[i]).margin(1e-8));
}

TEST_CASE("fermion oracle agrees with dense ground energies") {
    for (std::size_t n = 1; n <= 8; ++n) {
        double dense_ground = diagonalize(tfim_reference(n)).eigenvalues[0];
        REQUIRE(free_fermion_energy(n) == Catch::Approx(dense_ground).margin(1e-10));
        REQUIRE(tfim_ground_energy_dense(n) == Catch::Approx(dense_ground).margin(1e-10));
    }
    REQUIRE(free_fermion_energy(1) == Catch::Approx(-root2).margin(1e-14));
    // per-site convention differs from the assembled ground energy by the
    // boundary-window identity excess
    for (std::size_t n : {3u, 7u, 20u})
        REQUIRE(reference_energy_per_site(n) * static_cast<double>(n) ==
                Catch::Approx(free_fermion_energy(n) + (n - 1) / root2).margin(1e-11));
}

TEST_CASE("finite-size extrapolation reaches the critical density") {
    auto report = defectchain::criticality_extrapolation();
    REQUIRE(report.relative_error < 1e-3);
    REQUIRE(report.reference == Catch::Approx(-1.6074230973436536).margin(1e-14));
    // frozen regression value for the three-point Richardson estimate
    REQUIRE(report.extrapolated == Catch::Approx(-1.6074230756588588).margin(1e-9));
    REQUIRE(report.per_site_256 < report.per_site_128);
    REQUIRE(report.per_site_128 < report.per_site_64);
}
