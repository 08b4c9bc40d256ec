#pragma once

// End-to-end verification battery: one self-timed runner per headline claim,
// shared by the acceptance executable and the `reproduce` subcommand.  A
// runner passes only if its substance holds AND it finishes within its
// documented wall-clock budget.

#include <defectchain/derive.hpp>
#include <defectchain/spectra.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace defectchain {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    double budget = 0.0;  // 0 = untimed
    std::string detail;
};

namespace detail {

// worker-count bound: DEFECTCHAIN_THREADS if set (>=1), else the hardware
inline std::size_t thread_budget() {
    std::size_t budget = std::thread::hardware_concurrency();
    if (budget == 0)
        budget = 1;
    if (const char* env = std::getenv("DEFECTCHAIN_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            budget = static_cast<std::size_t>(v);
    }
    return budget;
}

// index-stealing pool; each job writes only its own slot, so results are
// deterministic regardless of scheduling
inline void run_parallel(const std::vector<std::function<void()>>& jobs) {
    const std::size_t workers = std::min(thread_budget(), jobs.size());
    if (workers <= 1) {
        for (const auto& job : jobs)
            job();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
            try {
                jobs[i]();
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true))
                    first_error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w + 1 < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    if (failed.load())
        throw std::runtime_error(first_error);
}

template <typename Body>
CriterionResult timed_criterion(int id, std::string name, double budget, Body&& body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.budget = budget;
    auto start = std::chrono::steady_clock::now();
    try {
        r.detail = body();
        r.pass = true;
    } catch (const std::exception& e) {
        r.detail = e.what();
        r.pass = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.pass && budget > 0.0 && r.seconds >= budget) {
        r.pass = false;
        r.detail += " [exceeded " + std::to_string(budget) + " s budget]";
    }
    return r;
}

inline void require(bool condition, const std::string& message) {
    if (!condition)
        throw std::runtime_error(message);
}

} // namespace detail

// 1. every shipped F-symbol table satisfies the pentagon identity exactly,
//    and a single seeded sign flip is detected
inline CriterionResult criterion_pentagon() {
    return detail::timed_criterion(1, "pentagon identities", 1.0, [] {
        std::size_t instances = 0;
        for (unsigned p : {1u, 2u, 3u, 5u}) {
            auto report = check_pentagon(vec_zp(p));
            detail::require(report.ok(), "pentagon fails for the pointed Z/" + std::to_string(p) +
                                             " category");
            instances += report.instances_checked;
        }
        for (int kappa : {1, -1}) {
            auto report = check_pentagon(ising(kappa));
            detail::require(report.ok(), "pentagon fails for the extended category at kappa=" +
                                             std::to_string(kappa));
            instances += report.instances_checked;
        }
        FusionCategory mutated = ising(1);
        auto it = mutated.fsymbols.find({1, 2, 1, 2, 2, 2});
        detail::require(it != mutated.fsymbols.end(), "mutation target entry is missing");
        it->second = -it->second;
        detail::require(!check_pentagon(mutated).ok(), "seeded sign flip went undetected");
        std::ostringstream os;
        os << "6 tables pass (" << instances << " instances); seeded sign flip detected";
        return os.str();
    });
}

// 2. the full invertible-bimodule catalog is coherent, and the sign defect's
//    mixed associator is the parity character
inline CriterionResult criterion_bimodules() {
    return detail::timed_criterion(2, "bimodule coherence", 1.0, [] {
        std::size_t modules = 0, identities = 0;
        for (unsigned p : {2u, 3u, 5u}) {
            for (const std::string& name : catalog_names(p)) {
                auto report = check_bimodule(catalog_bimodule(p, name));
                detail::require(report.ok(), "coherence fails for " + name + " at p=" +
                                                 std::to_string(p));
                ++modules;
                identities += report.identities_checked;
            }
        }
        Bimodule sign_defect = catalog_bimodule(2, "F1");
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                Scalar expect = Scalar::integer((a * b) % 2 == 0 ? 1 : -1,
                                                sign_defect.scalar_order);
                detail::require(sign_defect.assoc_c(a, 0, b) == expect,
                                "mixed associator of the sign defect is not the parity character");
            }
        std::ostringstream os;
        os << modules << " catalog bimodules coherent (" << identities
           << " identities); sign-defect mixed associator equals the parity character";
        return os.str();
    });
}

// 3. the defect-pair annular algebra: dimension 4, commutative, group law
//    on loops, and exactly the four character idempotents
inline CriterionResult criterion_tube_algebra() {
    return detail::timed_criterion(3, "annular endomorphism algebra", 1.0, [] {
        AnnularContext ctx = make_annular_context(catalog_bimodule(2, "F1"),
                                                  catalog_bimodule(2, "F1"),
                                                  catalog_bimodule(2, "X1"));
        const ObjectTriple source{0, 0, 0};
        EndoAlgebra alg = endomorphism_algebra(ctx, source);
        detail::require(alg.basis.size() == 4, "endomorphism algebra dimension is not 4");
        check_algebra(alg);  // throws unless unital, associative, commutative

        auto loop = [&](std::size_t a, std::size_t b) {
            return annular_generator(ctx, source, b, a, b);
        };
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t c = 0; c < 2; ++c)
                    for (std::size_t d = 0; d < 2; ++d)
                        detail::require(compose(ctx, loop(a, b), loop(c, d)) ==
                                            loop((a + c) % 2, (b + d) % 2),
                                        "loop composition does not follow the group law");

        IdempotentSet ids = primitive_idempotents(ctx, source);
        detail::require(ids.idempotents.size() == 4, "expected exactly 4 primitive idempotents");
        Scalar quarter = Scalar::from_rational(Rational(1, 4), ids.algebra.scalar_order);
        std::vector<bool> matched(4, false);
        for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t y = 0; y < 2; ++y) {
                AnnularElement expect;
                for (std::size_t a = 0; a < 2; ++a)
                    for (std::size_t b = 0; b < 2; ++b) {
                        Scalar c = (a * x + b * y) % 2 == 0 ? quarter : -quarter;
                        expect = add(std::move(expect), scale(c, loop(a, b)));
                    }
                std::size_t hits = 0;
                for (std::size_t i = 0; i < 4; ++i)
                    if (!matched[i] &&
                        element_from_vector(ids.algebra, ids.idempotents[i]) == expect) {
                        matched[i] = true;
                        ++hits;
                    }
                detail::require(hits == 1, "a character idempotent is missing or duplicated");
            }
        return std::string("dimension 4, commutative, loop group law exact, "
                           "4 primitive idempotents match the character projectors");
    });
}

// 4. the extended F-symbol table derived from the sign defect equals the
//    shipped two-solution table entry for entry, in exact arithmetic
inline CriterionResult criterion_derivation() {
    return detail::timed_criterion(4, "extended F-symbol derivation", 5.0, [] {
        std::size_t entries = 0;
        for (int kappa : {1, -1}) {
            FusionCategory derived =
                derive_extended_fsymbols(vec_zp(2), catalog_bimodule(2, "F1"), kappa);
            FusionCategory expect = ising(kappa);
            detail::require(derived.labels == expect.labels && derived.unit == expect.unit &&
                                derived.fusion == expect.fusion &&
                                derived.scalar_order == expect.scalar_order,
                            "derived category skeleton differs");
            for (std::size_t i = 0; i < expect.qdim.size(); ++i)
                detail::require(derived.qdim[i] == expect.qdim[i],
                                "derived quantum dimensions differ");
            detail::require(derived.fsymbols.size() == expect.fsymbols.size(),
                            "derived table has a different entry count");
            for (const auto& [key, value] : expect.fsymbols) {
                auto it = derived.fsymbols.find(key);
                detail::require(it != derived.fsymbols.end() && it->second == value,
                                "derived table disagrees with the reference at an entry");
            }
            detail::require(check_pentagon(derived).ok(), "derived table violates the pentagon");
            entries = expect.fsymbols.size();
        }
        std::ostringstream os;
        os << "both sign choices reproduce all " << entries << " entries exactly; pentagon passes";
        return os.str();
    });
}

// 5. defect-chain spectra equal the reference-chain spectra as multisets
inline CriterionResult criterion_spectral_match() {
    return detail::timed_criterion(5, "defect chain matches the reference chain", 60.0, [] {
        const std::size_t kmax = 10;
        std::vector<double> deviation(kmax, 0.0);
        std::vector<bool> equal(kmax, false);
        std::vector<std::function<void()>> jobs;
        for (std::size_t k = 1; k <= kmax; ++k)
            jobs.push_back([k, &deviation, &equal] {
                Spectrum defect = diagonalize(
                    defect_chain_hamiltonian(2 * k + 1, Boundary::fixed("*", "*"), 1));
                Spectrum reference = diagonalize(tfim_reference(k));
                auto report = compare_spectra(defect, reference, 1e-10);
                deviation[k - 1] = report.max_deviation;
                equal[k - 1] = report.equal;
            });
        detail::run_parallel(jobs);
        double max_dev = 0.0;
        for (std::size_t k = 1; k <= kmax; ++k) {
            detail::require(equal[k - 1],
                            "spectra differ at " + std::to_string(2 * k + 1) + " edges");
            max_dev = std::max(max_dev, deviation[k - 1]);
        }
        std::ostringstream os;
        os << "sizes 1.." << kmax << " equal within 1e-10 (max deviation " << max_dev << ")";
        return os.str();
    });
}

// 6. the free-boundary spectrum is the union of the defect-pinned sector and
//    the four group-pinned sectors
inline CriterionResult criterion_sector_split() {
    return detail::timed_criterion(6, "free boundary splits into fixed sectors", 0.0, [] {
        const std::size_t kmax = 8;
        std::vector<double> deviation(kmax, 0.0);
        std::vector<bool> equal(kmax, true);
        std::vector<std::function<void()>> jobs;
        for (std::size_t k = 1; k <= kmax; ++k)
            jobs.push_back([k, &deviation, &equal] {
                const std::size_t n_edges = 2 * k + 1;
                Spectrum free_spec =
                    diagonalize(defect_chain_hamiltonian(n_edges, Boundary::free_ends(), 1));
                Spectrum sectors =
                    diagonalize(defect_chain_hamiltonian(n_edges, Boundary::fixed("*", "*"), 1));
                for (const char* l : {"0", "1"})
                    for (const char* r : {"0", "1"})
                        sectors = spectrum_union(
                            sectors, diagonalize(defect_chain_hamiltonian(
                                         n_edges, Boundary::fixed(l, r), 1)));
                auto report = compare_spectra(free_spec, sectors, 1e-10);
                deviation[k - 1] = report.max_deviation;
                equal[k - 1] = report.equal;
            });
        detail::run_parallel(jobs);
        double max_dev = 0.0;
        for (std::size_t k = 1; k <= kmax; ++k) {
            detail::require(equal[k - 1], "sector union differs from the free spectrum at " +
                                              std::to_string(2 * k + 1) + " edges");
            max_dev = std::max(max_dev, deviation[k - 1]);
        }
        std::ostringstream os;
        os << "sizes 1.." << kmax << ": free spectrum equals the five-sector union within 1e-10"
           << " (max deviation " << max_dev << ")";
        return os.str();
    });
}

// 7. the free-fermion oracle extrapolates to the known critical energy
//    density and agrees with dense diagonalization at small sizes
inline CriterionResult criterion_criticality() {
    return detail::timed_criterion(7, "criticality extrapolation", 10.0, [] {
        CriticalityReport report = criticality_extrapolation();
        detail::require(report.relative_error < 1e-3,
                        "extrapolated energy density misses the critical value by " +
                            std::to_string(report.relative_error));
        double max_dev = 0.0;
        for (std::size_t n = 1; n <= 12; ++n) {
            double dev = std::abs(free_fermion_energy(n) - tfim_ground_energy_dense(n));
            detail::require(dev <= 1e-10, "fermion oracle deviates from dense ground energy at " +
                                              std::to_string(n) + " qubits");
            max_dev = std::max(max_dev, dev);
        }
        std::ostringstream os;
        os << "relative error " << report.relative_error
           << " vs the critical density; dense agreement to " << max_dev << " up to 12 qubits";
        return os.str();
    });
}

// 8. pure-chain ground-state counting: pinned boundary unique, ring twofold
inline CriterionResult criterion_ground_counting() {
    return detail::timed_criterion(8, "pure-chain ground-state counting", 1.0, [] {
        FusionCategory C = vec_zp(2);
        Spectrum pinned = diagonalize(golden_chain_hamiltonian(C, "1", 7, Boundary::fixed("0", "1")));
        detail::require(!pinned.degeneracies.empty() && pinned.degeneracies.front().second == 1,
                        "pinned boundary does not give a unique ground state");
        Spectrum ring = diagonalize(golden_chain_hamiltonian(C, "1", 6, Boundary::periodic()));
        detail::require(!ring.degeneracies.empty() && ring.degeneracies.front().second == 2,
                        "ring does not give exactly 2 ground states");
        std::ostringstream os;
        os << "pinned ground state unique at " << pinned.degeneracies.front().first
           << "; ring ground state twofold at " << ring.degeneracies.front().first;
        return os.str();
    });
}

inline std::vector<CriterionResult> run_all_criteria() {
    return {criterion_pentagon(),       criterion_bimodules(), criterion_tube_algebra(),
            criterion_derivation(),     criterion_spectral_match(),
            criterion_sector_split(),   criterion_criticality(),
            criterion_ground_counting()};
}

} // namespace defectchain
