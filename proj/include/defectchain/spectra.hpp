#pragma once

// Numerical verification layer: exact diagonalization of assembled chain
// operators, multiset spectrum comparison, and an independent free-fermion
// oracle for the critical reference chain's ground energy.

#include <defectchain/chain.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

namespace defectchain {

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    double group_tol = 1e-8;
    std::vector<std::pair<double, std::size_t>> degeneracies;  // value, multiplicity
    std::map<std::string, std::string> source;

    void regroup() {
        degeneracies.clear();
        for (double v : eigenvalues) {
            if (!degeneracies.empty() && v - degeneracies.back().first <= group_tol)
                degeneracies.back().second += 1;
            else
                degeneracies.emplace_back(v, 1);
        }
    }
};

struct DiagonalizeMode {
    enum class Kind { dense_full, lanczos_lowk };
    Kind kind = Kind::dense_full;
    std::size_t k = 1;

    static DiagonalizeMode dense_full() { return {}; }
    static DiagonalizeMode lanczos_lowk(std::size_t k) {
        return {Kind::lanczos_lowk, k == 0 ? 1 : k};
    }
};

using SparseEntries = std::map<std::pair<std::size_t, std::size_t>, std::complex<double>>;

namespace detail {

inline void require_hermitian(std::size_t dim, const SparseEntries& entries) {
    for (const auto& [key, value] : entries) {
        if (key.first >= dim || key.second >= dim)
            throw std::runtime_error("matrix entry outside the declared dimension");
        std::complex<double> mirror(0.0, 0.0);
        auto it = entries.find({key.second, key.first});
        if (it != entries.end())
            mirror = it->second;
        if (std::abs(value - std::conj(mirror)) > 1e-12)
            throw std::runtime_error("matrix is not Hermitian within 1e-12");
    }
}

inline std::vector<double> dense_eigenvalues(std::size_t dim, const SparseEntries& entries) {
    if (dim > 4096)
        throw std::runtime_error("dense diagonalization is limited to dimension 4096");
    bool real = true;
    for (const auto& [key, value] : entries)
        if (std::abs(value.imag()) > 1e-14) {
            real = false;
            break;
        }
    Eigen::VectorXd values;
    if (real) {
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
        for (const auto& [key, value] : entries)
            H(static_cast<Eigen::Index>(key.first), static_cast<Eigen::Index>(key.second)) =
                value.real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("dense eigensolver failed to converge");
        values = solver.eigenvalues();
    } else {
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
        for (const auto& [key, value] : entries)
            H(static_cast<Eigen::Index>(key.first), static_cast<Eigen::Index>(key.second)) =
                value;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("dense eigensolver failed to converge");
        values = solver.eigenvalues();
    }
    return std::vector<double>(values.data(), values.data() + values.size());
}

// Lanczos with full reorthogonalization and a fixed-seed start vector;
// accurate at the low end of the spectrum
inline std::vector<double> lanczos_eigenvalues(std::size_t dim, const SparseEntries& entries,
                                               std::size_t want) {
    if (want > dim)
        want = dim;
    std::vector<std::tuple<std::size_t, std::size_t, std::complex<double>>> triplets;
    triplets.reserve(entries.size());
    for (const auto& [key, value] : entries)
        triplets.emplace_back(key.first, key.second, value);
    auto matvec = [&](const Eigen::VectorXcd& v) {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
        for (const auto& [i, j, a] : triplets)
            out(static_cast<Eigen::Index>(i)) += a * v(static_cast<Eigen::Index>(j));
        return out;
    };

    std::mt19937 gen(20240817u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (std::size_t i = 0; i < dim; ++i)
        v(static_cast<Eigen::Index>(i)) = std::complex<double>(dist(gen), dist(gen));
    v.normalize();

    const std::size_t steps = std::min<std::size_t>(dim, std::max<std::size_t>(6 * want + 40, 60));
    std::vector<Eigen::VectorXcd> basis{v};
    std::vector<double> alpha, beta;
    for (std::size_t m = 0; m < steps; ++m) {
        Eigen::VectorXcd w = matvec(basis[m]);
        double a = w.dot(basis[m]).real();
        alpha.push_back(a);
        w -= a * basis[m];
        if (m > 0)
            w -= beta[m - 1] * basis[m - 1];
        for (const auto& u : basis)  // full reorthogonalization
            w -= u.dot(w) * u;
        double b = w.norm();
        if (b < 1e-13)
            break;  // invariant subspace reached
        beta.push_back(b);
        basis.push_back(w / b);
    }
    const std::size_t m = alpha.size();
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m)
            T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(T, Eigen::EigenvaluesOnly);
    std::vector<double> low(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    if (low.size() > want)
        low.resize(want);
    return low;
}

} // namespace detail

inline Spectrum diagonalize(std::size_t dim, const SparseEntries& entries,
                            DiagonalizeMode mode = DiagonalizeMode::dense_full()) {
    detail::require_hermitian(dim, entries);
    Spectrum s;
    s.eigenvalues = mode.kind == DiagonalizeMode::Kind::dense_full
                        ? detail::dense_eigenvalues(dim, entries)
                        : detail::lanczos_eigenvalues(dim, entries, mode.k);
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    s.regroup();
    return s;
}

inline Spectrum diagonalize(const ChainOperator& H,
                            DiagonalizeMode mode = DiagonalizeMode::dense_full()) {
    Spectrum s = diagonalize(H.dimension(), H.entries, mode);
    s.source["dimension"] = std::to_string(H.dimension());
    s.source["boundary"] = boundary_text(H.basis.boundary);
    s.source["edges"] = std::to_string(H.basis.n_edges);
    return s;
}

struct SpectrumComparison {
    bool equal = false;
    double max_deviation = 0.0;
    std::size_t unmatched = 0;
};

inline SpectrumComparison compare_spectra(const Spectrum& A, const Spectrum& B,
                                          double tol = 1e-10) {
    SpectrumComparison report;
    const std::size_t n = std::min(A.eigenvalues.size(), B.eigenvalues.size());
    for (std::size_t i = 0; i < n; ++i) {
        double dev = std::abs(A.eigenvalues[i] - B.eigenvalues[i]);
        report.max_deviation = std::max(report.max_deviation, dev);
        if (dev > tol)
            report.unmatched += 1;
    }
    report.unmatched += std::max(A.eigenvalues.size(), B.eigenvalues.size()) - n;
    report.equal = report.unmatched == 0;
    return report;
}

inline Spectrum spectrum_union(const Spectrum& a, const Spectrum& b) {
    Spectrum u;
    u.eigenvalues = a.eigenvalues;
    u.eigenvalues.insert(u.eigenvalues.end(), b.eigenvalues.begin(), b.eigenvalues.end());
    std::sort(u.eigenvalues.begin(), u.eigenvalues.end());
    u.regroup();
    return u;
}

namespace detail {

// sum of single-particle mode energies of the quadratic fermion chain
// equivalent to the open-boundary critical reference chain
inline double fermion_mode_sum(std::size_t n_qubits) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n_qubits, n_qubits);
    for (std::size_t i = 0; i < n_qubits; ++i) {
        D(i, i) = 2.0;
        if (i + 1 < n_qubits)
            D(i + 1, i) = -2.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D);
    return svd.singularValues().sum();
}

} // namespace detail

// independent oracle: ground energy of tfim_reference(n) from the fermion
// modes; the constant term matches the assembled identity bookkeeping of
// one identity per window (2n - 1 windows)
inline double free_fermion_energy(std::size_t n_qubits) {
    if (n_qubits < 1)
        throw std::runtime_error("the reference chain needs at least one qubit");
    return -(static_cast<double>(2 * n_qubits - 1) + 0.5 * detail::fermion_mode_sum(n_qubits)) /
           std::sqrt(2.0);
}

// energy density with one identity term per site — the intensive
// convention under which the critical density is -(1/sqrt 2)(1 + 4/pi).
// Relative to the assembled reference this removes the (n-1)/sqrt(2)
// boundary-window identity excess: per_site(n) * n =
// free_fermion_energy(n) + (n-1)/sqrt(2).
inline double reference_energy_per_site(std::size_t n_qubits) {
    if (n_qubits < 1)
        throw std::runtime_error("the reference chain needs at least one qubit");
    return -(1.0 + 0.5 * detail::fermion_mode_sum(n_qubits) / static_cast<double>(n_qubits)) /
           std::sqrt(2.0);
}

// ground energy of tfim_reference(n) by dense diagonalization of its two
// global spin-flip parity blocks (an exact orthogonal block decomposition;
// each block is half the dimension, so n = 12 stays fast)
inline double tfim_ground_energy_dense(std::size_t n_qubits) {
    if (n_qubits < 1)
        throw std::runtime_error("the reference chain needs at least one qubit");
    if (n_qubits > 12)
        throw std::runtime_error("dense ground energy is limited to 12 qubits");
    const std::size_t full = std::size_t{1} << n_qubits;
    const std::size_t mask = full - 1;
    std::vector<std::size_t> index(full, 0);
    std::vector<std::size_t> reps;
    for (std::size_t s = 0; s < full; ++s)
        if (s < (~s & mask)) {
            index[s] = reps.size();
            reps.push_back(s);
        }
    const double w = -1.0 / std::sqrt(2.0);
    Eigen::MatrixXd even = Eigen::MatrixXd::Zero(reps.size(), reps.size());
    Eigen::MatrixXd odd = Eigen::MatrixXd::Zero(reps.size(), reps.size());
    for (std::size_t r : reps) {
        double diag = static_cast<double>(2 * n_qubits - 1);
        for (std::size_t i = 0; i + 1 < n_qubits; ++i) {
            bool differ = ((r >> i) & 1) != ((r >> (i + 1)) & 1);
            diag += differ ? -1.0 : 1.0;
        }
        even(index[r], index[r]) += w * diag;
        odd(index[r], index[r]) += w * diag;
        for (std::size_t i = 0; i < n_qubits; ++i) {
            std::size_t t = r ^ (std::size_t{1} << i);
            std::size_t rep = std::min(t, ~t & mask);
            even(index[r], index[rep]) += w;
            odd(index[r], index[rep]) += t == rep ? w : -w;
        }
    }
    auto ground = [](const Eigen::MatrixXd& M) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
        return solver.eigenvalues()(0);
    };
    return std::min(ground(even), ground(odd));
}

struct CriticalityReport {
    double per_site_64 = 0.0, per_site_128 = 0.0, per_site_256 = 0.0;
    double extrapolated = 0.0;  // Richardson in 1/n
    double reference = 0.0;     // known critical value of the energy density
    double relative_error = 0.0;
};

inline CriticalityReport criticality_extrapolation() {
    CriticalityReport r;
    r.per_site_64 = reference_energy_per_site(64);
    r.per_site_128 = reference_energy_per_site(128);
    r.per_site_256 = reference_energy_per_site(256);
    double r1 = 2.0 * r.per_site_128 - r.per_site_64;
    double r2 = 2.0 * r.per_site_256 - r.per_site_128;
    r.extrapolated = (4.0 * r2 - r1) / 3.0;
    r.reference = -(1.0 + 4.0 / 3.14159265358979323846) / std::sqrt(2.0);
    r.relative_error = std::abs(r.extrapolated - r.reference) / std::abs(r.reference);
    return r;
}

} // namespace defectchain
